"""Shared linguistic tables: months, units, keywords, states, street types.

Lookup-side dictionaries are keyed by accent-stripped casefolded keys
(see text.fold_key); rendering-side tables keep their display form.
"""

from __future__ import annotations

from .text import fold_key

# ------------------------------------------------------------------- months

MONTH_NAMES = {
    "pt": ["janeiro", "fevereiro", "março", "abril", "maio", "junho",
           "julho", "agosto", "setembro", "outubro", "novembro", "dezembro"],
    "en": ["January", "February", "March", "April", "May", "June",
           "July", "August", "September", "October", "November", "December"],
}

MONTH_ABBRS = {
    "pt": ["jan", "fev", "mar", "abr", "mai", "jun",
           "jul", "ago", "set", "out", "nov", "dez"],
    "en": ["Jan", "Feb", "Mar", "Apr", "May", "Jun",
           "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"],
}


def month_name(m: int, language: str) -> str:
    return MONTH_NAMES[language][m - 1]


def month_abbr(m: int, language: str) -> str:
    return MONTH_ABBRS[language][m - 1]


def _month_lookup(language: str) -> dict[str, int]:
    table: dict[str, int] = {}
    for i, name in enumerate(MONTH_NAMES[language], start=1):
        table[fold_key(name)] = i
    for i, abbr in enumerate(MONTH_ABBRS[language], start=1):
        table[fold_key(abbr)] = i
    return table


MONTH_LOOKUP = {"pt": _month_lookup("pt"), "en": _month_lookup("en")}

# --------------------------------------------------------------- time units

# unit letter in the canonical relative form: d (days), m (months), a (years)
UNIT_WORDS = {
    "pt": {"d": ("dia", "dias"), "m": ("mês", "meses"), "a": ("ano", "anos")},
    "en": {"d": ("day", "days"), "m": ("month", "months"), "a": ("year", "years")},
}


def unit_word(unit: str, magnitude: int, language: str) -> str:
    singular, plural = UNIT_WORDS[language][unit]
    return singular if magnitude == 1 else plural


def _unit_lookup(language: str) -> dict[str, str]:
    table: dict[str, str] = {}
    for letter, forms in UNIT_WORDS[language].items():
        for form in forms:
            table[fold_key(form)] = letter
    return table


UNIT_LOOKUP = {"pt": _unit_lookup("pt"), "en": _unit_lookup("en")}

# ------------------------------------------------- relative-offset keywords

# Keys are folded forms. A relative expression needs a sign keyword, a
# unit word, and a magnitude; the sign keyword alone never triggers the
# relative reading (so "em janeiro de 2021" stays a month/year date).
SIGN_KEYWORDS = {
    "pt": {
        "ha": "-", "faz": "-", "atras": "-", "antes": "-",
        "passado": "-", "passados": "-",
        "daqui": "+", "em": "+", "dentro": "+", "futuro": "+",
        "apos": "+", "depois": "+", "frente": "+",
    },
    "en": {
        "ago": "-", "earlier": "-", "back": "-",
        "in": "+", "within": "+", "after": "+", "from": "+",
        "later": "+", "ahead": "+",
    },
}

# Default phrase used when a template carries a bare sign-word slot.
SIGN_PHRASES = {
    "pt": {"-": "há", "+": "daqui a"},
    "en": {"-": "ago", "+": "in"},
}

# --------------------------------------------------------------- skip words

# Function words that may be dropped without changing a date reading.
SKIP_WORDS = {
    "pt": frozenset(map(fold_key, [
        "de", "do", "da", "dos", "das", "e", "o", "a", "à", "no", "na",
        "dia", "dias", "mês", "mes", "meses", "ano", "anos", "aos",
        "hoje", "passados", "durante",
    ])),
    "en": frozenset(map(fold_key, [
        "the", "of", "on", "and", "day", "days", "month", "months",
        "year", "years", "during", "now", "at",
    ])),
}

# ------------------------------------------------------------------- states

# Two-letter federative unit codes and full state names.
UF_TO_NAME = {
    "AC": "Acre", "AL": "Alagoas", "AP": "Amapá", "AM": "Amazonas",
    "BA": "Bahia", "CE": "Ceará", "DF": "Distrito Federal",
    "ES": "Espírito Santo", "GO": "Goiás", "MA": "Maranhão",
    "MT": "Mato Grosso", "MS": "Mato Grosso do Sul", "MG": "Minas Gerais",
    "PA": "Pará", "PB": "Paraíba", "PR": "Paraná", "PE": "Pernambuco",
    "PI": "Piauí", "RJ": "Rio de Janeiro", "RN": "Rio Grande do Norte",
    "RS": "Rio Grande do Sul", "RO": "Rondônia", "RR": "Roraima",
    "SC": "Santa Catarina", "SE": "Sergipe", "SP": "São Paulo",
    "TO": "Tocantins",
}

UFS = frozenset(UF_TO_NAME)

STATE_NAME_TO_UF = {fold_key(name): uf for uf, name in UF_TO_NAME.items()}

# ------------------------------------------------------------ street pieces

STREET_TYPES = ("Rua", "Avenida", "Travessa", "Alameda", "Praça",
                "Estrada", "Rodovia", "Largo")

STREET_TYPE_KEYS = frozenset(fold_key(t) for t in STREET_TYPES)

# Word <-> abbreviation pairs; the noise layer may swap either direction,
# the normalizer always expands to the full word.
ABBREVIATIONS = (
    ("Rua", "R."),
    ("Avenida", "Av."),
    ("Santo", "Sto."),
)

# Expansion map keyed by folded abbreviation minus the trailing period.
ABBREV_EXPANSIONS = {fold_key(abbr.rstrip(".")): word for word, abbr in ABBREVIATIONS}

# Complemento cue words ("apto 32", "bloco B", "casa 2", "sala 101").
COMPLEMENT_CUES = frozenset(map(fold_key, [
    "apto", "apartamento", "bloco", "casa", "sala", "fundos", "loja",
    "conjunto", "andar",
]))

# Labels that may precede an address part in decorated templates.
ADDRESS_LABELS = {
    "logradouro": "logradouro",
    "endereco": "logradouro",
    "numero": "numero",
    "n": "numero",
    "no": "numero",
    "num": "numero",
    "complemento": "complemento",
    "bairro": "bairro",
    "cidade": "cidade",
    "municipio": "cidade",
    "estado": "estado",
    "uf": "estado",
}

# ------------------------------------------------- character confusion table

# Symmetric look-alike pairs used both to corrupt text and to repair it.
CONFUSION_PAIRS = (
    ("o", "0"),
    ("c", "ç"),
    ("l", "i"),
    ("n", "m"),
    ("u", "v"),
    ("9", "g"),
)


def confusion_map(pairs=CONFUSION_PAIRS) -> dict[str, str]:
    """Bidirectional char -> partner map over lowercase forms."""
    table: dict[str, str] = {}
    for a, b in pairs:
        table[a] = b
        table[b] = a
    return table
