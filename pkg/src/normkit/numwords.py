"""Number words in Portuguese and English: rendering and parsing.

Covers cardinals 1..9999 (days, magnitudes, spelled-out years) and
ordinals 1..31 (days of month). Parsing works over pre-tokenized,
accent-stripped, casefolded keys and is deliberately looser than
rendering: alternate spellings ("catorze"/"quatorze") and feminine forms
("duas") are accepted, and connector words may appear inside a run.
"""

from __future__ import annotations

from dataclasses import dataclass

from .text import fold_key

# ---------------------------------------------------------------- rendering

_PT_UNITS = {1: "um", 2: "dois", 3: "três", 4: "quatro", 5: "cinco",
             6: "seis", 7: "sete", 8: "oito", 9: "nove"}
_PT_TEENS = {10: "dez", 11: "onze", 12: "doze", 13: "treze", 14: "quatorze",
             15: "quinze", 16: "dezesseis", 17: "dezessete", 18: "dezoito",
             19: "dezenove"}
_PT_TENS = {20: "vinte", 30: "trinta", 40: "quarenta", 50: "cinquenta",
            60: "sessenta", 70: "setenta", 80: "oitenta", 90: "noventa"}
_PT_HUNDREDS = {100: "cento", 200: "duzentos", 300: "trezentos",
                400: "quatrocentos", 500: "quinhentos", 600: "seiscentos",
                700: "setecentos", 800: "oitocentos", 900: "novecentos"}

_EN_UNITS = {1: "one", 2: "two", 3: "three", 4: "four", 5: "five",
             6: "six", 7: "seven", 8: "eight", 9: "nine"}
_EN_TEENS = {10: "ten", 11: "eleven", 12: "twelve", 13: "thirteen",
             14: "fourteen", 15: "fifteen", 16: "sixteen", 17: "seventeen",
             18: "eighteen", 19: "nineteen"}
_EN_TENS = {20: "twenty", 30: "thirty", 40: "forty", 50: "fifty",
            60: "sixty", 70: "seventy", 80: "eighty", 90: "ninety"}

_PT_ORD_UNITS = {1: "primeiro", 2: "segundo", 3: "terceiro", 4: "quarto",
                 5: "quinto", 6: "sexto", 7: "sétimo", 8: "oitavo", 9: "nono"}
_PT_ORD_TENS = {10: "décimo", 20: "vigésimo", 30: "trigésimo"}

_EN_ORDINALS = {1: "first", 2: "second", 3: "third", 4: "fourth", 5: "fifth",
                6: "sixth", 7: "seventh", 8: "eighth", 9: "ninth",
                10: "tenth", 11: "eleventh", 12: "twelfth", 13: "thirteenth",
                14: "fourteenth", 15: "fifteenth", 16: "sixteenth",
                17: "seventeenth", 18: "eighteenth", 19: "nineteenth"}
_EN_ORD_TENS = {20: "twentieth", 30: "thirtieth"}


def _pt_below_thousand(n: int) -> str:
    if n == 100:
        return "cem"
    parts = []
    hundreds, rest = divmod(n, 100)
    if hundreds:
        parts.append(_PT_HUNDREDS[hundreds * 100])
    if rest:
        if rest < 10:
            parts.append(_PT_UNITS[rest])
        elif rest < 20:
            parts.append(_PT_TEENS[rest])
        else:
            tens, units = divmod(rest, 10)
            parts.append(_PT_TENS[tens * 10])
            if units:
                parts.append(_PT_UNITS[units])
    return " e ".join(parts)


def _en_below_thousand(n: int) -> str:
    parts = []
    hundreds, rest = divmod(n, 100)
    if hundreds:
        parts.append(f"{_EN_UNITS[hundreds]} hundred")
    if rest:
        if rest < 10:
            parts.append(_EN_UNITS[rest])
        elif rest < 20:
            parts.append(_EN_TEENS[rest])
        else:
            tens, units = divmod(rest, 10)
            word = _EN_TENS[tens * 10]
            parts.append(f"{word}-{_EN_UNITS[units]}" if units else word)
    return " ".join(parts)


def cardinal(n: int, language: str) -> str:
    """Spell out 1..9999 ('mil novecentos e vinte e um')."""
    if not 1 <= n <= 9999:
        raise ValueError(f"cardinal out of range: {n}")
    if language == "pt":
        if n < 1000:
            return _pt_below_thousand(n)
        thousands, rest = divmod(n, 1000)
        head = "mil" if thousands == 1 else f"{_PT_UNITS[thousands]} mil"
        if not rest:
            return head
        # Standard joining: 'e' after the thousands only for small or
        # round remainders ("dois mil e vinte", "dois mil e quinhentos",
        # but "mil novecentos e vinte e um").
        joiner = " e " if (rest < 100 or rest % 100 == 0) else " "
        return head + joiner + _pt_below_thousand(rest)
    if language == "en":
        thousands, rest = divmod(n, 1000)
        parts = []
        if thousands:
            parts.append(f"{_EN_UNITS[thousands]} thousand")
        if rest:
            parts.append(_en_below_thousand(rest))
        return " ".join(parts)
    raise ValueError(f"unknown language {language!r}")


def ordinal(n: int, language: str) -> str:
    """Spell out 1..31 as an ordinal ('vigésimo primeiro', 'twenty-first')."""
    if not 1 <= n <= 31:
        raise ValueError(f"ordinal out of range: {n}")
    if language == "pt":
        if n < 10:
            return _PT_ORD_UNITS[n]
        tens, units = divmod(n, 10)
        word = _PT_ORD_TENS[tens * 10]
        return f"{word} {_PT_ORD_UNITS[units]}" if units else word
    if language == "en":
        if n < 20:
            return _EN_ORDINALS[n]
        tens, units = divmod(n, 10)
        if not units:
            return _EN_ORD_TENS[tens * 10]
        return f"{_EN_TENS[tens * 10]}-{_EN_ORDINALS[units]}"
    raise ValueError(f"unknown language {language!r}")


# ------------------------------------------------------------------ parsing

# Token tables keyed by accent-stripped casefolded form.
# kind "add": token contributes its value; kind "scale": multiply the
# running value (English "hundred", both languages' thousand word).


def _card_table(language: str) -> dict[str, tuple[str, int]]:
    table: dict[str, tuple[str, int]] = {}
    if language == "pt":
        for value, word in {**_PT_UNITS, **_PT_TEENS, **_PT_TENS,
                            **_PT_HUNDREDS}.items():
            table[fold_key(word)] = ("add", value)
        table["uma"] = ("add", 1)
        table["duas"] = ("add", 2)
        table["catorze"] = ("add", 14)
        table["cem"] = ("add", 100)
        table["mil"] = ("scale", 1000)
    else:
        for value, word in {**_EN_UNITS, **_EN_TEENS, **_EN_TENS}.items():
            table[fold_key(word)] = ("add", value)
        table["hundred"] = ("scale", 100)
        table["thousand"] = ("scale", 1000)
    return table


_CARD_TABLES = {"pt": _card_table("pt"), "en": _card_table("en")}

_PT_ORD_UNIT_KEYS = {fold_key(w): v for v, w in _PT_ORD_UNITS.items()}
_PT_ORD_TEN_KEYS = {fold_key(w): v for v, w in _PT_ORD_TENS.items()}
_EN_ORD_KEYS = {fold_key(w): v for v, w in {**_EN_ORDINALS, **_EN_ORD_TENS}.items()}
_EN_CARD_TEN_KEYS = {fold_key(w): v for v, w in _EN_TENS.items() if v in (20, 30)}

CONNECTORS = {"pt": frozenset({"e"}), "en": frozenset({"and"})}


def is_number_word(key: str, language: str) -> bool:
    """True if the key belongs to any cardinal or ordinal table."""
    if key in _CARD_TABLES[language]:
        return True
    if language == "pt":
        return key in _PT_ORD_UNIT_KEYS or key in _PT_ORD_TEN_KEYS
    return key in _EN_ORD_KEYS


def number_word_keys(language: str) -> frozenset[str]:
    """Every folded cardinal and ordinal word key for the language."""
    keys = set(_CARD_TABLES[language])
    if language == "pt":
        keys |= set(_PT_ORD_UNIT_KEYS) | set(_PT_ORD_TEN_KEYS)
    else:
        keys |= set(_EN_ORD_KEYS)
    return frozenset(keys)


@dataclass(frozen=True)
class NumberRun:
    """A folded run of number tokens: value plus token span [start, end)."""

    value: int
    start: int
    end: int
    ordinal: bool = False


def _fold(items: list[tuple[str, int]]) -> int:
    total = 0
    current = 0
    for kind, value in items:
        if kind == "add":
            current += value
        elif value == 1000:
            current = (current or 1) * 1000
            total += current
            current = 0
        else:  # hundred scale (English)
            current = (current or 1) * 100
    return total + current


def find_number_runs(keys: list[str], language: str) -> list[NumberRun]:
    """Locate maximal spelled-number runs among folded token keys.

    Ordinal combinations are recognized first at each position
    (Portuguese "décimo quinto", English "twenty-first" after hyphen
    splitting, or a lone ordinal word); otherwise a maximal cardinal run
    is folded, with connector words tolerated between number tokens but
    never absorbed at the edge of a run.
    """
    table = _CARD_TABLES[language]
    connectors = CONNECTORS[language]
    runs: list[NumberRun] = []
    i = 0
    n = len(keys)
    while i < n:
        key = keys[i]
        # Ordinal lookahead.
        if language == "pt":
            if key in _PT_ORD_TEN_KEYS:
                value = _PT_ORD_TEN_KEYS[key]
                end = i + 1
                if end < n and keys[end] in _PT_ORD_UNIT_KEYS:
                    value += _PT_ORD_UNIT_KEYS[keys[end]]
                    end += 1
                runs.append(NumberRun(value, i, end, ordinal=True))
                i = end
                continue
            if key in _PT_ORD_UNIT_KEYS:
                runs.append(NumberRun(_PT_ORD_UNIT_KEYS[key], i, i + 1, ordinal=True))
                i += 1
                continue
        else:
            if key in _EN_CARD_TEN_KEYS and i + 1 < n and keys[i + 1] in _EN_ORD_KEYS \
                    and _EN_ORD_KEYS[keys[i + 1]] < 10:
                value = _EN_CARD_TEN_KEYS[key] + _EN_ORD_KEYS[keys[i + 1]]
                runs.append(NumberRun(value, i, i + 2, ordinal=True))
                i += 2
                continue
            if key in _EN_ORD_KEYS:
                runs.append(NumberRun(_EN_ORD_KEYS[key], i, i + 1, ordinal=True))
                i += 1
                continue
        # Cardinal run.
        if key in table:
            items = [table[key]]
            end = i + 1
            while end < n:
                nxt = keys[end]
                if nxt in table:
                    items.append(table[nxt])
                    end += 1
                elif nxt in connectors and end + 1 < n and keys[end + 1] in table:
                    items.append(table[keys[end + 1]])
                    end += 2
                else:
                    break
            runs.append(NumberRun(_fold(items), i, end))
            i = end
            continue
        i += 1
    return runs


def _keys_of(text: str) -> list[str]:
    import re

    return [fold_key(t) for t in re.split(r"[\s\-]+", text.strip()) if t]


def parse_cardinal(text: str, language: str) -> int:
    """Parse a standalone spelled cardinal; raises ValueError otherwise."""
    keys = _keys_of(text)
    runs = find_number_runs(keys, language)
    if len(runs) != 1 or runs[0].ordinal or (runs[0].start, runs[0].end) != (0, len(keys)):
        raise ValueError(f"not a single cardinal: {text!r}")
    return runs[0].value


def parse_ordinal(text: str, language: str) -> int:
    """Parse a standalone spelled ordinal; raises ValueError otherwise."""
    keys = _keys_of(text)
    runs = find_number_runs(keys, language)
    if len(runs) != 1 or not runs[0].ordinal or (runs[0].start, runs[0].end) != (0, len(keys)):
        raise ValueError(f"not a single ordinal: {text!r}")
    return runs[0].value
