"""Rule-based normalization of date and address strings.

No training data: months, number words, unit words, street types, and
federative units come from fixed lexicons, and damaged tokens are
repaired with the character-confusion table first, then a single-edit
match against lexicon entries (length >= 3 only, so short function
words cannot be invented). Tokens that stay unresolvable are ignored
only when a complete, consistent reading exists without them — and the
outcome is then flagged 'fuzzy' instead of 'exact'.

Canonical-looking inputs take a quick path: they are validated and
returned as-is, and an invalid canonical-shaped value (31/02/2021) is
Unparseable, never silently corrected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .addresses import AddressFields, canonical_address
from .dates import (CompleteDate, DayMonth, MonthYear, RelativeOffset,
                    canonical_string, parse_canonical)
from .errors import (AmbiguousDate, ConfigError, InvalidRange, Unparseable,
                     UnknownTask)
from .lexicon import (ABBREV_EXPANSIONS, COMPLEMENT_CUES, MONTH_LOOKUP,
                      SIGN_KEYWORDS, SKIP_WORDS, STATE_NAME_TO_UF,
                      STREET_TYPE_KEYS, STREET_TYPES, UFS, UNIT_LOOKUP,
                      confusion_map)
from .numwords import find_number_runs, is_number_word, number_word_keys
from .text import fold_key

_CONFUSION = confusion_map()

DATE_PREFIX = "data:"
ADDRESS_PREFIX = "endereco:"


@dataclass(frozen=True)
class ParseOutcome:
    """A successful normalization: canonical string plus provenance."""

    canonical: str
    task: str
    confidence: str  # "exact" | "fuzzy"
    payload: object = None


# ------------------------------------------------------------ small helpers


def edit_distance(a: str, b: str, limit: int = 2) -> int:
    """Levenshtein distance with an early-out once ``limit`` is exceeded."""
    if abs(len(a) - len(b)) > limit:
        return limit + 1
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        best = i
        for j, cb in enumerate(b, start=1):
            cost = 0 if ca == cb else 1
            value = min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + cost)
            current.append(value)
            best = min(best, value)
        if best > limit:
            return limit + 1
        previous = current
    return previous[-1]


def _confusion_variants(token: str) -> list[str]:
    """All single-character confusion swaps of the token (folded)."""
    out = []
    for i, ch in enumerate(token):
        partner = _CONFUSION.get(ch)
        if partner is not None:
            out.append(token[:i] + partner + token[i + 1:])
    return out


_DIGITS_RE = re.compile(r"^\d+$")
_DIGITLIKE_RE = re.compile(r"^[0-9og]+$")

_DIGIT_FIX = str.maketrans({"o": "0", "g": "9"})
_LETTER_FIX = str.maketrans({"0": "o", "9": "g"})


def _repair_digits(key: str) -> str | None:
    """Repair a number token damaged by look-alike swaps or one insert."""
    if _DIGITLIKE_RE.match(key) and any(c.isdigit() for c in key):
        return key.translate(_DIGIT_FIX)
    for i in range(len(key)):
        candidate = key[:i] + key[i + 1:]
        if candidate and _DIGITS_RE.match(candidate):
            return candidate
    return None


def _repair_mixed_token(token: str) -> str | None:
    """Undamage a token that mixes letters and digits.

    Canonical address words are all-alpha and number parts all-digit, so
    a mixed token is noise: prefer the all-digit reading for look-alike
    letters (6o52 -> 6052), then a letter-to-digit-free word (Efi9ênia
    -> Efigênia), then dropping a single inserted character.
    """
    letters = [c for c in token if c.isalpha()]
    digits = [c for c in token if c.isdigit()]
    if not digits or not letters:
        return None
    if _DIGITLIKE_RE.match(token.lower()):
        return token.translate(_DIGIT_FIX)
    as_word = token.translate(_LETTER_FIX)
    if as_word.isalpha():
        return as_word
    if len(letters) == 1:
        stripped = "".join(c for c in token if not c.isalpha())
        if stripped.isdigit():
            return stripped
    if len(digits) == 1:
        stripped = "".join(c for c in token if not c.isdigit())
        if stripped.isalpha():
            return stripped
    return None


# --------------------------------------------------------- date tokenization

_DATE_SEP_RE = re.compile(r"[\s/\-.,;:()]+")
_ORDINAL_MARK_RE = re.compile(r"[º°ª]+$")


@dataclass
class _Token:
    raw: str
    key: str
    repair: str | None = None  # "digits" | "word" | "merge"

    @property
    def fuzzy(self) -> bool:
        return self.repair is not None


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    for raw in _DATE_SEP_RE.split(text):
        raw = _ORDINAL_MARK_RE.sub("", raw)
        if raw:
            tokens.append(_Token(raw=raw, key=fold_key(raw)))
    return tokens


def _date_lexicon_keys(language: str) -> set[str]:
    keys = set(MONTH_LOOKUP[language])
    keys |= set(UNIT_LOOKUP[language])
    keys |= set(SIGN_KEYWORDS[language])
    keys |= set(SKIP_WORDS[language])
    return keys


_LEXICON_KEYS = {"pt": _date_lexicon_keys("pt"), "en": _date_lexicon_keys("en")}

# Single-edit repair may only land on entries long enough to be safe.
_REPAIR_ENTRIES = {
    lang: tuple(sorted(e for e in (_LEXICON_KEYS[lang] | number_word_keys(lang))
                       if len(e) >= 3))
    for lang in ("pt", "en")
}


def _is_known(key: str, language: str) -> bool:
    return (bool(_DIGITS_RE.match(key))
            or key in _LEXICON_KEYS[language]
            or is_number_word(key, language))


def _repair_word(key: str, language: str) -> str | None:
    """Map a damaged token to a unique lexicon key, confusion swaps first."""
    candidates = {v for v in _confusion_variants(key)
                  if v in _LEXICON_KEYS[language] or is_number_word(v, language)}
    if len(candidates) == 1:
        return candidates.pop()
    if candidates:
        return None
    if len(key) < 3:
        return None
    matches = set()
    for entry in _REPAIR_ENTRIES[language]:
        if edit_distance(key, entry, 1) <= 1:
            matches.add(entry)
    if len(matches) == 1:
        return matches.pop()
    return None


def _repair_tokens(tokens: list[_Token], language: str) -> tuple[list[_Token], bool]:
    """Fix damaged tokens in place: digits, word repair, then merges."""
    any_fuzzy = False
    for token in tokens:
        if _is_known(token.key, language):
            continue
        fixed = _repair_digits(token.key)
        kind = "digits"
        if fixed is None:
            fixed = _repair_word(token.key, language)
            kind = "word"
        if fixed is not None:
            token.key = fixed
            token.repair = kind
            any_fuzzy = True

    # Merge word fragments split by an inserted space ('jan eiro').
    merged: list[_Token] = []
    i = 0
    while i < len(tokens):
        token = tokens[i]
        nxt = tokens[i + 1] if i + 1 < len(tokens) else None
        if nxt is not None and (not _is_known(token.key, language)
                                or not _is_known(nxt.key, language)):
            joined = token.key + nxt.key
            if _is_known(joined, language) and not _DIGITS_RE.match(joined):
                merged.append(_Token(raw=token.raw + nxt.raw, key=joined,
                                     repair="merge"))
                any_fuzzy = True
                i += 2
                continue
        merged.append(token)
        i += 1
    return merged, any_fuzzy


# ------------------------------------------------------------ relative dates


def _try_relative(tokens: list[_Token], language: str) -> RelativeOffset | None:
    """Relative reading: needs a sign keyword, a unit word, and a magnitude."""
    signs = SIGN_KEYWORDS[language]
    units = UNIT_LOOKUP[language]
    sign = None
    unit = None
    unit_index = -1
    for i, token in enumerate(tokens):
        if sign is None and token.key in signs:
            sign = signs[token.key]
        if unit is None and token.key in units:
            unit = units[token.key]
            unit_index = i
    if sign is None or unit is None:
        return None
    magnitude = None
    keys = [t.key for t in tokens]
    runs = find_number_runs(keys, language)
    # Prefer the number immediately before the unit word, the way the
    # phrases read; fall back to any number present.
    for i in range(unit_index - 1, -1, -1):
        if _DIGITS_RE.match(keys[i]):
            magnitude = int(keys[i])
            break
        run = next((r for r in runs if r.start <= i < r.end and not r.ordinal), None)
        if run is not None:
            magnitude = run.value
            break
    if magnitude is None:
        for i, key in enumerate(keys):
            if _DIGITS_RE.match(key):
                magnitude = int(key)
                break
        else:
            run = next((r for r in runs if not r.ordinal), None)
            if run is not None:
                magnitude = run.value
    if magnitude is None or magnitude < 1:
        return None
    return RelativeOffset(sign, magnitude, unit)


# ------------------------------------------------------ pure numeric shapes

_NUMERIC_RE = re.compile(r"^(\d{1,4})([/. -])(\d{1,4})(?:\2(\d{1,4}))?$")


def _numeric_shape(text: str, language: str):
    m = _NUMERIC_RE.match(text)
    if m is None:
        return None
    slash = m.group(2) == "/"
    a, b = m.group(1), m.group(3)
    c = m.group(4)
    try:
        if c is not None:
            if len(a) == 4:  # year-first
                return CompleteDate(day=int(c), month=int(b), year=int(a))
            if len(c) != 4:
                raise Unparseable(f"no four-digit year in {text!r}")
            if language == "pt" or slash:
                return CompleteDate(day=int(a), month=int(b), year=int(c))
            return CompleteDate(day=int(b), month=int(a), year=int(c))
        if len(a) == 4:
            return MonthYear(month=int(b), year=int(a))
        if len(b) == 4:
            return MonthYear(month=int(a), year=int(b))
        if language == "pt" or slash:
            return DayMonth(day=int(a), month=int(b))
        return DayMonth(day=int(b), month=int(a))
    except (InvalidRange, ConfigError) as exc:
        raise Unparseable(f"invalid date values in {text!r}") from exc


# -------------------------------------------------------- generic date parse


@dataclass
class _Number:
    value: int
    position: int
    width: int | None  # digit count for numeral tokens, None for words
    ordinal: bool = False

    @property
    def year_like(self) -> bool:
        return (self.width == 4) or (self.width is None and self.value >= 1000)

    @property
    def day_like(self) -> bool:
        return not self.year_like and self.value <= 31


def _collect_date_parts(tokens: list[_Token], language: str):
    """Classify repaired tokens into months, numbers, and leftovers."""
    keys = [t.key for t in tokens]
    month_table = MONTH_LOOKUP[language]

    # 'dez' is both the December abbreviation and the word for ten.
    # With an unambiguous month name elsewhere it must be the number;
    # otherwise the last such token plays the month.
    ambiguous = [i for i, k in enumerate(keys)
                 if k in month_table and is_number_word(k, language)]
    month_positions = {i for i, k in enumerate(keys)
                       if k in month_table and not is_number_word(k, language)}
    if not month_positions and ambiguous:
        month_positions.add(ambiguous[-1])

    run_keys = ["" if i in month_positions else k for i, k in enumerate(keys)]
    runs = find_number_runs(run_keys, language)
    run_starts = {r.start: r for r in runs}
    in_run = set()
    for r in runs:
        in_run.update(range(r.start, r.end))

    months: list[int] = []
    numbers: list[_Number] = []
    leftovers: list[_Token] = []
    for i, token in enumerate(tokens):
        if _DIGITS_RE.match(token.key):
            numbers.append(_Number(value=int(token.key), position=i,
                                   width=len(token.key)))
            continue
        if i in month_positions:
            months.append(month_table[token.key])
            continue
        if i in run_starts:
            r = run_starts[i]
            numbers.append(_Number(value=r.value, position=i, width=None,
                                   ordinal=r.ordinal))
            continue
        if i in in_run:
            continue
        if token.key in SKIP_WORDS[language] or token.key in SIGN_KEYWORDS[language]:
            continue
        leftovers.append(token)
    return months, numbers, leftovers


def _assign_with_month(month: int, numbers: list[_Number], text: str):
    years = [n for n in numbers if n.year_like]
    days = [n for n in numbers if n.day_like]
    junk = [n for n in numbers if not n.year_like and not n.day_like]
    if junk:
        raise Unparseable(f"number {junk[0].value} fits no date slot in {text!r}")
    if len(years) > 1:
        raise AmbiguousDate(f"two year readings in {text!r}")
    if len(days) > 1:
        raise AmbiguousDate(f"two day readings in {text!r}")
    year = years[0].value if years else None
    day = days[0].value if days else None
    try:
        if day is not None and year is not None:
            return CompleteDate(day=day, month=month, year=year)
        if day is not None:
            return DayMonth(day=day, month=month)
        if year is not None:
            return MonthYear(month=month, year=year)
    except (InvalidRange, ConfigError) as exc:
        raise Unparseable(f"invalid date values in {text!r}") from exc
    raise Unparseable(f"month without day or year in {text!r}")


def _assign_without_month(numbers: list[_Number], text: str,
                          language: str, slash: bool):
    if len(numbers) < 2:
        raise Unparseable(f"not enough date parts in {text!r}")
    if len(numbers) > 3:
        raise AmbiguousDate(f"too many numbers in {text!r}")
    try:
        if len(numbers) == 3:
            first, second, third = numbers
            if first.year_like:
                return CompleteDate(day=third.value, month=second.value,
                                    year=first.value)
            if not third.year_like:
                raise Unparseable(f"no year in {text!r}")
            if language == "pt" or slash:
                return CompleteDate(day=first.value, month=second.value,
                                    year=third.value)
            return CompleteDate(day=second.value, month=first.value,
                                year=third.value)
        first, second = numbers
        if first.year_like:
            return MonthYear(month=second.value, year=first.value)
        if second.year_like:
            return MonthYear(month=first.value, year=second.value)
        if language == "pt" or slash:
            return DayMonth(day=first.value, month=second.value)
        return DayMonth(day=second.value, month=first.value)
    except (InvalidRange, ConfigError) as exc:
        raise Unparseable(f"invalid date values in {text!r}") from exc


def _assign_from_tokens(tokens: list[_Token], language: str, text: str,
                        slash: bool):
    """Full slot assignment over classified tokens; raises Unparseable."""
    months, numbers, leftovers = _collect_date_parts(tokens, language)
    if len(months) > 1:
        raise AmbiguousDate(f"two month names in {text!r}")
    ordinals = [n for n in numbers if n.ordinal]
    if len(ordinals) > 1:
        raise AmbiguousDate(f"two ordinal day readings in {text!r}")
    if ordinals and not months:
        raise Unparseable(f"ordinal day without a month name in {text!r}")
    if months:
        payload = _assign_with_month(months[0], numbers, text)
    else:
        payload = _assign_without_month(numbers, text, language, slash)
    return payload, bool(leftovers)


def _digit_merge_variants(tokens: list[_Token]):
    """Variants with one adjacent numeral pair re-joined (undoing a
    word break inside a number, '20 52' -> '2052')."""
    for i in range(len(tokens) - 1):
        a, b = tokens[i], tokens[i + 1]
        if (_DIGITS_RE.match(a.key) and _DIGITS_RE.match(b.key)
                and len(a.key) + len(b.key) <= 4):
            joined = _Token(raw=a.raw + b.raw, key=a.key + b.key, repair="merge")
            yield tokens[:i] + [joined] + tokens[i + 2:]


def normalize_date(text: str, language: str = "pt") -> ParseOutcome:
    """Normalize one date expression to its canonical form."""
    if language not in ("pt", "en"):
        raise ConfigError(f"unknown language {language!r}")
    stripped = text.strip()
    if not stripped:
        raise Unparseable("empty input")

    payload = parse_canonical(stripped)
    if payload is not None:
        return _date_outcome(payload, "exact")

    payload = _numeric_shape(stripped, language)
    if payload is not None:
        return _date_outcome(payload, "exact")

    tokens = _tokenize(stripped)
    if not tokens:
        raise Unparseable(f"nothing to parse in {text!r}")
    tokens, repaired = _repair_tokens(tokens, language)

    relative = _try_relative(tokens, language)
    if relative is not None:
        return _date_outcome(relative, "fuzzy" if repaired else "exact")

    slash = "/" in stripped
    try:
        payload, leftovers = _assign_from_tokens(tokens, language, stripped, slash)
    except Unparseable as first_error:
        # Word repairs are hypotheses; when the reading they produce is
        # inconsistent, retry without them before giving up.
        payload = None
        if any(t.repair == "word" for t in tokens):
            rolled = [t for t in tokens if t.repair != "word"]
            try:
                payload, _ = _assign_from_tokens(rolled, language, stripped, slash)
            except Unparseable:
                payload = None
        if payload is None:
            # A space inserted inside a numeral splits it in two; the
            # merge is accepted only when it yields a unique reading.
            merged: dict[str, object] = {}
            for variant in _digit_merge_variants(tokens):
                try:
                    candidate, _ = _assign_from_tokens(variant, language,
                                                       stripped, slash)
                except Unparseable:
                    continue
                merged[canonical_string(candidate)] = candidate
            if len(merged) == 1:
                payload = merged.popitem()[1]
        if payload is None:
            raise first_error
        return _date_outcome(payload, "fuzzy")
    confidence = "fuzzy" if (repaired or leftovers) else "exact"
    return _date_outcome(payload, confidence)


def _date_outcome(payload, confidence: str) -> ParseOutcome:
    if isinstance(payload, CompleteDate):
        task = "date_complete"
    elif isinstance(payload, (DayMonth, MonthYear)):
        task = "date_incomplete"
    else:
        task = "date_relative"
    return ParseOutcome(canonical=canonical_string(payload), task=task,
                        confidence=confidence, payload=payload)


# ------------------------------------------------------------------ address


_NUM_LABEL_KEYS = frozenset({"n", "num", "numero"})
_SN_RE = re.compile(r"^s/n$", re.IGNORECASE)
_TWO_LETTER_RE = re.compile(r"^[A-Za-z]{2}$")

# (cleaned label tokens) -> slot; longest prefix wins.
_LABEL_PHRASES = [
    (("na", "cidade", "de"), "cidade"),
    (("no", "endereco"), "logradouro"),
    (("no", "bairro"), "bairro"),
    (("estado", "de"), "estado"),
    (("na", "cidade"), "cidade"),
    (("logradouro",), "logradouro"),
    (("endereco",), "logradouro"),
    (("bairro",), "bairro"),
    (("cidade",), "cidade"),
    (("municipio",), "cidade"),
    (("estado",), "estado"),
    (("uf",), "estado"),
    (("numero",), "numero"),
    (("num",), "numero"),
    (("n",), "numero"),
    (("complemento",), "complemento"),
]


def _clean_label_token(raw: str) -> str:
    return fold_key(raw).strip(".:º°")


_LABEL_VOCAB = frozenset(word for phrase, _ in _LABEL_PHRASES for word in phrase)


def _repair_label_token(key: str) -> str | None:
    candidates = {v for v in _confusion_variants(key) if v in _LABEL_VOCAB}
    if not candidates and len(key) >= 3:
        candidates = {e for e in _LABEL_VOCAB
                      if len(e) >= 3 and edit_distance(key, e, 1) <= 1}
    if len(candidates) == 1:
        return candidates.pop()
    return None


def _expand_abbreviations(text: str) -> tuple[str, bool]:
    """Expand street-word abbreviations (R. -> Rua) token-wise."""
    changed = False
    out = []
    for chunk in text.split(" "):
        m = re.match(r"^(.*?)([),;]*)$", chunk)
        core, tail = m.group(1), m.group(2)
        key = fold_key(core).rstrip(".")
        if core and key in ABBREV_EXPANSIONS and (core.endswith(".")
                                                  or len(core) <= 3):
            out.append(ABBREV_EXPANSIONS[key] + tail)
            changed = True
        else:
            out.append(chunk)
    return " ".join(out), changed


_CHUNK_CORE_RE = re.compile(r"^(\W*)(.*?)(\W*)$")


def _repair_address_text(text: str) -> tuple[str, bool]:
    """Undo look-alike damage in tokens that mix letters and digits."""
    changed = False
    chunks = text.split(" ")
    for idx, chunk in enumerate(chunks):
        lead, core, tail = _CHUNK_CORE_RE.match(chunk).groups()
        if not core or "/" in core or "º" in core or "°" in core:
            continue
        fixed = _repair_mixed_token(core)
        if fixed is not None and fixed != core:
            chunks[idx] = lead + fixed + tail
            changed = True
    return " ".join(chunks), changed


def _segment_address(text: str) -> list[str]:
    segments: list[str] = []
    for top in re.split(r"[;,]", text):
        for mid in re.split(r"\s+[-/]\s+", top):
            mid = mid.strip()
            if mid:
                segments.append(mid)
    return segments


def _match_uf(value: str) -> str | None:
    value = value.strip()
    if _TWO_LETTER_RE.match(value) and value.upper() in UFS:
        return value.upper()
    if fold_key(value) in STATE_NAME_TO_UF:
        return STATE_NAME_TO_UF[fold_key(value)]
    if len(value) == 2:
        for variant in _confusion_variants(value.lower()):
            if variant.isalpha() and variant.upper() in UFS:
                return variant.upper()
    return None


def _split_label(segment: str, repair: bool = False) -> tuple[str | None, str, bool]:
    """Strip a leading slot label; returns (slot, remainder, repaired).

    A bare single-word label ('bairro Botafogo') only counts when it is
    lowercase or carries a colon, so a proper name like 'Cidade Nova'
    is never mistaken for a label.
    """
    tokens = segment.split()
    cleaned = [_clean_label_token(t) for t in tokens]

    def match(keys: list[str]) -> tuple[str, str] | None:
        for phrase, slot in _LABEL_PHRASES:
            n = len(phrase)
            if tuple(keys[:n]) == phrase and len(tokens) > n:
                if n == 1 and not (tokens[0][:1].islower() or ":" in tokens[0]):
                    continue
                return slot, " ".join(tokens[n:])
        return None

    found = match(cleaned)
    if found is not None:
        return found[0], found[1], False
    if repair:
        repaired = list(cleaned)
        changed = False
        for i, key in enumerate(repaired[:3]):
            if key and key not in _LABEL_VOCAB:
                replacement = _repair_label_token(key)
                if replacement is not None:
                    repaired[i] = replacement
                    changed = True
        if changed:
            found = match(repaired)
            if found is not None:
                return found[0], found[1], True
    return None, segment, False


def _street_type_index(tokens: list[str], fuzzy: bool) -> tuple[int, str, bool] | None:
    """Find a street-type word at the segment start, repairing if allowed."""
    if not tokens:
        return None
    key = fold_key(tokens[0])
    if key in STREET_TYPE_KEYS:
        return 0, tokens[0], False
    if fuzzy:
        candidates = set()
        for variant in _confusion_variants(key):
            if variant in STREET_TYPE_KEYS:
                candidates.add(variant)
        if not candidates and len(key) >= 3:
            for entry in STREET_TYPE_KEYS:
                if edit_distance(key, entry, 1) <= 1:
                    candidates.add(entry)
        if len(candidates) == 1:
            folded = candidates.pop()
            proper = next(t for t in STREET_TYPES if fold_key(t) == folded)
            return 0, proper, True
    return None


def _repair_complement(text: str) -> tuple[str, bool]:
    """Fix a damaged leading cue word in a complement ('saia 2' -> 'sala 2')."""
    tokens = text.split()
    if not tokens:
        return text, False
    key = fold_key(tokens[0])
    if key in COMPLEMENT_CUES:
        return text, False
    candidates = {v for v in _confusion_variants(key) if v in COMPLEMENT_CUES}
    if not candidates and len(key) >= 3:
        candidates = {e for e in COMPLEMENT_CUES
                      if len(e) >= 3 and edit_distance(key, e, 1) <= 1}
    if len(candidates) == 1:
        return " ".join([candidates.pop()] + tokens[1:]), True
    return text, False


def _parse_number_tail(tokens: list[str]) -> tuple[str, str | None, bool] | None:
    """Parse [label] <digits|s/n> [complemento...] from a token list."""
    if not tokens:
        return None
    i = 0
    if _clean_label_token(tokens[0]) in _NUM_LABEL_KEYS and len(tokens) > 1:
        i = 1
    head = tokens[i]
    if not (_DIGITS_RE.match(head) or _SN_RE.match(head)):
        return None
    fuzzy = False
    numero = "s/n" if _SN_RE.match(head) else head
    rest = list(tokens[i + 1:])
    # A space inserted inside the number splits it; complements never
    # begin with a bare numeral, so re-join digit-led fragments.
    while (numero != "s/n" and rest and _DIGITS_RE.match(rest[0])
           and len(numero) + len(rest[0]) <= 4):
        numero += rest.pop(0)
        fuzzy = True
    tail = " ".join(rest).strip().strip("()").strip()
    if tail:
        tail, repaired = _repair_complement(tail)
        fuzzy = fuzzy or repaired
    return numero, (tail or None), fuzzy


def _is_complement_segment(tokens: list[str]) -> bool:
    if len(tokens) != 2:
        return False
    cue = fold_key(tokens[0])
    value = tokens[1]
    return cue in COMPLEMENT_CUES and len(value) <= 4 and value.isalnum()


def normalize_address(text: str) -> ParseOutcome:
    """Normalize one address expression to its canonical form."""
    stripped = text.strip()
    if not stripped:
        raise Unparseable("empty input")
    fuzzy = False
    expanded, changed = _expand_abbreviations(stripped)
    fuzzy = fuzzy or changed
    expanded, changed = _repair_address_text(expanded)
    fuzzy = fuzzy or changed

    segments = _segment_address(expanded)
    if len(segments) < 2:
        raise Unparseable(f"too few address parts in {text!r}")

    slots: dict[str, str] = {}
    residuals: list[tuple[int, str]] = []
    pending_states: list[tuple[int, str]] = []
    estado_index: int | None = None
    classified: list[str | None] = [None] * len(segments)

    def assign(slot: str, value: str, index: int) -> None:
        nonlocal fuzzy
        value = value.strip()
        if not value:
            return
        if slot in slots:
            raise Unparseable(f"two values for {slot} in {text!r}",
                              partial=dict(slots))
        slots[slot] = value
        classified[index] = slot

    for index, segment in enumerate(segments):
        body = segment.strip()
        if body.startswith("(") and body.endswith(")"):
            body = body[1:-1].strip()
        label, remainder, label_fixed = _split_label(body, repair=True)
        fuzzy = fuzzy or label_fixed
        if label == "estado":
            uf = _match_uf(remainder)
            if uf is None:
                raise Unparseable(f"unknown state {remainder!r}",
                                  partial=dict(slots))
            if len(remainder.strip()) == 2 and remainder.strip().upper() != uf:
                fuzzy = True
            assign("estado", uf, index)
            estado_index = index
            continue
        if label == "numero":
            parsed = _parse_number_tail(remainder.split())
            if parsed is None:
                raise Unparseable(f"bad number segment {segment!r}",
                                  partial=dict(slots))
            numero, complemento, tail_fuzzy = parsed
            fuzzy = fuzzy or tail_fuzzy
            assign("numero", numero, index)
            if complemento:
                slots.setdefault("complemento", complemento)
            continue
        if label == "complemento":
            remainder, repaired = _repair_complement(remainder)
            fuzzy = fuzzy or repaired
            assign("complemento", remainder, index)
            continue
        if label in ("bairro", "cidade"):
            assign(label, remainder, index)
            continue
        if label == "logradouro":
            body = remainder
            # fall through to content rules with the label's intent
            tokens = body.split()
            street = _street_type_index(tokens, fuzzy=True)
            if street is not None and street[2]:
                tokens[0] = street[1]
                fuzzy = True
            parsed = None
            for i in range(1, len(tokens)):
                parsed = _parse_number_tail(tokens[i:])
                if parsed is not None:
                    assign("logradouro", " ".join(tokens[:i]), index)
                    assign("numero", parsed[0], index)
                    if parsed[1]:
                        slots.setdefault("complemento", parsed[1])
                    fuzzy = fuzzy or parsed[2]
                    break
            if parsed is None:
                assign("logradouro", " ".join(tokens), index)
            continue

        # Unlabeled: content rules.
        if len(body) == 2:
            uf = _match_uf(body)
            if uf is not None:
                if body.upper() != uf:
                    fuzzy = True
                assign("estado", uf, index)
                estado_index = index
                continue
        if fold_key(body) in STATE_NAME_TO_UF:
            # A bare state name might be the city of the same name; the
            # decision waits until all explicit markers are in.
            pending_states.append((index, body))
            continue

        # cidade/UF fused with a bare slash
        if "/" in body and not _SN_RE.match(body):
            left, _, right = body.rpartition("/")
            uf = _match_uf(right.strip())
            if uf is not None and left.strip():
                assign("cidade", left.strip(), index)
                assign("estado", uf, index)
                estado_index = index
                continue

        tokens = body.split()
        street = _street_type_index(tokens, fuzzy=False)
        if street is None:
            repaired = _street_type_index(tokens, fuzzy=True)
            if repaired is not None and "logradouro" not in slots:
                street = repaired
        if street is not None:
            if street[2]:
                tokens[0] = street[1]
                fuzzy = True
            consumed = False
            for i in range(1, len(tokens)):
                parsed = _parse_number_tail(tokens[i:])
                if parsed is not None:
                    assign("logradouro", " ".join(tokens[:i]), index)
                    assign("numero", parsed[0], index)
                    if parsed[1]:
                        slots.setdefault("complemento", parsed[1])
                    fuzzy = fuzzy or parsed[2]
                    consumed = True
                    break
            if not consumed:
                assign("logradouro", " ".join(tokens), index)
            continue

        parsed = _parse_number_tail(tokens)
        if parsed is not None and "numero" not in slots:
            assign("numero", parsed[0], index)
            if parsed[1]:
                slots.setdefault("complemento", parsed[1])
            fuzzy = fuzzy or parsed[2]
            continue

        if "complemento" not in slots:
            candidate, repaired = _repair_complement(body)
            if _is_complement_segment(candidate.split()):
                fuzzy = fuzzy or repaired
                assign("complemento", candidate, index)
                continue

        # trailing UF fused by a space: "Campinas SP"
        if len(tokens) >= 2:
            uf = _match_uf(tokens[-1]) if _TWO_LETTER_RE.match(tokens[-1]) else None
            if uf is not None:
                assign("cidade", " ".join(tokens[:-1]), index)
                assign("estado", uf, index)
                estado_index = index
                continue

        residuals.append((index, body))

    # Of the deferred state-name segments, the last one is the state —
    # unless an explicit marker already claimed it; the rest are city
    # candidates in their original positions.
    if "estado" not in slots and pending_states:
        index, body = pending_states.pop()
        slots["estado"] = STATE_NAME_TO_UF[fold_key(body)]
        estado_index = index
    residuals = sorted(residuals + pending_states)

    # The residual right before the state is the city; the rest fill
    # bairro then cidade in reading order.
    if "cidade" not in slots and estado_index is not None:
        for pos, (index, value) in enumerate(residuals):
            if index == estado_index - 1:
                slots["cidade"] = value
                residuals.pop(pos)
                break
    for slot in ("bairro", "cidade"):
        if slot not in slots and residuals:
            _, value = residuals.pop(0)
            slots[slot] = value
    if residuals:
        missing = {"logradouro", "numero", "bairro", "cidade", "estado"} - set(slots)
        if missing:
            raise Unparseable(
                f"unassigned address parts {[v for _, v in residuals]!r}",
                partial=dict(slots))
        fuzzy = True  # leftover junk ignored

    missing = {"logradouro", "numero", "bairro", "cidade", "estado"} - set(slots)
    if missing:
        raise Unparseable(f"missing address parts {sorted(missing)} in {text!r}",
                          partial=dict(slots))
    try:
        fields = AddressFields(
            logradouro=slots["logradouro"],
            numero=slots["numero"],
            bairro=slots["bairro"],
            cidade=slots["cidade"],
            estado=slots["estado"],
            complemento=slots.get("complemento"),
        )
    except ConfigError as exc:
        raise Unparseable(f"inconsistent address parts: {exc}",
                          partial=dict(slots)) from exc
    return ParseOutcome(canonical=canonical_address(fields), task="address",
                        confidence="fuzzy" if fuzzy else "exact",
                        payload=fields)


# ----------------------------------------------------------------- routing


def _strip_prefix(text: str) -> tuple[str, str | None]:
    stripped = text.lstrip()
    folded = fold_key(stripped[:12])
    if folded.startswith(DATE_PREFIX):
        return stripped[len(DATE_PREFIX):].strip(), "date"
    if folded.startswith(ADDRESS_PREFIX):
        return stripped[len(ADDRESS_PREFIX):].strip(), "address"
    return text, None


def _has_address_cues(text: str) -> bool:
    expanded, _ = _expand_abbreviations(text.strip())
    for segment in _segment_address(expanded):
        tokens = segment.split()
        if not tokens:
            continue
        if fold_key(tokens[0]) in STREET_TYPE_KEYS:
            return True
        label, _rest, _fixed = _split_label(segment)
        if label in ("logradouro", "bairro", "cidade", "estado"):
            return True
        if _TWO_LETTER_RE.match(segment.strip()) and segment.strip().upper() in UFS:
            return True
    return False


def classify(text: str, language: str = "pt") -> str:
    """Route an input string to its task name."""
    body, hint = _strip_prefix(text)
    if hint == "address":
        return "address"
    if hint == "date":
        return normalize_date(body, language).task
    if _has_address_cues(body):
        return "address"
    try:
        return normalize_date(body, language).task
    except Unparseable:
        pass
    try:
        normalize_address(body)
        return "address"
    except Unparseable:
        pass
    raise UnknownTask(f"cannot route {text!r} to a task")


def normalize(text: str, language: str = "pt") -> ParseOutcome:
    """Normalize any supported input, auto-routing by content."""
    body, hint = _strip_prefix(text)
    if hint == "address":
        return normalize_address(body)
    if hint == "date":
        return normalize_date(body, language)
    if _has_address_cues(body):
        return normalize_address(body)
    try:
        return normalize_date(body, language)
    except Unparseable as date_error:
        try:
            return normalize_address(body)
        except Unparseable:
            raise date_error
