"""Label-preserving OCR-style corruption of record inputs.

Only the surface string is ever touched; the target is the label and is
never modified. ``level`` is the fraction of records corrupted; a record
selected for corruption receives ``ops_per_record`` operator
applications. Corruption of a record is a pure function of
(record content, record index, seed).

Operators:

    swap_similar   replace one char with its look-alike partner
    delete_char    drop one char (never a token's only char)
    insert_char    insert one random [a-z0-9] char
    break_word     insert a space inside a word of length >= 4
    abbreviate     swap a word with its abbreviation, either direction
                   (address records only)

With ops_per_record=1 the character operators keep
Levenshtein(input, corrupted) <= 2; abbreviate is a word-level swap and
is exempt from that bound.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ConfigError, LengthMismatch
from .lexicon import ABBREVIATIONS, CONFUSION_PAIRS, confusion_map
from .records import Record, stable_rng

OPS = ("swap_similar", "delete_char", "insert_char", "break_word", "abbreviate")

_INSERT_ALPHABET = "abcdefghijklmnopqrstuvwxyz0123456789"


def _default_weights() -> dict[str, float]:
    return {op: 1.0 for op in OPS}


@dataclass
class NoiseConfig:
    """Corruption settings; validated on construction."""

    level: float
    seed: int = 0
    ops_per_record: int = 1
    weights: dict[str, float] = field(default_factory=_default_weights)
    confusion: tuple = CONFUSION_PAIRS
    abbreviations: tuple = ABBREVIATIONS

    def __post_init__(self):
        if not 0.0 <= self.level <= 1.0:
            raise ConfigError(f"noise level must be in [0, 1], got {self.level}")
        if self.ops_per_record < 1:
            raise ConfigError("ops_per_record must be >= 1")
        for op in self.weights:
            if op not in OPS:
                raise ConfigError(f"unknown noise op {op!r}")
            if self.weights[op] < 0:
                raise ConfigError(f"negative weight for {op!r}")
        for op in OPS:
            self.weights.setdefault(op, 0.0)
        if not any(w > 0 for w in self.weights.values()):
            raise ConfigError("at least one op must have positive weight")


def _token_spans(text: str) -> list[tuple[int, int]]:
    return [m.span() for m in re.finditer(r"\S+", text)]


def _apply_swap_similar(text: str, rng, table: dict[str, str]) -> str | None:
    positions = [i for i, ch in enumerate(text) if ch.lower() in table]
    if not positions:
        return None
    i = positions[rng.randrange(len(positions))]
    ch = text[i]
    partner = table[ch.lower()]
    if ch.isupper():
        partner = partner.upper()
    return text[:i] + partner + text[i + 1:]


def _apply_delete_char(text: str, rng) -> str | None:
    eligible = []
    for start, end in _token_spans(text):
        if end - start >= 2:
            eligible.extend(range(start, end))
    if not eligible:
        return None
    i = eligible[rng.randrange(len(eligible))]
    return text[:i] + text[i + 1:]


def _apply_insert_char(text: str, rng) -> str | None:
    i = rng.randrange(len(text) + 1)
    ch = _INSERT_ALPHABET[rng.randrange(len(_INSERT_ALPHABET))]
    return text[:i] + ch + text[i:]


def _apply_break_word(text: str, rng) -> str | None:
    spans = [(s, e) for s, e in _token_spans(text) if e - s >= 4]
    if not spans:
        return None
    start, end = spans[rng.randrange(len(spans))]
    offset = rng.randrange(1, end - start)
    i = start + offset
    return text[:i] + " " + text[i:]


def _apply_abbreviate(text: str, rng, pairs) -> str | None:
    # Collect every match of either side of every pair, then swap one.
    candidates: list[tuple[int, int, str]] = []
    for word, abbr in pairs:
        for m in re.finditer(rf"\b{re.escape(word)}(?!\w)", text):
            candidates.append((m.start(), m.end(), abbr))
        for m in re.finditer(rf"\b{re.escape(abbr)}(?!\w)", text):
            candidates.append((m.start(), m.end(), word))
    if not candidates:
        return None
    candidates.sort()
    start, end, replacement = candidates[rng.randrange(len(candidates))]
    return text[:start] + replacement + text[end:]


def _apply_op(op: str, text: str, rng, config: NoiseConfig) -> str | None:
    if op == "swap_similar":
        return _apply_swap_similar(text, rng, confusion_map(config.confusion))
    if op == "delete_char":
        return _apply_delete_char(text, rng)
    if op == "insert_char":
        return _apply_insert_char(text, rng)
    if op == "break_word":
        return _apply_break_word(text, rng)
    if op == "abbreviate":
        return _apply_abbreviate(text, rng, config.abbreviations)
    raise ConfigError(f"unknown noise op {op!r}")


def _weighted_pick(rng, weights: list[tuple[str, float]]) -> str:
    total = sum(w for _, w in weights)
    x = rng.random() * total
    acc = 0.0
    for op, w in weights:
        acc += w
        if x < acc:
            return op
    return weights[-1][0]


def corrupt(record: Record, config: NoiseConfig, index: int = 0) -> Record:
    """Return the record, possibly with a corrupted input.

    The target and identity fields are copied through untouched. When no
    operator can find an eligible position, the next operator is tried;
    if none applies the record passes through with noised=False.
    """
    rng = stable_rng("noise", config.seed, index, record.input)
    if rng.random() >= config.level:
        return record

    text = record.input
    for _ in range(config.ops_per_record):
        available = [(op, w) for op, w in config.weights.items()
                     if w > 0 and (op != "abbreviate" or record.task == "address")]
        while available:
            op = _weighted_pick(rng, available)
            result = _apply_op(op, text, rng, config)
            if result is not None:
                text = result
                break
            available = [(o, w) for o, w in available if o != op]

    if text == record.input:
        return record
    return Record(
        input=text,
        target=record.target,
        format_id=record.format_id,
        language=record.language,
        task=record.task,
        noised=True,
    )


def corrupt_many(records: list[Record], config: NoiseConfig,
                 start_index: int = 0) -> list[Record]:
    """Corrupt a batch, indexing records from start_index."""
    return [corrupt(rec, config, start_index + i) for i, rec in enumerate(records)]


def measure_noise(before: list[str], after: list[str]) -> float:
    """Fraction of paired strings that differ; lengths must match."""
    if len(before) != len(after):
        raise LengthMismatch(f"{len(before)} inputs vs {len(after)} outputs")
    if not before:
        return 0.0
    changed = sum(1 for a, b in zip(before, after) if a != b)
    return changed / len(before)
