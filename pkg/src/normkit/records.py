"""Record type, deterministic RNG derivation, and corpus file IO.

A corpus is a sequence of records. On disk the native format is JSONL
(one JSON object per line, UTF-8, non-ASCII kept literal); CSV export is
provided for spreadsheet triage. Field names are part of the public
contract and never change:

    input, target, format_id, language, task, noised
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import random
from dataclasses import dataclass, field, asdict
from pathlib import Path
from typing import Iterable, Iterator, TextIO

from .errors import ConfigError

TASKS = ("date_complete", "date_incomplete", "date_relative", "address")
LANGUAGES = ("pt", "en")

RECORD_FIELDS = ("input", "target", "format_id", "language", "task", "noised")


def stable_rng(*parts: object) -> random.Random:
    """Return a ``random.Random`` seeded only by the given parts.

    Process-independent (``hash()`` on str is salted per process, so it is
    useless here): the parts are joined into a string, digested with
    sha256, and the digest seeds the generator. Identical parts always
    produce an identical stream, on any machine.
    """
    key = ":".join(str(p) for p in parts)
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


@dataclass
class Record:
    """One corpus example: a surface string and its canonical target."""

    input: str
    target: str
    format_id: str
    language: str
    task: str
    noised: bool = False

    def __post_init__(self):
        if self.language not in LANGUAGES:
            raise ConfigError(f"unknown language {self.language!r}")
        if self.task not in TASKS:
            raise ConfigError(f"unknown task {self.task!r}")

    def to_dict(self) -> dict:
        return {name: getattr(self, name) for name in RECORD_FIELDS}

    @classmethod
    def from_dict(cls, data: dict) -> "Record":
        try:
            return cls(
                input=data["input"],
                target=data["target"],
                format_id=data["format_id"],
                language=data["language"],
                task=data["task"],
                noised=bool(data["noised"]),
            )
        except KeyError as exc:
            raise ConfigError(f"record is missing field {exc.args[0]!r}") from exc


def write_jsonl(records: Iterable[Record], dest: str | Path | TextIO) -> int:
    """Write records as JSONL. Returns the number of records written."""
    n = 0
    with _open_for_write(dest) as fh:
        for rec in records:
            fh.write(json.dumps(rec.to_dict(), ensure_ascii=False))
            fh.write("\n")
            n += 1
    return n


def read_jsonl(source: str | Path | TextIO) -> list[Record]:
    """Read a JSONL corpus into memory."""
    out: list[Record] = []
    with _open_for_read(source) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                data = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"line {lineno}: invalid JSON: {exc}") from exc
            out.append(Record.from_dict(data))
    return out


def iter_jsonl(source: str | Path | TextIO) -> Iterator[Record]:
    """Stream a JSONL corpus without holding it all in memory."""
    with _open_for_read(source) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                data = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"line {lineno}: invalid JSON: {exc}") from exc
            yield Record.from_dict(data)


def write_csv(records: Iterable[Record], dest: str | Path | TextIO) -> int:
    """Write records as CSV with a header row. Returns the record count."""
    n = 0
    with _open_for_write(dest, newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(RECORD_FIELDS)
        for rec in records:
            row = rec.to_dict()
            writer.writerow(
                [row[k] if k != "noised" else ("true" if row[k] else "false") for k in RECORD_FIELDS]
            )
            n += 1
    return n


class _NullCtx:
    """Wrap an already-open file object so ``with`` does not close it."""

    def __init__(self, fh):
        self.fh = fh

    def __enter__(self):
        return self.fh

    def __exit__(self, *exc):
        return False


def _open_for_write(dest, newline=None):
    if isinstance(dest, (str, Path)):
        return open(dest, "w", encoding="utf-8", newline=newline)
    return _NullCtx(dest)


def _open_for_read(source):
    if isinstance(source, (str, Path)):
        return open(source, "r", encoding="utf-8")
    return _NullCtx(source)


@dataclass
class SplitManifest:
    """Which format ids are train vs test, plus how they were chosen.

    ``extra`` carries whatever generation settings are needed to
    regenerate or bucket the corpus (year range, counts, noise level...).
    The four stable top-level keys always serialize first, in order.
    """

    train_formats: list[str]
    test_formats: list[str]
    seed: int
    kind: str
    language: str
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        overlap = set(self.train_formats) & set(self.test_formats)
        if overlap:
            raise ConfigError(f"formats in both splits: {sorted(overlap)}")

    @property
    def all_formats(self) -> list[str]:
        return list(self.train_formats) + list(self.test_formats)

    def to_dict(self) -> dict:
        data = {
            "train_formats": list(self.train_formats),
            "test_formats": list(self.test_formats),
            "seed": self.seed,
            "kind": self.kind,
            "language": self.language,
        }
        for key, value in self.extra.items():
            if key not in data:
                data[key] = value
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "SplitManifest":
        try:
            core = {
                "train_formats": list(data["train_formats"]),
                "test_formats": list(data["test_formats"]),
                "seed": int(data["seed"]),
                "kind": data["kind"],
                "language": data["language"],
            }
        except KeyError as exc:
            raise ConfigError(f"manifest is missing field {exc.args[0]!r}") from exc
        extra = {k: v for k, v in data.items() if k not in core}
        return cls(**core, extra=extra)

    @classmethod
    def from_json(cls, text: str) -> "SplitManifest":
        return cls.from_dict(json.loads(text))

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "SplitManifest":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))
