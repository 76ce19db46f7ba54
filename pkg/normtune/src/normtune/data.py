"""Readers for the corpus and manifest files produced by the companion CLI.

The exchange formats are plain files: a JSONL corpus (one object per line
with at least ``input``, ``target``, and ``format_id`` string fields) and a
JSON split manifest with ``train_formats`` / ``test_formats`` arrays.  This
module parses them independently so the two packages stay coupled only
through the files themselves.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import DataError

_REQUIRED_FIELDS = ("input", "target", "format_id")


@dataclass(frozen=True)
class Example:
    """One supervised pair from a corpus file."""

    input: str
    target: str
    format_id: str


def read_examples(path: str | Path) -> list[Example]:
    """Parse a JSONL corpus; a corrupt line aborts with its line number."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise DataError(f"no such corpus file: {path}") from None
    examples: list[Example] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise DataError(f"{path}: line {lineno}: invalid JSON: {exc}") from None
        if not isinstance(obj, dict):
            raise DataError(f"{path}: line {lineno}: expected an object, got {type(obj).__name__}")
        for name in _REQUIRED_FIELDS:
            if name not in obj:
                raise DataError(f"{path}: line {lineno}: missing field {name!r}")
            if not isinstance(obj[name], str):
                raise DataError(
                    f"{path}: line {lineno}: field {name!r} must be a string, "
                    f"got {type(obj[name]).__name__}"
                )
        examples.append(Example(obj["input"], obj["target"], obj["format_id"]))
    return examples


@dataclass(frozen=True)
class Manifest:
    """Train/test format split read from a manifest JSON file."""

    train_formats: tuple[str, ...]
    test_formats: tuple[str, ...]

    @property
    def train_set(self) -> frozenset[str]:
        return frozenset(self.train_formats)

    @property
    def test_set(self) -> frozenset[str]:
        return frozenset(self.test_formats)


def read_manifest(path: str | Path) -> Manifest:
    """Parse a split manifest; missing fields abort with a clear message."""
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise DataError(f"no such manifest file: {path}") from None
    except json.JSONDecodeError as exc:
        raise DataError(f"bad manifest {path}: invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise DataError(f"bad manifest {path}: expected a JSON object")
    parts = []
    for name in ("train_formats", "test_formats"):
        if name not in data:
            raise DataError(f"bad manifest {path}: missing field {name!r}")
        value = data[name]
        if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
            raise DataError(f"bad manifest {path}: field {name!r} must be a list of strings")
        parts.append(tuple(value))
    return Manifest(train_formats=parts[0], test_formats=parts[1])


def default_manifest_path(corpus: str | Path) -> Path:
    """Sidecar manifest convention: <stem>.manifest.json next to the corpus."""
    corpus = Path(corpus)
    if corpus.suffix in {".jsonl", ".csv", ".json"}:
        return corpus.with_suffix(".manifest.json")
    return corpus.with_name(corpus.name + ".manifest.json")


def train_split(examples: list[Example], manifest: Manifest) -> list[Example]:
    """Keep only examples whose format belongs to the train split."""
    allowed = manifest.train_set
    return [ex for ex in examples if ex.format_id in allowed]
