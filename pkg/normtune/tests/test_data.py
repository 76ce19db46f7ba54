"""Corpus and manifest readers: happy paths and line-numbered failures."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from normtune.data import (
    Example,
    default_manifest_path,
    read_examples,
    read_manifest,
    train_split,
)
from normtune.errors import DataError


def _write_jsonl(path: Path, rows: list) -> Path:
    path.write_text("\n".join(json.dumps(r) for r in rows) + "\n")
    return path


GOOD_ROW = {"input": "in 5 days", "target": "+5d", "format_id": "en-rel-02"}


def test_reads_generated_corpus(corpora):
    examples = read_examples(corpora["corpus"])
    assert len(examples) == 64
    assert all(isinstance(ex, Example) for ex in examples)
    assert all(ex.input and ex.target and ex.format_id for ex in examples)


def test_blank_lines_are_skipped(tmp_path):
    path = tmp_path / "c.jsonl"
    path.write_text(json.dumps(GOOD_ROW) + "\n\n" + json.dumps(GOOD_ROW) + "\n")
    assert len(read_examples(path)) == 2


def test_corrupt_line_aborts_with_its_line_number(tmp_path):
    path = tmp_path / "c.jsonl"
    path.write_text(
        json.dumps(GOOD_ROW) + "\n" + json.dumps(GOOD_ROW) + "\n" + "{broken\n"
    )
    with pytest.raises(DataError, match="line 3: invalid JSON"):
        read_examples(path)


@pytest.mark.parametrize(
    "row, message",
    [
        ({"input": "x", "target": "y"}, "missing field 'format_id'"),
        ({"input": "x", "format_id": "f"}, "missing field 'target'"),
        ({"input": 5, "target": "y", "format_id": "f"}, "field 'input' must be a string"),
        (["not", "an", "object"], "expected an object"),
    ],
)
def test_bad_rows_report_line_two(tmp_path, row, message):
    path = _write_jsonl(tmp_path / "c.jsonl", [GOOD_ROW, row])
    with pytest.raises(DataError, match=f"line 2: {message}"):
        read_examples(path)


def test_missing_corpus_file(tmp_path):
    with pytest.raises(DataError, match="no such corpus file"):
        read_examples(tmp_path / "absent.jsonl")


def test_reads_generated_manifest(corpora):
    manifest = read_manifest(corpora["manifest"])
    assert len(manifest.train_formats) == 13
    assert len(manifest.test_formats) == 5
    assert not manifest.train_set & manifest.test_set


@pytest.mark.parametrize(
    "payload, message",
    [
        ({"train_formats": ["a"]}, "missing field 'test_formats'"),
        ({"test_formats": ["a"]}, "missing field 'train_formats'"),
        ({"train_formats": "a", "test_formats": []}, "must be a list of strings"),
        ([1, 2], "expected a JSON object"),
    ],
)
def test_bad_manifests_fail_loudly(tmp_path, payload, message):
    path = tmp_path / "m.json"
    path.write_text(json.dumps(payload))
    with pytest.raises(DataError, match=message):
        read_manifest(path)


def test_manifest_with_invalid_json(tmp_path):
    path = tmp_path / "m.json"
    path.write_text("{nope")
    with pytest.raises(DataError, match="invalid JSON"):
        read_manifest(path)


def test_missing_manifest_file(tmp_path):
    with pytest.raises(DataError, match="no such manifest file"):
        read_manifest(tmp_path / "absent.json")


@pytest.mark.parametrize(
    "name, expected",
    [
        ("corpus.jsonl", "corpus.manifest.json"),
        ("corpus.csv", "corpus.manifest.json"),
        ("corpus", "corpus.manifest.json"),
    ],
)
def test_sidecar_manifest_convention(name, expected):
    assert default_manifest_path(Path("d") / name) == Path("d") / expected


def test_train_split_keeps_only_train_formats(mixed_corpus):
    examples = read_examples(mixed_corpus["corpus"])
    manifest = read_manifest(mixed_corpus["manifest"])
    kept = train_split(examples, manifest)
    assert 0 < len(kept) < len(examples)
    assert all(ex.format_id in manifest.train_set for ex in kept)
    dropped = len(examples) - len(kept)
    assert dropped == sum(ex.format_id in manifest.test_set for ex in examples)
