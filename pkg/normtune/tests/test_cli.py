"""Command-line surface: flags, exit codes, and the train artifacts."""

from __future__ import annotations

import subprocess

import pytest

from normtune.cli import EXIT_DATA, EXIT_OK, EXIT_USAGE, main


def test_version_flag_via_console_script():
    proc = subprocess.run(["normtune", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "normtune 0.1.0"


def test_train_writes_a_checkpoint(tmp_path, corpora, capsys):
    ckpt = tmp_path / "ckpt"
    code = main(
        [
            "train", "--corpus", str(corpora["corpus"]), "--out", str(ckpt),
            "--batch", "32", "--epochs", "1", "--max-steps", "2",
        ]
    )
    assert code == EXIT_OK
    assert (ckpt / "train_config.json").exists()
    out = capsys.readouterr().out
    assert "trained 2 steps" in out


def test_quiet_suppresses_the_summary(tmp_path, corpora, capsys):
    ckpt = tmp_path / "q"
    code = main(
        [
            "train", "--corpus", str(corpora["corpus"]), "--out", str(ckpt),
            "--epochs", "0", "--quiet",
        ]
    )
    assert code == EXIT_OK
    assert capsys.readouterr().out == ""


@pytest.mark.parametrize(
    "argv",
    [
        ["train", "--corpus", "c.jsonl", "--out", "d", "--batch", "0"],
        ["train", "--corpus", "c.jsonl", "--out", "d", "--epochs", "-1"],
        ["train", "--corpus", "c.jsonl", "--out", "d", "--lr", "-0.5"],
        ["train", "--corpus", "c.jsonl", "--out", "d", "--model", "huge"],
        ["train", "--corpus", "c.jsonl", "--out", "d", "--lr-schedule", "warped"],
        ["train"],
        ["serve"],
        ["--no-such-flag"],
    ],
)
def test_bad_usage_exits_one(argv, capsys):
    with pytest.raises(SystemExit) as exc_info:
        code = main(argv)
        raise SystemExit(code)
    assert exc_info.value.code == EXIT_USAGE


def test_missing_corpus_exits_two(tmp_path, capsys):
    code = main(
        ["train", "--corpus", str(tmp_path / "absent.jsonl"), "--out", str(tmp_path / "d")]
    )
    assert code == EXIT_DATA
    assert "data error" in capsys.readouterr().err


def test_corrupt_corpus_exits_two_with_line_number(tmp_path, capsys):
    corpus = tmp_path / "bad.jsonl"
    corpus.write_text('{"input": "x", "target": "y", "format_id": "f"}\n{oops\n')
    manifest = tmp_path / "bad.manifest.json"
    manifest.write_text('{"train_formats": ["f"], "test_formats": []}')
    code = main(["train", "--corpus", str(corpus), "--out", str(tmp_path / "d")])
    assert code == EXIT_DATA
    assert "line 2" in capsys.readouterr().err


def test_missing_manifest_exits_two(tmp_path, corpora, capsys):
    code = main(
        [
            "train", "--corpus", str(corpora["corpus"]),
            "--manifest", str(tmp_path / "absent.json"),
            "--out", str(tmp_path / "d"),
        ]
    )
    assert code == EXIT_DATA
    assert "no such manifest" in capsys.readouterr().err


def test_serve_with_missing_checkpoint_exits_two(tmp_path, capsys):
    code = main(["serve", "--checkpoint", str(tmp_path / "absent")])
    assert code == EXIT_DATA
    assert "no checkpoint" in capsys.readouterr().err
