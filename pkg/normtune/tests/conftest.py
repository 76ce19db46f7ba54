"""Shared fixtures: corpora generated through the companion CLI.

The suite talks to the corpus toolkit only through its command line and the
files it writes — the same boundary the package itself observes.
"""

from __future__ import annotations

import shutil
import subprocess

import pytest

from normtune.config import TrainConfig
from normtune.training import train

NORMKIT = shutil.which("normkit")


def run_normkit(*args: str) -> subprocess.CompletedProcess:
    assert NORMKIT, "the companion `normkit` CLI must be installed to run these tests"
    proc = subprocess.run(
        [NORMKIT, *args], capture_output=True, text=True, timeout=300
    )
    assert proc.returncode == 0, f"normkit {' '.join(args)} failed:\n{proc.stderr}"
    return proc


@pytest.fixture(scope="session")
def corpora(tmp_path_factory):
    """A small train-split corpus plus its sidecar manifest."""
    root = tmp_path_factory.mktemp("corpora")
    corpus = root / "rel64.jsonl"
    run_normkit(
        "gen", "dates", "--kind", "relative", "--lang", "en",
        "--count", "64", "--seed", "13", "--format-subset", "train",
        "--out", str(corpus), "--quiet",
    )
    return {"corpus": corpus, "manifest": root / "rel64.manifest.json"}


@pytest.fixture(scope="session")
def mixed_corpus(tmp_path_factory):
    """A corpus drawn from all formats (train and test splits mixed)."""
    root = tmp_path_factory.mktemp("mixed")
    corpus = root / "mixed.jsonl"
    run_normkit(
        "gen", "dates", "--kind", "relative", "--lang", "en",
        "--count", "90", "--seed", "19", "--out", str(corpus), "--quiet",
    )
    return {"corpus": corpus, "manifest": root / "mixed.manifest.json"}


@pytest.fixture(scope="session")
def smoke_corpus_500(tmp_path_factory):
    """A 500-row train-split corpus for training-curve checks."""
    root = tmp_path_factory.mktemp("smoke500")
    corpus = root / "rel500.jsonl"
    run_normkit(
        "gen", "dates", "--kind", "relative", "--lang", "en",
        "--count", "500", "--seed", "23", "--format-subset", "train",
        "--out", str(corpus), "--quiet",
    )
    return {"corpus": corpus, "manifest": root / "rel500.manifest.json"}


@pytest.fixture(scope="session")
def init_checkpoint(tmp_path_factory, corpora):
    """A checkpoint holding untouched seeded-random weights (zero epochs)."""
    directory = tmp_path_factory.mktemp("ckpt") / "init"
    config = TrainConfig(checkpoint_dir=str(directory), epochs=0, seed=5)
    train(corpora["corpus"], corpora["manifest"], config)
    return directory
