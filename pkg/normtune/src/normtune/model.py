"""Model and tokenizer construction plus checkpoint persistence.

The tokenizer is byte-level, built algorithmically with no vocabulary file,
so everything here works without network access.  Weights start from a
seeded random initialization; ``load_checkpoint`` restores a directory
written by ``save_checkpoint``.
"""

from __future__ import annotations

import json
from pathlib import Path

import torch
from transformers import ByT5Tokenizer, T5Config, T5ForConditionalGeneration
from transformers.utils import logging as hf_logging

from .config import TrainConfig
from .errors import DataError

hf_logging.disable_progress_bar()

_PRESET_SHAPES = {
    # name: (d_model, d_kv, d_ff, layers, heads)
    "tiny": (128, 32, 256, 2, 4),
    "small": (256, 64, 512, 4, 4),
}

TRAIN_CONFIG_FILE = "train_config.json"
TRAINING_LOG_FILE = "training_log.jsonl"


def build_tokenizer() -> ByT5Tokenizer:
    """Byte-level tokenizer: 3 specials + 256 bytes + 125 sentinel ids = 384."""
    return ByT5Tokenizer()


def build_model(preset: str, dropout_rate: float, seed: int) -> T5ForConditionalGeneration:
    """Deterministically initialize an encoder-decoder for the given preset."""
    d_model, d_kv, d_ff, layers, heads = _PRESET_SHAPES[preset]
    config = T5Config(
        vocab_size=len(build_tokenizer().get_vocab()),
        d_model=d_model,
        d_kv=d_kv,
        d_ff=d_ff,
        num_layers=layers,
        num_decoder_layers=layers,
        num_heads=heads,
        dropout_rate=dropout_rate,
        pad_token_id=0,
        eos_token_id=1,
        decoder_start_token_id=0,
    )
    torch.manual_seed(seed)
    return T5ForConditionalGeneration(config)


def save_checkpoint(
    model: T5ForConditionalGeneration,
    config: TrainConfig,
    log: list[dict],
    directory: str | Path,
) -> Path:
    """Write weights, the training config, and the per-step loss log."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    model.save_pretrained(directory)
    config.save(directory / TRAIN_CONFIG_FILE)
    with open(directory / TRAINING_LOG_FILE, "w", encoding="utf-8") as fh:
        for entry in log:
            fh.write(json.dumps(entry) + "\n")
    return directory


def load_checkpoint(directory: str | Path) -> tuple[T5ForConditionalGeneration, TrainConfig]:
    """Restore a model and its training config from a checkpoint directory."""
    directory = Path(directory)
    config_path = directory / TRAIN_CONFIG_FILE
    if not directory.is_dir() or not config_path.exists():
        raise DataError(f"no checkpoint at {directory}")
    config = TrainConfig.load(config_path)
    model = T5ForConditionalGeneration.from_pretrained(directory)
    model.eval()
    return model, config


def read_training_log(directory: str | Path) -> list[dict]:
    """Parse the per-step loss log written alongside a checkpoint."""
    path = Path(directory) / TRAINING_LOG_FILE
    if not path.exists():
        raise DataError(f"no training log at {path}")
    return [json.loads(line) for line in path.read_text().splitlines() if line.strip()]
