"""Training configuration.

Defaults follow the documented recipe: mini-batches of 16 (4 recommended for
incomplete-date corpora), learning rate 5e-5 with decoupled weight decay
(AdamW), and maximum input/output lengths of 48/16 tokens for dates and
128/128 for addresses.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError

MODEL_PRESETS = ("tiny", "small")
LR_SCHEDULES = ("constant", "linear")


@dataclass
class TrainConfig:
    """Hyperparameters and bookkeeping for one training run."""

    checkpoint_dir: str = "checkpoint"
    batch_size: int = 16
    learning_rate: float = 5e-5
    weight_decay: float = 0.01
    epochs: int = 3
    max_steps: int | None = None
    max_input_tokens: int = 48
    max_output_tokens: int = 16
    model: str = "tiny"
    dropout_rate: float = 0.1
    lr_schedule: str = "constant"
    grad_clip: float | None = 1.0
    seed: int = 0
    log_every: int = 1

    def __post_init__(self) -> None:
        if self.batch_size < 1:
            raise ConfigError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.learning_rate <= 0:
            raise ConfigError(f"learning_rate must be > 0, got {self.learning_rate}")
        if self.weight_decay < 0:
            raise ConfigError(f"weight_decay must be >= 0, got {self.weight_decay}")
        if self.epochs < 0:
            raise ConfigError(f"epochs must be >= 0, got {self.epochs}")
        if self.max_steps is not None and self.max_steps < 0:
            raise ConfigError(f"max_steps must be >= 0, got {self.max_steps}")
        if self.max_input_tokens < 1 or self.max_output_tokens < 1:
            raise ConfigError("token length limits must be >= 1")
        if self.model not in MODEL_PRESETS:
            raise ConfigError(
                f"unknown model preset {self.model!r}; choose from {MODEL_PRESETS}"
            )
        if not 0.0 <= self.dropout_rate < 1.0:
            raise ConfigError(f"dropout_rate must be in [0, 1), got {self.dropout_rate}")
        if self.lr_schedule not in LR_SCHEDULES:
            raise ConfigError(
                f"unknown lr_schedule {self.lr_schedule!r}; choose from {LR_SCHEDULES}"
            )
        if self.grad_clip is not None and self.grad_clip <= 0:
            raise ConfigError(f"grad_clip must be > 0 or None, got {self.grad_clip}")
        if self.log_every < 1:
            raise ConfigError(f"log_every must be >= 1, got {self.log_every}")

    @classmethod
    def for_addresses(cls, **overrides) -> "TrainConfig":
        """Defaults for address corpora: 128-token input and output windows."""
        overrides.setdefault("max_input_tokens", 128)
        overrides.setdefault("max_output_tokens", 128)
        return cls(**overrides)

    @classmethod
    def for_incomplete_dates(cls, **overrides) -> "TrainConfig":
        """Defaults for incomplete-date corpora: mini-batch of 4."""
        overrides.setdefault("batch_size", 4)
        return cls(**overrides)

    def to_dict(self) -> dict:
        out = dataclasses.asdict(self)
        out["checkpoint_dir"] = str(self.checkpoint_dir)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "TrainConfig":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config fields: {sorted(unknown)}")
        return cls(**data)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "TrainConfig":
        try:
            data = json.loads(Path(path).read_text())
        except FileNotFoundError:
            raise ConfigError(f"no such config file: {path}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"bad config file {path}: {exc}") from None
        return cls.from_dict(data)
