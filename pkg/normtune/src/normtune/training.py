"""Seeded fine-tuning loop over a JSONL corpus.

Only examples whose format belongs to the manifest's train split are used.
Optimization is AdamW (decoupled weight decay) with per-step loss logging;
the same seed reproduces the same shuffle order, initialization, and loss
trajectory on the same hardware.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path

import torch

from .config import TrainConfig
from .data import Example, read_examples, read_manifest, train_split
from .errors import DataError, TuneError
from .model import build_model, build_tokenizer, save_checkpoint

_OOM_GUIDANCE = (
    "out of memory during training; reduce the batch size (--batch), "
    "shorten the token limits, or switch to the 'tiny' model preset"
)


@dataclass(frozen=True)
class TrainResult:
    """Summary of one training run."""

    checkpoint_dir: Path
    steps: int
    n_train_examples: int
    n_dropped_examples: int
    losses: list[float]

    @property
    def final_loss(self) -> float | None:
        return self.losses[-1] if self.losses else None


def _batches(order: list[int], batch_size: int) -> list[list[int]]:
    return [order[i : i + batch_size] for i in range(0, len(order), batch_size)]


def _planned_steps(config: TrainConfig, n_examples: int) -> int:
    per_epoch = -(-n_examples // config.batch_size)
    total = per_epoch * config.epochs
    if config.max_steps is not None:
        total = min(total, config.max_steps)
    return total


def _make_scheduler(optimizer, config: TrainConfig, n_examples: int):
    if config.lr_schedule == "constant":
        return None
    total = max(1, _planned_steps(config, n_examples))
    # Linear decay from the configured rate to zero across the planned run.
    decay = lambda step: max(0.0, 1.0 - step / total)  # noqa: E731
    return torch.optim.lr_scheduler.LambdaLR(optimizer, decay)


def _encode_batch(
    tokenizer, batch: list[Example], config: TrainConfig
) -> tuple[torch.Tensor, torch.Tensor, torch.Tensor]:
    enc = tokenizer(
        [ex.input for ex in batch],
        padding=True,
        truncation=True,
        max_length=config.max_input_tokens,
        return_tensors="pt",
    )
    labels = tokenizer(
        [ex.target for ex in batch],
        padding=True,
        truncation=True,
        max_length=config.max_output_tokens,
        return_tensors="pt",
    ).input_ids
    labels[labels == tokenizer.pad_token_id] = -100
    return enc.input_ids, enc.attention_mask, labels


def train(
    corpus: str | Path,
    manifest: str | Path,
    config: TrainConfig,
    progress=None,
) -> TrainResult:
    """Fine-tune on the train-split rows of ``corpus`` and save a checkpoint.

    ``progress``, if given, is called as ``progress(step, epoch, loss)`` after
    every optimization step.
    """
    examples = read_examples(corpus)
    split = read_manifest(manifest)
    kept = train_split(examples, split)
    if not kept:
        raise DataError(
            f"corpus {corpus} contains no examples from the manifest's train split"
        )

    tokenizer = build_tokenizer()
    model = build_model(config.model, config.dropout_rate, config.seed)
    model.train()
    optimizer = torch.optim.AdamW(
        model.parameters(), lr=config.learning_rate, weight_decay=config.weight_decay
    )
    scheduler = _make_scheduler(optimizer, config, n_examples=len(kept))
    shuffler = random.Random(config.seed)

    log: list[dict] = []
    losses: list[float] = []
    step = 0
    budget = config.max_steps
    try:
        for epoch in range(config.epochs):
            order = list(range(len(kept)))
            shuffler.shuffle(order)
            for batch_ids in _batches(order, config.batch_size):
                if budget is not None and step >= budget:
                    break
                batch = [kept[i] for i in batch_ids]
                input_ids, attention_mask, labels = _encode_batch(tokenizer, batch, config)
                out = model(input_ids=input_ids, attention_mask=attention_mask, labels=labels)
                out.loss.backward()
                if config.grad_clip is not None:
                    torch.nn.utils.clip_grad_norm_(model.parameters(), config.grad_clip)
                optimizer.step()
                if scheduler is not None:
                    scheduler.step()
                optimizer.zero_grad()
                loss = out.loss.item()
                losses.append(loss)
                if step % config.log_every == 0:
                    log.append({"step": step, "epoch": epoch, "loss": loss})
                if progress is not None:
                    progress(step, epoch, loss)
                step += 1
            if budget is not None and step >= budget:
                break
    except RuntimeError as exc:
        if "out of memory" in str(exc).lower():
            raise TuneError(_OOM_GUIDANCE) from exc
        raise

    model.eval()
    checkpoint_dir = save_checkpoint(model, config, log, config.checkpoint_dir)
    return TrainResult(
        checkpoint_dir=checkpoint_dir,
        steps=step,
        n_train_examples=len(kept),
        n_dropped_examples=len(examples) - len(kept),
        losses=losses,
    )
