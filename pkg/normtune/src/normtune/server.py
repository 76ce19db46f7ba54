"""Line-delimited JSON serving loop.

Requests arrive on stdin, one JSON object per line: ``{"id": <int>,
"input": <str>}``.  Each valid request is answered exactly once with
``{"id": <same>, "output": <greedy decode>}``; special tokens are stripped
before emission.  A malformed request that still carries an ``id`` gets an
error response echoing that id; lines with no recoverable id are noted on
stderr and skipped.  The loop never raises on bad input and exits cleanly
at end-of-stream, so callers may pipeline requests freely.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from pathlib import Path

import torch

from .model import load_checkpoint


@dataclass
class ServeStats:
    """Counts reported after the stream closes."""

    answered: int = 0
    errors: int = 0
    skipped: int = 0


def _respond(stdout, payload: dict) -> None:
    stdout.write(json.dumps(payload, ensure_ascii=False) + "\n")
    stdout.flush()


def serve(
    checkpoint_dir: str | Path,
    stdin=None,
    stdout=None,
    stderr=None,
) -> ServeStats:
    """Answer requests from ``stdin`` until end-of-stream."""
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr

    model, config = load_checkpoint(checkpoint_dir)
    tokenizer = _tokenizer()
    stats = ServeStats()

    for lineno, line in enumerate(stdin, start=1):
        if not line.strip():
            stats.skipped += 1
            continue
        try:
            request = json.loads(line)
        except json.JSONDecodeError as exc:
            print(f"request line {lineno}: invalid JSON: {exc}", file=stderr)
            stats.skipped += 1
            continue
        if not isinstance(request, dict) or "id" not in request:
            print(f"request line {lineno}: no id field; dropped", file=stderr)
            stats.skipped += 1
            continue
        request_id = request["id"]
        problem = _validate(request)
        if problem is not None:
            _respond(stdout, {"id": request_id, "error": problem})
            stats.errors += 1
            continue
        output = _predict(model, tokenizer, config, request["input"])
        _respond(stdout, {"id": request_id, "output": output})
        stats.answered += 1
    return stats


def _tokenizer():
    from .model import build_tokenizer

    return build_tokenizer()


def _validate(request: dict) -> str | None:
    """Return an error message for a malformed request, or None if valid."""
    request_id = request["id"]
    if isinstance(request_id, bool) or not isinstance(request_id, int):
        return f"field 'id' must be an integer, got {type(request_id).__name__}"
    if "input" not in request:
        return "missing field 'input'"
    if not isinstance(request["input"], str):
        return f"field 'input' must be a string, got {type(request['input']).__name__}"
    return None


def _predict(model, tokenizer, config, text: str) -> str:
    """Greedy decode; special tokens are stripped from the returned text."""
    enc = tokenizer(
        [text],
        truncation=True,
        max_length=config.max_input_tokens,
        return_tensors="pt",
    )
    with torch.no_grad():
        generated = model.generate(
            input_ids=enc.input_ids,
            attention_mask=enc.attention_mask,
            max_new_tokens=config.max_output_tokens,
            do_sample=False,
            num_beams=1,
        )
    return tokenizer.decode(generated[0], skip_special_tokens=True)
