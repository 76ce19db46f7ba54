"""Exact-match evaluation over pluggable normalizer backends.

Scoring is strict: a prediction counts only when it equals the target
byte for byte (one trailing newline on either side is forgiven, nothing
else). Backends are either the built-in rule normalizer or any external
process speaking newline-delimited JSON on stdin/stdout:

    request   {"id": 0, "input": "15 de janeiro de 2021"}
    response  {"id": 0, "output": "15/01/2021"}

Responses may arrive out of order; at most ``max_in_flight`` requests
are outstanding. A request unanswered within the timeout is scored as
wrong. If the process dies early, evaluation stops and the partial
report travels inside the BackendCrash error.
"""

from __future__ import annotations

import hashlib
import json
import re
import shlex
import subprocess
import threading
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone

from .errors import BackendCrash, ConfigError, ProtocolViolation, Unparseable
from .normalizer import normalize
from .records import Record, SplitManifest

__all__ = [
    "exact_match", "RulesBackend", "EchoBackend", "ExternalBackend",
    "EvalReport", "BucketRow", "evaluate", "corpus_digest",
]


def exact_match(prediction: str, target: str) -> bool:
    """Byte equality after forgiving one trailing newline per side."""
    return prediction.removesuffix("\n") == target.removesuffix("\n")


def corpus_digest(records: list[Record]) -> str:
    """Stable fingerprint of a record list, for report provenance."""
    h = hashlib.sha256()
    for record in records:
        line = json.dumps(record.to_dict(), ensure_ascii=False, sort_keys=True)
        h.update(line.encode("utf-8"))
        h.update(b"\n")
    return h.hexdigest()


# ------------------------------------------------------------------ backends


class RulesBackend:
    """The built-in rule normalizer; unparseable inputs predict ''."""

    id = "builtin_rules"

    def run(self, records: list[Record]) -> tuple[list[str | None], dict]:
        predictions: list[str | None] = []
        for record in records:
            try:
                predictions.append(normalize(record.input, record.language).canonical)
            except Unparseable:
                predictions.append("")
        return predictions, {}


class EchoBackend:
    """Predicts the input unchanged — scores the already-canonical share."""

    id = "echo"

    def run(self, records: list[Record]) -> tuple[list[str | None], dict]:
        return [record.input for record in records], {}


class ExternalBackend:
    """One external process driven over the NDJSON line protocol."""

    def __init__(self, command: str | list[str], *, timeout: float = 30.0,
                 max_in_flight: int = 32):
        self.argv = shlex.split(command) if isinstance(command, str) else list(command)
        if not self.argv:
            raise ConfigError("external backend needs a command")
        if timeout <= 0:
            raise ConfigError(f"timeout must be positive, got {timeout}")
        if max_in_flight < 1:
            raise ConfigError(f"max_in_flight must be >= 1, got {max_in_flight}")
        self.timeout = timeout
        self.max_in_flight = max_in_flight
        self.id = "external:" + " ".join(self.argv)

    def run(self, records: list[Record]) -> tuple[list[str | None], dict]:
        n = len(records)
        predictions: list[str | None] = [None] * n
        meta: dict = {"timeouts": 0, "crashed": False, "returncode": None}
        if n == 0:
            return predictions, meta

        proc = subprocess.Popen(
            self.argv, stdin=subprocess.PIPE, stdout=subprocess.PIPE,
            text=True, encoding="utf-8", bufsize=1)
        cond = threading.Condition()
        responses: dict[int, str] = {}
        violation: list[str | None] = [None]
        eof = [False]
        sent: set[int] = set()

        def read_loop() -> None:
            try:
                for line in proc.stdout:
                    line = line.strip()
                    if not line:
                        continue
                    problem = None
                    rid = output = None
                    try:
                        obj = json.loads(line)
                    except json.JSONDecodeError:
                        problem = "response is not valid JSON"
                    else:
                        if not isinstance(obj, dict):
                            problem = "response is not a JSON object"
                        else:
                            rid, output = obj.get("id"), obj.get("output")
                            if not isinstance(rid, int) or isinstance(rid, bool):
                                problem = "response id is not an integer"
                            elif not isinstance(output, str):
                                problem = "response output is not a string"
                    with cond:
                        if problem is None:
                            if rid not in sent:
                                problem = f"response for unknown id {rid}"
                            elif rid in responses or predictions[rid] is not None:
                                problem = f"duplicate response for id {rid}"
                        if problem is not None:
                            violation[0] = f"{problem}: {line[:200]}"
                            cond.notify_all()
                            return
                        responses[rid] = output
                        cond.notify_all()
            finally:
                with cond:
                    eof[0] = True
                    cond.notify_all()

        reader = threading.Thread(target=read_loop, daemon=True)
        reader.start()

        outstanding: dict[int, float] = {}
        next_send = 0
        stdin_open = True
        crashed = False
        try:
            while True:
                with cond:
                    for rid in list(responses):
                        if rid in outstanding:
                            predictions[rid] = responses.pop(rid)
                            del outstanding[rid]
                        else:
                            responses.pop(rid)  # timed out; already scored wrong
                    if violation[0] is not None:
                        raise ProtocolViolation(violation[0])
                    now = time.monotonic()
                    for rid, deadline in list(outstanding.items()):
                        if now >= deadline:
                            del outstanding[rid]
                            meta["timeouts"] += 1
                    if next_send >= n and not outstanding:
                        break
                    if eof[0] and not responses:
                        if outstanding or next_send < n:
                            crashed = True
                        break
                    can_send = (next_send < n and not eof[0]
                                and len(outstanding) < self.max_in_flight)
                    if not can_send:
                        waits = [deadline - now for deadline in outstanding.values()]
                        cond.wait(timeout=min(waits) + 0.005 if waits else 0.1)
                        continue
                request = {"id": next_send, "input": records[next_send].input}
                try:
                    proc.stdin.write(json.dumps(request, ensure_ascii=False) + "\n")
                    proc.stdin.flush()
                except (BrokenPipeError, OSError):
                    with cond:
                        crashed = True
                    break
                with cond:
                    sent.add(next_send)
                    outstanding[next_send] = time.monotonic() + self.timeout
                next_send += 1
                if next_send == n:
                    try:
                        proc.stdin.close()
                    except OSError:
                        pass
                    stdin_open = False
        finally:
            if stdin_open:
                try:
                    proc.stdin.close()
                except OSError:
                    pass
            try:
                proc.wait(timeout=5)
            except subprocess.TimeoutExpired:
                proc.kill()
                proc.wait()
            reader.join(timeout=5)
        meta["crashed"] = crashed
        meta["returncode"] = proc.returncode
        return predictions, meta


# ------------------------------------------------------------------- report


_COMPLETE_TARGET_RE = re.compile(r"^\d{2}/\d{2}/(\d{4})$")
_MY_TARGET_RE = re.compile(r"^\d{2}/(\d{4})$")

RANGE_BUCKETS = ("in_range", "below_range", "above_range")


def _target_year(target: str) -> int | None:
    m = _COMPLETE_TARGET_RE.match(target) or _MY_TARGET_RE.match(target)
    return int(m.group(1)) if m else None


def _range_bucket(record: Record, year_min: int | None,
                  year_max: int | None) -> str:
    year = _target_year(record.target)
    if year is None or year_min is None or year_max is None:
        return "in_range"
    if year < year_min:
        return "below_range"
    if year > year_max:
        return "above_range"
    return "in_range"


@dataclass(frozen=True)
class BucketRow:
    family: str  # "range" | "noise" | "format"
    bucket: str
    n: int
    correct: int

    @property
    def accuracy(self) -> float:
        return self.correct / self.n if self.n else 0.0

    def to_dict(self) -> dict:
        return {"family": self.family, "bucket": self.bucket, "n": self.n,
                "correct": self.correct,
                "accuracy": round(self.accuracy, 6) if self.n else None}


@dataclass
class EvalReport:
    backend_id: str
    corpus_hash: str
    n_total: int
    correct_total: int
    rows: list[BucketRow]
    cells: dict[tuple[str, str], tuple[int, int]]  # (noise, range) -> (n, correct)
    metadata: dict = field(default_factory=dict)
    timestamp: str = ""

    def __post_init__(self):
        if not self.timestamp:
            self.timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
        for family in {row.family for row in self.rows}:
            subtotal = sum(row.n for row in self.rows if row.family == family)
            if subtotal != self.n_total:
                raise ConfigError(
                    f"bucket family {family!r} covers {subtotal} of "
                    f"{self.n_total} records")

    @property
    def accuracy(self) -> float:
        return self.correct_total / self.n_total if self.n_total else 0.0

    def to_dict(self) -> dict:
        return {
            "backend": self.backend_id,
            "corpus_hash": self.corpus_hash,
            "timestamp": self.timestamp,
            "n": self.n_total,
            "correct": self.correct_total,
            "accuracy": round(self.accuracy, 6) if self.n_total else None,
            "buckets": [row.to_dict() for row in self.rows],
            "noise_by_range": [
                {"noise": noise, "range": rng, "n": n, "correct": c,
                 "accuracy": round(c / n, 6) if n else None}
                for (noise, rng), (n, c) in sorted(self.cells.items())
            ],
            "metadata": self.metadata,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2) + "\n"

    def to_markdown(self) -> str:
        lines = ["# Evaluation report", ""]
        lines.append(f"- backend: `{self.backend_id}`")
        lines.append(f"- corpus: `{self.corpus_hash[:16]}`  (n={self.n_total})")
        acc = f"{self.accuracy:.4f}" if self.n_total else "n/a"
        lines.append(f"- overall exact-match accuracy: **{acc}**")
        for key, value in sorted(self.metadata.items()):
            lines.append(f"- {key}: {value}")
        lines.append("")

        noise_levels = sorted({noise for noise, _ in self.cells})
        if noise_levels:
            lines.append("## Accuracy by noise level and year range")
            lines.append("")
            header = "| noise | " + " | ".join(RANGE_BUCKETS) + " | all |"
            lines.append(header)
            lines.append("|" + "---|" * (len(RANGE_BUCKETS) + 2))
            for noise in noise_levels:
                cols = []
                total_n = total_c = 0
                for rng in RANGE_BUCKETS:
                    n, c = self.cells.get((noise, rng), (0, 0))
                    total_n += n
                    total_c += c
                    cols.append(f"{c / n:.4f} (n={n})" if n else "—")
                tail = f"{total_c / total_n:.4f} (n={total_n})" if total_n else "—"
                lines.append(f"| {noise} | " + " | ".join(cols) + f" | {tail} |")
            lines.append("")

        fmt_rows = sorted((row for row in self.rows if row.family == "format"),
                          key=lambda row: row.bucket)
        if fmt_rows:
            lines.append("## Accuracy by format")
            lines.append("")
            lines.append("| format | n | correct | accuracy |")
            lines.append("|---|---|---|---|")
            for row in fmt_rows:
                lines.append(f"| {row.bucket} | {row.n} | {row.correct} "
                             f"| {row.accuracy:.4f} |")
            lines.append("")
        return "\n".join(lines) + "\n"


def evaluate(backend, records, manifest: SplitManifest, *,
             all_formats: bool = False) -> EvalReport:
    """Score a backend over the corpus, bucketed the way the tables read.

    Only records whose format is in the manifest's held-out set are
    scored unless ``all_formats`` is set. If the backend process dies
    mid-run the partial report is attached to the BackendCrash raised.
    """
    records = list(records)
    if not all_formats:
        held_out = set(manifest.test_formats)
        records = [r for r in records if r.format_id in held_out]

    predictions, meta = backend.run(records)
    if len(predictions) != len(records):
        raise ProtocolViolation(
            f"backend returned {len(predictions)} predictions "
            f"for {len(records)} records")

    year_min = manifest.extra.get("year_min")
    year_max = manifest.extra.get("year_max")

    correct_total = 0
    counters: dict[tuple[str, str], list[int]] = {}
    cells: dict[tuple[str, str], list[int]] = {}
    for record, prediction in zip(records, predictions):
        ok = prediction is not None and exact_match(prediction, record.target)
        correct_total += ok
        noise_bucket = "noised" if record.noised else "clean"
        for family, bucket in (
            ("range", _range_bucket(record, year_min, year_max)),
            ("noise", noise_bucket),
            ("format", record.format_id),
        ):
            cell = counters.setdefault((family, bucket), [0, 0])
            cell[0] += 1
            cell[1] += ok
        cross = cells.setdefault((noise_bucket,
                                  _range_bucket(record, year_min, year_max)),
                                 [0, 0])
        cross[0] += 1
        cross[1] += ok

    rows = [BucketRow(family=family, bucket=bucket, n=n, correct=c)
            for (family, bucket), (n, c) in sorted(counters.items())]
    metadata = {
        "seed": manifest.seed,
        "kind": manifest.kind,
        "language": manifest.language,
        "all_formats": all_formats,
    }
    if "prefix" in manifest.extra:
        metadata["prefix"] = manifest.extra["prefix"]
    if meta.get("timeouts"):
        metadata["timeouts"] = meta["timeouts"]
    if meta.get("crashed"):
        metadata["crashed"] = True
        metadata["returncode"] = meta.get("returncode")
    report = EvalReport(
        backend_id=getattr(backend, "id", backend.__class__.__name__),
        corpus_hash=corpus_digest(records),
        n_total=len(records),
        correct_total=correct_total,
        rows=rows,
        cells={key: (n, c) for key, (n, c) in cells.items()},
        metadata=metadata,
    )
    if meta.get("crashed"):
        raise BackendCrash(
            "external backend exited before answering every request",
            report=report, returncode=meta.get("returncode"))
    return report
