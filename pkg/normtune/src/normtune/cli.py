"""Command-line interface: ``normtune train`` and ``normtune serve``.

Exit codes: 0 success, 1 usage or configuration error, 2 data error
(missing or malformed corpus/manifest/checkpoint).
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .config import LR_SCHEDULES, MODEL_PRESETS, TrainConfig
from .data import default_manifest_path
from .errors import ConfigError, DataError, TuneError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> _Parser:
    parser = _Parser(prog="normtune", description=__doc__)
    parser.add_argument("--version", action="version", version=f"normtune {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    train = sub.add_parser("train", help="fine-tune on a JSONL corpus")
    train.add_argument("--corpus", required=True, help="JSONL corpus file")
    train.add_argument(
        "--manifest",
        help="split manifest JSON (default: <corpus>.manifest.json)",
    )
    train.add_argument("--out", required=True, help="checkpoint directory to write")
    train.add_argument("--batch", type=int, default=16, help="mini-batch size (default 16)")
    train.add_argument("--lr", type=float, default=5e-5, help="learning rate (default 5e-5)")
    train.add_argument(
        "--weight-decay", type=float, default=0.01, help="decoupled weight decay (default 0.01)"
    )
    train.add_argument("--epochs", type=int, default=3, help="training epochs (default 3)")
    train.add_argument("--max-steps", type=int, default=None, help="hard cap on optimizer steps")
    train.add_argument(
        "--max-in", type=int, default=48, help="max input tokens (default 48; use 128 for addresses)"
    )
    train.add_argument(
        "--max-out", type=int, default=16, help="max output tokens (default 16; use 128 for addresses)"
    )
    train.add_argument(
        "--model", choices=MODEL_PRESETS, default="tiny", help="model size preset (default tiny)"
    )
    train.add_argument("--dropout", type=float, default=0.1, help="dropout rate (default 0.1)")
    train.add_argument(
        "--lr-schedule",
        choices=LR_SCHEDULES,
        default="constant",
        help="learning-rate schedule (default constant)",
    )
    train.add_argument(
        "--grad-clip",
        type=float,
        default=1.0,
        help="gradient-norm clip; 0 disables (default 1.0)",
    )
    train.add_argument("--seed", type=int, default=0, help="shuffle/init seed (default 0)")
    train.add_argument("--quiet", action="store_true", help="suppress progress lines")

    serve = sub.add_parser("serve", help="answer JSON requests on stdin from a checkpoint")
    serve.add_argument("--checkpoint", required=True, help="checkpoint directory from `train`")

    return parser


def _run_train(args: argparse.Namespace) -> int:
    from .training import train

    config = TrainConfig(
        checkpoint_dir=args.out,
        batch_size=args.batch,
        learning_rate=args.lr,
        weight_decay=args.weight_decay,
        epochs=args.epochs,
        max_steps=args.max_steps,
        max_input_tokens=args.max_in,
        max_output_tokens=args.max_out,
        model=args.model,
        dropout_rate=args.dropout,
        lr_schedule=args.lr_schedule,
        grad_clip=args.grad_clip if args.grad_clip > 0 else None,
        seed=args.seed,
    )
    manifest = args.manifest or default_manifest_path(args.corpus)

    progress = None
    if not args.quiet:

        def progress(step: int, epoch: int, loss: float) -> None:
            print(f"step {step} epoch {epoch} loss {loss:.4f}", file=sys.stderr)

    result = train(args.corpus, manifest, config, progress=progress)
    if not args.quiet:
        final = f"{result.final_loss:.4f}" if result.final_loss is not None else "n/a"
        print(
            f"trained {result.steps} steps on {result.n_train_examples} examples "
            f"({result.n_dropped_examples} outside the train split dropped); "
            f"final loss {final}; checkpoint {result.checkpoint_dir}"
        )
    return EXIT_OK


def _run_serve(args: argparse.Namespace) -> int:
    from .server import serve

    serve(args.checkpoint)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "train":
            return _run_train(args)
        return _run_serve(args)
    except ConfigError as exc:
        print(f"normtune: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"normtune: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except FileNotFoundError as exc:
        print(f"normtune: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except TuneError as exc:
        print(f"normtune: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
