"""Command-line interface: generate, corrupt, normalize, split, evaluate.

Exit codes: 0 success, 1 usage error (bad flags), 2 data error (bad or
missing files, unparseable strict input), 3 backend failure (external
process crashed or broke the response protocol).

Every generated artifact is accompanied by a manifest JSON (written next
to the output file by default) that records the flags needed to rebuild
it byte-for-byte.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .addresses import (
    DEFAULT_COMPLEMENT_RATE,
    DEFAULT_PER_FORMAT,
    DEFAULT_SN_RATE,
    AddressCorpusConfig,
    generate_address_records,
    plan_address_corpus,
)
from .dates import (
    DEFAULT_YEAR_MAX,
    DEFAULT_YEAR_MIN,
    DateCorpusConfig,
    generate_date_records,
    generate_out_of_range_probes,
    plan_date_corpus,
)
from .errors import (
    BackendCrash,
    ConfigError,
    GazetteerError,
    InventoryError,
    NormkitError,
    ProtocolViolation,
    Unparseable,
)
from .harness import EchoBackend, ExternalBackend, RulesBackend, evaluate
from .noise import NoiseConfig, corrupt
from .normalizer import normalize, normalize_address, normalize_date
from .records import Record, SplitManifest, read_jsonl, write_csv, write_jsonl
from .unified import (
    DEFAULT_ADDRESS_SHARE,
    DEFAULT_UNIFIED_COUNT,
    DEFAULT_VALIDATION_FORMATS,
    UnifiedCorpusConfig,
    generate_unified_records,
    plan_unified_corpus,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_BACKEND = 3

DATE_KINDS = ("complete", "incomplete-dm", "incomplete-my", "relative")


class _Parser(argparse.ArgumentParser):
    """argparse exits with code 2 on usage errors; we promise code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


class _DataError(NormkitError):
    """Wrapper for problems with input files rather than flags."""


def _split_arg(text: str) -> tuple[int, int] | None:
    if text.lower() in ("none", "off"):
        return None
    parts = text.split(":")
    if len(parts) != 2:
        raise ConfigError(f"split must look like 34:11, got {text!r}")
    try:
        pair = (int(parts[0]), int(parts[1]))
    except ValueError:
        raise ConfigError(f"split must be two integers, got {text!r}") from None
    return pair


def _common_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", help="output file (default: stdout)")
    parser.add_argument("--format", choices=("jsonl", "csv"), default="jsonl",
                        help="output encoding (default: jsonl)")
    parser.add_argument("--manifest",
                        help="manifest path (default: <out>.manifest.json)")
    parser.add_argument("--quiet", action="store_true",
                        help="suppress the summary line")


def _gen_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=7,
                        help="generation seed (default: 7)")
    parser.add_argument("--noise", type=float, default=0.0,
                        help="corruption level in [0,1] (default: 0)")
    parser.add_argument("--noise-seed", type=int, default=None,
                        help="separate seed for corruption (default: --seed)")
    parser.add_argument("--ops-per-record", type=int, default=1,
                        help="edits applied to each corrupted record")
    parser.add_argument("--jobs", type=int, default=1,
                        help="parallel workers; output order is unaffected")
    _common_output_flags(parser)


def _default_manifest_path(out: str) -> str:
    path = Path(out)
    if path.suffix in (".jsonl", ".csv", ".json"):
        return str(path.with_suffix("")) + ".manifest.json"
    return str(path) + ".manifest.json"


def _write_records(records: list[Record], args) -> None:
    writer = write_csv if args.format == "csv" else write_jsonl
    if args.out:
        writer(records, args.out)
    else:
        writer(records, sys.stdout)


def _write_manifest(manifest: SplitManifest, args) -> str | None:
    path = args.manifest
    if path is None and args.out:
        path = _default_manifest_path(args.out)
    if path:
        manifest.save(path)
    return path


def _summary(args, n: int, manifest_path: str | None) -> None:
    if args.quiet:
        return
    dest = args.out or "stdout"
    note = f" (manifest {manifest_path})" if manifest_path else ""
    print(f"wrote {n} records to {dest}{note}", file=sys.stderr)


# ------------------------------------------------------------- generation

def _chunk_ranges(total: int, jobs: int) -> list[tuple[int, int]]:
    jobs = max(1, min(jobs, total)) if total else 1
    size, rem = divmod(total, jobs)
    ranges, start = [], 0
    for i in range(jobs):
        stop = start + size + (1 if i < rem else 0)
        ranges.append((start, stop))
        start = stop
    return ranges


def _date_chunk(config: DateCorpusConfig, start: int, stop: int) -> list[Record]:
    return generate_date_records(config, start, stop)


def _address_chunk(config: AddressCorpusConfig, start: int, stop: int) -> list[Record]:
    return generate_address_records(config, start, stop)


def _unified_chunk(config: UnifiedCorpusConfig, start: int, stop: int) -> list[Record]:
    return generate_unified_records(config, start, stop)


def _generate(chunk_fn, config, total: int, jobs: int) -> list[Record]:
    if jobs <= 1 or total < 2:
        return chunk_fn(config, 0, total)
    records: list[Record] = []
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(chunk_fn, config, start, stop)
                   for start, stop in _chunk_ranges(total, jobs)]
        for future in futures:
            records.extend(future.result())
    return records


def _cmd_gen_dates(args) -> int:
    config = DateCorpusConfig(
        kind=args.kind, language=args.lang, count=args.count, seed=args.seed,
        year_min=args.year_min, year_max=args.year_max,
        magnitude_min=args.magnitude_min, magnitude_max=args.magnitude_max,
        noise_level=args.noise, noise_seed=args.noise_seed,
        ops_per_record=args.ops_per_record,
        split=_split_arg(args.split) if args.split else None,
        format_subset=args.format_subset, inventory_path=args.inventory)
    _, manifest = plan_date_corpus(config)
    total = manifest.extra["count"]
    records = _generate(_date_chunk, config, total, args.jobs)
    _write_records(records, args)
    manifest_path = _write_manifest(manifest, args)
    _summary(args, len(records), manifest_path)
    return EXIT_OK


def _cmd_gen_addresses(args) -> int:
    config = AddressCorpusConfig(
        per_format=args.per_format, count=args.count, seed=args.seed,
        noise_level=args.noise, noise_seed=args.noise_seed,
        ops_per_record=args.ops_per_record,
        split=_split_arg(args.split) if args.split else None,
        format_subset=args.format_subset,
        sn_rate=args.sn_rate, complement_rate=args.complement_rate,
        gazetteer_path=args.gazetteer, inventory_path=args.inventory)
    _, manifest = plan_address_corpus(config)
    total = manifest.extra["count"]
    records = _generate(_address_chunk, config, total, args.jobs)
    _write_records(records, args)
    manifest_path = _write_manifest(manifest, args)
    _summary(args, len(records), manifest_path)
    return EXIT_OK


def _cmd_gen_unified(args) -> int:
    config = UnifiedCorpusConfig(
        count=args.count, address_share=args.address_share,
        validation_formats=args.validation_formats, seed=args.seed,
        prefix=args.prefix == "on",
        noise_level=args.noise, noise_seed=args.noise_seed,
        ops_per_record=args.ops_per_record,
        year_min=args.year_min, year_max=args.year_max,
        sn_rate=args.sn_rate, complement_rate=args.complement_rate,
        date_inventory_path=args.date_inventory,
        address_inventory_path=args.address_inventory,
        gazetteer_path=args.gazetteer)
    manifest = plan_unified_corpus(config)
    records = _generate(_unified_chunk, config, config.count, args.jobs)
    _write_records(records, args)
    manifest_path = _write_manifest(manifest, args)
    _summary(args, len(records), manifest_path)
    return EXIT_OK


def _cmd_gen_probes(args) -> int:
    config = DateCorpusConfig(
        kind=args.kind, language=args.lang, seed=args.seed,
        year_min=args.year_min, year_max=args.year_max,
        split=_split_arg(args.split) if args.split else None,
        inventory_path=args.inventory)
    sides = ("below", "above") if args.side == "both" else (args.side,)
    records: list[Record] = []
    for side in sides:
        records.extend(generate_out_of_range_probes(config, side, args.count))
    _, manifest = plan_date_corpus(config)
    manifest.extra["count"] = len(records)
    manifest.extra["probes"] = {"sides": list(sides), "count_per_side": args.count}
    _write_records(records, args)
    manifest_path = _write_manifest(manifest, args)
    _summary(args, len(records), manifest_path)
    return EXIT_OK


# ------------------------------------------------------------- transforms

def _read_corpus(path: str) -> list[Record]:
    try:
        return read_jsonl(path)
    except FileNotFoundError:
        raise _DataError(f"no such file: {path}") from None
    except (ConfigError, json.JSONDecodeError, KeyError, TypeError,
            ValueError) as exc:
        raise _DataError(f"bad corpus {path}: {exc}") from exc


def _corrupt_chunk(records: list[Record], config: NoiseConfig,
                   start: int) -> list[Record]:
    return [corrupt(record, config, index=start + i)
            for i, record in enumerate(records)]


def _cmd_corrupt(args) -> int:
    config = NoiseConfig(level=args.noise, seed=args.seed,
                         ops_per_record=args.ops_per_record)
    if args.input:
        records = _read_corpus(args.input)
    else:
        try:
            records = [Record.from_dict(json.loads(line))
                       for line in sys.stdin if line.strip()]
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise _DataError(f"bad corpus on stdin: {exc}") from exc
    if args.jobs > 1 and len(records) > 1:
        out: list[Record] = []
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            futures = [pool.submit(_corrupt_chunk, records[start:stop], config, start)
                       for start, stop in _chunk_ranges(len(records), args.jobs)]
            for future in futures:
                out.extend(future.result())
    else:
        out = _corrupt_chunk(records, config, 0)
    _write_records(out, args)
    manifest_path = None
    if args.out or args.manifest:
        digest = hashlib.sha256(
            "".join(json.dumps(r.to_dict(), sort_keys=True, ensure_ascii=False) + "\n"
                    for r in records).encode("utf-8")).hexdigest()
        meta = {"command": "corrupt", "noise_level": args.noise,
                "noise_seed": args.seed, "ops_per_record": args.ops_per_record,
                "source": args.input or "stdin", "source_digest": digest,
                "tool_version": __version__}
        manifest_path = args.manifest or _default_manifest_path(args.out)
        Path(manifest_path).write_text(
            json.dumps(meta, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
    _summary(args, len(out), manifest_path)
    return EXIT_OK


def _cmd_normalize(args) -> int:
    source = open(args.input, encoding="utf-8") if args.input else sys.stdin
    sink = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    normalizers = {
        "auto": lambda text: normalize(text, language=args.lang).canonical,
        "date": lambda text: normalize_date(text, language=args.lang).canonical,
        "address": lambda text: normalize_address(text).canonical,
    }
    run = normalizers[args.task]
    failures = 0
    try:
        for lineno, line in enumerate(source, start=1):
            text = line.rstrip("\n")
            if not text.strip():
                print("", file=sink)
                continue
            try:
                print(run(text), file=sink)
            except Unparseable as exc:
                failures += 1
                if not args.lenient:
                    print(f"line {lineno}: {exc}", file=sys.stderr)
                    return EXIT_DATA
                print("", file=sink)
    finally:
        if args.input:
            source.close()
        if args.out:
            sink.close()
    if failures and not args.quiet:
        print(f"{failures} line(s) were unparseable", file=sys.stderr)
    return EXIT_OK


def _cmd_split(args) -> int:
    if args.kind == "unified":
        manifest = plan_unified_corpus(UnifiedCorpusConfig(
            seed=args.seed, validation_formats=args.validation_formats))
    elif args.kind == "addresses":
        _, manifest = plan_address_corpus(AddressCorpusConfig(
            seed=args.seed,
            split=_split_arg(args.policy) if args.policy else None))
    else:
        _, manifest = plan_date_corpus(DateCorpusConfig(
            kind=args.kind, language=args.lang, seed=args.seed,
            split=_split_arg(args.policy) if args.policy else None))
    if args.out:
        manifest.save(args.out)
        if not args.quiet:
            print(f"wrote manifest to {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(manifest.to_json())
    return EXIT_OK


# ------------------------------------------------------------- evaluation

def _make_backend(spec: str, args):
    if spec == "rules":
        return RulesBackend()
    if spec == "echo":
        return EchoBackend()
    if spec.startswith("cmd:"):
        command = spec[len("cmd:"):]
        if not command.strip():
            raise ConfigError("empty backend command")
        return ExternalBackend(command, timeout=args.timeout,
                               max_in_flight=args.max_in_flight)
    raise ConfigError(
        f"unknown backend {spec!r}; use rules, echo, or cmd:<command>")


def _emit_report(report, args) -> None:
    if args.out:
        Path(args.out).write_text(report.to_json() + "\n", encoding="utf-8")
    if args.markdown:
        Path(args.markdown).write_text(report.to_markdown(), encoding="utf-8")
    if not args.quiet:
        total = report.n_total
        accuracy = report.correct_total / total if total else 0.0
        print(f"accuracy {accuracy:.6f} ({report.correct_total}/{total}) "
              f"backend {report.backend_id}")
        print(report.to_markdown(), end="")


def _cmd_evaluate(args) -> int:
    records = _read_corpus(args.corpus)
    manifest_path = args.manifest or _default_manifest_path(args.corpus)
    try:
        manifest = SplitManifest.load(manifest_path)
    except FileNotFoundError:
        raise _DataError(f"no manifest at {manifest_path}; pass --manifest") from None
    except (json.JSONDecodeError, ConfigError) as exc:
        raise _DataError(f"bad manifest {manifest_path}: {exc}") from exc
    backend = _make_backend(args.backend, args)
    try:
        report = evaluate(backend, records, manifest, all_formats=args.all_formats)
    except BackendCrash as exc:
        if exc.report is not None:
            _emit_report(exc.report, args)
        print(f"backend crashed: {exc}", file=sys.stderr)
        return EXIT_BACKEND
    _emit_report(report, args)
    return EXIT_OK


# ------------------------------------------------------------------ parser

def build_parser() -> _Parser:
    parser = _Parser(prog="normkit",
                     description="Synthetic date/address corpora, a rule "
                                 "normalizer, and an exact-match eval harness.")
    parser.add_argument("--version", action="version",
                        version=f"normkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate corpora")
    gen_sub = gen.add_subparsers(dest="what", required=True)

    p = gen_sub.add_parser("dates", help="date corpus (one kind)")
    p.add_argument("--kind", choices=DATE_KINDS, default="complete")
    p.add_argument("--lang", choices=("pt", "en"), default="pt")
    p.add_argument("--count", type=int, default=None,
                   help="records to emit (default: the kind's standard size)")
    p.add_argument("--year-min", type=int, default=DEFAULT_YEAR_MIN)
    p.add_argument("--year-max", type=int, default=DEFAULT_YEAR_MAX)
    p.add_argument("--magnitude-min", type=int, default=1)
    p.add_argument("--magnitude-max", type=int, default=999)
    p.add_argument("--split", default=None,
                   help="train:test format counts, e.g. 34:11 (default: standard)")
    p.add_argument("--format-subset", choices=("all", "train", "test"),
                   default="all")
    p.add_argument("--inventory", default=None, help="alternate format inventory")
    _gen_flags(p)
    p.set_defaults(func=_cmd_gen_dates)

    p = gen_sub.add_parser("addresses", help="address corpus")
    p.add_argument("--per-format", type=int, default=DEFAULT_PER_FORMAT)
    p.add_argument("--count", type=int, default=None,
                   help="total records (overrides --per-format x formats)")
    p.add_argument("--split", default=None,
                   help="train:test format counts (default: all in train)")
    p.add_argument("--format-subset", choices=("all", "train", "test"),
                   default="all")
    p.add_argument("--sn-rate", type=float, default=DEFAULT_SN_RATE)
    p.add_argument("--complement-rate", type=float, default=DEFAULT_COMPLEMENT_RATE)
    p.add_argument("--gazetteer", default=None, help="gazetteer CSV path")
    p.add_argument("--inventory", default=None)
    _gen_flags(p)
    p.set_defaults(func=_cmd_gen_addresses)

    p = gen_sub.add_parser("unified", help="mixed date+address corpus")
    p.add_argument("--count", type=int, default=DEFAULT_UNIFIED_COUNT)
    p.add_argument("--address-share", type=float, default=DEFAULT_ADDRESS_SHARE)
    p.add_argument("--validation-formats", type=int,
                   default=DEFAULT_VALIDATION_FORMATS)
    p.add_argument("--prefix", choices=("on", "off"), default="off",
                   help="prepend task markers to inputs")
    p.add_argument("--year-min", type=int, default=DEFAULT_YEAR_MIN)
    p.add_argument("--year-max", type=int, default=DEFAULT_YEAR_MAX)
    p.add_argument("--sn-rate", type=float, default=DEFAULT_SN_RATE)
    p.add_argument("--complement-rate", type=float, default=DEFAULT_COMPLEMENT_RATE)
    p.add_argument("--date-inventory", default=None)
    p.add_argument("--address-inventory", default=None)
    p.add_argument("--gazetteer", default=None)
    _gen_flags(p)
    p.set_defaults(func=_cmd_gen_unified)

    p = gen_sub.add_parser("probes", help="dates outside the training year range")
    p.add_argument("--side", choices=("below", "above", "both"), default="both")
    p.add_argument("--count", type=int, default=50, help="probes per side")
    p.add_argument("--kind", choices=DATE_KINDS, default="complete")
    p.add_argument("--lang", choices=("pt", "en"), default="pt")
    p.add_argument("--year-min", type=int, default=DEFAULT_YEAR_MIN,
                   help="lower bound of the range being probed")
    p.add_argument("--year-max", type=int, default=DEFAULT_YEAR_MAX)
    p.add_argument("--split", default=None)
    p.add_argument("--inventory", default=None)
    p.add_argument("--seed", type=int, default=7)
    _common_output_flags(p)
    p.set_defaults(func=_cmd_gen_probes)

    p = sub.add_parser("corrupt", help="apply reading-error noise to a corpus")
    p.add_argument("--in", dest="input", default=None,
                   help="input JSONL (default: stdin)")
    p.add_argument("--noise", type=float, required=True)
    p.add_argument("--ops-per-record", type=int, default=1)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--jobs", type=int, default=1)
    _common_output_flags(p)
    p.set_defaults(func=_cmd_corrupt)

    p = sub.add_parser("normalize",
                       help="canonicalize text lines from stdin")
    p.add_argument("--task", choices=("auto", "date", "address"), default="auto")
    p.add_argument("--lang", choices=("pt", "en"), default="pt")
    p.add_argument("--lenient", action="store_true",
                   help="emit an empty line for unparseable input instead "
                            "of stopping")
    p.add_argument("--in", dest="input", default=None,
                   help="input text file (default: stdin)")
    p.add_argument("--out", default=None, help="output file (default: stdout)")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=_cmd_normalize)

    p = sub.add_parser("split", help="emit a train/test format manifest")
    p.add_argument("--kind",
                   choices=DATE_KINDS + ("addresses", "unified"),
                   default="complete")
    p.add_argument("--lang", choices=("pt", "en"), default="pt")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--policy", default=None, help="train:test counts")
    p.add_argument("--validation-formats", type=int,
                   default=DEFAULT_VALIDATION_FORMATS)
    p.add_argument("--out", default=None)
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=_cmd_split)

    p = sub.add_parser("evaluate", help="score a backend on a corpus")
    p.add_argument("--corpus", required=True, help="JSONL corpus to score")
    p.add_argument("--manifest", default=None,
                   help="split manifest (default: <corpus>.manifest.json)")
    p.add_argument("--backend", default="rules",
                   help='rules, echo, or cmd:"<command>" for an external '
                        "process speaking the line protocol")
    p.add_argument("--all-formats", action="store_true",
                   help="score every record, not just test-split formats")
    p.add_argument("--timeout", type=float, default=30.0,
                   help="seconds to wait per external response")
    p.add_argument("--max-in-flight", type=int, default=32)
    p.add_argument("--out", default=None, help="write the report JSON here")
    p.add_argument("--markdown", default=None, help="write the report tables here")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=_cmd_evaluate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"normkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (_DataError, InventoryError, GazetteerError) as exc:
        print(f"normkit: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except FileNotFoundError as exc:
        print(f"normkit: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ProtocolViolation as exc:
        print(f"normkit: backend error: {exc}", file=sys.stderr)
        return EXIT_BACKEND
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
