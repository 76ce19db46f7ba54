"""Command-line behavior: artifacts, exit codes, determinism, piping."""
import json
import subprocess
import sys

import pytest

from normkit.cli import main


def run_cli(argv, **kwargs):
    return main(list(argv))


def _read_jsonl(path):
    return [json.loads(line) for line in path.read_text().splitlines()]


def test_gen_dates_writes_corpus_and_manifest(tmp_path, capsys):
    out = tmp_path / "dates.jsonl"
    assert run_cli(["gen", "dates", "--count", "80", "--seed", "7",
                    "--out", str(out), "--quiet"]) == 0
    rows = _read_jsonl(out)
    assert len(rows) == 80
    manifest = json.loads((tmp_path / "dates.manifest.json").read_text())
    assert manifest["count"] == 80
    assert len(manifest["train_formats"]) == 34


def test_gen_is_deterministic_across_jobs(tmp_path):
    one = tmp_path / "a.jsonl"
    four = tmp_path / "b.jsonl"
    base = ["gen", "dates", "--kind", "relative", "--count", "600",
            "--seed", "3", "--noise", "0.4", "--quiet"]
    assert run_cli(base + ["--jobs", "1", "--out", str(one)]) == 0
    assert run_cli(base + ["--jobs", "4", "--out", str(four)]) == 0
    assert one.read_bytes() == four.read_bytes()


def test_gen_unified_prefix_flag(tmp_path):
    out = tmp_path / "u.jsonl"
    assert run_cli(["gen", "unified", "--count", "60", "--prefix", "on",
                    "--out", str(out), "--quiet"]) == 0
    rows = _read_jsonl(out)
    assert all(r["input"].startswith(("data: ", "endereco: ")) for r in rows)


def test_gen_probes_both_sides(tmp_path):
    out = tmp_path / "p.jsonl"
    assert run_cli(["gen", "probes", "--count", "25", "--out", str(out),
                    "--quiet"]) == 0
    rows = _read_jsonl(out)
    assert len(rows) == 50
    years = [int(r["target"][6:10]) for r in rows]
    assert all(y < 1921 or y > 2120 for y in years)


def test_csv_export(tmp_path):
    out = tmp_path / "dates.csv"
    assert run_cli(["gen", "dates", "--count", "5", "--format", "csv",
                    "--out", str(out), "--quiet"]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "input,target,format_id,language,task,noised"
    assert len(lines) == 6


def test_corrupt_roundtrip_preserves_targets(tmp_path):
    src = tmp_path / "clean.jsonl"
    dst = tmp_path / "noisy.jsonl"
    run_cli(["gen", "dates", "--count", "120", "--out", str(src), "--quiet"])
    assert run_cli(["corrupt", "--in", str(src), "--noise", "0.5",
                    "--seed", "9", "--out", str(dst), "--quiet"]) == 0
    before, after = _read_jsonl(src), _read_jsonl(dst)
    assert [r["target"] for r in before] == [r["target"] for r in after]
    assert any(a["input"] != b["input"] for a, b in zip(before, after))
    sidecar = json.loads((tmp_path / "noisy.manifest.json").read_text())
    assert sidecar["noise_level"] == 0.5


def test_split_emits_manifest_to_stdout(capsys):
    assert run_cli(["split", "--kind", "relative", "--lang", "en",
                    "--seed", "7"]) == 0
    manifest = json.loads(capsys.readouterr().out)
    assert len(manifest["train_formats"]) == 13
    assert len(manifest["test_formats"]) == 5


def test_evaluate_rules_backend_end_to_end(tmp_path, capsys):
    corpus = tmp_path / "c.jsonl"
    report_path = tmp_path / "report.json"
    run_cli(["gen", "dates", "--count", "150", "--out", str(corpus),
             "--quiet"])
    assert run_cli(["evaluate", "--corpus", str(corpus),
                    "--backend", "rules", "--out", str(report_path),
                    "--quiet"]) == 0
    report = json.loads(report_path.read_text())
    assert report["accuracy"] == 1.0
    assert report["backend"] == "builtin_rules"


def test_evaluate_external_command_backend(tmp_path):
    corpus = tmp_path / "c.jsonl"
    run_cli(["gen", "dates", "--count", "40", "--out", str(corpus),
             "--quiet"])
    script = tmp_path / "echo.py"
    script.write_text(
        "import sys, json\n"
        "for line in sys.stdin:\n"
        "    if line.strip():\n"
        "        r = json.loads(line)\n"
        "        print(json.dumps({'id': r['id'], 'output': r['input']}),"
        " flush=True)\n")
    out = tmp_path / "r.json"
    assert run_cli(["evaluate", "--corpus", str(corpus),
                    "--backend", f"cmd:{sys.executable} {script}",
                    "--out", str(out), "--quiet"]) == 0
    report = json.loads(out.read_text())
    assert report["n"] > 0


def test_crashing_backend_exits_3_with_partial_report(tmp_path):
    corpus = tmp_path / "c.jsonl"
    run_cli(["gen", "dates", "--count", "30", "--out", str(corpus),
             "--quiet"])
    script = tmp_path / "die.py"
    script.write_text("import sys\nsys.exit(7)\n")
    out = tmp_path / "partial.json"
    code = run_cli(["evaluate", "--corpus", str(corpus),
                    "--backend", f"cmd:{sys.executable} {script}",
                    "--out", str(out), "--quiet"])
    assert code == 3
    partial = json.loads(out.read_text())
    assert partial["metadata"]["crashed"] is True


def test_normalize_pipes_lines_through(tmp_path):
    src = tmp_path / "lines.txt"
    dst = tmp_path / "norm.txt"
    src.write_text("15 de janeiro de 2021\nhá 10 dias\n")
    assert run_cli(["normalize", "--in", str(src), "--out", str(dst)]) == 0
    assert dst.read_text() == "15/01/2021\n-10d\n"


def test_normalize_strict_fails_on_garbage(tmp_path):
    src = tmp_path / "lines.txt"
    src.write_text("not a date at all\n")
    assert run_cli(["normalize", "--in", str(src),
                    "--out", str(tmp_path / "o.txt")]) == 2


def test_normalize_lenient_emits_blank_for_garbage(tmp_path):
    src = tmp_path / "lines.txt"
    dst = tmp_path / "o.txt"
    src.write_text("15/01/2021\nnot a date at all\n01/2021\n")
    assert run_cli(["normalize", "--lenient", "--quiet", "--in", str(src),
                    "--out", str(dst)]) == 0
    assert dst.read_text() == "15/01/2021\n\n01/2021\n"


@pytest.mark.parametrize("argv", [
    ["gen", "dates", "--count", "-1"],
    ["gen", "dates", "--year-min", "2000", "--year-max", "1999"],
    ["gen", "unified", "--address-share", "1.5"],
    ["evaluate", "--corpus", "x.jsonl", "--backend", "mystery"],
])
def test_bad_flag_values_exit_1(argv, tmp_path, capsys):
    if "evaluate" in argv:
        corpus = tmp_path / "x.jsonl"
        corpus.write_text("")
        (tmp_path / "x.manifest.json").write_text(json.dumps({
            "train_formats": [], "test_formats": [], "seed": 0,
            "kind": "complete", "language": "pt"}))
        argv = [a if a != "x.jsonl" else str(corpus) for a in argv]
    assert run_cli(argv) == 1


def test_unknown_flags_exit_1():
    with pytest.raises(SystemExit) as info:
        run_cli(["gen", "dates", "--bogus-flag"])
    assert info.value.code == 1


def test_missing_input_file_exits_2(tmp_path):
    assert run_cli(["evaluate", "--corpus", str(tmp_path / "no.jsonl")]) == 2
    assert run_cli(["corrupt", "--in", str(tmp_path / "no.jsonl"),
                    "--noise", "0.3", "--out", str(tmp_path / "o")]) == 2


def test_corrupt_rejects_garbage_jsonl(tmp_path):
    bad = tmp_path / "bad.jsonl"
    bad.write_text("{not json}\n")
    assert run_cli(["corrupt", "--in", str(bad), "--noise", "0.3",
                    "--out", str(tmp_path / "o")]) == 2


def test_console_script_is_installed():
    proc = subprocess.run(["normkit", "--version"], capture_output=True,
                          text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("normkit ")
