"""Exact-match metric, backends, line protocol, and report invariants."""
import json
import string
import sys

import pytest

from normkit.dates import DateCorpusConfig, generate_date_corpus
from normkit.errors import BackendCrash, ConfigError, ProtocolViolation
from normkit.harness import (
    BucketRow,
    EchoBackend,
    EvalReport,
    ExternalBackend,
    RulesBackend,
    corpus_digest,
    evaluate,
    exact_match,
)
from normkit.records import Record, SplitManifest, stable_rng


# ------------------------------------------------------------ exact match

def test_exact_match_reflexive_on_fuzzed_pairs():
    rng = stable_rng("exact-match-fuzz")
    alphabet = string.ascii_letters + string.digits + " /+-ãç"
    for _ in range(1000):
        text = "".join(rng.choice(alphabet)
                       for _ in range(rng.randint(1, 40)))
        assert exact_match(text, text)


def test_single_character_perturbation_never_matches():
    rng = stable_rng("exact-match-perturb")
    alphabet = string.ascii_letters + string.digits + "/+-"
    for _ in range(1000):
        text = "".join(rng.choice(alphabet)
                       for _ in range(rng.randint(1, 40)))
        pos = rng.randrange(len(text))
        old = text[pos]
        new = rng.choice([c for c in alphabet if c != old])
        mutated = text[:pos] + new + text[pos + 1:]
        assert not exact_match(mutated, text), (text, mutated)


def test_trailing_newline_is_the_only_tolerated_difference():
    assert exact_match("15/01/2021\n", "15/01/2021")
    assert exact_match("15/01/2021", "15/01/2021\n")
    assert not exact_match("15/01/2021 ", "15/01/2021")
    assert not exact_match(" 15/01/2021", "15/01/2021")
    assert not exact_match("15/01/2021\n\n", "15/01/2021")
    assert not exact_match("15/01/2021\t", "15/01/2021")


# ------------------------------------------------------ builtin backends

def _corpus(n=120, noise=0.0, seed=7):
    return generate_date_corpus(DateCorpusConfig(
        kind="complete", count=n, seed=seed, noise_level=noise))


def test_rules_backend_is_perfect_on_clean_data():
    records, manifest = _corpus()
    report = evaluate(RulesBackend(), records, manifest, all_formats=True)
    assert report.n_total == len(records)
    assert report.correct_total == report.n_total
    assert report.accuracy == 1.0


def test_echo_backend_scores_exactly_the_already_canonical_fraction():
    records, manifest = _corpus(400)
    already = sum(r.input == r.target for r in records)
    report = evaluate(EchoBackend(), records, manifest, all_formats=True)
    assert report.correct_total == already


def test_evaluate_restricts_to_held_out_formats_by_default():
    records, manifest = _corpus(400)
    report = evaluate(RulesBackend(), records, manifest)
    held_out = set(manifest.test_formats)
    assert report.n_total == sum(r.format_id in held_out for r in records)
    format_rows = {row.bucket for row in report.rows if row.family == "format"}
    assert format_rows <= held_out


def test_evaluate_empty_corpus_yields_empty_report():
    _, manifest = _corpus(10)
    report = evaluate(RulesBackend(), [], manifest, all_formats=True)
    assert report.n_total == 0 and report.correct_total == 0
    assert report.accuracy == 0.0
    assert report.to_dict()["accuracy"] is None


# ----------------------------------------------------- report invariants

def test_report_rejects_buckets_that_do_not_cover_the_corpus():
    with pytest.raises(ConfigError):
        EvalReport(backend_id="x", corpus_hash="h", n_total=10,
                   correct_total=5,
                   rows=[BucketRow("noise", "clean", 4, 2)], cells={})


def test_report_buckets_conserve_totals():
    records, manifest = _corpus(300, noise=0.4)
    report = evaluate(RulesBackend(), records, manifest, all_formats=True)
    for family in ("range", "noise", "format"):
        assert sum(r.n for r in report.rows if r.family == family) == \
            report.n_total
        assert sum(r.correct for r in report.rows if r.family == family) == \
            report.correct_total
    assert sum(n for n, _ in report.cells.values()) == report.n_total


def test_report_serializes_with_stable_keys_and_markdown_tables():
    records, manifest = _corpus(150, noise=0.3)
    report = evaluate(RulesBackend(), records, manifest, all_formats=True)
    data = json.loads(report.to_json())
    assert set(data) == {"backend", "corpus_hash", "timestamp", "n",
                         "correct", "accuracy", "buckets", "noise_by_range",
                         "metadata"}
    text = report.to_markdown()
    assert "| noise |" in text and "## Accuracy by format" in text


def test_out_of_range_targets_land_in_side_buckets():
    from normkit.dates import generate_out_of_range_probes
    config = DateCorpusConfig(kind="complete", seed=7)
    from normkit.dates import plan_date_corpus
    _, manifest = plan_date_corpus(config)
    probes = generate_out_of_range_probes(config, "below", 20) + \
        generate_out_of_range_probes(config, "above", 20)
    report = evaluate(RulesBackend(), probes, manifest, all_formats=True)
    by_bucket = {row.bucket: row.n for row in report.rows
                 if row.family == "range"}
    assert by_bucket.get("below_range") == 20
    assert by_bucket.get("above_range") == 20


def test_corpus_digest_is_order_and_content_sensitive():
    records, _ = _corpus(30)
    assert corpus_digest(records) == corpus_digest(list(records))
    assert corpus_digest(records) != corpus_digest(records[::-1])
    assert corpus_digest(records[:-1]) != corpus_digest(records)


# ------------------------------------------------------ external backends

def _script(tmp_path, name, body):
    path = tmp_path / name
    path.write_text("import sys, json, time\n" + body, encoding="utf-8")
    return [sys.executable, str(path)]


ECHO_BODY = """
for line in sys.stdin:
    if not line.strip():
        continue
    req = json.loads(line)
    print(json.dumps({"id": req["id"], "output": req["input"]}), flush=True)
"""


def test_external_echo_matches_builtin_echo(tmp_path):
    records, manifest = _corpus(60)
    argv = _script(tmp_path, "echo.py", ECHO_BODY)
    external = evaluate(ExternalBackend(argv), records, manifest,
                        all_formats=True)
    builtin = evaluate(EchoBackend(), records, manifest, all_formats=True)
    assert external.correct_total == builtin.correct_total
    assert external.n_total == builtin.n_total


def test_out_of_order_responses_are_scored_by_id(tmp_path):
    body = """
batch = []
for line in sys.stdin:
    if line.strip():
        batch.append(json.loads(line))
for req in reversed(batch):
    print(json.dumps({"id": req["id"], "output": req["input"]}), flush=True)
"""
    records, manifest = _corpus(40)
    argv = _script(tmp_path, "reversed.py", body)
    # the responder drains stdin before answering, so the request window
    # must cover the whole corpus
    backend = ExternalBackend(argv, max_in_flight=64)
    report = evaluate(backend, records, manifest, all_formats=True)
    already = sum(r.input == r.target for r in records)
    assert report.correct_total == already


def test_backend_crash_raises_with_partial_report(tmp_path):
    body = """
n = 0
for line in sys.stdin:
    if not line.strip():
        continue
    req = json.loads(line)
    print(json.dumps({"id": req["id"], "output": req["input"]}), flush=True)
    n += 1
    if n >= 7:
        sys.exit(3)
"""
    records, manifest = _corpus(50)
    argv = _script(tmp_path, "crash.py", body)
    with pytest.raises(BackendCrash) as info:
        evaluate(ExternalBackend(argv), records, manifest, all_formats=True)
    report = info.value.report
    assert report is not None
    assert report.n_total == 50
    assert report.metadata.get("crashed") is True
    assert info.value.returncode == 3


def test_unanswered_request_times_out_and_scores_wrong(tmp_path):
    body = """
for line in sys.stdin:
    if not line.strip():
        continue
    req = json.loads(line)
    if req["id"] == 2:
        continue  # never answer this one
    print(json.dumps({"id": req["id"], "output": req["input"]}), flush=True)
time.sleep(30)
"""
    records, manifest = _corpus(8)
    argv = _script(tmp_path, "mute.py", body)
    backend = ExternalBackend(argv, timeout=1.0)
    report = evaluate(backend, records, manifest, all_formats=True)
    assert report.metadata.get("timeouts") == 1
    already = sum(r.input == r.target for i, r in enumerate(records) if i != 2)
    assert report.correct_total == already


@pytest.mark.parametrize("line,reason", [
    ('this is not json', "not valid JSON"),
    ('{"id": 9999, "output": "x"}', "unknown id"),
    ('{"id": "0", "output": "x"}', "non-integer id"),
    ('{"id": 0}', "missing output"),
])
def test_malformed_responses_are_protocol_violations(tmp_path, line, reason):
    body = f"""
sys.stdin.readline()
print({line!r}, flush=True)
sys.stdin.read()
"""
    records, manifest = _corpus(5)
    argv = _script(tmp_path, "bad.py", body)
    with pytest.raises(ProtocolViolation):
        evaluate(ExternalBackend(argv), records, manifest, all_formats=True)


def test_duplicate_response_is_a_protocol_violation(tmp_path):
    body = """
line = sys.stdin.readline()
req = json.loads(line)
print(json.dumps({"id": req["id"], "output": "a"}), flush=True)
print(json.dumps({"id": req["id"], "output": "b"}), flush=True)
sys.stdin.read()
"""
    records, manifest = _corpus(5)
    argv = _script(tmp_path, "dupe.py", body)
    with pytest.raises(ProtocolViolation):
        evaluate(ExternalBackend(argv), records, manifest, all_formats=True)


def test_backend_that_answers_nothing_counts_as_crash(tmp_path):
    body = "sys.exit(0)\n"
    records, manifest = _corpus(5)
    argv = _script(tmp_path, "silent.py", body)
    with pytest.raises(BackendCrash):
        evaluate(ExternalBackend(argv), records, manifest, all_formats=True)


def test_requests_are_valid_ndjson_with_contiguous_ids(tmp_path):
    body = """
seen = []
for line in sys.stdin:
    if not line.strip():
        continue
    req = json.loads(line)
    assert set(req) == {"id", "input"}, req
    seen.append(req["id"])
    print(json.dumps({"id": req["id"], "output": "x"}), flush=True)
assert seen == sorted(seen) and seen == list(range(len(seen)))
"""
    records, manifest = _corpus(20)
    argv = _script(tmp_path, "inspect.py", body)
    report = evaluate(ExternalBackend(argv), records, manifest,
                      all_formats=True)
    assert report.n_total == 20  # backend assertions did not kill it


def test_external_backend_config_validation():
    with pytest.raises(ConfigError):
        ExternalBackend("")
    with pytest.raises(ConfigError):
        ExternalBackend("cat", timeout=0)
    with pytest.raises(ConfigError):
        ExternalBackend("cat", max_in_flight=0)


def test_length_mismatch_is_a_protocol_violation():
    class ShortBackend:
        id = "short"

        def run(self, records):
            return [None] * (len(records) - 1), {}

    records, manifest = _corpus(5)
    with pytest.raises(ProtocolViolation):
        evaluate(ShortBackend(), records, manifest, all_formats=True)


def test_rules_backend_returns_empty_string_for_unparseable():
    record = Record(input="utter gibberish", target="x", format_id="f",
                    language="pt", task="date_complete")
    predictions, _ = RulesBackend().run([record])
    assert predictions == [""]
