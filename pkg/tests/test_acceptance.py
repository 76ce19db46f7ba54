"""End-to-end acceptance gate.

Each test checks one headline guarantee of the toolkit and prints a single
PASS/FAIL verdict (bypassing capture, so the line always shows in the
run log), with the measured numbers inline.
"""
import hashlib
import math
import string
import time

import pytest

from normkit.addresses import AddressCorpusConfig, generate_address_corpus, load_address_inventory
from normkit.dates import (
    RELATIVE_COUNT_PRESETS,
    DateCorpusConfig,
    generate_date_corpus,
    generate_out_of_range_probes,
    load_date_inventory,
    parse_canonical,
)
from normkit.harness import RulesBackend, evaluate, exact_match
from normkit.noise import NoiseConfig, corrupt_many, measure_noise
from normkit.records import stable_rng, write_jsonl
from normkit.unified import UnifiedCorpusConfig, build_unified_corpus


@pytest.fixture
def verdict(capfd):
    def report(name, ok, detail=""):
        tail = f"  [{detail}]" if detail else ""
        with capfd.disabled():
            print(f"\nACCEPTANCE {name}: {'PASS' if ok else 'FAIL'}{tail}",
                  flush=True)
        assert ok, f"{name}: {detail}"
    return report


def test_01_format_inventory_counts(verdict):
    started = time.perf_counter()
    inv = load_date_inventory()
    addr = load_address_inventory()
    counts = {
        "complete_pt": len(inv.subset("pt", "complete")),
        "complete_en": len(inv.subset("en", "complete")),
        "incomplete_pt": len(inv.subset("pt", "incomplete_dm"))
        + len(inv.subset("pt", "incomplete_my")),
        "incomplete_en": len(inv.subset("en", "incomplete_dm"))
        + len(inv.subset("en", "incomplete_my")),
        "relative_pt": len(inv.subset("pt", "relative")),
        "relative_en": len(inv.subset("en", "relative")),
        "address": len(addr),
    }
    pt_total = (counts["complete_pt"] + counts["incomplete_pt"]
                + counts["relative_pt"] + counts["address"])
    elapsed = time.perf_counter() - started
    ok = (counts["complete_pt"] == counts["complete_en"] == 45
          and counts["incomplete_pt"] == counts["incomplete_en"] == 90
          and counts["relative_pt"] == 36 and counts["relative_en"] == 18
          and counts["address"] == 22 and pt_total == 193
          and elapsed < 1.0)
    verdict("format-inventory-counts", ok,
             f"45/90/36 pt, 45/90/18 en, 22 addr, pt total {pt_total}, "
             f"{elapsed:.2f}s")


def test_02_corpus_size_defaults(verdict):
    started = time.perf_counter()
    sizes = {}
    for kind, expected in [("complete", 73000), ("incomplete_dm", 2500),
                           ("incomplete_my", 7200)]:
        records, _ = generate_date_corpus(DateCorpusConfig(kind=kind, seed=7))
        sizes[kind] = len(records)
        assert sizes[kind] == expected, (kind, sizes[kind])
    assert RELATIVE_COUNT_PRESETS == (1800, 4500, 9000)
    rel, _ = generate_date_corpus(DateCorpusConfig(
        kind="relative", count=1800, seed=7))
    assert len(rel) == 1800
    assert DateCorpusConfig(kind="relative").count in RELATIVE_COUNT_PRESETS

    addresses, _ = generate_address_corpus(AddressCorpusConfig(seed=7))
    assert len(addresses) == 750 * 22

    unified, manifest = build_unified_corpus(UnifiedCorpusConfig(seed=7))
    address_n = sum(r.task == "address" for r in unified)
    three_sigma = 3 * math.sqrt(len(unified) * 0.25)
    share_ok = abs(address_n - len(unified) / 2) <= three_sigma
    elapsed = time.perf_counter() - started
    ok = (len(unified) == 33039 and len(manifest.test_formats) == 48
          and share_ok and elapsed < 60.0)
    verdict("corpus-size-defaults", ok,
             f"73000/2500/7200 dates, presets {RELATIVE_COUNT_PRESETS}, "
             f"{len(addresses)} addr, {len(unified)} unified "
             f"({address_n} addresses, 48-format validation), {elapsed:.1f}s")


def test_03_round_trip_completeness(verdict):
    started = time.perf_counter()
    records = []
    plan = {("pt", "complete"): 1500, ("pt", "incomplete_dm"): 1100,
            ("pt", "incomplete_my"): 1100, ("pt", "relative"): 1100,
            ("en", "complete"): 1500, ("en", "incomplete_dm"): 1100,
            ("en", "incomplete_my"): 1100, ("en", "relative"): 800}
    for (language, kind), count in plan.items():
        chunk, _ = generate_date_corpus(DateCorpusConfig(
            kind=kind, language=language, count=count, seed=29))
        records.extend(chunk)
    addresses, _ = generate_address_corpus(
        AddressCorpusConfig(count=700, seed=29))
    records.extend(addresses)
    assert len(records) == 10000

    inv = load_date_inventory()
    every_format = {t.id for t in inv.templates} | \
        {t.id for t in load_address_inventory()}
    seen = {r.format_id for r in records}
    coverage_ok = seen == every_format

    predictions, _ = RulesBackend().run(records)
    failures = [(r.input, p, r.target)
                for r, p in zip(records, predictions)
                if not exact_match(p, r.target)]
    elapsed = time.perf_counter() - started
    ok = coverage_ok and not failures and elapsed < 30.0
    for failure in failures[:5]:
        print(failure)
    verdict("round-trip-completeness", ok,
            f"10000 clean samples, {len(seen)}/{len(every_format)} formats, "
            f"{len(failures)} failures, {elapsed:.1f}s")


def test_04_noise_contract(verdict):
    started = time.perf_counter()
    records, _ = generate_date_corpus(DateCorpusConfig(
        kind="complete", count=10000, seed=31))
    inputs = [r.input for r in records]

    identical = corrupt_many(records, NoiseConfig(level=0.0, seed=1))
    identity_ok = identical == records

    levels_ok, immunity_ok, measured_all = True, True, []
    for level in (0.1, 0.3, 0.5):
        noised = corrupt_many(records, NoiseConfig(level=level, seed=17))
        measured = measure_noise(inputs, [r.input for r in noised])
        measured_all.append(round(measured, 4))
        sigma = math.sqrt(level * (1 - level) / len(records))
        if abs(measured - level) > 3 * sigma:
            levels_ok = False
        if any(a.target != b.target or a.format_id != b.format_id
               or a.task != b.task or a.language != b.language
               for a, b in zip(records, noised)):
            immunity_ok = False
    elapsed = time.perf_counter() - started
    ok = identity_ok and levels_ok and immunity_ok and elapsed < 30.0
    verdict("noise-contract", ok,
             f"measured {measured_all} at 0.1/0.3/0.5, label immunity "
             f"{'100%' if immunity_ok else 'BROKEN'}, level-0 identity "
             f"{identity_ok}, {elapsed:.1f}s")


def test_05_regeneration_determinism(verdict, tmp_path):
    started = time.perf_counter()

    def digest(records):
        path = tmp_path / f"{len(list(records))}.jsonl"
        write_jsonl(records, path)
        return hashlib.sha256(path.read_bytes()).hexdigest()

    builds = [
        lambda: generate_date_corpus(DateCorpusConfig(
            kind="complete", count=2000, seed=7, noise_level=0.3))[0],
        lambda: generate_date_corpus(DateCorpusConfig(
            kind="relative", language="en", count=1500, seed=11))[0],
        lambda: generate_address_corpus(AddressCorpusConfig(
            per_format=60, seed=7, noise_level=0.2))[0],
        lambda: build_unified_corpus(UnifiedCorpusConfig(
            count=2500, seed=7, prefix=True, noise_level=0.4))[0],
        lambda: generate_out_of_range_probes(
            DateCorpusConfig(kind="complete", seed=7), "below", 50),
    ]
    ok = all(digest(build()) == digest(build()) for build in builds)
    elapsed = time.perf_counter() - started
    ok = ok and elapsed < 60.0
    verdict("regeneration-determinism", ok,
             f"{len(builds)} corpus shapes byte-identical on rebuild, "
             f"{elapsed:.1f}s")


def test_06_out_of_range_probes(verdict):
    config = DateCorpusConfig(kind="complete", seed=7)
    below = generate_out_of_range_probes(config, "below", 50)
    above = generate_out_of_range_probes(config, "above", 50)
    years_below = [int(r.target[6:10]) for r in below]
    years_above = [int(r.target[6:10]) for r in above]
    grammar_ok = all(parse_canonical(r.target) is not None
                     for r in below + above)
    ok = (len(below) == 50 and len(above) == 50
          and all(y < 1921 for y in years_below)
          and all(y > 2120 for y in years_above)
          and grammar_ok)
    verdict("out-of-range-probes", ok,
             f"50 below (max year {max(years_below)}), "
             f"50 above (min year {min(years_above)}), all grammar-valid")


def test_07_exact_match_metric(verdict):
    rng = stable_rng("acceptance-exact-match")
    alphabet = string.ascii_letters + string.digits + " /+-"
    reflexive = perturbed = newline = 0
    for _ in range(1000):
        text = "".join(rng.choice(alphabet)
                       for _ in range(rng.randint(1, 60)))
        reflexive += exact_match(text, text)
        pos = rng.randrange(len(text))
        new = rng.choice([c for c in alphabet if c != text[pos]])
        mutated = text[:pos] + new + text[pos + 1:]
        perturbed += not exact_match(mutated, text)
        newline += (exact_match(text + "\n", text)
                    and exact_match(text, text + "\n")
                    and not exact_match(text + " ", text)
                    and not exact_match(text + "\n\n", text))
    ok = reflexive == perturbed == newline == 1000
    verdict("exact-match-metric", ok,
             f"1000-pair fuzz: reflexive {reflexive}, perturbation-detected "
             f"{perturbed}, newline-tolerant {newline}")


def test_08_fixed_seed_noise_degradation(verdict):
    clean, manifest = generate_date_corpus(DateCorpusConfig(
        kind="complete", count=10000, seed=7))
    noised, _ = generate_date_corpus(DateCorpusConfig(
        kind="complete", count=10000, seed=7, noise_level=0.5))
    backend = RulesBackend()
    clean_report = evaluate(backend, clean, manifest)
    noised_report = evaluate(backend, noised, manifest)
    ok = (clean_report.accuracy == 1.0
          and noised_report.accuracy <= clean_report.accuracy)
    verdict("fixed-seed-noise-degradation", ok,
             f"held-out formats, clean {clean_report.accuracy:.4f} (n="
             f"{clean_report.n_total}), noise-0.5 "
             f"{noised_report.accuracy:.4f} (n={noised_report.n_total})")
