"""Unified mixed-task corpus: composition, split, prefixes, determinism."""
import math

from normkit.harness import RulesBackend, corpus_digest, evaluate
from normkit.unified import (
    ADDRESS_PREFIX,
    DATE_PREFIX,
    UnifiedCorpusConfig,
    build_unified_corpus,
    generate_unified_records,
    plan_unified_corpus,
)


def test_default_shape_and_validation_split():
    config = UnifiedCorpusConfig()
    manifest = plan_unified_corpus(config)
    assert config.count == 33039
    assert manifest.kind == "unified"
    assert len(manifest.test_formats) == 48
    assert len(manifest.train_formats) + len(manifest.test_formats) == 193


def test_validation_formats_draw_from_every_task():
    manifest = plan_unified_corpus(UnifiedCorpusConfig())
    prefixes = {fmt.split("-")[0] for fmt in manifest.test_formats}
    # 48 uniform draws out of 193 cover both dates and addresses
    assert "addr" in prefixes and "pt" in prefixes


def test_address_share_is_binomially_plausible():
    config = UnifiedCorpusConfig(count=4000, seed=7)
    records, _ = build_unified_corpus(config)
    addresses = sum(r.task == "address" for r in records)
    sigma = math.sqrt(0.5 * 0.5 * len(records))
    assert abs(addresses - len(records) / 2) <= 3 * sigma


def test_share_extremes_produce_single_task_corpora():
    all_dates, _ = build_unified_corpus(
        UnifiedCorpusConfig(count=300, address_share=0.0, seed=1))
    assert all(r.task != "address" for r in all_dates)
    all_addr, _ = build_unified_corpus(
        UnifiedCorpusConfig(count=300, address_share=1.0, seed=1))
    assert all(r.task == "address" for r in all_addr)


def test_records_are_pure_functions_of_index():
    config = UnifiedCorpusConfig(count=500, seed=11)
    full = generate_unified_records(config, 0, 500)
    window = generate_unified_records(config, 250, 280)
    assert full[250:280] == window


def test_same_flags_same_bytes():
    a, _ = build_unified_corpus(UnifiedCorpusConfig(count=400, seed=5,
                                                    noise_level=0.3))
    b, _ = build_unified_corpus(UnifiedCorpusConfig(count=400, seed=5,
                                                    noise_level=0.3))
    assert corpus_digest(a) == corpus_digest(b)


def test_prefix_mode_tags_every_input_by_task():
    config = UnifiedCorpusConfig(count=400, seed=7, prefix=True)
    records, _ = build_unified_corpus(config)
    for record in records:
        if record.task == "address":
            assert record.input.startswith(ADDRESS_PREFIX)
        else:
            assert record.input.startswith(DATE_PREFIX)


def test_prefix_is_applied_after_noising_so_it_stays_intact():
    config = UnifiedCorpusConfig(count=600, seed=7, prefix=True,
                                 noise_level=1.0)
    records, _ = build_unified_corpus(config)
    for record in records:
        assert record.input.startswith((DATE_PREFIX, ADDRESS_PREFIX))


def test_prefix_does_not_change_which_samples_are_drawn():
    plain, _ = build_unified_corpus(UnifiedCorpusConfig(count=300, seed=7))
    tagged, _ = build_unified_corpus(UnifiedCorpusConfig(count=300, seed=7,
                                                         prefix=True))
    for a, b in zip(plain, tagged):
        assert b.input.endswith(a.input)
        assert a.target == b.target


def test_rule_backend_is_perfect_on_clean_unified_data():
    records, manifest = build_unified_corpus(
        UnifiedCorpusConfig(count=1500, seed=7))
    report = evaluate(RulesBackend(), records, manifest)
    assert report.accuracy == 1.0
    report_all = evaluate(RulesBackend(), records, manifest, all_formats=True)
    assert report_all.accuracy == 1.0
    assert report_all.n_total == 1500


def test_rule_backend_handles_prefixed_corpora():
    records, manifest = build_unified_corpus(
        UnifiedCorpusConfig(count=800, seed=7, prefix=True))
    report = evaluate(RulesBackend(), records, manifest, all_formats=True)
    assert report.accuracy == 1.0


def test_manifest_extra_carries_regeneration_settings():
    manifest = plan_unified_corpus(UnifiedCorpusConfig(count=100, seed=9,
                                                       noise_level=0.2))
    for key in ("count", "address_share", "prefix", "noise_level",
                "year_min", "year_max"):
        assert key in manifest.extra, key
