"""The unified Portuguese corpus: every date format plus every address
format in one stream, with a held-out validation subset of formats.

Defaults: 33039 records, half of them addresses, 48 of the 193 format
ids held out for validation (drawn uniformly across dates and
addresses). Optional prefix mode prepends "data: " / "endereco: " to
each input so a single model can be told which task a record is.
Records stay pure functions of (config, index), so ranges can be
generated in parallel and concatenated.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path

from . import noise as noise_mod
from .addresses import (DEFAULT_COMPLEMENT_RATE, DEFAULT_SN_RATE,
                        canonical_address, load_address_inventory,
                        load_gazetteer, render_address, sample_address_fields)
from .dates import (DEFAULT_YEAR_MAX, DEFAULT_YEAR_MIN, KIND_TO_TASK,
                    DateCorpusConfig, _sample_payload, canonical_string,
                    load_date_inventory, render_date)
from .errors import ConfigError
from .records import Record, SplitManifest, stable_rng

DEFAULT_UNIFIED_COUNT = 33039
DEFAULT_ADDRESS_SHARE = 0.5
DEFAULT_VALIDATION_FORMATS = 48

DATE_PREFIX = "data: "
ADDRESS_PREFIX = "endereco: "

_DATE_KINDS = ("complete", "incomplete_dm", "incomplete_my", "relative")


@dataclass(frozen=True)
class UnifiedCorpusConfig:
    count: int = DEFAULT_UNIFIED_COUNT
    address_share: float = DEFAULT_ADDRESS_SHARE
    validation_formats: int = DEFAULT_VALIDATION_FORMATS
    seed: int = 7
    prefix: bool = False
    noise_level: float = 0.0
    noise_seed: int | None = None
    ops_per_record: int = 1
    year_min: int = DEFAULT_YEAR_MIN
    year_max: int = DEFAULT_YEAR_MAX
    magnitude_min: int = 1
    magnitude_max: int = 999
    sn_rate: float = DEFAULT_SN_RATE
    complement_rate: float = DEFAULT_COMPLEMENT_RATE
    date_inventory_path: str | Path | None = None
    address_inventory_path: str | Path | None = None
    gazetteer_path: str | Path | None = None

    def __post_init__(self):
        if self.count < 0:
            raise ConfigError(f"count must be >= 0, got {self.count}")
        if not 0.0 <= self.address_share <= 1.0:
            raise ConfigError(
                f"address_share must be in [0, 1], got {self.address_share}")
        if not 0.0 <= self.noise_level <= 1.0:
            raise ConfigError(
                f"noise level must be in [0, 1], got {self.noise_level}")
        if self.validation_formats < 0:
            raise ConfigError("validation_formats must be >= 0")

    def noise_config(self):
        if self.noise_level == 0.0:
            return None
        seed = self.noise_seed if self.noise_seed is not None else self.seed
        return noise_mod.NoiseConfig(level=self.noise_level, seed=seed,
                                     ops_per_record=self.ops_per_record)

    def date_config(self, kind: str) -> DateCorpusConfig:
        return DateCorpusConfig(
            kind=kind, language="pt", count=0, seed=self.seed,
            year_min=self.year_min, year_max=self.year_max,
            magnitude_min=self.magnitude_min, magnitude_max=self.magnitude_max,
            inventory_path=self.date_inventory_path)


def plan_unified_corpus(config: UnifiedCorpusConfig) -> SplitManifest:
    """Choose the held-out validation formats and describe the corpus."""
    inventory = load_date_inventory(config.date_inventory_path)
    date_ids = [t.id for kind in _DATE_KINDS
                for t in inventory.subset("pt", kind)]
    address_ids = [t.id for t in
                   load_address_inventory(config.address_inventory_path)]
    all_ids = date_ids + address_ids
    if config.validation_formats > len(all_ids):
        raise ConfigError(
            f"cannot hold out {config.validation_formats} of "
            f"{len(all_ids)} formats")
    shuffled = list(all_ids)
    stable_rng("split", "unified", "pt", config.seed).shuffle(shuffled)
    held_out = set(shuffled[:config.validation_formats])
    extra = {
        "count": config.count,
        "address_share": config.address_share,
        "prefix": config.prefix,
        "noise_level": config.noise_level,
        "noise_seed": (config.noise_seed if config.noise_seed is not None
                       else config.seed),
        "ops_per_record": config.ops_per_record,
        "year_min": config.year_min,
        "year_max": config.year_max,
        "magnitude_min": config.magnitude_min,
        "magnitude_max": config.magnitude_max,
        "generator": "normkit",
    }
    return SplitManifest(
        train_formats=[i for i in all_ids if i not in held_out],
        test_formats=[i for i in all_ids if i in held_out],
        seed=config.seed, kind="unified", language="pt", extra=extra)


def generate_unified_records(config: UnifiedCorpusConfig, start: int,
                             stop: int) -> list[Record]:
    """Records for index range [start, stop); pure per (config, index)."""
    inventory = load_date_inventory(config.date_inventory_path)
    date_templates = [t for kind in _DATE_KINDS
                      for t in inventory.subset("pt", kind)]
    address_templates = list(load_address_inventory(config.address_inventory_path))
    gazetteer = load_gazetteer(config.gazetteer_path)
    noise_cfg = config.noise_config()
    date_cfgs = {kind: config.date_config(kind) for kind in _DATE_KINDS}

    out: list[Record] = []
    for index in range(start, stop):
        rng = stable_rng("unified", config.seed, index)
        if rng.random() < config.address_share:
            template = address_templates[rng.randrange(len(address_templates))]
            entry = gazetteer[rng.randrange(len(gazetteer))]
            fields = sample_address_fields(rng, entry, config.sn_rate,
                                           config.complement_rate)
            record = Record(input=render_address(fields, template, rng),
                            target=canonical_address(fields),
                            format_id=template.id, language="pt",
                            task="address", noised=False)
        else:
            template = date_templates[rng.randrange(len(date_templates))]
            payload = _sample_payload(rng, template.kind, template,
                                      date_cfgs[template.kind])
            record = Record(input=render_date(payload, template),
                            target=canonical_string(payload),
                            format_id=template.id, language="pt",
                            task=KIND_TO_TASK[template.kind], noised=False)
        if noise_cfg is not None:
            record = noise_mod.corrupt(record, noise_cfg, index)
        if config.prefix:
            prefix = (ADDRESS_PREFIX if record.task == "address"
                      else DATE_PREFIX)
            record = replace(record, input=prefix + record.input)
        out.append(record)
    return out


def build_unified_corpus(config: UnifiedCorpusConfig) -> tuple[list[Record], SplitManifest]:
    manifest = plan_unified_corpus(config)
    return generate_unified_records(config, 0, config.count), manifest
