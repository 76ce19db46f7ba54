"""Date payloads, canonical forms, surface templates, and corpus generation.

Canonical grammar (targets):

    complete        DD/MM/AAAA          zero-padded, calendar-valid
    incomplete      DD/MM  or  MM/AAAA  zero-padded
    relative        (+|-)N(d|m|a)       sign, unpadded magnitude, unit letter

Surface templates are strings over placeholder tokens:

    day        {D} {DD} {DWORD} {DORD}
    month      {M} {MM} {MNAME} {MABBR}
    year       {YYYY} {YWORD}
    magnitude  {N} {NWORD}
    unit       {UNITWORD}
    sign word  {SIGNWORD}

Everything else in a template is literal text. Each semantic slot may
appear at most once per template.
"""

from __future__ import annotations

import calendar
import json
import re
from dataclasses import dataclass, field
from importlib.resources import files
from pathlib import Path

from . import noise as noise_mod
from .errors import (ConfigError, DuplicateSlot, InvalidRange, InventoryError,
                     Unparseable, UnknownToken, UnsupportedSlot)
from .lexicon import SIGN_PHRASES, month_abbr, month_name, unit_word
from .numwords import cardinal, ordinal
from .records import Record, SplitManifest, stable_rng

KINDS = ("complete", "incomplete_dm", "incomplete_my", "relative")

KIND_TO_TASK = {
    "complete": "date_complete",
    "incomplete_dm": "date_incomplete",
    "incomplete_my": "date_incomplete",
    "relative": "date_relative",
}

# Maximum day per month across all years (Feb 29 allowed when no year is
# present to rule it out).
MONTH_MAX_DAY = (31, 29, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31)

UNITS = ("d", "m", "a")


def days_in_month(year: int, month: int) -> int:
    return calendar.monthrange(year, month)[1]


# ----------------------------------------------------------------- payloads


@dataclass(frozen=True)
class CompleteDate:
    day: int
    month: int
    year: int

    def __post_init__(self):
        if not 1000 <= self.year <= 9999:
            raise InvalidRange(f"year out of range: {self.year}")
        if not 1 <= self.month <= 12:
            raise InvalidRange(f"month out of range: {self.month}")
        if not 1 <= self.day <= days_in_month(self.year, self.month):
            raise InvalidRange(
                f"day {self.day} invalid for {self.month:02d}/{self.year:04d}")


@dataclass(frozen=True)
class DayMonth:
    day: int
    month: int

    def __post_init__(self):
        if not 1 <= self.month <= 12:
            raise InvalidRange(f"month out of range: {self.month}")
        if not 1 <= self.day <= MONTH_MAX_DAY[self.month - 1]:
            raise InvalidRange(f"day {self.day} invalid for month {self.month}")


@dataclass(frozen=True)
class MonthYear:
    month: int
    year: int

    def __post_init__(self):
        if not 1000 <= self.year <= 9999:
            raise InvalidRange(f"year out of range: {self.year}")
        if not 1 <= self.month <= 12:
            raise InvalidRange(f"month out of range: {self.month}")


@dataclass(frozen=True)
class RelativeOffset:
    sign: str
    magnitude: int
    unit: str

    def __post_init__(self):
        if self.sign not in ("+", "-"):
            raise ConfigError(f"sign must be '+' or '-', got {self.sign!r}")
        if self.magnitude < 1:
            raise InvalidRange(f"magnitude must be >= 1, got {self.magnitude}")
        if self.unit not in UNITS:
            raise ConfigError(f"unit must be one of d/m/a, got {self.unit!r}")


DatePayload = CompleteDate | DayMonth | MonthYear | RelativeOffset


def canonical_string(payload: DatePayload) -> str:
    """Render a payload in the canonical target grammar."""
    if isinstance(payload, CompleteDate):
        return f"{payload.day:02d}/{payload.month:02d}/{payload.year:04d}"
    if isinstance(payload, DayMonth):
        return f"{payload.day:02d}/{payload.month:02d}"
    if isinstance(payload, MonthYear):
        return f"{payload.month:02d}/{payload.year:04d}"
    if isinstance(payload, RelativeOffset):
        return f"{payload.sign}{payload.magnitude}{payload.unit}"
    raise TypeError(f"not a date payload: {payload!r}")


CANONICAL_COMPLETE_RE = re.compile(r"^(\d{2})/(\d{2})/(\d{4})$")
CANONICAL_DM_RE = re.compile(r"^(\d{2})/(\d{2})$")
CANONICAL_MY_RE = re.compile(r"^(\d{2})/(\d{4})$")
CANONICAL_RELATIVE_RE = re.compile(r"^([+-])([1-9]\d*)([dma])$")


def parse_canonical(text: str) -> DatePayload | None:
    """Parse a string already in canonical shape.

    Returns None when the shape is not canonical at all; raises
    Unparseable when the shape matches but the value is invalid
    (e.g. '31/02/2021') — canonical-looking inputs are never silently
    corrected.
    """
    m = CANONICAL_COMPLETE_RE.match(text)
    if m:
        try:
            return CompleteDate(int(m.group(1)), int(m.group(2)), int(m.group(3)))
        except (InvalidRange, ConfigError) as exc:
            raise Unparseable(f"invalid calendar date {text!r}") from exc
    m = CANONICAL_MY_RE.match(text)
    if m:
        try:
            return MonthYear(int(m.group(1)), int(m.group(2)))
        except (InvalidRange, ConfigError) as exc:
            raise Unparseable(f"invalid month/year {text!r}") from exc
    m = CANONICAL_DM_RE.match(text)
    if m:
        try:
            return DayMonth(int(m.group(1)), int(m.group(2)))
        except (InvalidRange, ConfigError) as exc:
            raise Unparseable(f"invalid day/month {text!r}") from exc
    m = CANONICAL_RELATIVE_RE.match(text)
    if m:
        return RelativeOffset(m.group(1), int(m.group(2)), m.group(3))
    return None


# ---------------------------------------------------------------- templates

TOKEN_RE = re.compile(r"\{([A-Z]+)\}")

TOKEN_SLOTS = {
    "D": "day", "DD": "day", "DWORD": "day", "DORD": "day",
    "M": "month", "MM": "month", "MNAME": "month", "MABBR": "month",
    "YYYY": "year", "YWORD": "year",
    "N": "magnitude", "NWORD": "magnitude",
    "UNITWORD": "unit", "SIGNWORD": "signword",
}

_KIND_SLOTS = {
    "complete": {"required": {"day", "month", "year"}, "allowed": {"day", "month", "year"}},
    "incomplete_dm": {"required": {"day", "month"}, "allowed": {"day", "month"}},
    "incomplete_my": {"required": {"month", "year"}, "allowed": {"month", "year"}},
    "relative": {"required": {"magnitude", "unit"},
                 "allowed": {"magnitude", "unit", "signword"}},
}


@dataclass(frozen=True)
class DateTemplate:
    """One surface format: a template string plus its identity.

    Relative templates pin a sign ('+' future, '-' past) and may share a
    ``family`` with other renderings of the same phrase; format splits
    for relative dates operate on families so a held-out phrase is held
    out in every rendering.
    """

    id: str
    language: str
    kind: str
    template: str
    sign: str | None = None
    family: str | None = None

    def __post_init__(self):
        if self.language not in ("pt", "en"):
            raise InventoryError(f"{self.id}: unknown language {self.language!r}")
        if self.kind not in KINDS:
            raise InventoryError(f"{self.id}: unknown kind {self.kind!r}")
        tokens = TOKEN_RE.findall(self.template)
        slots_seen: dict[str, str] = {}
        for token in tokens:
            if token not in TOKEN_SLOTS:
                raise UnknownToken(f"{self.id}: unknown token {{{token}}}")
            slot = TOKEN_SLOTS[token]
            if slot in slots_seen:
                raise DuplicateSlot(
                    f"{self.id}: slot {slot!r} filled by both "
                    f"{{{slots_seen[slot]}}} and {{{token}}}")
            slots_seen[slot] = token
        rules = _KIND_SLOTS[self.kind]
        missing = rules["required"] - set(slots_seen)
        if missing:
            raise InventoryError(f"{self.id}: missing slots {sorted(missing)}")
        extra = set(slots_seen) - rules["allowed"]
        if extra:
            raise InventoryError(f"{self.id}: slots {sorted(extra)} not allowed "
                                 f"for kind {self.kind}")
        if self.kind == "relative":
            if self.sign not in ("+", "-"):
                raise InventoryError(f"{self.id}: relative template needs sign")
        elif self.sign is not None:
            raise InventoryError(f"{self.id}: sign only applies to relative kind")

    @property
    def family_key(self) -> str:
        return self.family if self.family is not None else self.id


def _slot_values(payload: DatePayload, template: DateTemplate) -> dict[str, str]:
    lang = template.language
    values: dict[str, str] = {}
    if isinstance(payload, (CompleteDate, DayMonth)):
        values["D"] = str(payload.day)
        values["DD"] = f"{payload.day:02d}"
        values["DWORD"] = cardinal(payload.day, lang)
        values["DORD"] = ordinal(payload.day, lang)
    if isinstance(payload, (CompleteDate, DayMonth, MonthYear)):
        values["M"] = str(payload.month)
        values["MM"] = f"{payload.month:02d}"
        values["MNAME"] = month_name(payload.month, lang)
        values["MABBR"] = month_abbr(payload.month, lang)
    if isinstance(payload, (CompleteDate, MonthYear)):
        values["YYYY"] = f"{payload.year:04d}"
        values["YWORD"] = cardinal(payload.year, lang)
    if isinstance(payload, RelativeOffset):
        if template.sign is not None and template.sign != payload.sign:
            raise UnsupportedSlot(
                f"template {template.id} pins sign {template.sign!r} but "
                f"payload has {payload.sign!r}")
        values["N"] = str(payload.magnitude)
        values["NWORD"] = cardinal(payload.magnitude, lang)
        values["UNITWORD"] = unit_word(payload.unit, payload.magnitude, lang)
        values["SIGNWORD"] = SIGN_PHRASES[lang][payload.sign]
    return values


def render_date(payload: DatePayload, template: DateTemplate) -> str:
    """Render a payload through a surface template."""
    values = _slot_values(payload, template)

    def substitute(match: re.Match) -> str:
        token = match.group(1)
        if token not in values:
            raise UnsupportedSlot(
                f"template {template.id} needs {{{token}}} but the payload "
                f"cannot fill it")
        return values[token]

    return TOKEN_RE.sub(substitute, template.template)


# ---------------------------------------------------------------- inventory


class DateInventory:
    """The collection of surface formats, indexed by id and (language, kind)."""

    def __init__(self, templates: list[DateTemplate]):
        self.templates = list(templates)
        self.by_id: dict[str, DateTemplate] = {}
        for tmpl in self.templates:
            if tmpl.id in self.by_id:
                raise InventoryError(f"duplicate format id {tmpl.id!r}")
            self.by_id[tmpl.id] = tmpl

    def subset(self, language: str, kind: str) -> list[DateTemplate]:
        return [t for t in self.templates
                if t.language == language and t.kind == kind]

    def __len__(self) -> int:
        return len(self.templates)


_DEFAULT_INVENTORY: DateInventory | None = None


def load_date_inventory(path: str | Path | None = None) -> DateInventory:
    """Load the shipped format inventory, or a custom JSON file."""
    global _DEFAULT_INVENTORY
    if path is None:
        if _DEFAULT_INVENTORY is None:
            text = files("normkit.data").joinpath("date_formats.json").read_text("utf-8")
            _DEFAULT_INVENTORY = _parse_inventory(text)
        return _DEFAULT_INVENTORY
    return _parse_inventory(Path(path).read_text(encoding="utf-8"))


def _parse_inventory(text: str) -> DateInventory:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InventoryError(f"inventory is not valid JSON: {exc}") from exc
    if not isinstance(data, dict) or "formats" not in data:
        raise InventoryError("inventory must be an object with a 'formats' list")
    templates = []
    for entry in data["formats"]:
        templates.append(DateTemplate(
            id=entry["id"],
            language=entry["language"],
            kind=entry["kind"],
            template=entry["template"],
            sign=entry.get("sign"),
            family=entry.get("family"),
        ))
    return DateInventory(templates)


# ------------------------------------------------------------------- splits

DEFAULT_SPLIT_POLICY = {
    "complete": (34, 11),
    "incomplete_dm": (34, 11),
    "incomplete_my": (34, 11),
    "relative": (13, 5),  # counted in families
}


def split_formats(templates: list[DateTemplate], seed: int,
                  policy: tuple[int, int] | None = None,
                  by_family: bool | None = None) -> tuple[list[str], list[str]]:
    """Partition formats into train/test ids, a pure function of the seed.

    Relative formats are grouped by family before shuffling so that both
    renderings of a phrase land on the same side.
    """
    if not templates:
        raise InventoryError("no formats to split")
    kind = templates[0].kind
    if by_family is None:
        by_family = kind == "relative"
    if policy is None:
        policy = DEFAULT_SPLIT_POLICY[kind]
    n_train, n_test = policy
    if n_train < 0 or n_test < 0:
        raise ConfigError("split counts must be non-negative")

    if by_family:
        families = sorted({t.family_key for t in templates})
        if n_train + n_test != len(families):
            raise ConfigError(
                f"split {n_train}:{n_test} does not cover {len(families)} families")
        shuffled = list(families)
        stable_rng("split", kind, templates[0].language, seed).shuffle(shuffled)
        train_fams = set(shuffled[:n_train])
        train = [t.id for t in templates if t.family_key in train_fams]
        test = [t.id for t in templates if t.family_key not in train_fams]
    else:
        ids = [t.id for t in templates]
        if n_train + n_test != len(ids):
            raise ConfigError(
                f"split {n_train}:{n_test} does not cover {len(ids)} formats")
        shuffled = list(ids)
        stable_rng("split", kind, templates[0].language, seed).shuffle(shuffled)
        train_set = set(shuffled[:n_train])
        train = [i for i in ids if i in train_set]
        test = [i for i in ids if i not in train_set]
    return train, test


# --------------------------------------------------------------- generation

DEFAULT_COUNTS = {
    "complete": 73000,
    "incomplete_dm": 2500,
    "incomplete_my": 7200,
    "relative": 4500,
}

RELATIVE_COUNT_PRESETS = (1800, 4500, 9000)

DEFAULT_YEAR_MIN = 1921
DEFAULT_YEAR_MAX = 2120


@dataclass
class DateCorpusConfig:
    """Everything needed to regenerate a date corpus byte-for-byte."""

    kind: str
    language: str = "pt"
    count: int | None = None
    seed: int = 0
    year_min: int = DEFAULT_YEAR_MIN
    year_max: int = DEFAULT_YEAR_MAX
    magnitude_min: int = 1
    magnitude_max: int = 999
    noise_level: float = 0.0
    noise_seed: int | None = None
    ops_per_record: int = 1
    split: tuple[int, int] | None = None
    format_subset: str = "all"
    inventory_path: str | None = None

    def __post_init__(self):
        kind = self.kind.replace("-", "_")
        if kind not in KINDS:
            raise ConfigError(f"unknown kind {self.kind!r}")
        self.kind = kind
        if self.language not in ("pt", "en"):
            raise ConfigError(f"unknown language {self.language!r}")
        if self.count is None:
            self.count = DEFAULT_COUNTS[self.kind]
        if self.count < 0:
            raise ConfigError("count must be >= 0")
        if self.year_min > self.year_max:
            raise InvalidRange(f"empty year range {self.year_min}..{self.year_max}")
        if not 1000 <= self.year_min <= 9999 or not 1000 <= self.year_max <= 9999:
            raise InvalidRange("years must stay within 1000..9999")
        if self.magnitude_min < 1 or self.magnitude_min > self.magnitude_max:
            raise InvalidRange("bad magnitude range")
        if self.magnitude_max > 9999:
            raise InvalidRange("magnitudes above 9999 cannot be spelled out")
        if not 0.0 <= self.noise_level <= 1.0:
            raise ConfigError("noise level must be in [0, 1]")
        if self.format_subset not in ("all", "train", "test"):
            raise ConfigError(f"unknown format subset {self.format_subset!r}")

    def noise_config(self) -> "noise_mod.NoiseConfig | None":
        if self.noise_level <= 0:
            return None
        seed = self.noise_seed if self.noise_seed is not None else self.seed
        return noise_mod.NoiseConfig(level=self.noise_level, seed=seed,
                                     ops_per_record=self.ops_per_record)


def _manifest_extra(config: DateCorpusConfig) -> dict:
    return {
        "count": config.count,
        "year_min": config.year_min,
        "year_max": config.year_max,
        "magnitude_min": config.magnitude_min,
        "magnitude_max": config.magnitude_max,
        "noise_level": config.noise_level,
        "noise_seed": config.noise_seed,
        "ops_per_record": config.ops_per_record,
        "format_subset": config.format_subset,
        "generator": "normkit",
    }


def plan_date_corpus(config: DateCorpusConfig) -> tuple[list[DateTemplate], SplitManifest]:
    """Resolve the inventory subset and split for a config (no records)."""
    inventory = load_date_inventory(config.inventory_path)
    templates = inventory.subset(config.language, config.kind)
    if not templates:
        raise InventoryError(
            f"no formats for language={config.language} kind={config.kind}")
    train, test = split_formats(templates, config.seed, policy=config.split)
    manifest = SplitManifest(
        train_formats=train,
        test_formats=test,
        seed=config.seed,
        kind=config.kind,
        language=config.language,
        extra=_manifest_extra(config),
    )
    return templates, manifest


def _pick_ids(manifest: SplitManifest, subset: str) -> list[str]:
    if subset == "train":
        ids = manifest.train_formats
    elif subset == "test":
        ids = manifest.test_formats
    else:
        ids = manifest.all_formats
    if not ids:
        raise ConfigError(f"format subset {subset!r} is empty")
    return list(ids)


def _sample_payload(rng, kind: str, template: DateTemplate,
                    config: DateCorpusConfig) -> DatePayload:
    if kind == "complete":
        year = rng.randint(config.year_min, config.year_max)
        month = rng.randint(1, 12)
        day = rng.randint(1, days_in_month(year, month))
        return CompleteDate(day, month, year)
    if kind == "incomplete_dm":
        month = rng.randint(1, 12)
        day = rng.randint(1, MONTH_MAX_DAY[month - 1])
        return DayMonth(day, month)
    if kind == "incomplete_my":
        month = rng.randint(1, 12)
        year = rng.randint(config.year_min, config.year_max)
        return MonthYear(month, year)
    magnitude = rng.randint(config.magnitude_min, config.magnitude_max)
    unit = UNITS[rng.randrange(3)]
    return RelativeOffset(template.sign, magnitude, unit)


def generate_date_records(config: DateCorpusConfig, start: int, stop: int,
                          manifest: SplitManifest | None = None) -> list[Record]:
    """Generate records for index range [start, stop).

    Each record is a pure function of (config, index), so disjoint ranges
    can be produced independently (in parallel) and concatenated.
    """
    inventory = load_date_inventory(config.inventory_path)
    if manifest is None:
        _, manifest = plan_date_corpus(config)
    ids = _pick_ids(manifest, config.format_subset)
    noise_cfg = config.noise_config()
    task = KIND_TO_TASK[config.kind]
    out: list[Record] = []
    for index in range(start, stop):
        rng = stable_rng("date", config.kind, config.language, config.seed, index)
        template = inventory.by_id[ids[rng.randrange(len(ids))]]
        payload = _sample_payload(rng, config.kind, template, config)
        record = Record(
            input=render_date(payload, template),
            target=canonical_string(payload),
            format_id=template.id,
            language=config.language,
            task=task,
            noised=False,
        )
        if noise_cfg is not None:
            record = noise_mod.corrupt(record, noise_cfg, index)
        out.append(record)
    return out


def generate_date_corpus(config: DateCorpusConfig) -> tuple[list[Record], SplitManifest]:
    """Generate the full corpus plus its split manifest."""
    _, manifest = plan_date_corpus(config)
    records = generate_date_records(config, 0, config.count, manifest)
    return records, manifest


PROBE_SPAN = 200


def generate_out_of_range_probes(config: DateCorpusConfig, side: str,
                                 count: int = 50) -> list[Record]:
    """Probe records whose years fall outside the configured range.

    side='below' samples the 200 years under year_min; side='above' the
    200 years over year_max. Probes use only test-split formats and are
    never noised — they isolate range generalization.
    """
    if side not in ("below", "above"):
        raise ConfigError(f"side must be 'below' or 'above', got {side!r}")
    if count < 1:
        raise ConfigError("count must be >= 1")
    if config.kind not in ("complete", "incomplete_my"):
        raise ConfigError(f"kind {config.kind} has no year slot to push out of range")
    if side == "below":
        lo = max(1000, config.year_min - PROBE_SPAN)
        hi = config.year_min - 1
        if lo > hi:
            raise InvalidRange("no room below the year range")
    else:
        lo = config.year_max + 1
        hi = min(9999, config.year_max + PROBE_SPAN)
        if lo > hi:
            raise InvalidRange("no room above the year range")

    inventory = load_date_inventory(config.inventory_path)
    _, manifest = plan_date_corpus(config)
    ids = manifest.test_formats
    if not ids:
        raise ConfigError("probes need a non-empty test split")
    task = KIND_TO_TASK[config.kind]
    out: list[Record] = []
    for index in range(count):
        rng = stable_rng("probe", side, config.kind, config.language,
                         config.seed, index)
        template = inventory.by_id[ids[rng.randrange(len(ids))]]
        year = rng.randint(lo, hi)
        month = rng.randint(1, 12)
        if config.kind == "complete":
            day = rng.randint(1, days_in_month(year, month))
            payload: DatePayload = CompleteDate(day, month, year)
        else:
            payload = MonthYear(month, year)
        out.append(Record(
            input=render_date(payload, template),
            target=canonical_string(payload),
            format_id=template.id,
            language=config.language,
            task=task,
            noised=False,
        ))
    return out
