"""Brazilian address fixtures, surface templates, and corpus generation.

Canonical target grammar (exactly four commas):

    <logradouro>, <numero>[ <complemento>], <bairro>, <cidade>, <UF>

The numero and complemento fuse into one comma field, separated by a
single space. The estado is always the two-letter federative unit code.

Surface templates use placeholder slots:

    {LOGRADOURO} {NUMERO} {COMPLEMENTO} {BAIRRO} {CIDADE} {UF} {UF_NOME}
    {NUM_LABEL}

plus optional groups ``[...]`` rendered only when the complemento is
present, and literal decoration text everywhere else. {UF_NOME} spells
the state name out; {NUM_LABEL} draws a number label (nº, n., número)
from the record's RNG.
"""

from __future__ import annotations

import json
import re
import time
import urllib.error
import urllib.request
from dataclasses import dataclass, field
from importlib.resources import files
from pathlib import Path

from . import noise as noise_mod
from .errors import (ConfigError, GazetteerError, InventoryError,
                     LookupFailure, UnknownToken)
from .lexicon import UF_TO_NAME, UFS
from .records import Record, SplitManifest, stable_rng

GAZETTEER_COLUMNS = ("cep", "logradouro", "bairro", "cidade", "estado")

NUM_LABELS = ("nº", "n.", "número")

_DIGIT_TOKEN_RE = re.compile(r"^\d+$")


def _ends_in_digit_token(text: str) -> bool:
    tokens = text.split()
    return bool(tokens) and bool(_DIGIT_TOKEN_RE.match(tokens[-1]))


# ------------------------------------------------------------------- fields


@dataclass(frozen=True)
class AddressFields:
    """One address, already split into canonical parts."""

    logradouro: str
    numero: str
    bairro: str
    cidade: str
    estado: str
    complemento: str | None = None

    def __post_init__(self):
        for name in ("logradouro", "numero", "bairro", "cidade", "estado"):
            value = getattr(self, name)
            if not value or value != value.strip():
                raise ConfigError(f"{name} must be non-empty and trimmed")
            if "," in value:
                raise ConfigError(f"{name} must not contain commas")
        if self.complemento is not None:
            if not self.complemento or "," in self.complemento:
                raise ConfigError("complemento must be non-empty, comma-free")
        if self.estado not in UFS:
            raise ConfigError(f"estado must be a two-letter UF, got {self.estado!r}")
        if self.numero != "s/n" and not _DIGIT_TOKEN_RE.match(self.numero):
            raise ConfigError(f"numero must be digits or 's/n', got {self.numero!r}")
        if _ends_in_digit_token(self.logradouro):
            raise ConfigError("logradouro must not end in a bare number")


def canonical_address(fields: AddressFields) -> str:
    numero = fields.numero
    if fields.complemento:
        numero = f"{numero} {fields.complemento}"
    return (f"{fields.logradouro}, {numero}, {fields.bairro}, "
            f"{fields.cidade}, {fields.estado}")


# ---------------------------------------------------------------- gazetteer


@dataclass(frozen=True)
class GazetteerEntry:
    cep: str
    logradouro: str
    bairro: str
    cidade: str
    estado: str


@dataclass
class IngestResult:
    entries: list[GazetteerEntry] = field(default_factory=list)
    malformed: list[tuple[str, str]] = field(default_factory=list)


def _validate_gazetteer_row(row: dict) -> GazetteerEntry:
    cep = re.sub(r"[^\d]", "", row.get("cep", ""))
    if len(cep) != 8:
        raise GazetteerError(f"cep must have 8 digits, got {row.get('cep')!r}")
    cleaned = {}
    for name in ("logradouro", "bairro", "cidade", "estado"):
        value = (row.get(name) or "").strip()
        if not value:
            raise GazetteerError(f"missing {name}")
        if "," in value:
            raise GazetteerError(f"{name} contains a comma")
        cleaned[name] = value
    estado = cleaned["estado"].upper()
    if estado not in UFS:
        raise GazetteerError(f"unknown UF {cleaned['estado']!r}")
    if _ends_in_digit_token(cleaned["logradouro"]):
        raise GazetteerError("logradouro ends in a bare number")
    return GazetteerEntry(cep=cep, logradouro=cleaned["logradouro"],
                          bairro=cleaned["bairro"], cidade=cleaned["cidade"],
                          estado=estado)


def ingest_gazetteer_text(text: str) -> IngestResult:
    """Parse gazetteer CSV text, keeping valid rows and reporting bad ones."""
    import csv
    import io

    result = IngestResult()
    seen: set[GazetteerEntry] = set()
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or set(reader.fieldnames) != set(GAZETTEER_COLUMNS):
        raise GazetteerError(
            f"gazetteer needs columns {GAZETTEER_COLUMNS}, got {reader.fieldnames}")
    for lineno, row in enumerate(reader, start=2):
        try:
            entry = _validate_gazetteer_row(row)
        except GazetteerError as exc:
            result.malformed.append((f"line {lineno}", str(exc)))
            continue
        if entry in seen:
            result.malformed.append((f"line {lineno}", "duplicate row"))
            continue
        seen.add(entry)
        result.entries.append(entry)
    return result


def ingest_gazetteer(source: str | Path) -> IngestResult:
    """Read a gazetteer CSV file, keeping valid rows and reporting bad ones."""
    return ingest_gazetteer_text(Path(source).read_text(encoding="utf-8"))


_DEFAULT_GAZETTEER: list[GazetteerEntry] | None = None


def load_gazetteer(path: str | Path | None = None) -> list[GazetteerEntry]:
    """Load the bundled gazetteer fixture, or a custom CSV."""
    global _DEFAULT_GAZETTEER
    if path is None:
        if _DEFAULT_GAZETTEER is None:
            text = files("normkit.data").joinpath("gazetteer.csv").read_text("utf-8")
            result = ingest_gazetteer_text(text)
            if not result.entries:
                raise GazetteerError("bundled gazetteer has no valid rows")
            _DEFAULT_GAZETTEER = result.entries
        return _DEFAULT_GAZETTEER
    result = ingest_gazetteer(path)
    if not result.entries:
        raise GazetteerError(f"no valid gazetteer rows in {path}")
    return result.entries


# --------------------------------------------------------------- CEP client


def _default_fetcher(url: str, headers: dict, timeout: float) -> dict:
    request = urllib.request.Request(url, headers=headers)
    with urllib.request.urlopen(request, timeout=timeout) as response:
        return json.loads(response.read().decode("utf-8"))


class CepClient:
    """Gazetteer rows from a street-registry HTTP API, with cache + retry.

    The response payload may use either our column names or the common
    public-API names (endereco/localidade/uf). Lookups are cached in a
    JSON file so repeated ingests do not re-fetch.
    """

    def __init__(self, base_url: str, token: str | None = None,
                 cache_path: str | Path | None = None, fetcher=None,
                 max_retries: int = 3, backoff: float = 0.25,
                 timeout: float = 10.0, sleeper=time.sleep):
        self.base_url = base_url.rstrip("/")
        self.token = token
        self.cache_path = Path(cache_path) if cache_path else None
        self.fetcher = fetcher or _default_fetcher
        self.max_retries = max(1, max_retries)
        self.backoff = backoff
        self.timeout = timeout
        self.sleeper = sleeper
        self._cache: dict[str, dict] = {}
        if self.cache_path and self.cache_path.exists():
            self._cache = json.loads(self.cache_path.read_text("utf-8"))

    def _save_cache(self) -> None:
        if self.cache_path:
            self.cache_path.write_text(
                json.dumps(self._cache, ensure_ascii=False, indent=2, sort_keys=True),
                encoding="utf-8")

    def _entry_from_payload(self, cep: str, payload: dict) -> GazetteerEntry:
        aliases = {"logradouro": ("logradouro", "endereco"),
                   "bairro": ("bairro",),
                   "cidade": ("cidade", "localidade"),
                   "estado": ("estado", "uf")}
        row = {"cep": cep}
        for name, keys in aliases.items():
            for key in keys:
                if payload.get(key):
                    row[name] = str(payload[key])
                    break
        return _validate_gazetteer_row(row)

    def lookup(self, cep: str) -> GazetteerEntry:
        digits = re.sub(r"[^\d]", "", cep)
        if len(digits) != 8:
            raise LookupFailure(f"cep must have 8 digits, got {cep!r}")
        if digits in self._cache:
            return self._entry_from_payload(digits, self._cache[digits])
        url = f"{self.base_url}/{digits}"
        headers = {"Accept": "application/json"}
        if self.token:
            headers["Authorization"] = f"Bearer {self.token}"
        last_error: Exception | None = None
        for attempt in range(self.max_retries):
            try:
                payload = self.fetcher(url, headers, self.timeout)
                entry = self._entry_from_payload(digits, payload)
                self._cache[digits] = payload
                self._save_cache()
                return entry
            except (urllib.error.URLError, OSError, json.JSONDecodeError,
                    GazetteerError, ValueError) as exc:
                last_error = exc
                if attempt + 1 < self.max_retries:
                    self.sleeper(self.backoff * (2 ** attempt))
        raise LookupFailure(f"lookup failed for cep {digits}: {last_error}") from last_error

    def lookup_many(self, ceps: list[str]) -> IngestResult:
        result = IngestResult()
        seen = set()
        for cep in ceps:
            try:
                entry = self.lookup(cep)
            except LookupFailure as exc:
                result.malformed.append((cep, str(exc)))
                continue
            if entry not in seen:
                seen.add(entry)
                result.entries.append(entry)
        return result


# ---------------------------------------------------------------- templates

_ADDR_TOKEN_RE = re.compile(r"\{([A-Z_]+)\}")
_ADDR_TOKENS = {"LOGRADOURO", "NUMERO", "COMPLEMENTO", "BAIRRO", "CIDADE",
                "UF", "UF_NOME", "NUM_LABEL"}
_GROUP_RE = re.compile(r"\[([^][]*)\]")


@dataclass(frozen=True)
class AddressTemplate:
    """One address surface format."""

    id: str
    template: str

    def __post_init__(self):
        tokens = _ADDR_TOKEN_RE.findall(self.template)
        for token in tokens:
            if token not in _ADDR_TOKENS:
                raise UnknownToken(f"{self.id}: unknown token {{{token}}}")
        counts = {t: tokens.count(t) for t in set(tokens)}
        for token, n in counts.items():
            if n > 1:
                raise InventoryError(f"{self.id}: token {{{token}}} repeated")
        required = {"LOGRADOURO", "NUMERO", "BAIRRO", "CIDADE"}
        missing = required - set(tokens)
        if missing:
            raise InventoryError(f"{self.id}: missing slots {sorted(missing)}")
        if ("UF" in tokens) == ("UF_NOME" in tokens):
            raise InventoryError(f"{self.id}: need exactly one of UF, UF_NOME")
        groups = _GROUP_RE.findall(self.template)
        in_groups = sum(g.count("{COMPLEMENTO}") for g in groups)
        total = self.template.count("{COMPLEMENTO}")
        if total != 1 or in_groups != 1:
            raise InventoryError(
                f"{self.id}: {{COMPLEMENTO}} must appear exactly once, inside "
                f"one optional [...] group")
        if len(groups) != 1:
            raise InventoryError(f"{self.id}: exactly one optional group allowed")


def render_address(fields: AddressFields, template: AddressTemplate,
                   rng) -> str:
    """Render fields through a template; rng drives decorations only."""
    text = _GROUP_RE.sub(
        lambda m: m.group(1) if fields.complemento else "", template.template)
    values = {
        "LOGRADOURO": fields.logradouro,
        "NUMERO": fields.numero,
        "COMPLEMENTO": fields.complemento or "",
        "BAIRRO": fields.bairro,
        "CIDADE": fields.cidade,
        "UF": fields.estado,
        "UF_NOME": UF_TO_NAME[fields.estado],
    }
    if "{NUM_LABEL}" in text:
        values["NUM_LABEL"] = NUM_LABELS[rng.randrange(len(NUM_LABELS))]
    return _ADDR_TOKEN_RE.sub(lambda m: values[m.group(1)], text)


_DEFAULT_ADDR_INVENTORY: list[AddressTemplate] | None = None


def load_address_inventory(path: str | Path | None = None) -> list[AddressTemplate]:
    global _DEFAULT_ADDR_INVENTORY
    if path is None:
        if _DEFAULT_ADDR_INVENTORY is None:
            text = files("normkit.data").joinpath("address_formats.json").read_text("utf-8")
            _DEFAULT_ADDR_INVENTORY = _parse_addr_inventory(text)
        return _DEFAULT_ADDR_INVENTORY
    return _parse_addr_inventory(Path(path).read_text(encoding="utf-8"))


def _parse_addr_inventory(text: str) -> list[AddressTemplate]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InventoryError(f"inventory is not valid JSON: {exc}") from exc
    if not isinstance(data, dict) or "formats" not in data:
        raise InventoryError("inventory must be an object with a 'formats' list")
    templates = [AddressTemplate(id=e["id"], template=e["template"])
                 for e in data["formats"]]
    ids = [t.id for t in templates]
    if len(ids) != len(set(ids)):
        raise InventoryError("duplicate address format ids")
    return templates


# --------------------------------------------------------------- generation

DEFAULT_PER_FORMAT = 750
DEFAULT_ADDRESS_SPLIT = None  # all formats in train by default
DEFAULT_SN_RATE = 0.02
DEFAULT_COMPLEMENT_RATE = 0.6

_COMPLEMENT_KINDS = ("apto", "bloco", "casa", "sala")
_BLOCK_LETTERS = "ABCDEF"


@dataclass
class AddressCorpusConfig:
    """Everything needed to regenerate an address corpus byte-for-byte."""

    per_format: int = DEFAULT_PER_FORMAT
    count: int | None = None
    seed: int = 0
    noise_level: float = 0.0
    noise_seed: int | None = None
    ops_per_record: int = 1
    split: tuple[int, int] | None = None
    format_subset: str = "all"
    sn_rate: float = DEFAULT_SN_RATE
    complement_rate: float = DEFAULT_COMPLEMENT_RATE
    gazetteer_path: str | None = None
    inventory_path: str | None = None

    def __post_init__(self):
        if self.per_format < 0:
            raise ConfigError("per_format must be >= 0")
        if self.count is not None and self.count < 0:
            raise ConfigError("count must be >= 0")
        if not 0.0 <= self.noise_level <= 1.0:
            raise ConfigError("noise level must be in [0, 1]")
        if not 0.0 <= self.sn_rate <= 1.0 or not 0.0 <= self.complement_rate <= 1.0:
            raise ConfigError("rates must be in [0, 1]")
        if self.format_subset not in ("all", "train", "test"):
            raise ConfigError(f"unknown format subset {self.format_subset!r}")

    def noise_config(self) -> "noise_mod.NoiseConfig | None":
        if self.noise_level <= 0:
            return None
        seed = self.noise_seed if self.noise_seed is not None else self.seed
        return noise_mod.NoiseConfig(level=self.noise_level, seed=seed,
                                     ops_per_record=self.ops_per_record)


def plan_address_corpus(config: AddressCorpusConfig) -> tuple[list[AddressTemplate], SplitManifest]:
    templates = load_address_inventory(config.inventory_path)
    ids = [t.id for t in templates]
    if config.split is None:
        train, test = ids, []
    else:
        n_train, n_test = config.split
        if n_train + n_test != len(ids):
            raise ConfigError(
                f"split {n_train}:{n_test} does not cover {len(ids)} formats")
        shuffled = list(ids)
        stable_rng("split", "address", "pt", config.seed).shuffle(shuffled)
        train_set = set(shuffled[:n_train])
        train = [i for i in ids if i in train_set]
        test = [i for i in ids if i not in train_set]
    total = config.count if config.count is not None else config.per_format * len(ids)
    manifest = SplitManifest(
        train_formats=train,
        test_formats=test,
        seed=config.seed,
        kind="address",
        language="pt",
        extra={
            "count": total,
            "per_format": config.per_format if config.count is None else None,
            "noise_level": config.noise_level,
            "noise_seed": config.noise_seed,
            "ops_per_record": config.ops_per_record,
            "format_subset": config.format_subset,
            "sn_rate": config.sn_rate,
            "complement_rate": config.complement_rate,
            "generator": "normkit",
        },
    )
    return templates, manifest


def sample_address_fields(rng, entry: GazetteerEntry,
                          sn_rate: float, complement_rate: float) -> AddressFields:
    numero = "s/n" if rng.random() < sn_rate else str(rng.randint(1, 9999))
    complemento = None
    if rng.random() < complement_rate:
        kind = _COMPLEMENT_KINDS[rng.randrange(len(_COMPLEMENT_KINDS))]
        if kind == "bloco":
            complemento = f"bloco {_BLOCK_LETTERS[rng.randrange(len(_BLOCK_LETTERS))]}"
        elif kind == "casa":
            complemento = f"casa {rng.randint(1, 99)}"
        else:
            complemento = f"{kind} {rng.randint(1, 999)}"
    return AddressFields(
        logradouro=entry.logradouro,
        numero=numero,
        bairro=entry.bairro,
        cidade=entry.cidade,
        estado=entry.estado,
        complemento=complemento,
    )


def generate_address_records(config: AddressCorpusConfig, start: int, stop: int,
                             manifest: SplitManifest | None = None) -> list[Record]:
    """Records for index range [start, stop); pure per (config, index)."""
    templates = load_address_inventory(config.inventory_path)
    by_id = {t.id: t for t in templates}
    if manifest is None:
        _, manifest = plan_address_corpus(config)
    if config.format_subset == "train":
        ids = manifest.train_formats
    elif config.format_subset == "test":
        ids = manifest.test_formats
    else:
        ids = manifest.all_formats
    if not ids:
        raise ConfigError(f"format subset {config.format_subset!r} is empty")
    gazetteer = load_gazetteer(config.gazetteer_path)
    noise_cfg = config.noise_config()
    out: list[Record] = []
    for index in range(start, stop):
        rng = stable_rng("addr", config.seed, index)
        template = by_id[ids[index % len(ids)]]
        entry = gazetteer[rng.randrange(len(gazetteer))]
        fields = sample_address_fields(rng, entry, config.sn_rate,
                                       config.complement_rate)
        record = Record(
            input=render_address(fields, template, rng),
            target=canonical_address(fields),
            format_id=template.id,
            language="pt",
            task="address",
            noised=False,
        )
        if noise_cfg is not None:
            record = noise_mod.corrupt(record, noise_cfg, index)
        out.append(record)
    return out


def generate_address_corpus(config: AddressCorpusConfig) -> tuple[list[Record], SplitManifest]:
    _, manifest = plan_address_corpus(config)
    total = manifest.extra["count"]
    records = generate_address_records(config, 0, total, manifest)
    return records, manifest
