#!/usr/bin/env python3
"""Regenerate the bundled data files (format inventories + gazetteer).

Writes src/normkit/data/date_formats.json, address_formats.json and
gazetteer.csv. The lists here are the source of truth; the JSON/CSV are
build products committed for packaging. Run from anywhere:

    python3 scripts/build_inventories.py
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from normkit.addresses import AddressTemplate, GAZETTEER_COLUMNS  # noqa: E402
from normkit.dates import DateTemplate  # noqa: E402
from normkit.lexicon import UFS  # noqa: E402
from normkit.records import stable_rng  # noqa: E402

DATA = REPO / "src" / "normkit" / "data"

# --------------------------------------------------------------------- dates

PT_COMPLETE = [
    "{DD}/{MM}/{YYYY}",
    "{D}/{M}/{YYYY}",
    "{DD}-{MM}-{YYYY}",
    "{D}-{M}-{YYYY}",
    "{DD}.{MM}.{YYYY}",
    "{D}.{M}.{YYYY}",
    "{DD} {MM} {YYYY}",
    "{D} {M} {YYYY}",
    "{YYYY}-{MM}-{DD}",
    "{YYYY}/{MM}/{DD}",
    "{YYYY}.{MM}.{DD}",
    "{D} de {MNAME} de {YYYY}",
    "{DD} de {MNAME} de {YYYY}",
    "{D} de {MABBR} de {YYYY}",
    "{DD} de {MABBR} de {YYYY}",
    "{D} {MNAME} {YYYY}",
    "{DD} {MNAME} {YYYY}",
    "{D} {MABBR} {YYYY}",
    "{DD} {MABBR} {YYYY}",
    "{D}/{MABBR}/{YYYY}",
    "{DD}/{MABBR}/{YYYY}",
    "{D}-{MABBR}-{YYYY}",
    "{DD}-{MABBR}-{YYYY}",
    "{D}.{MABBR}.{YYYY}",
    "{DD}.{MABBR}.{YYYY}",
    "{DWORD} de {MNAME} de {YYYY}",
    "{DORD} de {MNAME} de {YYYY}",
    "{DWORD} de {MNAME} de {YWORD}",
    "{DORD} de {MNAME} de {YWORD}",
    "{D} de {MNAME} de {YWORD}",
    "{DD} de {MNAME} de {YWORD}",
    "{D} {MNAME} {YWORD}",
    "{D} de {MNAME}, {YYYY}",
    "{DD} de {MNAME}, {YYYY}",
    "dia {D} de {MNAME} de {YYYY}",
    "dia {DD}/{MM}/{YYYY}",
    "no dia {D} de {MNAME} de {YYYY}",
    "no dia {DD}/{MM}/{YYYY}",
    "aos {DWORD} dias do mês de {MNAME} de {YYYY}",
    "aos {DWORD} dias do mês de {MNAME} de {YWORD}",
    "aos {D} dias do mês de {MNAME} de {YYYY}",
    "{D} de {MNAME} do ano de {YYYY}",
    "{DD} de {MM} de {YYYY}",
    "{D} de {MABBR}. de {YYYY}",
    "{DD} de {MNAME} do ano de {YWORD}",
]

EN_COMPLETE = [
    "{MM}-{DD}-{YYYY}",
    "{M}-{D}-{YYYY}",
    "{MM}.{DD}.{YYYY}",
    "{M}.{D}.{YYYY}",
    "{MM} {DD} {YYYY}",
    "{M} {D} {YYYY}",
    "{DD}/{MM}/{YYYY}",
    "{D}/{M}/{YYYY}",
    "{YYYY}-{MM}-{DD}",
    "{YYYY}/{MM}/{DD}",
    "{YYYY}.{MM}.{DD}",
    "{MNAME} {D}, {YYYY}",
    "{MNAME} {DD}, {YYYY}",
    "{MABBR} {D}, {YYYY}",
    "{MABBR} {DD}, {YYYY}",
    "{MNAME} {D} {YYYY}",
    "{MABBR} {D} {YYYY}",
    "{MNAME} {DORD}, {YYYY}",
    "{MABBR} {DORD}, {YYYY}",
    "{MNAME} the {DORD}, {YYYY}",
    "{MABBR}. {D}, {YYYY}",
    "{D} {MNAME} {YYYY}",
    "{DD} {MNAME} {YYYY}",
    "{D} {MABBR} {YYYY}",
    "{DD} {MABBR} {YYYY}",
    "{D}-{MABBR}-{YYYY}",
    "{DD}-{MABBR}-{YYYY}",
    "{D}/{MABBR}/{YYYY}",
    "{DD}/{MABBR}/{YYYY}",
    "the {DORD} of {MNAME}, {YYYY}",
    "the {DORD} of {MNAME} {YYYY}",
    "{DORD} of {MNAME}, {YYYY}",
    "{DORD} of {MNAME} {YYYY}",
    "{MNAME} {DORD} {YYYY}",
    "{DORD} {MNAME} {YYYY}",
    "{MNAME} {D}, {YWORD}",
    "{MNAME} {DORD}, {YWORD}",
    "the {DORD} of {MNAME}, {YWORD}",
    "{DWORD} {MNAME} {YYYY}",
    "on {MNAME} {D}, {YYYY}",
    "on the {DORD} of {MNAME}, {YYYY}",
    "on {D} {MNAME} {YYYY}",
    "{DD} of {MNAME}, {YYYY}",
    "{MNAME} {DD} {YYYY}",
    "{MABBR} {DD}, {YWORD}",
]

PT_DM = [
    "{DD}/{MM}",
    "{D}/{M}",
    "{DD}-{MM}",
    "{D}-{M}",
    "{DD}.{MM}",
    "{D}.{M}",
    "{DD} {MM}",
    "{D} {M}",
    "{D} de {MNAME}",
    "{DD} de {MNAME}",
    "{DWORD} de {MNAME}",
    "{DORD} de {MNAME}",
    "{D} de {MABBR}",
    "{DD} de {MABBR}",
    "{DWORD} de {MABBR}",
    "{DORD} de {MABBR}",
    "{D} {MNAME}",
    "{DD} {MNAME}",
    "{DWORD} {MNAME}",
    "{DORD} {MNAME}",
    "{D} {MABBR}",
    "{DD} {MABBR}",
    "{DWORD} {MABBR}",
    "{DORD} {MABBR}",
    "{D}/{MABBR}",
    "{DD}/{MABBR}",
    "{D}-{MABBR}",
    "{DD}-{MABBR}",
    "{D}.{MABBR}",
    "{DD}.{MABBR}",
    "dia {D} de {MNAME}",
    "dia {DD} de {MNAME}",
    "dia {D}/{M}",
    "dia {DD}/{MM}",
    "no dia {D} de {MNAME}",
    "no dia {DD}/{MM}",
    "{D} do mês de {MNAME}",
    "{DD} do mês de {MNAME}",
    "{DWORD} do mês de {MNAME}",
    "{D} de {MABBR}.",
    "{DORD} do mês de {MNAME}",
    "dia {DWORD} de {MNAME}",
    "dia {DORD} de {MNAME}",
    "{DD} de {MM}",
    "{D} de {M}",
]

EN_DM = [
    "{MM}-{DD}",
    "{M}-{D}",
    "{MM}.{DD}",
    "{M}.{D}",
    "{MM} {DD}",
    "{M} {D}",
    "{DD}/{MM}",
    "{D}/{M}",
    "{MNAME} {D}",
    "{MNAME} {DD}",
    "{MNAME} {DORD}",
    "{MNAME} {DWORD}",
    "{MABBR} {D}",
    "{MABBR} {DD}",
    "{MABBR} {DORD}",
    "{MABBR} {DWORD}",
    "{D} {MNAME}",
    "{DD} {MNAME}",
    "{DORD} {MNAME}",
    "{DWORD} {MNAME}",
    "{D} {MABBR}",
    "{DD} {MABBR}",
    "{DORD} {MABBR}",
    "{DWORD} {MABBR}",
    "{D}/{MABBR}",
    "{DD}/{MABBR}",
    "{D}-{MABBR}",
    "{DD}-{MABBR}",
    "{D}.{MABBR}",
    "{DD}.{MABBR}",
    "the {DORD} of {MNAME}",
    "{DORD} of {MNAME}",
    "{DD} of {MNAME}",
    "the {DORD} of {MABBR}",
    "{DORD} of {MABBR}",
    "{D} of {MNAME}",
    "on {MNAME} {D}",
    "on the {DORD} of {MNAME}",
    "on {D} {MNAME}",
    "{MNAME} the {DORD}",
    "{MABBR}. {D}",
    "{MABBR}. {DD}",
    "day {D} of {MNAME}",
    "day {DD} of {MNAME}",
    "{DORD} day of {MNAME}",
]

PT_MY = [
    "{MM}/{YYYY}",
    "{M}/{YYYY}",
    "{MM}-{YYYY}",
    "{M}-{YYYY}",
    "{MM}.{YYYY}",
    "{M}.{YYYY}",
    "{MM} {YYYY}",
    "{M} {YYYY}",
    "{MNAME} de {YYYY}",
    "{MNAME} {YYYY}",
    "{MNAME}/{YYYY}",
    "{MNAME}-{YYYY}",
    "{MABBR} de {YYYY}",
    "{MABBR} {YYYY}",
    "{MABBR}/{YYYY}",
    "{MABBR}-{YYYY}",
    "{MNAME} de {YWORD}",
    "{MNAME} {YWORD}",
    "{MABBR} de {YWORD}",
    "{MABBR} {YWORD}",
    "em {MNAME} de {YYYY}",
    "em {MABBR} de {YYYY}",
    "em {MNAME} de {YWORD}",
    "em {MM}/{YYYY}",
    "mês de {MNAME} de {YYYY}",
    "mês de {MNAME} de {YWORD}",
    "{MNAME} do ano de {YYYY}",
    "{MABBR} do ano de {YYYY}",
    "{MNAME} do ano de {YWORD}",
    "mês {MM} de {YYYY}",
    "mês {M} de {YYYY}",
    "no mês de {MNAME} de {YYYY}",
    "{MNAME}, {YYYY}",
    "{MABBR}, {YYYY}",
    "{MABBR}. {YYYY}",
    "{MABBR}. de {YYYY}",
    "{MM} de {YYYY}",
    "{M} de {YYYY}",
    "em {MNAME} {YYYY}",
    "em {MABBR}/{YYYY}",
    "{MM} do ano de {YYYY}",
    "no mês de {MABBR} de {YYYY}",
    "{YYYY}-{MM}",
    "{YYYY}/{MM}",
    "{YYYY}.{MM}",
]

EN_MY = [
    "{MM}/{YYYY}",
    "{M}/{YYYY}",
    "{MM}-{YYYY}",
    "{M}-{YYYY}",
    "{MM}.{YYYY}",
    "{M}.{YYYY}",
    "{MM} {YYYY}",
    "{M} {YYYY}",
    "{YYYY}-{MM}",
    "{YYYY}/{MM}",
    "{YYYY}.{MM}",
    "{MNAME} {YYYY}",
    "{MNAME}, {YYYY}",
    "{MNAME}/{YYYY}",
    "{MNAME}-{YYYY}",
    "{MNAME} of {YYYY}",
    "{MABBR} {YYYY}",
    "{MABBR}, {YYYY}",
    "{MABBR}/{YYYY}",
    "{MABBR}-{YYYY}",
    "{MABBR} of {YYYY}",
    "{MNAME} {YWORD}",
    "{MNAME}, {YWORD}",
    "{MABBR} {YWORD}",
    "{MNAME} of {YWORD}",
    "in {MNAME} {YYYY}",
    "in {MABBR} {YYYY}",
    "in {MNAME}, {YYYY}",
    "in {MNAME} of {YYYY}",
    "{MABBR}. {YYYY}",
    "{MABBR}. {YWORD}",
    "month of {MNAME} {YYYY}",
    "month of {MNAME}, {YYYY}",
    "the month of {MNAME} {YYYY}",
    "the month of {MNAME}, {YYYY}",
    "during {MNAME} {YYYY}",
    "during {MABBR} {YYYY}",
    "{MNAME} of the year {YYYY}",
    "{MABBR} of the year {YYYY}",
    "{MNAME} of the year {YWORD}",
    "year {YYYY}, {MNAME}",
    "year {YYYY}, {MABBR}",
    "{YYYY} {MNAME}",
    "{YYYY}, {MNAME}",
    "{YYYY} {MABBR}",
]

# (sign, phrase with {X} standing for "<magnitude> <unit>")
PT_RELATIVE_FAMILIES = [
    ("-", "há {X}"),
    ("-", "faz {X}"),
    ("-", "{X} atrás"),
    ("-", "há {X} atrás"),
    ("-", "faz {X} atrás"),
    ("-", "{X} antes"),
    ("-", "{X} no passado"),
    ("-", "{X} antes de hoje"),
    ("-", "passados {X}"),
    ("+", "daqui a {X}"),
    ("+", "em {X}"),
    ("+", "dentro de {X}"),
    ("+", "{X} no futuro"),
    ("+", "após {X}"),
    ("+", "depois de {X}"),
    ("+", "{X} depois"),
    ("+", "daqui {X}"),
    ("+", "{X} à frente"),
]

EN_RELATIVE = [
    ("-", "{N} {UNITWORD} ago"),
    ("-", "{NWORD} {UNITWORD} ago"),
    ("-", "{N} {UNITWORD} earlier"),
    ("-", "{NWORD} {UNITWORD} earlier"),
    ("-", "{N} {UNITWORD} back"),
    ("-", "{NWORD} {UNITWORD} back"),
    ("+", "in {N} {UNITWORD}"),
    ("+", "in {NWORD} {UNITWORD}"),
    ("+", "within {N} {UNITWORD}"),
    ("+", "after {N} {UNITWORD}"),
    ("+", "{N} {UNITWORD} from now"),
    ("+", "{NWORD} {UNITWORD} from now"),
    ("+", "{N} {UNITWORD} later"),
    ("+", "{NWORD} {UNITWORD} later"),
    ("+", "{N} {UNITWORD} ahead"),
    ("+", "{NWORD} {UNITWORD} ahead"),
    ("+", "within {NWORD} {UNITWORD}"),
    ("+", "after {NWORD} {UNITWORD}"),
]


def build_date_formats() -> list[dict]:
    entries: list[dict] = []

    def add(prefix, language, kind, templates):
        assert len(templates) == len(set(templates)), f"{prefix}: duplicates"
        for i, template in enumerate(templates, start=1):
            entries.append({
                "id": f"{prefix}-{i:02d}",
                "language": language,
                "kind": kind,
                "template": template,
            })

    add("pt-com", "pt", "complete", PT_COMPLETE)
    add("en-com", "en", "complete", EN_COMPLETE)
    add("pt-dm", "pt", "incomplete_dm", PT_DM)
    add("en-dm", "en", "incomplete_dm", EN_DM)
    add("pt-my", "pt", "incomplete_my", PT_MY)
    add("en-my", "en", "incomplete_my", EN_MY)

    for i, (sign, phrase) in enumerate(PT_RELATIVE_FAMILIES, start=1):
        family = f"pt-rel-{i:02d}"
        for suffix, x in (("n", "{N} {UNITWORD}"), ("w", "{NWORD} {UNITWORD}")):
            entries.append({
                "id": f"{family}{suffix}",
                "language": "pt",
                "kind": "relative",
                "template": phrase.replace("{X}", x),
                "sign": sign,
                "family": family,
            })

    for i, (sign, template) in enumerate(EN_RELATIVE, start=1):
        entries.append({
            "id": f"en-rel-{i:02d}",
            "language": "en",
            "kind": "relative",
            "template": template,
            "sign": sign,
        })

    return entries


# ------------------------------------------------------------------ addresses

ADDRESS_TEMPLATES = [
    "{LOGRADOURO}, {NUMERO}[ {COMPLEMENTO}], {BAIRRO}, {CIDADE}, {UF}",
    "{LOGRADOURO}, nº {NUMERO}[ {COMPLEMENTO}], {BAIRRO}, {CIDADE} - {UF}",
    "{LOGRADOURO} {NUMERO}[ {COMPLEMENTO}], {BAIRRO}, {CIDADE}/{UF}",
    "{BAIRRO}, {LOGRADOURO} {NUMERO}[ {COMPLEMENTO}], {CIDADE} - {UF}",
    "{LOGRADOURO}, {NUMERO}[, {COMPLEMENTO}], {BAIRRO}, {CIDADE}, {UF_NOME}",
    "Logradouro: {LOGRADOURO}; Número: {NUMERO}[; Complemento: {COMPLEMENTO}]; "
    "Bairro: {BAIRRO}; Cidade: {CIDADE}; UF: {UF}",
    "{LOGRADOURO}, n. {NUMERO}[ {COMPLEMENTO}] - {BAIRRO}, {CIDADE} - {UF}",
    "{CIDADE} - {UF}, {BAIRRO}, {LOGRADOURO}, {NUMERO}[ {COMPLEMENTO}]",
    "{LOGRADOURO}, {NUMERO}[ {COMPLEMENTO}], bairro {BAIRRO}, {CIDADE}, {UF}",
    "{LOGRADOURO} nº {NUMERO}[, {COMPLEMENTO}], {BAIRRO}, {CIDADE} {UF}",
    "Endereço: {LOGRADOURO}, {NUMERO}[ {COMPLEMENTO}] - Bairro: {BAIRRO} - "
    "Cidade: {CIDADE} - Estado: {UF}",
    "{LOGRADOURO}, {NUMERO}[ {COMPLEMENTO}], {BAIRRO} - {CIDADE} - {UF_NOME}",
    "{NUMERO}[ {COMPLEMENTO}], {LOGRADOURO}, {BAIRRO}, {CIDADE}, {UF}",
    "{LOGRADOURO}, número {NUMERO}[ {COMPLEMENTO}], {BAIRRO}, {CIDADE}, {UF}",
    "{LOGRADOURO}, [{COMPLEMENTO}, ]nº {NUMERO}, {BAIRRO}, {CIDADE}, {UF}",
    "{LOGRADOURO}, {NUMERO}[ {COMPLEMENTO}], {BAIRRO}, {CIDADE}, "
    "estado de {UF_NOME}",
    "{LOGRADOURO}, {NUM_LABEL} {NUMERO}[ {COMPLEMENTO}], {BAIRRO}, "
    "{CIDADE} - {UF}",
    "{BAIRRO} - {CIDADE}/{UF}, {LOGRADOURO}, {NUMERO}[ {COMPLEMENTO}]",
    "{LOGRADOURO}, {NUMERO}[ ({COMPLEMENTO})], {BAIRRO}, {CIDADE} - {UF}",
    "{LOGRADOURO} - {NUMERO}[ - {COMPLEMENTO}] - {BAIRRO} - {CIDADE} - {UF}",
    "{LOGRADOURO}, {NUMERO}[ {COMPLEMENTO}] / {BAIRRO} / {CIDADE} / {UF}",
    "No endereço {LOGRADOURO}, {NUMERO}[ {COMPLEMENTO}], no bairro {BAIRRO}, "
    "na cidade de {CIDADE} - {UF}",
]


def build_address_formats() -> list[dict]:
    assert len(ADDRESS_TEMPLATES) == 22
    assert len(set(ADDRESS_TEMPLATES)) == 22
    return [{"id": f"addr-{i:02d}", "template": t}
            for i, t in enumerate(ADDRESS_TEMPLATES, start=1)]


# ------------------------------------------------------------------ gazetteer

STREET_NAMES = [
    "das Flores", "Quinze de Novembro", "Sete de Setembro", "Getúlio Vargas",
    "Santos Dumont", "Marechal Deodoro", "Dom Pedro II", "Tiradentes",
    "José Bonifácio", "Barão do Rio Branco", "das Palmeiras", "dos Andradas",
    "São João", "Santa Efigênia", "do Comércio", "da Consolação",
    "Afonso Pena", "Duque de Caxias", "Coronel Oliveira",
    "Professora Maria José", "da Independência", "das Acácias", "do Sol",
    "Presidente Vargas", "General Osório", "da Paz", "Bento Gonçalves",
    "da Praia", "das Laranjeiras", "do Rosário", "São Bento",
    "Treze de Maio", "da Aurora", "dos Pinheiros", "Santa Rita",
    "do Mercado", "Nova", "Velha", "da Matriz", "do Horto",
]

STREET_TYPES = ("Rua", "Avenida", "Travessa", "Alameda", "Praça",
                "Estrada", "Rodovia", "Largo")

BAIRROS = [
    "Centro", "Jardim América", "Vila Nova", "Boa Vista", "Santa Cruz",
    "São José", "Bela Vista", "Alto da Glória", "Jardim Paulista",
    "Santo Antônio", "Botafogo", "Liberdade", "Campo Belo", "Vila Mariana",
    "Parque das Flores", "Morada do Sol", "Jardim Europa", "Primavera",
    "Vila Industrial", "São Cristóvão", "Santa Luzia", "Planalto",
    "Centro Histórico", "Jardim Botânico",
]

CITIES = {
    "AC": ["Rio Branco", "Cruzeiro do Sul"],
    "AL": ["Maceió", "Arapiraca"],
    "AP": ["Macapá", "Santana"],
    "AM": ["Manaus", "Parintins"],
    "BA": ["Salvador", "Feira de Santana", "Ilhéus"],
    "CE": ["Fortaleza", "Sobral", "Juazeiro do Norte"],
    "DF": ["Brasília", "Ceilândia"],
    "ES": ["Vitória", "Vila Velha", "Cachoeiro de Itapemirim"],
    "GO": ["Goiânia", "Anápolis"],
    "MA": ["São Luís", "Imperatriz"],
    "MT": ["Cuiabá", "Rondonópolis"],
    "MS": ["Campo Grande", "Dourados"],
    "MG": ["Belo Horizonte", "Uberlândia", "Juiz de Fora", "Contagem"],
    "PA": ["Belém", "Santarém", "Marabá"],
    "PB": ["João Pessoa", "Campina Grande"],
    "PR": ["Curitiba", "Londrina", "Maringá"],
    "PE": ["Recife", "Olinda", "Caruaru"],
    "PI": ["Teresina", "Parnaíba"],
    "RJ": ["Rio de Janeiro", "Niterói", "Petrópolis", "Campos dos Goytacazes"],
    "RN": ["Natal", "Mossoró"],
    "RS": ["Porto Alegre", "Caxias do Sul", "Pelotas"],
    "RO": ["Porto Velho", "Ji-Paraná"],
    "RR": ["Boa Vista", "Rorainópolis"],
    "SC": ["Florianópolis", "Joinville", "Blumenau"],
    "SE": ["Aracaju", "Itabaiana"],
    "SP": ["São Paulo", "Campinas", "Santos", "Ribeirão Preto", "Sorocaba",
           "São José dos Campos"],
    "TO": ["Palmas", "Araguaína"],
}

ROWS_PER_CITY = 16

# Kept verbatim so downstream docs can use a stable example row.
EXAMPLE_ROW = ("13015904", "Rua Barão de Itapura", "Botafogo", "Campinas", "SP")


def build_gazetteer() -> list[tuple[str, str, str, str, str]]:
    streets = [f"{STREET_TYPES[i % len(STREET_TYPES)]} {name}"
               for i, name in enumerate(STREET_NAMES)]
    rows: list[tuple[str, str, str, str, str]] = [EXAMPLE_ROW]
    used_ceps = {EXAMPLE_ROW[0]}
    for uf in sorted(CITIES):
        for city in CITIES[uf]:
            rng = stable_rng("gazetteer", uf, city)
            combos: set[tuple[str, str]] = set()
            while len(combos) < ROWS_PER_CITY:
                street = streets[rng.randrange(len(streets))]
                bairro = BAIRROS[rng.randrange(len(BAIRROS))]
                if (street, bairro) in combos:
                    continue
                combos.add((street, bairro))
                while True:
                    cep = "".join(str(rng.randrange(10)) for _ in range(8))
                    if cep not in used_ceps:
                        used_ceps.add(cep)
                        break
                rows.append((cep, street, bairro, city, uf))
    return rows


def main() -> None:
    DATA.mkdir(parents=True, exist_ok=True)

    date_entries = build_date_formats()
    # Validate every template and the counting rules before writing.
    templates = [DateTemplate(id=e["id"], language=e["language"], kind=e["kind"],
                              template=e["template"], sign=e.get("sign"),
                              family=e.get("family"))
                 for e in date_entries]
    counts: dict[tuple[str, str], int] = {}
    for t in templates:
        counts[(t.language, t.kind)] = counts.get((t.language, t.kind), 0) + 1
    expected = {
        ("pt", "complete"): 45, ("en", "complete"): 45,
        ("pt", "incomplete_dm"): 45, ("en", "incomplete_dm"): 45,
        ("pt", "incomplete_my"): 45, ("en", "incomplete_my"): 45,
        ("pt", "relative"): 36, ("en", "relative"): 18,
    }
    assert counts == expected, counts
    pt_dates = sum(n for (lang, _), n in counts.items() if lang == "pt")
    assert pt_dates + len(ADDRESS_TEMPLATES) == 193, pt_dates
    pt_rel_families = {t.family_key for t in templates
                       if t.language == "pt" and t.kind == "relative"}
    assert len(pt_rel_families) == 18

    (DATA / "date_formats.json").write_text(
        json.dumps({"formats": date_entries}, ensure_ascii=False, indent=2) + "\n",
        encoding="utf-8")

    addr_entries = build_address_formats()
    for e in addr_entries:
        AddressTemplate(id=e["id"], template=e["template"])
    (DATA / "address_formats.json").write_text(
        json.dumps({"formats": addr_entries}, ensure_ascii=False, indent=2) + "\n",
        encoding="utf-8")

    rows = build_gazetteer()
    assert len(rows) > 1000, len(rows)
    assert {r[4] for r in rows} == set(UFS)
    assert EXAMPLE_ROW in rows
    lines = [",".join(GAZETTEER_COLUMNS)]
    lines += [",".join(row) for row in rows]
    (DATA / "gazetteer.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")

    print(f"date formats:    {len(date_entries)}")
    print(f"address formats: {len(addr_entries)}")
    print(f"gazetteer rows:  {len(rows)}")


if __name__ == "__main__":
    main()
