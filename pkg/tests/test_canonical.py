"""Canonical target grammar: rendering, parsing, and validation."""
import pytest

from normkit.addresses import AddressFields, canonical_address
from normkit.dates import (
    CompleteDate,
    DayMonth,
    MonthYear,
    RelativeOffset,
    canonical_string,
    days_in_month,
    parse_canonical,
)
from normkit.errors import ConfigError, InvalidRange, Unparseable


def test_complete_date_renders_zero_padded():
    assert canonical_string(CompleteDate(5, 1, 1921)) == "05/01/1921"
    assert canonical_string(CompleteDate(31, 12, 2120)) == "31/12/2120"


def test_partial_dates_render_zero_padded():
    assert canonical_string(DayMonth(7, 9)) == "07/09"
    assert canonical_string(MonthYear(2, 1999)) == "02/1999"


def test_relative_offset_renders_unpadded_with_unit_letter():
    assert canonical_string(RelativeOffset("-", 100, "d")) == "-100d"
    assert canonical_string(RelativeOffset("+", 3, "m")) == "+3m"
    assert canonical_string(RelativeOffset("+", 9999, "a")) == "+9999a"


@pytest.mark.parametrize("payload", [
    CompleteDate(15, 6, 2001),
    DayMonth(1, 1),
    MonthYear(12, 1921),
    RelativeOffset("-", 1, "a"),
])
def test_parse_canonical_inverts_rendering(payload):
    assert parse_canonical(canonical_string(payload)) == payload


def test_parse_canonical_returns_none_for_other_shapes():
    for text in ["15 de janeiro", "2021", "1/2/2021", "100d", "-0d", ""]:
        assert parse_canonical(text) is None


def test_canonical_shaped_but_invalid_values_are_rejected_not_fixed():
    with pytest.raises(Unparseable):
        parse_canonical("31/02/2021")
    with pytest.raises(Unparseable):
        parse_canonical("00/05/2000")
    with pytest.raises(Unparseable):
        parse_canonical("13/2021")


def test_impossible_payload_values_cannot_be_constructed():
    with pytest.raises((InvalidRange, ConfigError)):
        CompleteDate(32, 1, 2000)
    with pytest.raises((InvalidRange, ConfigError)):
        CompleteDate(29, 2, 2001)  # not a leap year
    with pytest.raises((InvalidRange, ConfigError)):
        MonthYear(0, 2000)
    with pytest.raises((InvalidRange, ConfigError)):
        RelativeOffset("-", 0, "d")
    with pytest.raises((InvalidRange, ConfigError)):
        RelativeOffset("+", 5, "x")


def test_leap_year_rules():
    assert days_in_month(2000, 2) == 29
    assert days_in_month(1900, 2) == 28
    assert days_in_month(2024, 2) == 29
    assert days_in_month(2023, 2) == 28
    assert CompleteDate(29, 2, 2024).day == 29


def test_canonical_address_joins_five_slots_with_fused_complement():
    fields = AddressFields(logradouro="Rua das Flores", numero="123",
                           complemento="apto 41", bairro="Centro",
                           cidade="Campinas", estado="SP")
    assert canonical_address(fields) == \
        "Rua das Flores, 123 apto 41, Centro, Campinas, SP"


def test_canonical_address_without_complement_has_four_commas():
    fields = AddressFields(logradouro="Avenida Brasil", numero="s/n",
                           complemento=None, bairro="Jardim América",
                           cidade="Belo Horizonte", estado="MG")
    text = canonical_address(fields)
    assert text == "Avenida Brasil, s/n, Jardim América, Belo Horizonte, MG"
    assert text.count(",") == 4
