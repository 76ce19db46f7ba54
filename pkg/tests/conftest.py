import pytest

from normkit.addresses import load_address_inventory, load_gazetteer
from normkit.dates import load_date_inventory


@pytest.fixture(scope="session")
def date_inventory():
    return load_date_inventory()


@pytest.fixture(scope="session")
def address_templates():
    return load_address_inventory()


@pytest.fixture(scope="session")
def gazetteer():
    return load_gazetteer()
