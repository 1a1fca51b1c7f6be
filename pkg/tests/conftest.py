import json
from pathlib import Path

import pytest

from chaincenter.catalog import CATALOG
from chaincenter.fusion import fusion_from_character_table, fusion_from_file
from chaincenter.charmod import character_table_mod_p
from chaincenter.groups import group_from_spec, make_named_group, spec_label, spec_order
from chaincenter.pipeline import analyze_group

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def ising():
    return fusion_from_file(FIXTURES / "ising.json")


@pytest.fixture(scope="session")
def z3_ring():
    return fusion_from_file(FIXTURES / "z3.json")


def _ring_of(name, *params):
    G = make_named_group(name, list(params))
    T = character_table_mod_p(G)
    return G, T, fusion_from_character_table(T, G.classes, G.order, name=G.name)


@pytest.fixture(scope="session")
def s3():
    return _ring_of("symmetric", 3)


@pytest.fixture(scope="session")
def q8():
    return _ring_of("dicyclic", 2)


class CatalogAnalyses:
    """Lazily analyzed catalog entries, shared across the session."""

    def __init__(self):
        self._done = {}

    def specs(self, max_order):
        return [s for s in CATALOG if spec_order(s) <= max_order]

    def get(self, spec):
        key = json.dumps(spec, sort_keys=True)
        if key not in self._done:
            self._done[key] = analyze_group(group_from_spec(spec), spec_label(spec))
        return self._done[key]


@pytest.fixture(scope="session")
def catalog_analyses():
    return CatalogAnalyses()
