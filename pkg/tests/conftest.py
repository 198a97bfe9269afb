import pytest
from hypothesis import settings

from qform import formats
from oracles import read

# Oracles (sympy, cofactor expansion) have slow first calls; wall-clock
# limits are enforced by the acceptance suite instead.
settings.register_profile("repo", deadline=None, max_examples=100)
settings.load_profile("repo")


@pytest.fixture
def rg():
    def load(stem):
        return formats.parse_resolution(read(f"{stem}.rg1"), f"{stem}.rg1")

    return load


@pytest.fixture
def nt():
    def load(stem):
        return formats.parse_ntgraph(read(f"{stem}.nt1"), f"{stem}.nt1")

    return load


@pytest.fixture
def chains():
    def load(stem, graph):
        return formats.parse_chains(read(f"{stem}.chain1"), graph, f"{stem}.chain1")

    return load
