import itertools

import pytest
from hypothesis import strategies as st

from ryser import SetSystem, fano, make_type1, paley, pg2

# Seeds used throughout: (name, constructor)
SEEDS = {
    "fano": lambda: fano(),
    "pg2_3": lambda: pg2(3),
    "pg2_4": lambda: pg2(4),
    "pg2_5": lambda: pg2(5),
    "paley_11": lambda: paley(11),
    "paley_19": lambda: paley(19),
    "paley_23": lambda: paley(23),
}

_cache = {}


def seed(name):
    if name not in _cache:
        _cache[name] = SEEDS[name]()
    return _cache[name]


def derived(name, block=0):
    key = (name, block)
    if key not in _cache:
        _cache[key] = make_type1(seed(name), block)
    return _cache[key]


@pytest.fixture
def fano_plane():
    return seed("fano")


@pytest.fixture
def fano_derived():
    return derived("fano", 0)


# --- plain-set oracles, independent of the bit-mask implementation ----------


def as_sets(system):
    return [frozenset(b.points) for b in system.blocks]


def brute_replication(system):
    sets = as_sets(system)
    return [sum(1 for b in sets if x in b) for x in range(system.v)]


def brute_complement(system, i):
    sets = as_sets(system)
    a = sets[i]
    return [a if j == i else a ^ b for j, b in enumerate(sets)]


def brute_intersections(system):
    return {len(a & b) for a, b in itertools.combinations(as_sets(system), 2)}


@st.composite
def set_systems(draw, min_v=1, max_v=7):
    v = draw(st.integers(min_value=min_v, max_value=max_v))
    masks = draw(
        st.lists(
            st.integers(min_value=1, max_value=(1 << v) - 1),
            min_size=v,
            max_size=v,
            unique=True,
        )
    )
    return SetSystem.from_masks(v, masks)


# --- acceptance report ------------------------------------------------------

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
