import itertools
import random

import pytest

from ryser import (
    Ryser,
    SearchConfig,
    SetSystem,
    canonical_form,
    classify,
    compute_ledger,
    conjecture_scan,
    enumerate_class,
    is_type1,
    search_ryser,
)
from ryser.errors import ParameterError
from ryser.search import admissible_triples, canonical_key, reference_enumerate

from conftest import derived, set_systems
from hypothesis import given, settings


def relabel(system, perm):
    return SetSystem.from_lists(system.v, [[perm[x] for x in b.points] for b in system])


def brute_canonical_key(system):
    return min(canonical_key(relabel(system, p)) for p in itertools.permutations(range(system.v)))


def test_canonical_form_is_relabelling_invariant():
    rng = random.Random(7)
    d = derived("fano")
    c = canonical_form(d)
    for _ in range(20):
        perm = list(range(7))
        rng.shuffle(perm)
        assert canonical_form(relabel(d, perm)) == c
    assert canonical_form(c) == c
    rows = [tuple(b.mask >> x & 1 for x in range(7)) for b in c]
    assert rows == sorted(rows)


@settings(max_examples=60, deadline=None)
@given(set_systems(min_v=2, max_v=6))
def test_canonical_form_matches_permutation_oracle(system):
    c = canonical_form(system)
    assert canonical_key(c) == brute_canonical_key(system)
    assert c.same_family(canonical_form(canonical_form(system)))
    assert sorted(c.sizes) == sorted(system.sizes)


def test_canonical_form_heuristic_is_deterministic():
    d = derived("paley_11")
    a = canonical_form(d)
    assert a == canonical_form(d)
    assert classify(a) == classify(d)


def test_admissible_triples():
    assert [(t.r1, t.r2, t.e1, t.e2) for t in admissible_triples(7, 2)] == [(5, 3, 3, 4)]
    # near-pencil at v = 5: the centre lies on every block
    assert [(t.r1, t.r2) for t in admissible_triples(5, 1)] == [(4, 2)]
    for v in range(3, 12):
        for lam in range(1, v):
            for t in admissible_triples(v, lam):
                assert t.r1 + t.r2 == v + 1 and t.e1 + t.e2 == v
                assert t.e1 * t.r1 * (t.r1 - 1) + t.e2 * t.r2 * (t.r2 - 1) == lam * v * (v - 1)


def test_search_7_2():
    rep = search_ryser(SearchConfig(7, 2))
    assert rep.completed and rep.found and not rep.type2_candidates
    assert canonical_form(derived("fano")) in rep.found
    assert rep.type1_count == len(rep.found)


def test_search_7_6_empty():
    rep = search_ryser(SearchConfig(7, 6))
    assert rep.completed and rep.found == []


def test_search_5_1_all_type1_slow_path():
    rep = search_ryser(SearchConfig(5, 1))
    assert rep.completed and rep.found
    for d in rep.found:
        dec = is_type1(d, verify_slow_path=True)
        assert dec.is_type1 and dec.slow_path


@pytest.mark.parametrize("v", [3, 4, 5, 6])
def test_search_matches_reference(v):
    for lam in range(1, v):
        rep = search_ryser(SearchConfig(v, lam))
        assert {d.masks for d in rep.found} == reference_enumerate(v, lam), (v, lam)


def test_search_soundness_and_ledger():
    for v, lam in [(6, 1), (7, 1), (7, 2), (8, 1)]:
        rep = search_ryser(SearchConfig(v, lam))
        assert rep.type1_count + len(rep.type2_candidates) == len(rep.found)
        for d in rep.found:
            assert classify(d).lam == lam
            assert all(compute_ledger(d).identity_checks().values())


def test_search_deterministic_across_workers():
    a = search_ryser(SearchConfig(7, 2))
    b = search_ryser(SearchConfig(7, 2, parallel_width=2))
    assert a.found == b.found and a.nodes_explored == b.nodes_explored


def test_search_budget_exhaustion_is_reported():
    rep = search_ryser(SearchConfig(8, 1, time_budget=0.0))
    assert not rep.completed
    cells = {(c.v, c.lam): c for c in conjecture_scan(8, 1, budget=0.0).cells}
    assert cells[(8, 1)].status == "inconclusive"
    assert not conjecture_scan(8, 1, budget=0.0).all_completed


def test_search_max_results_caps_found():
    rep = search_ryser(SearchConfig(7, 1, max_results=1))
    assert len(rep.found) == 1


def test_class_members_reachable_by_search():
    d = derived("fano")
    found = {}
    for m in enumerate_class(d):
        kind = classify(m.system)
        if not isinstance(kind, Ryser):
            continue
        if kind.lam not in found:
            found[kind.lam] = {x.masks for x in search_ryser(SearchConfig(7, kind.lam)).found}
        assert canonical_form(m.system).masks in found[kind.lam]


def test_scan_contract():
    summary = conjecture_scan(6, 2)
    assert summary.all_completed and not summary.type2_found
    assert {(c.v, c.lam) for c in summary.cells} == {(3, 1), (3, 2), (4, 1), (4, 2), (5, 1), (5, 2), (6, 1), (6, 2)}
    assert all(c.status == "verified" for c in summary.cells)
    with pytest.raises(ParameterError):
        conjecture_scan(9, 1)


def test_config_validation():
    with pytest.raises(ParameterError):
        SearchConfig(2, 1)
    with pytest.raises(ParameterError):
        SearchConfig(5, 5)
    with pytest.raises(ParameterError):
        SearchConfig(5, 1, parallel_width=0)
