from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ryser import (
    BlockClass,
    SetSystem,
    block_profile,
    check_sum_identity,
    complement_at,
    compute_ledger,
    evaluate_quadratic,
    two_block_size_analysis,
)
from ryser.errors import NotRyser, ParameterError
from ryser.invariants import ParameterLedger

from conftest import brute_replication, derived, seed


def ledger_oracle(system, lam):
    """Ledger fields by direct counting."""
    reps = brute_replication(system)
    r1, r2 = max(reps), min(reps)
    e1, e2 = reps.count(r1), reps.count(r2)
    g = gcd(r1 - 1, r2 - 1)
    c, d = (r1 - 1) // g, (r2 - 1) // g
    return (system.v, lam, r1, r2, e1, e2, Fraction(c, d), c, d, g, c - d, e1 - r2)


def fields(led):
    return (led.v, led.lam, led.r1, led.r2, led.e1, led.e2, led.rho, led.c, led.d, led.g, led.a, led.big_d)


@pytest.mark.parametrize(
    "name, expected",
    [
        ("fano", (7, 2, 5, 3, 3, 4, Fraction(2), 2, 1, 2, 1, 0)),
        ("paley_11", (11, 3, 7, 5, 5, 6, Fraction(3, 2), 3, 2, 2, 1, 0)),
        ("pg2_3", (13, 3, 10, 4, 4, 9, Fraction(3), 3, 1, 3, 2, 0)),
    ],
)
def test_ledger_values(name, expected):
    d = derived(name)
    led = compute_ledger(d)
    assert fields(led) == expected
    assert ledger_oracle(d, expected[1]) == expected
    assert all(led.identity_checks().values())


def test_ledger_rejects_symmetric(fano_plane):
    with pytest.raises(NotRyser):
        compute_ledger(fano_plane)


def test_identity_checks_detect_corruption():
    led = compute_ledger(derived("fano"))
    bad = ParameterLedger(**{**led.__dict__, "e1": led.e1 + 1})
    failing = {k for k, ok in bad.identity_checks().items() if not ok}
    assert {"pair_count", "e1_relation", "incidence_sum", "point_classes"} <= failing


def test_ledger_json_fields():
    out = compute_ledger(derived("fano")).as_dict()
    assert out["rho"] == "2/1"
    assert out["E1"] == [0, 1, 3]


@pytest.mark.parametrize(
    "name, lhs",
    [("fano", Fraction(4)), ("paley_11", Fraction(23, 6))],
)
def test_sum_identity_values(name, lhs):
    d = derived(name)
    res = check_sum_identity(d, compute_ledger(d))
    assert res.lhs == res.rhs == lhs
    assert res.holds


@pytest.mark.parametrize("name", ["fano", "pg2_3", "pg2_4", "paley_11", "paley_19"])
def test_sum_identity_type1_specialisation(name):
    d = derived(name)
    led = compute_ledger(d)
    lam = led.lam
    k = next(s for s in d.sizes if s != 2 * lam)
    expected = Fraction(1, k - lam) + Fraction(d.v - 1, lam)
    assert check_sum_identity(d, led).lhs == expected == check_sum_identity(d, led).rhs


def test_block_profiles_fano():
    d = derived("fano")
    led = compute_ledger(d)
    p = block_profile(led, d, 0)
    assert (p.size, p.t, p.tau1, p.tau2, p.cls) == (3, -1, 3, 0, BlockClass.SMALL)
    p = block_profile(led, d, 1)
    assert (p.size, p.t, p.tau1, p.tau2, p.cls) == (4, 0, 2, 2, BlockClass.AVERAGE)


def test_block_profile_pg23_small():
    d = derived("pg2_3")
    led = compute_ledger(d)
    p = block_profile(led, d, 0)
    assert (p.size, p.t, p.tau1, p.tau2) == (4, -1, 4, 0)


@pytest.mark.parametrize("name", ["fano", "pg2_3", "paley_11"])
def test_block_profiles_direct_counts(name):
    d = derived(name)
    led = compute_ledger(d)
    reps = brute_replication(d)
    for i, blk in enumerate(d):
        p = block_profile(led, d, i)
        assert p.tau1 == sum(1 for x in blk if reps[x] == led.r1)
        assert p.tau2 == sum(1 for x in blk if reps[x] == led.r2)


def quadratic_oracle(v, lam, k, alpha):
    # cleared denominators of alpha/(k-lam) + (beta+1)/lam = (v-1)^2/(r1 r2 - v)
    beta = v - alpha
    left = alpha * lam + (beta + 1) * (k - lam)
    right = (k - lam) * alpha + lam * (beta + 1) - v
    return -(left * right - (v - 1) ** 2 * lam * (k - lam))


def test_quadratic_examples():
    assert evaluate_quadratic(13, 3, 4, 1) == 0
    assert evaluate_quadratic(13, 3, 4, 13) == 312 == 13 * (-4 * 3 + 3 * 12)
    assert evaluate_quadratic(7, 2, 3, 1) == 0
    for alpha in range(8):
        assert evaluate_quadratic(7, 2, 3, alpha) == alpha * alpha - alpha


def test_quadratic_rejects_average_k():
    with pytest.raises(ParameterError):
        evaluate_quadratic(7, 2, 4, 1)


@given(
    st.integers(3, 300),
    st.integers(1, 100),
    st.integers(1, 200),
    st.integers(-5, 400),
)
def test_quadratic_matches_oracle_and_closed_forms(v, lam, k, alpha):
    if k == 2 * lam:
        return
    assert evaluate_quadratic(v, lam, k, alpha) == quadratic_oracle(v, lam, k, alpha)
    assert evaluate_quadratic(v, lam, k, v) == v * (-k * (k - 1) + lam * (v - 1))
    assert evaluate_quadratic(v, lam, k, 1) == v * (k * (v - k) - lam * (v - 1))


def test_two_size_fano():
    a = two_block_size_analysis(derived("fano"))
    assert a.pattern and a.confirmed
    assert (a.k, a.alpha, a.beta) == (3, 1, 6)
    assert a.r1r2 == 15 == a.product_rhs == 1 * 1 + 2 * 7
    assert a.p_one == 0 and a.p_alpha == 0
    assert a.symmetric_relation is False


def test_two_size_pg23():
    a = two_block_size_analysis(derived("pg2_3"))
    assert (a.alpha, a.beta, a.r1r2, a.product_rhs) == (1, 12, 40, 40)
    assert a.p_one == 0 and a.confirmed
    assert a.p_v == 312 == a.p_v_closed_form


def test_two_size_interior_roots_by_scan():
    # P factors as 9(alpha - 1)(alpha - 14) for (v, lambda, k) = (21, 4, 5)
    a = two_block_size_analysis(derived("pg2_4"))
    assert (a.v, a.lam, a.k) == (21, 4, 5)
    assert a.interior_roots == [14]
    for x in range(22):
        assert evaluate_quadratic(21, 4, 5, x) == 9 * (x - 1) * (x - 14)


def test_two_size_not_pattern():
    d = derived("fano")
    with pytest.raises(NotRyser):
        two_block_size_analysis(complement_at(d, 0))
    # near-pencil: sizes {2, v-1} with lambda = 1, average size 2
    near = SetSystem.from_lists(5, [[0, 1], [0, 2], [0, 3], [0, 4], [1, 2, 3, 4]])
    a = two_block_size_analysis(near)
    assert a.pattern and a.k == 4 and a.alpha == 1


def test_two_size_pattern_guard_on_synthetic_report():
    from ryser.invariants import TwoSizeAnalysis

    rep = TwoSizeAnalysis(7, 2, {3: 1, 4: 5, 5: 1}, pattern=False)
    assert not rep.confirmed
