import pytest

from ryser import (
    DifferenceSet,
    Symmetric,
    classify,
    complement_at,
    complement_design,
    develop,
    find_difference_set,
    is_type1,
    make_type1,
    paley,
    pg2,
    two_block_size_analysis,
)
from ryser.errors import AverageDegenerate, NotSymmetric, ParameterArithmeticMismatch, ParameterError
from ryser.generators import named_seed, paley_difference_set

from conftest import SEEDS, seed


def differences_oracle(v, residues):
    counts = {}
    for x in residues:
        for y in residues:
            if x != y:
                counts[(x - y) % v] = counts.get((x - y) % v, 0) + 1
    return counts


@pytest.mark.parametrize(
    "params, expected",
    [((7, 3, 1), (0, 1, 3)), ((13, 4, 1), (0, 1, 3, 9)), ((11, 5, 2), (0, 1, 2, 4, 7))],
)
def test_find_difference_set(params, expected):
    v, k, lp = params
    ds = find_difference_set(v, k, lp)
    assert ds.residues == expected
    counts = differences_oracle(v, expected)
    assert set(counts) == set(range(1, v)) and set(counts.values()) == {lp}


def test_least_set_is_translate_of_nonresidues():
    qr = paley_difference_set(11).residues
    assert qr == (1, 3, 4, 5, 9)
    nonres = [x for x in range(1, 11) if x not in qr]
    least = find_difference_set(11, 5, 2).residues
    assert tuple(sorted((x - 6) % 11 for x in nonres)) == least


def test_find_difference_set_errors():
    with pytest.raises(ParameterArithmeticMismatch):
        find_difference_set(7, 3, 2)
    with pytest.raises(ParameterError):
        find_difference_set(211, 15, 1)
    # (16, 6, 2) has no cyclic difference set
    assert find_difference_set(16, 6, 2) is None


@pytest.mark.parametrize("name", sorted(SEEDS))
def test_seeds_are_symmetric(name):
    s = seed(name)
    kind = classify(s)
    assert isinstance(kind, Symmetric)
    assert kind.k * (kind.k - 1) == kind.lambda_prime * (s.v - 1)


def test_develop_examples():
    assert classify(develop(DifferenceSet(7, (0, 1, 3), 3, 1))) == Symmetric(3, 1)
    assert classify(develop(DifferenceSet(13, (0, 1, 3, 9), 4, 1))) == Symmetric(4, 1)
    assert classify(develop(paley_difference_set(11))) == Symmetric(5, 2)
    assert classify(pg2(7)) == Symmetric(8, 1)


def test_difference_set_validity():
    assert paley_difference_set(19).is_valid()
    assert not DifferenceSet(7, (0, 1, 2), 3, 1).is_valid()


@pytest.mark.parametrize("name, sizes", [("fano", [3] + [4] * 6), ("pg2_3", [4] + [6] * 12)])
def test_make_type1(name, sizes):
    for i in range(seed(name).v):
        d = make_type1(seed(name), i)
        assert sorted(d.sizes) == sizes
        assert is_type1(d)
        assert two_block_size_analysis(d).alpha == 1
        assert complement_at(d, i) == seed(name)


def test_make_type1_guards():
    with pytest.raises(AverageDegenerate):
        make_type1(complement_design(seed("fano")), 0)
    with pytest.raises(NotSymmetric):
        make_type1(make_type1(seed("fano"), 0), 0)


def test_complement_design():
    assert classify(complement_design(seed("fano"))) == Symmetric(4, 2)
    assert classify(complement_design(seed("pg2_3"))) == Symmetric(9, 6)
    assert complement_design(complement_design(seed("pg2_3"))) == seed("pg2_3")
    with pytest.raises(ParameterError):
        # complement of (7, 4, 2) would have lambda = 7 - 8 + 2 = 1; of (4, 3, 2) lambda 0
        complement_design(named_seed("diffset", 4, 3, 2))


def test_named_seed_errors():
    with pytest.raises(ParameterError):
        pg2(6)
    with pytest.raises(ParameterError):
        paley(13)
    with pytest.raises(ParameterError):
        named_seed("nope")
