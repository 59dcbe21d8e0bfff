import pytest
from hypothesis import given, strategies as st

from kostka_duality.tableaux import (
    SkewShape,
    complement,
    conjugate,
    descent_set,
    enumerate_ssyt,
    hstrip,
    kostka,
    parse_int_list,
    partitions,
    rho,
    rho_inverse,
    ribbon,
    semitic_filling,
    small_kostka_alt,
    small_kostka_syt,
    standard_tableaux,
    subsets,
    syt_count,
)

from oracles import brute_kostka, brute_small_kostka, brute_syt

# brute-force values from oracles.brute_kostka, frozen
KOSTKA_VALUES = [
    ((3, 2), (2, 2, 1), 2),
    ((3, 2, 1), (1,) * 6, 16),
    ((4, 2), (2, 2, 2), 3),
    ((3, 3), (2, 2, 2), 1),
    ((3, 2, 1), (2, 2, 2), 2),
    ((4, 2), (1, 2, 3), 2),
    ((2, 2, 1), (1, 2, 2), 1),
    ((2, 1), (1, 1, 1), 2),
]

# descent-set census of SYT for shapes of 4, by brute force over all fillings
DESCENT_CENSUS = {
    (4,): {(): 1},
    (3, 1): {(1,): 1, (2,): 1, (3,): 1},
    (2, 2): {(2,): 1, (1, 3): 1},
    (2, 1, 1): {(1, 2): 1, (1, 3): 1, (2, 3): 1},
    (1, 1, 1, 1): {(1, 2, 3): 1},
}


@pytest.mark.parametrize("lam,beta,expected", KOSTKA_VALUES)
def test_kostka_frozen_values(lam, beta, expected):
    assert kostka(lam, beta) == expected


@pytest.mark.parametrize("lam", [(3, 1), (2, 2), (2, 1, 1), (3, 2)])
def test_kostka_matches_brute_force_for_all_weights_of_size(lam):
    for beta in [(1,) * sum(lam), (2,) + (1,) * (sum(lam) - 2), (1, 2) + (1,) * (sum(lam) - 3)]:
        assert kostka(lam, beta) == brute_kostka(lam, beta)


def test_kostka_ignores_zero_parts_and_wrong_sizes():
    assert kostka((2, 1), (1, 0, 1, 1)) == 2
    assert len(enumerate_ssyt((2, 1), (2, 1))) == 1


@pytest.mark.parametrize("lam,census", DESCENT_CENSUS.items())
def test_small_kostka_census_for_size_four(lam, census):
    for I in subsets(3):
        assert small_kostka_syt(lam, I, 3) == census.get(I, 0)
        assert small_kostka_alt(lam, I, 3) == census.get(I, 0)


def test_small_kostka_spot_values():
    assert [small_kostka_alt((2, 1), I, 2) for I in subsets(2)] == [0, 1, 1, 0]
    assert small_kostka_alt((3, 2, 1), (2, 4), 5) == 2
    # family (2k-1, k, 1) at {k, 2k}
    assert small_kostka_syt((5, 3, 1), (3, 6), 8) == 3


@pytest.mark.parametrize("lam", partitions(5))
def test_syt_enumeration_against_permutation_search(lam):
    ours = standard_tableaux(lam)
    assert len(ours) == len(brute_syt(lam)) == syt_count(lam)
    for I in subsets(4):
        assert small_kostka_syt(lam, I, 4) == brute_small_kostka(lam, I)


def test_rho_examples():
    assert rho((), 3) == (4,)
    assert rho((1, 2, 3), 3) == (1, 1, 1, 1)
    assert rho((2,), 4) == (2, 3)
    assert rho_inverse((2, 3), 4) == (2,)


def test_ribbon_and_strip_shapes():
    r = ribbon((2, 1, 3))
    assert r.size() == 6 and r.components() == 1 and not r.has_2x2()
    h = hstrip((2, 1, 3))
    assert h.size() == 6 and h.components() == 3
    t = semitic_filling(ribbon((2, 2)))
    assert t.rows == ((2, 1), (4, 3))


def test_bad_shapes_and_tokens():
    with pytest.raises(ValueError):
        SkewShape((2, 3))
    with pytest.raises(ValueError, match="'x'"):
        parse_int_list("1,x")
    assert parse_int_list("") == ()


sizes = st.integers(0, 6)


@st.composite
def shape_and_subset(draw):
    n = draw(sizes)
    lam = draw(st.sampled_from(partitions(n + 1)))
    I = tuple(i for i in range(1, n + 1) if draw(st.booleans()))
    return n, lam, I


@given(shape_and_subset())
def test_two_routes_agree_and_are_nonnegative(args):
    n, lam, I = args
    a = small_kostka_alt(lam, I, n)
    assert a == small_kostka_syt(lam, I, n) >= 0


@given(shape_and_subset())
def test_conjugate_complement_symmetry(args):
    n, lam, I = args
    assert small_kostka_syt(lam, I, n) == small_kostka_syt(conjugate(lam), complement(I, n), n)


@given(shape_and_subset())
def test_kostka_is_sum_over_subsets(args):
    n, lam, I = args
    total = sum(small_kostka_syt(lam, J, n) for J in subsets(n) if set(J) <= set(I))
    assert kostka(lam, rho(I, n)) == total


@given(st.integers(1, 7))
def test_descent_sets_partition_the_tableaux(m):
    for lam in partitions(m):
        counts = sum(small_kostka_syt(lam, I, m - 1) for I in subsets(m - 1))
        assert counts == syt_count(lam)


@given(shape_and_subset())
def test_rho_is_a_bijection(args):
    n, _, I = args
    beta = rho(I, n)
    assert sum(beta) == n + 1 and rho_inverse(beta, n) == I


def test_descent_set_of_a_row():
    (t,) = standard_tableaux((3,))
    assert descent_set(t) == ()
