import random

import pytest
from hypothesis import given, strategies as st

from kostka_duality.glq_flags import (
    FeasibilityError,
    PrimeField,
    dl_cohomology_check,
    dl_complex,
    enumerate_qflags,
    evaluate,
    gaussian_binomial,
    gaussian_multinomial,
    grassmannian,
    q_to_one_degeneration_check,
    qflag_count,
    random_gl,
    rref_mod,
)
from kostka_duality.exact_linalg import cohomology_dims

DL_CASES = [(1, 2), (1, 3), (1, 5), (2, 2), (2, 3), (3, 2)]


def test_gaussian_binomials():
    assert gaussian_binomial(4, 2) == [1, 1, 2, 1, 1]
    assert evaluate(gaussian_binomial(4, 2), 2) == 35
    assert gaussian_multinomial((1, 1, 1)) == [1, 2, 2, 1]


@pytest.mark.parametrize("q,count", [(2, 21), (3, 52), (5, 186)])
def test_complete_flags_in_three_space(q, count):
    assert enumerate_qflags(2, q, (1, 2)).dim == count == q ** 3 + 2 * q ** 2 + 2 * q + 1


@pytest.mark.parametrize("N,k,p", [(3, 1, 2), (3, 2, 3), (4, 2, 2), (4, 1, 3)])
def test_grassmannian_by_counting_spanning_sets(N, k, p):
    # each k-space has (p^k - 1)(p^k - p)... ordered bases among all independent k-tuples
    independent = 1
    bases = 1
    for i in range(k):
        independent *= p ** N - p ** i
        bases *= p ** k - p ** i
    assert len(grassmannian(N, k, PrimeField(p))) == independent // bases


@pytest.mark.parametrize("n,q", DL_CASES)
def test_dl_cohomology_is_steinberg(n, q):
    r = dl_cohomology_check(n, q)
    assert r["passed"], r["checks"]
    assert r["cohomology"] == [q ** (n * (n + 1) // 2)] + [0] * n


def test_dl_term_dims_for_gl4_over_f2():
    c = dl_complex(3, 2)
    assert list(c.dims) == [315, 315, 65, 1]
    assert cohomology_dims(c) == [64, 0, 0, 0]


def test_flag_guard():
    with pytest.raises(FeasibilityError):
        enumerate_qflags(3, 3, (1, 2, 3), max_flags=1000)


def test_only_primes():
    with pytest.raises(ValueError):
        PrimeField(4)


@pytest.mark.parametrize("n", range(0, 4))
def test_q_equals_one_gives_set_flags(n):
    assert q_to_one_degeneration_check(n)["passed"]


@given(st.sampled_from([2, 3, 5]), st.integers(0, 10 ** 6))
def test_rref_is_canonical_under_row_operations(p, seed):
    rng = random.Random(seed)
    F = PrimeField(p)
    rows = [[rng.randrange(p) for _ in range(4)] for _ in range(2)]
    g = random_gl(1, p, rng)
    mixed = [[(g[i][0] * rows[0][k] + g[i][1] * rows[1][k]) % p for k in range(4)] for i in range(2)]
    assert rref_mod(rows, F) == rref_mod(mixed, F)


@given(st.sampled_from([(1, 2), (1, 3), (2, 2), (2, 3)]), st.data())
def test_flag_counts_match_q_multinomials(case, data):
    n, q = case
    chi = tuple(sorted(data.draw(st.sets(st.integers(1, n)))))
    assert enumerate_qflags(n, q, chi).dim == qflag_count(n, q, chi)
