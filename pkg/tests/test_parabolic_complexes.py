import pytest
from hypothesis import given, strategies as st

from kostka_duality.exact_linalg import cohomology_dims
from kostka_duality.parabolic_complexes import (
    check_type,
    conjugate_master_complex,
    enumerate_flags,
    induction_map,
    master_cohomology_check,
    master_complex,
    master_terms,
    master_vs_vanishing_check,
    permutohedron_face_counts,
    realized_kostka_sheaf,
    restriction_map,
    term_character,
    type_composition,
    warning_noncommutativity_witness,
)
from kostka_duality.sheaf_models import positive_cell
from kostka_duality.symgroup import decompose, sign_character
from kostka_duality.tableaux import kostka, partitions, rho, subsets

from oracles import set_flags

# faces of the permutohedron by dimension, from the multinomial count
PERMUTOHEDRON = {
    0: [1],
    1: [2, 1],
    2: [6, 6, 1],
    3: [24, 36, 14, 1],
    4: [120, 240, 150, 30, 1],
}


@pytest.mark.parametrize("n", range(0, 5))
def test_master_term_dims(n):
    assert list(master_complex(n).dims) == PERMUTOHEDRON[n]
    assert permutohedron_face_counts(n) == PERMUTOHEDRON[n]


@pytest.mark.parametrize("n", range(0, 5))
def test_master_cohomology_is_the_sign_in_degree_zero(n):
    r = master_cohomology_check(n)
    assert r["passed"], r["checks"]
    assert r["cohomology"] == [1] + [0] * n
    assert r["h0_character"] == [str(x) for x in sign_character(n + 1)]


@pytest.mark.parametrize("n", range(1, 5))
def test_conjugate_complex_lives_in_nonpositive_degrees(n):
    c = conjugate_master_complex(n)
    assert list(c.degrees) == list(range(-n, 1))
    h = cohomology_dims(c)
    # degree 0 is reported by the check, not pinned to a value
    assert h[:-1] == [0] * n


@pytest.mark.parametrize("n", range(1, 4))
def test_master_complex_matches_vanishing_side(n):
    r = master_vs_vanishing_check(n)
    assert r["passed"], r["checks"]


@pytest.mark.parametrize("n", range(1, 4))
def test_realized_kostka_sheaf_has_kostka_multiplicities(n):
    K = realized_kostka_sheaf(n)
    for I in subsets(n):
        cell = positive_cell(I, n)
        expected = {lam: kostka(lam, rho(I, n)) for lam in partitions(n + 1)}
        assert decompose(K.character(cell), n + 1) == expected


@pytest.mark.parametrize("n,chi", [(2, (1,)), (2, (1, 2)), (3, (2,)), (3, (1, 3)), (3, (1, 2, 3)), (1, ())])
def test_flag_enumeration_against_brute_force(n, chi):
    ours = {tuple(frozenset(s) for s in f) for f in enumerate_flags(n, chi).flags}
    assert ours == set(set_flags(n, chi))


def test_types_are_checked():
    assert check_type([1, 2], 3) == (1, 2)
    for bad in [(2, 1), (5,), (0, 2)]:
        with pytest.raises(ValueError):
            check_type(bad, 3)
    assert type_composition((1, 3), 3) == (1, 2, 1)


def test_terms_are_listed_by_length():
    assert master_terms(2) == [[(1, 2)], [(1,), (2,)], [()]]


def test_witness_values():
    r = warning_noncommutativity_witness()
    assert r["passed"]
    first = r["evaluations"][0]
    assert first["induce_then_restrict"] == {"{1,2}": "1", "{1,3}": "1", "{2,3}": "1"}
    assert first["restrict_then_induce"] == {"{1,2}": "1", "{1,3}": "1", "{2,3}": "0"}
    constant = r["evaluations"][-1]
    assert set(constant["induce_then_restrict"].values()) == {"3"}
    assert set(constant["restrict_then_induce"].values()) == {"2"}


@given(st.integers(1, 3), st.data())
def test_induction_is_adjoint_to_restriction(n, data):
    chi = data.draw(st.sampled_from([t for ts in master_terms(n) for t in ts if t]))
    i = data.draw(st.integers(0, len(chi) - 1))
    theta = chi[:i] + chi[i + 1:]
    assert restriction_map(n, theta, chi) == induction_map(n, chi, theta).T


@given(st.integers(1, 3), st.data())
def test_induction_is_equivariant(n, data):
    chi = data.draw(st.sampled_from([t for ts in master_terms(n) for t in ts if t]))
    theta = chi[1:]
    g = tuple(data.draw(st.permutations(range(1, n + 2))))
    src, dst = enumerate_flags(n, chi), enumerate_flags(n, theta)
    g0 = tuple(x - 1 for x in g)
    ind = induction_map(n, chi, theta)
    assert dst.action_matrix(g0) @ ind == ind @ src.action_matrix(g0)


@given(st.integers(0, 3))
def test_term_characters_are_permutation_characters(n):
    for ts in master_terms(n):
        chi = term_character(n, ts)
        assert chi[-1] == sum(enumerate_flags(n, t).dim for t in ts)
