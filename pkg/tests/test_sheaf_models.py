import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kostka_duality.exact_linalg import ExactMatrix, cohomology_dims
from kostka_duality.parabolic_complexes import vanishing_cycles_complex
from kostka_duality.sheaf_models import (
    GGMSheaf,
    HyperbolicSheaf,
    InvalidSheafError,
    SheafShapeError,
    amonodromic_p,
    amonodromic_q,
    dumps,
    fourier_ggm,
    ft_kostka_check,
    ggm_from_json,
    ggm_to_json,
    hyp_from_json,
    hyp_to_json,
    is_amonodromic_hyp,
    kostka_sheaf,
    p_equivalence,
    positive_cell,
    q_equivalence,
    random_amonodromic_ggm,
    random_ggm_corpus,
    random_product_ggm,
    round_trip_intertwiner,
    takeuchi_check,
    validate_ggm,
    validate_hyp,
)
from kostka_duality.tableaux import complement, subsets


def mat(rows):
    return ExactMatrix.from_rows(rows)


def rank_one(u, v):
    return GGMSheaf.build(1, {(): 1, (1,): 1}, {((1,), 1): mat([[u]])}, {((1,), 1): mat([[v]])})


def test_q_of_a_one_dimensional_example():
    E = q_equivalence(rank_one(2, 1))
    assert E.stalks == {(-1,): 1, (0,): 2, (1,): 1}
    assert E.gamma[((0,), (-1,))] == mat([[0, 1]])
    assert E.delta[((0,), (-1,))] == mat([[0], [1]])
    assert E.gamma[((0,), (1,))] == mat([[-1, 1]])
    assert E.delta[((0,), (1,))] == mat([[2], [3]])
    assert validate_hyp(E)["passed"]


def test_fourier_of_a_one_dimensional_example():
    F = fourier_ggm(rank_one(2, 1))
    assert F.u[((1,), 1)] == mat([[-1]])
    assert F.v[((1,), 1)] == mat([[Fraction(2, 3)]])


def test_singular_monodromy_is_reported():
    r = validate_ggm(rank_one(1, -1))
    assert not r["passed"]
    assert r["violation"]["axiom"] == "monodromy_invertible"
    with pytest.raises(InvalidSheafError):
        q_equivalence(rank_one(1, -1))


def test_noncommuting_squares_are_reported():
    G = GGMSheaf.build(2, {I: 1 for I in subsets(2)},
                       {((1,), 1): mat([[1]]), ((1, 2), 1): mat([[2]]),
                        ((2,), 2): mat([[1]]), ((1, 2), 2): mat([[1]])})
    r = validate_ggm(G)
    assert not r["passed"]
    assert r["violation"]["axiom"] in {"u_functoriality", "mixed_commutativity"}


def test_shape_mismatch_raises():
    G = GGMSheaf(1, {(): 1, (1,): 2}, {((1,), 1): mat([[1]])}, {((1,), 1): mat([[1]])})
    with pytest.raises(SheafShapeError):
        validate_ggm(G)


def test_broken_hyperbolic_idempotence():
    E = HyperbolicSheaf.build(1, {(-1,): 1, (0,): 1, (1,): 1},
                              {((0,), (1,)): mat([[2]]), ((0,), (-1,)): mat([[1]])},
                              {((0,), (1,)): mat([[1]]), ((0,), (-1,)): mat([[1]])})
    r = validate_hyp(E)
    assert not r["passed"]


seeds = st.integers(0, 10 ** 6)
ranks = st.integers(1, 3)


@st.composite
def ggm_sheaves(draw):
    rng = random.Random(draw(seeds))
    n = draw(ranks)
    if draw(st.booleans()):
        return random_amonodromic_ggm(rng, n, 3)
    return random_product_ggm(rng, n, 4)


@given(ggm_sheaves())
def test_q_gives_a_valid_hyperbolic_sheaf_with_takeuchi_stalks(G):
    E = q_equivalence(G)
    assert validate_hyp(E)["passed"]
    assert takeuchi_check(G, E)
    for I in subsets(G.n):
        assert E.stalks[positive_cell(I, G.n)] == sum(G.stalks[J] for J in subsets(G.n) if set(J) <= set(I))


@given(ggm_sheaves())
def test_p_after_q_is_isomorphic_to_the_input(G):
    r = round_trip_intertwiner(G)
    assert r["passed"], r["problems"]
    assert validate_ggm(p_equivalence(q_equivalence(G)))["passed"]


@given(ggm_sheaves())
def test_fourier_preserves_validity_and_complements_stalks(G):
    F = fourier_ggm(G)
    assert validate_ggm(F)["passed"]
    assert all(F.stalks[I] == G.stalks[complement(I, G.n)] for I in subsets(G.n))


@given(st.integers(0, 10 ** 6), ranks)
def test_fourier_is_an_involution_on_amonodromic_sheaves(seed, n):
    G = random_amonodromic_ggm(random.Random(seed), n, 3)
    assert fourier_ggm(fourier_ggm(G)) == G


@given(st.integers(0, 10 ** 6), ranks)
def test_amonodromic_models_agree(seed, n):
    G = random_amonodromic_ggm(random.Random(seed), n, 3)
    A = amonodromic_q(G)
    assert validate_hyp(A)["passed"]
    assert is_amonodromic_hyp(A) and is_amonodromic_hyp(q_equivalence(G))
    assert A.stalks == q_equivalence(G).stalks
    assert amonodromic_p(A).stalks == G.stalks


def test_monodromic_sheaf_is_not_amonodromic():
    assert not is_amonodromic_hyp(q_equivalence(rank_one(2, 1)))


@given(ggm_sheaves())
def test_vanishing_cycles_complex_is_acyclic_off_degree_zero(G):
    h = cohomology_dims(vanishing_cycles_complex(q_equivalence(G)))
    assert all(x == 0 for x in h[1:])
    assert h[0] == G.stalks[tuple(range(1, G.n + 1))]


def test_corpus_is_deterministic_and_valid():
    a = random_ggm_corpus(7, 12)
    b = random_ggm_corpus(7, 12)
    assert a == b
    assert all(validate_ggm(G)["passed"] for G in a)
    assert any(G.is_amonodromic() for G in a) and any(not G.is_amonodromic() for G in a)


# -- JSON ---------------------------------------------------------------------

@given(ggm_sheaves())
def test_ggm_json_round_trip_is_byte_identical(G):
    text = dumps(ggm_to_json(G))
    again = ggm_from_json(json.loads(text))
    assert again == G
    assert dumps(ggm_to_json(again)) == text


@given(ggm_sheaves())
def test_hyp_json_round_trip(G):
    E = q_equivalence(G)
    text = dumps(hyp_to_json(E))
    assert hyp_from_json(json.loads(text)) == E


def test_rationals_are_canonicalized_on_read():
    data = {"n": 1, "stalks": {"": 1, "1": 1}, "u": {"1>1": [["4/6"]]}, "v": {"1>1": [["0"]]}}
    G = ggm_from_json(data)
    assert ggm_to_json(G)["u"]["1>1"] == [["2/3"]]


def test_missing_maps_read_as_zero():
    G = ggm_from_json({"n": 2, "stalks": {"1,2": 2}})
    assert G.stalks[(1, 2)] == 2 and G.is_amonodromic()


@pytest.mark.parametrize("data,token", [
    ({"n": 1, "stalks": {"3": 1}}, "'3'"),
    ({"n": 1, "stalks": {"": 1, "1": 1}, "u": {"1>2": [["1"]]}}, "'1>2'"),
    ({"n": 1, "stalks": {"": 1}, "extra": 0}, "'extra'"),
    ({"n": -1}, "-1"),
])
def test_bad_json_names_the_offending_token(data, token):
    with pytest.raises(ValueError, match=token):
        ggm_from_json(data)


def test_json_shape_mismatch():
    with pytest.raises(SheafShapeError):
        ggm_from_json({"n": 1, "stalks": {"": 1, "1": 1}, "u": {"1>1": [["1", "2"]]}})


# -- Kostka sheaf ---------------------------------------------------------------

def test_kostka_sheaf_stalks_for_n_two():
    K = kostka_sheaf(2)
    assert K.multiplicities[(1,)] == {(3,): 0, (2, 1): 1, (1, 1, 1): 0}
    assert K.multiplicities[()] == {(3,): 1, (2, 1): 0, (1, 1, 1): 0}
    assert K.total_dim() == 6


@pytest.mark.parametrize("n", range(0, 5))
@pytest.mark.parametrize("module", ["trivial", "sign", "regular"])
def test_fourier_transform_of_kostka_sheaf(n, module):
    assert ft_kostka_check(n, module)["passed"]


@pytest.mark.parametrize("lam", [(2, 1), (3, 1), (2, 2), (3, 2), (2, 2, 1)])
def test_fourier_transform_of_kostka_sheaf_with_nonlinear_coefficients(lam):
    assert ft_kostka_check(sum(lam) - 1, lam)["passed"]


def test_unknown_coefficient_module():
    with pytest.raises(ValueError):
        ft_kostka_check(2, "adjoint")
