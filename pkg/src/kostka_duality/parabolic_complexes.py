"""Set-theoretic flags, the master complex and the vanishing-cycles complex.

A type is a strictly increasing tuple of integers in ``1..n``; a flag of type
``chi`` is a chain ``I_1 < ... < I_p`` of subsets of ``{1, ..., n+1}`` with
``|I_k| = chi_k``.  The last member ``[n+1]`` of a complete chain carries no
information, so the regular module is realised by the type ``(1, ..., n)``.
Type ``chi`` and the subset ``{chi}`` of ``[n]`` are used interchangeably.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Sequence

from .coxeter_algebra import ribbon_module
from .exact_linalg import ChainComplex, ExactMatrix, block_diag, cohomology_dims, kernel_basis, trace_on_subspace
from .groups import symmetric_group
from .sheaf_models import (
    GGMSheaf,
    HyperbolicSheaf,
    InvalidSheafError,
    amonodromic_q,
    amonodromic_summands,
    positive_cell,
    validate_hyp,
)
from .symgroup import class_order, class_representative, sign_character
from .tableaux import rho, subsets


def check_type(chi: Sequence[int], n: int) -> tuple:
    chi = tuple(int(x) for x in chi)
    if any(b <= a for a, b in zip(chi, chi[1:])) or any(x < 1 or x > n + 1 for x in chi):
        raise ValueError(f"{chi} is not a type for n={n}: need 1 <= chi_1 < ... <= {n + 1}")
    return chi


def type_composition(chi: Sequence[int], n: int) -> tuple:
    """``(chi_1, chi_2 - chi_1, ..., n + 1 - chi_p)`` with zero parts dropped."""
    cuts = (0,) + tuple(chi) + (n + 1,)
    return tuple(b - a for a, b in zip(cuts, cuts[1:]) if b > a)


def _act(g: Sequence[int], s: tuple) -> tuple:
    return tuple(sorted(g[x - 1] + 1 for x in s))


@dataclass(frozen=True)
class FlagModule:
    """Functions on the flags of one type, with S_{n+1} permuting the flags."""

    n: int
    type: tuple
    flags: tuple

    @property
    def dim(self) -> int:
        return len(self.flags)

    @property
    def index(self) -> dict:
        return {f: i for i, f in enumerate(self.flags)}

    def act(self, g: Sequence[int], flag: tuple) -> tuple:
        return tuple(_act(g, s) for s in flag)

    def permutation(self, g: Sequence[int]) -> list[int]:
        idx = self.index
        return [idx[self.act(g, f)] for f in self.flags]

    def action_matrix(self, g: Sequence[int]) -> ExactMatrix:
        perm = self.permutation(g)
        return ExactMatrix.from_sparse(self.dim, self.dim, {(perm[j], j): 1 for j in range(self.dim)})

    def fixed_points(self, g: Sequence[int]) -> int:
        return sum(1 for f in self.flags if self.act(g, f) == f)


def enumerate_flags(n: int, chi: Sequence[int]) -> FlagModule:
    """All flags of type ``chi`` in sorted order; the group action is verified on generators."""
    return _enumerate_flags(n, check_type(chi, n))


@lru_cache(maxsize=None)
def _enumerate_flags(n: int, chi: tuple) -> FlagModule:
    ground = tuple(range(1, n + 2))
    chains = [()]
    prev = 0
    for size in chi:
        nxt = []
        for chain in chains:
            last = chain[-1] if chain else ()
            rest = [x for x in ground if x not in last]
            for extra in combinations(rest, size - prev):
                nxt.append(chain + (tuple(sorted(last + extra)),))
        chains = nxt
        prev = size
    module = FlagModule(n, chi, tuple(sorted(chains)))
    _verify_action(module)
    return module


def _verify_action(module: FlagModule) -> None:
    flags = set(module.flags)
    for g in symmetric_group(module.n + 1).gen_perms:
        images = {module.act(g, f) for f in module.flags}
        if images != flags:
            raise AssertionError(f"generator {g} does not permute the flags of type {module.type}")


def _check_subtype(chi: tuple, theta: tuple) -> None:
    if not set(theta) <= set(chi):
        raise ValueError(f"{theta} is not a subtype of {chi}")


def induction_map(n: int, chi: Sequence[int], theta: Sequence[int]) -> ExactMatrix:
    """Push-forward along ``Fl_chi -> Fl_theta``: sum of values over each fiber."""
    chi, theta = check_type(chi, n), check_type(theta, n)
    _check_subtype(chi, theta)
    src, dst = enumerate_flags(n, chi), enumerate_flags(n, theta)
    keep = [k for k, x in enumerate(chi) if x in set(theta)]
    idx = dst.index
    items = {(idx[tuple(f[k] for k in keep)], j): 1 for j, f in enumerate(src.flags)}
    return ExactMatrix.from_sparse(dst.dim, src.dim, items)


def restriction_map(n: int, theta: Sequence[int], chi: Sequence[int]) -> ExactMatrix:
    """Pull-back ``M_theta -> M_chi``; the transpose of the induction map."""
    return induction_map(n, chi, theta).transpose()


def types_of_length(n: int, p: int) -> list[tuple]:
    return [I for I in subsets(n) if len(I) == p]


def master_terms(n: int) -> list[list[tuple]]:
    """Types contributing to each degree: degree ``p`` collects the types of length ``n - p``."""
    return [types_of_length(n, n - p) for p in range(n + 1)]


def _signed_differential(n: int, src_types, dst_types, block) -> ExactMatrix:
    """Assemble a block matrix from ``block(chi, position, theta)``."""
    src_dims = [enumerate_flags(n, t).dim for t in src_types]
    dst_dims = [enumerate_flags(n, t).dim for t in dst_types]
    src_off = [sum(src_dims[:k]) for k in range(len(src_types))]
    dst_off = [sum(dst_dims[:k]) for k in range(len(dst_types))]
    dst_pos = {t: k for k, t in enumerate(dst_types)}
    items = {}
    for a, chi in enumerate(src_types):
        for i in range(1, len(chi) + 1):
            theta = chi[:i - 1] + chi[i:]
            b = dst_pos[theta]
            m = block(chi, i, theta)
            for r, row in enumerate(m.sparse_rows()):
                for c, x in row.items():
                    items[(dst_off[b] + r, src_off[a] + c)] = x
    return ExactMatrix.from_sparse(sum(dst_dims), sum(src_dims), items)


@lru_cache(maxsize=None)
def master_complex(n: int) -> ChainComplex:
    """``M_(1..n) -> ... -> M_empty`` with ``d = (-1)^i`` times induction along ``chi -> chi minus its i-th entry``."""
    terms = master_terms(n)
    diffs = [
        _signed_differential(n, terms[p], terms[p + 1],
                             lambda chi, i, theta: induction_map(n, chi, theta).scale((-1) ** i))
        for p in range(n)
    ]
    dims = [sum(enumerate_flags(n, t).dim for t in ts) for ts in terms]
    return ChainComplex(tuple(dims), tuple(diffs))


@lru_cache(maxsize=None)
def conjugate_master_complex(n: int) -> ChainComplex:
    """``M_empty -> ... -> M_(1..n)`` with signed restriction maps.

    This is the transpose of the master complex, so it sits in degrees
    ``-n .. 0`` with the regular module in degree 0.
    """
    mas = master_complex(n)
    diffs = [d.transpose() for d in reversed(mas.differentials)]
    return ChainComplex(tuple(reversed(mas.dims)), tuple(diffs), lo=-n)


def term_action(n: int, types: Sequence[tuple], g: Sequence[int]) -> ExactMatrix:
    return block_diag([enumerate_flags(n, t).action_matrix(g) for t in types])


def term_character(n: int, types: Sequence[tuple]) -> tuple:
    """Permutation character of a direct sum of flag modules, by cycle type."""
    out = []
    for mu in class_order(n + 1):
        g = class_representative(mu)
        out.append(Fraction(sum(enumerate_flags(n, t).fixed_points(g) for t in types)))
    return tuple(out)


def h0_character(n: int, complex_: ChainComplex, action) -> tuple:
    """Character of S_{n+1} on ``H^0 = ker d_0``; ``action(g)`` is the matrix on degree 0."""
    if complex_.differentials:
        kernel = kernel_basis(complex_.differentials[0])
    else:
        kernel = [tuple(Fraction(int(i == j)) for i in range(complex_.dims[0])) for j in range(complex_.dims[0])]
    if not kernel:
        return tuple(Fraction(0) for _ in class_order(n + 1))
    return tuple(trace_on_subspace(action(class_representative(mu)), kernel) for mu in class_order(n + 1))


def master_cohomology_check(n: int, threads: int | None = None) -> dict:
    mas = master_complex(n)
    conj = conjugate_master_complex(n)
    h = cohomology_dims(mas, threads)
    h_conj = cohomology_dims(conj, threads)
    terms = master_terms(n)
    chi0 = h0_character(n, mas, lambda g: term_action(n, terms[0], g))
    sign = sign_character(n + 1)
    faces = permutohedron_face_counts(n)
    checks = {
        "higher_cohomology_vanishes": all(x == 0 for x in h[1:]),
        "h0_is_one_dimensional": h[0] == 1,
        "h0_is_sign": chi0 == sign,
        "euler_characteristic_one": mas.euler_characteristic() == 1,
        # degree 0 is the last entry; positive degrees are empty in this placement
        "conjugate_acyclic_off_degree_0": all(x == 0 for x in h_conj[:-1]),
        "dims_match_permutohedron": list(mas.dims) == faces,
    }
    return {
        "check": "master_cohomology",
        "n": n,
        "term_dims": list(mas.dims),
        "cohomology": h,
        "h0_character": [str(x) for x in chi0],
        "sign_character": [str(x) for x in sign],
        "class_order": [list(mu) for mu in class_order(n + 1)],
        "conjugate_term_dims": list(conj.dims),
        "conjugate_degrees": list(conj.degrees),
        "conjugate_cohomology": h_conj,
        "permutohedron_faces": faces,
        "checks": checks,
        "passed": all(checks.values()),
    }


def permutohedron_face_counts(n: int) -> list[int]:
    """Faces of the n-dimensional permutohedron by dimension: cosets of rank-k parabolics of S_{n+1}."""
    counts = [0] * (n + 1)
    for I in subsets(n):
        order = 1
        # W_I is the Young subgroup of the composition cut at the complement of I
        for part in rho(tuple(j for j in range(1, n + 1) if j not in I), n):
            order *= factorial(part)
        counts[len(I)] += factorial(n + 1) // order
    return counts


# ---------------------------------------------------------------------------
# vanishing cycles

def vanishing_terms(n: int) -> list[list[tuple]]:
    """Degree ``p`` collects the positive cells ``C_I`` with ``|I| = n - p``."""
    return [[I for I in subsets(n) if len(I) == n - p] for p in range(n + 1)]


def vanishing_cycles_complex(E: HyperbolicSheaf, check: bool = True) -> ChainComplex:
    """``E(C_[n]) -> ... -> E(C_empty)``; the ``(J, I)`` entry for ``J = I + {j}`` is
    ``(-1)^s gamma`` with ``s`` the number of members of ``I`` below ``j``."""
    if check:
        r = validate_hyp(E)
        if not r["passed"]:
            raise InvalidSheafError(r)
    n = E.n
    terms = vanishing_terms(n)
    dim = lambda I: E.stalks[positive_cell(I, n)]
    diffs = []
    for p in range(n):
        src, dst = terms[p], terms[p + 1]
        src_off, dst_off = {}, {}
        acc = 0
        for J in src:
            src_off[J] = acc
            acc += dim(J)
        rows = 0
        for I in dst:
            dst_off[I] = rows
            rows += dim(I)
        items = {}
        for J in src:
            for j in J:
                I = tuple(x for x in J if x != j)
                s = sum(1 for x in I if x < j)
                g = E.gamma[(positive_cell(J, n), positive_cell(I, n))]
                for r, row in enumerate(g.sparse_rows()):
                    for c, x in row.items():
                        items[(dst_off[I] + r, src_off[J] + c)] = (-1) ** s * x
        diffs.append(ExactMatrix.from_sparse(rows, acc, items))
    dims = [sum(dim(I) for I in ts) for ts in terms]
    return ChainComplex(tuple(dims), tuple(diffs))


@dataclass(frozen=True)
class RealizedKostkaSheaf:
    """The amonodromic hyperbolic sheaf with ``Phi(J) = R_J`` inside k[S_{n+1}].

    ``E(C)`` is the direct sum of the ribbon modules ``R_J`` over the subsets
    ``J`` of the zero set of ``C``; S_{n+1} acts block-diagonally by left
    multiplication.
    """

    n: int
    hyperbolic: HyperbolicSheaf

    def action(self, cell: tuple, g: Sequence[int]) -> ExactMatrix:
        W = symmetric_group(self.n + 1)
        w = W.index[tuple(g)]
        return block_diag([ribbon_module(W, J).action_matrix(w) for J in amonodromic_summands(cell)])

    def character(self, cell: tuple) -> tuple:
        """Character of E(cell) by cycle type, summed from ribbon characters."""
        from .symgroup import submodule_character

        W = symmetric_group(self.n + 1)
        out = [Fraction(0)] * len(class_order(self.n + 1))
        for J in amonodromic_summands(cell):
            for k, x in enumerate(submodule_character(ribbon_module(W, J))):
                out[k] += x
        return tuple(out)


@lru_cache(maxsize=None)
def realized_kostka_sheaf(n: int) -> RealizedKostkaSheaf:
    W = symmetric_group(n + 1)
    G = GGMSheaf.build(n, {J: ribbon_module(W, J).dim for J in subsets(n)})
    return RealizedKostkaSheaf(n, amonodromic_q(G))


def master_vs_vanishing_check(n: int, threads: int | None = None) -> dict:
    """Termwise characters and cohomology of the master complex against the
    vanishing-cycles complex of the realized Kostka sheaf."""
    mas = master_complex(n)
    K = realized_kostka_sheaf(n)
    phi = vanishing_cycles_complex(K.hyperbolic)
    m_terms, v_terms = master_terms(n), vanishing_terms(n)
    per_degree = []
    chars_agree = True
    for p in range(n + 1):
        left = term_character(n, m_terms[p])
        right = [Fraction(0)] * len(left)
        for I in v_terms[p]:
            for k, x in enumerate(K.character(positive_cell(I, n))):
                right[k] += x
        same = tuple(right) == left
        chars_agree &= same
        per_degree.append({"degree": p, "master": [str(x) for x in left], "vanishing": [str(x) for x in right], "equal": same})
    h_mas, h_phi = cohomology_dims(mas, threads), cohomology_dims(phi, threads)
    top = positive_cell(tuple(range(1, n + 1)), n)
    h0_phi = h0_character(n, phi, lambda g: K.action(top, g))
    h0_mas = h0_character(n, mas, lambda g: term_action(n, m_terms[0], g))
    checks = {
        "term_dims_equal": list(mas.dims) == list(phi.dims),
        "term_characters_equal": chars_agree,
        "cohomology_equal": h_mas == h_phi,
        "h0_characters_equal": h0_mas == h0_phi,
    }
    return {
        "check": "master_vs_vanishing",
        "n": n,
        "master_dims": list(mas.dims),
        "vanishing_dims": list(phi.dims),
        "master_cohomology": h_mas,
        "vanishing_cohomology": h_phi,
        "degrees": per_degree,
        "checks": checks,
        "passed": all(checks.values()),
    }


# ---------------------------------------------------------------------------
# induction and restriction do not commute

def _evaluate_routes(f: Sequence) -> tuple[list, list]:
    """For n = 2 and ``f`` on the lines (type (1)), return both ways of reaching type (2):
    through the point (induce, then restrict) and through complete flags (restrict, then induce)."""
    n = 2
    fvec = ExactMatrix.from_columns([list(f)], rows=3)
    through_point = restriction_map(n, (), (2,)) @ induction_map(n, (1,), ())
    through_flags = induction_map(n, (1, 2), (2,)) @ restriction_map(n, (1,), (1, 2))
    return list((through_point @ fvec).column(0)), list((through_flags @ fvec).column(0))


def warning_noncommutativity_witness() -> dict:
    """Search the functions on the three lines of ``{1,2,3}`` for one where the two routes differ."""
    lines = [f[0] for f in enumerate_flags(2, (1,)).flags]
    planes = [f[0] for f in enumerate_flags(2, (2,)).flags]
    witness = None
    candidates = []
    for k in range(3):
        candidates.append([int(j == k) for j in range(3)])
    candidates.append([1, 1, 1])
    evaluated = []
    for f in candidates:
        a, b = _evaluate_routes(f)
        evaluated.append({
            "f": {format_set(l): str(x) for l, x in zip(lines, f)},
            "induce_then_restrict": {format_set(P): str(x) for P, x in zip(planes, a)},
            "restrict_then_induce": {format_set(P): str(x) for P, x in zip(planes, b)},
            "equal": a == b,
        })
        if witness is None and a != b:
            witness = evaluated[-1]
    return {
        "check": "noncommutativity_witness",
        "n": 2,
        "witness": witness,
        "evaluations": evaluated,
        "passed": witness is not None,
    }


def format_set(s: Sequence[int]) -> str:
    return "{" + ",".join(str(x) for x in s) + "}"
