"""Descent basis, ribbon and induced modules of finite Coxeter group algebras.

Subsets ``I`` of ``[n]`` index parabolic subgroups; ``a_I`` and ``b_I`` are
the plain and signed sums over ``W_I``.  Ribbon modules ``R_I = k[W] b_I a_J``
and induced modules ``M_I = k[W] a_J`` (``J`` the complement of ``I``) are
held as concrete left submodules of k[W].  Every check returns a plain dict
with a boolean ``"passed"`` entry so reports serialise directly to JSON.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Hashable, Sequence

from .exact_linalg import span_rank, intersection_dim, spans_equal, rank, ExactMatrix
from .groups import CoxeterGroup, GroupAlgebraElement, Submodule, coxeter_group, cycle_type
from .symgroup import class_order, irreducible_character as sn_character
from .tableaux import complement, conjugate, partitions, ribbon, rho, semitic_filling, subsets


def _subset(W: CoxeterGroup, I: Sequence[int]) -> tuple:
    I = tuple(sorted(set(int(i) for i in I)))
    if any(i < 1 or i > W.rank for i in I):
        raise ValueError(f"{I} is not a subset of [{W.rank}]")
    return I


def parabolic_subgroup(W: CoxeterGroup, I: Sequence[int]) -> list[int]:
    I = _subset(W, I)
    gens = [W.generators[i - 1] for i in I]
    seen = {W.identity}
    frontier = [W.identity]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                x = W.mult[w][s]
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
        frontier = nxt
    return sorted(seen)


@lru_cache(maxsize=None)
def _a(W: CoxeterGroup, I: tuple) -> GroupAlgebraElement:
    return GroupAlgebraElement.sum_of(W, parabolic_subgroup(W, I))


@lru_cache(maxsize=None)
def _b(W: CoxeterGroup, I: tuple) -> GroupAlgebraElement:
    return GroupAlgebraElement.sum_of(W, parabolic_subgroup(W, I), signs=W.sign)


def a_elt(W: CoxeterGroup, I: Sequence[int]) -> GroupAlgebraElement:
    return _a(W, _subset(W, I))


def b_elt(W: CoxeterGroup, I: Sequence[int]) -> GroupAlgebraElement:
    return _b(W, _subset(W, I))


def _comp(W: CoxeterGroup, I: tuple) -> tuple:
    return complement(I, W.rank)


def c_elt(W: CoxeterGroup, w: int) -> GroupAlgebraElement:
    """``c_w = w b_{Des(w)}``."""
    return GroupAlgebraElement.basis(W, w) * _b(W, W.descents[w])


def descent_basis_elt(W: CoxeterGroup, w: int) -> GroupAlgebraElement:
    """``d_w = w b_{Des(w)} a_{complement of Des(w)}``."""
    D = W.descents[w]
    return c_elt(W, w) * _a(W, _comp(W, D))


def format_element(x: GroupAlgebraElement) -> str:
    W = x.group
    terms = sorted(x.terms().items(), key=lambda t: (W.length[t[0]], W.words[t[0]]))
    out = []
    for w, c in terms:
        name = W.word_name(w)
        if c == 1:
            s = f"+ {name}"
        elif c == -1:
            s = f"- {name}"
        else:
            s = f"{'+' if c > 0 else '-'} {abs(c)}*{name}"
        out.append(s)
    text = " ".join(out) if out else "0"
    return text[2:] if text.startswith("+ ") else "-" + text[2:] if text.startswith("- ") else text


@lru_cache(maxsize=None)
def _ribbon(W: CoxeterGroup, I: tuple) -> Submodule:
    return Submodule.left_ideal(_b(W, I) * _a(W, _comp(W, I)))


@lru_cache(maxsize=None)
def _induced(W: CoxeterGroup, I: tuple) -> Submodule:
    return Submodule.left_ideal(_a(W, _comp(W, I)))


def ribbon_module(W: CoxeterGroup, I: Sequence[int]) -> Submodule:
    return _ribbon(W, _subset(W, I))


def induced_module(W: CoxeterGroup, I: Sequence[int]) -> Submodule:
    return _induced(W, _subset(W, I))


def descent_class(W: CoxeterGroup, I: Sequence[int]) -> list[int]:
    I = _subset(W, I)
    return [w for w in range(W.order) if W.descents[w] == I]


def _all_subsets(W: CoxeterGroup) -> list[tuple]:
    return subsets(W.rank)


def _within(W, J, I) -> bool:
    return set(J) <= set(I)


# ---------------------------------------------------------------------------
# decomposition checks

def solomon_decomposition_check(W: CoxeterGroup) -> dict:
    """k[W] is the direct sum of the ribbon modules, refined by the descent basis."""
    d = [descent_basis_elt(W, w).coeffs for w in range(W.order)]
    d_rank = span_rank(d, W.order)
    failures = []
    dims = {}
    for I in _all_subsets(W):
        R = ribbon_module(W, I)
        cls = descent_class(W, I)
        dims[I] = R.dim
        if R.dim != len(cls):
            failures.append({"I": list(I), "reason": "dim R_I != #{w : Des(w) = I}", "dim": R.dim, "count": len(cls)})
            continue
        vecs = [d[w] for w in cls]
        if not all(R.contains(v) for v in vecs) or span_rank(vecs, W.order) != R.dim:
            failures.append({"I": list(I), "reason": "{d_w : Des(w) = I} is not a basis of R_I"})
    total = sum(dims.values())
    if d_rank != W.order:
        failures.insert(0, {"reason": "descent basis is singular", "rank": d_rank})
    if total != W.order:
        failures.append({"reason": "ribbon dimensions do not add up to |W|", "sum": total})
    return {
        "check": "solomon_decomposition",
        "group": W.name,
        "order": W.order,
        "descent_basis_rank": d_rank,
        "ribbon_dims": {_key(I): dims[I] for I in dims},
        "sum_of_dims": total,
        "passed": not failures,
        "failures": failures,
    }


def _key(I) -> str:
    return ",".join(str(i) for i in I)


def induced_eq_sum_of_ribbons(W: CoxeterGroup, I: Sequence[int]) -> dict:
    """M_I equals the direct sum of R_J over J inside I, as subspaces of k[W]."""
    I = _subset(W, I)
    M = induced_module(W, I)
    parts = [ribbon_module(W, J) for J in _all_subsets(W) if _within(W, J, I)]
    vecs = [b for R in parts for b in R.basis]
    dim_sum = sum(R.dim for R in parts)
    r = span_rank(vecs, W.order)
    comp = _comp(W, I)
    expected = W.order // len(parabolic_subgroup(W, comp))
    des_count = sum(1 for w in range(W.order) if set(W.descents[w]) <= set(I))
    d_vecs = [descent_basis_elt(W, w).coeffs for w in range(W.order) if set(W.descents[w]) <= set(I)]
    checks = {
        "direct": r == dim_sum,
        "contained": all(M.contains(v) for v in vecs),
        "spans": r == M.dim,
        "dim_is_index": M.dim == expected,
        "dim_is_descent_count": M.dim == des_count,
        "descent_basis": all(M.contains(v) for v in d_vecs) and span_rank(d_vecs, W.order) == M.dim,
    }
    return {
        "check": "induced_eq_sum_of_ribbons",
        "group": W.name,
        "I": list(I),
        "dim_M": M.dim,
        "ribbon_dims": [R.dim for R in parts],
        "checks": checks,
        "passed": all(checks.values()),
    }


def _right_image(W: CoxeterGroup, x: GroupAlgebraElement) -> list[tuple]:
    return x.left_ideal_generators()


def _right_kernel(W: CoxeterGroup, x: GroupAlgebraElement) -> list[tuple]:
    from .exact_linalg import kernel_basis

    return kernel_basis(x.right_mult_matrix())


def sym_asym_operator_checks(W: CoxeterGroup) -> dict:
    """Images and kernels of f -> f a_I and f -> f b_I, in both descriptions.

    * Im Sym_I is the intersection of the S^i, Ker Sym_I the sum of the A^i
      (and dually for Asym);
    * in the basis c_w, A^i, Im Asym_I and Ker Sym_I are coordinate
      subspaces cut out by descent conditions;
    * Sym of the complement maps Im Asym_I onto R_I with kernel
      Ker Sym_{comp} ∩ Im Asym_I.
    """
    N = W.order
    one = GroupAlgebraElement.basis(W, W.identity)
    S, A = {}, {}
    for i in range(1, W.rank + 1):
        s = GroupAlgebraElement.basis(W, W.generators[i - 1])
        S[i] = _right_image(W, one + s)   # f s_i = f
        A[i] = _right_image(W, one - s)   # f s_i = -f
    c = {w: c_elt(W, w).coeffs for w in range(N)}
    failures = []

    # c_w is unitriangular with respect to length
    unitri = all(
        c[w][w] == 1 and all(W.length[v] < W.length[w] for v, x in enumerate(c[w]) if x and v != w)
        for w in range(N)
    )
    c_rank = span_rank(list(c.values()), N)
    if not unitri or c_rank != N:
        failures.append({"property": "c_basis", "unitriangular": unitri, "rank": c_rank})

    for i in range(1, W.rank + 1):
        if span_rank(S[i], N) != N // 2 or span_rank(A[i], N) != N // 2:
            failures.append({"property": "S_A_dims", "i": i})
        coord = [c[w] for w in range(N) if i in W.descents[w]]
        if not spans_equal(A[i], coord, N):
            failures.append({"property": "A_i_coordinate", "i": i})

    for I in _all_subsets(W):
        a, b = _a(W, I), _b(W, I)
        im_sym, im_asym = _right_image(W, a), _right_image(W, b)
        ker_sym, ker_asym = _right_kernel(W, a), _right_kernel(W, b)
        # intersections: elements fixed (resp. negated) by every s_i, i in I
        cap_S = _intersection_of(W, I, +1)
        cap_A = _intersection_of(W, I, -1)
        sum_A = [v for i in I for v in A[i]]
        sum_S = [v for i in I for v in S[i]]
        for name, lhs, rhs in (
            ("Im Sym = cap S", im_sym, cap_S),
            ("Ker Sym = sum A", ker_sym, sum_A),
            ("Im Asym = cap A", im_asym, cap_A),
            ("Ker Asym = sum S", ker_asym, sum_S),
        ):
            if not _same_space(lhs, rhs, N):
                failures.append({"property": "image_kernel", "I": list(I), "claim": name})
        coord_im = [c[w] for w in range(N) if set(I) <= set(W.descents[w])]
        coord_ker = [c[w] for w in range(N) if set(I) & set(W.descents[w])]
        if not _same_space(im_asym, coord_im, N):
            failures.append({"property": "coordinate_subspace", "I": list(I), "claim": "Im Asym_I"})
        if not _same_space(ker_sym, coord_ker, N):
            failures.append({"property": "coordinate_subspace", "I": list(I), "claim": "Ker Sym_I"})
        # quotient description of R_I
        comp = _comp(W, I)
        a_comp = _a(W, comp)
        R = ribbon_module(W, I)
        image = [(GroupAlgebraElement(W, v) * a_comp).coeffs for v in im_asym]
        ker_comp = _right_kernel(W, a_comp)
        quotient_dim = span_rank(im_asym, N) - intersection_dim(ker_comp, im_asym, N)
        if not (_same_space(image, R.basis, N) and quotient_dim == R.dim):
            failures.append({"property": "ribbon_quotient", "I": list(I)})
    return {
        "check": "sym_asym_operators",
        "group": W.name,
        "passed": not failures,
        "failures": failures,
    }


def _same_space(a, b, N) -> bool:
    if not a and not b:
        return True
    return spans_equal(list(a) or [(Fraction(0),) * N], list(b) or [(Fraction(0),) * N], N)


def _intersection_of(W: CoxeterGroup, I: tuple, eps: int) -> list[tuple]:
    """Basis of {f : f s_i = eps f for all i in I}."""
    from .exact_linalg import kernel_basis, vstack

    N = W.order
    if not I:
        return [tuple(Fraction(int(j == k)) for j in range(N)) for k in range(N)]
    blocks = []
    for i in I:
        s = GroupAlgebraElement.basis(W, W.generators[i - 1])
        op = s.right_mult_matrix() - ExactMatrix.identity(N).scale(eps)
        blocks.append(op)
    return kernel_basis(vstack(blocks))


# ---------------------------------------------------------------------------
# characters of W

@dataclass(frozen=True)
class Irrep:
    """An irreducible character of W.

    ``orbit_character`` is the (rational) sum of the Galois conjugates of the
    character, one value per conjugacy class of W; ``orbit_size`` is the
    number of conjugates.  For rational characters the orbit is a singleton.
    """

    label: Hashable
    dim: int
    orbit_character: tuple
    orbit_size: int = 1


def _mobius(k: int) -> int:
    res, p = 1, 2
    while p * p <= k:
        if k % p == 0:
            k //= p
            if k % p == 0:
                return 0
            res = -res
        p += 1
    return -res if k > 1 else res


def ramanujan_sum(q: int, k: int) -> int:
    """Sum of exp(2 pi i a k / q) over a in [1, q] coprime to q."""
    g = gcd(q, k)
    return sum(_mobius(q // d) * d for d in range(1, g + 1) if g % d == 0)


def _euler_phi(q: int) -> int:
    return sum(1 for a in range(1, q + 1) if gcd(a, q) == 1)


def _dihedral_kind(W: CoxeterGroup, w: int) -> tuple:
    """``("rot", k)`` for x -> x + k, ``("ref", c)`` for x -> c - x."""
    m = W.param
    p = W.elements[w]
    if (p[1] - p[0]) % m == 1:
        return ("rot", p[0])
    return ("ref", p[0])


@lru_cache(maxsize=None)
def irreducibles(W: CoxeterGroup) -> tuple:
    reps = [cls[0] for cls in W.conjugacy_classes]
    if W.kind == "A":
        m = W.rank + 1
        order = class_order(m)
        out = []
        for lam in partitions(m):
            chi = dict(zip(order, sn_character(lam)))
            values = tuple(chi[cycle_type(W.elements[r])] for r in reps)
            out.append(Irrep(lam, int(chi[(1,) * m]), values))
        return tuple(out)
    m = W.param
    kinds = [_dihedral_kind(W, r) for r in reps]
    out = [
        Irrep("triv", 1, tuple(Fraction(1) for _ in reps)),
        Irrep("sign", 1, tuple(Fraction(1 if t == "rot" else -1) for t, _ in kinds)),
    ]
    if m % 2 == 0:
        out.append(Irrep("eps1", 1, tuple(Fraction((-1) ** x) for t, x in kinds)))
        out.append(Irrep("eps2", 1, tuple(Fraction((-1) ** x * (1 if t == "rot" else -1)) for t, x in kinds)))
    for j in range(1, (m + 1) // 2):
        q = m // gcd(j, m)
        size = _euler_phi(q) // 2
        values = tuple(Fraction(ramanujan_sum(q, x) if t == "rot" else 0) for t, x in kinds)
        out.append(Irrep(f"rho{j}", 2, values, size))
    return tuple(out)


def irrep(W: CoxeterGroup, label) -> Irrep:
    if W.kind == "A" and not isinstance(label, str):
        label = tuple(label)
    for V in irreducibles(W):
        if V.label == label:
            return V
    raise ValueError(f"unknown irreducible {label!r} of {W.name}")


def sign_dual_label(W: CoxeterGroup, label):
    """Label of V tensored with the sign character."""
    if W.kind == "A":
        return conjugate(tuple(label))
    return {"triv": "sign", "sign": "triv", "eps1": "eps2", "eps2": "eps1"}.get(label, label)


def class_sizes(W: CoxeterGroup) -> list[int]:
    return [len(cls) for cls in W.conjugacy_classes]


def sign_class_character(W: CoxeterGroup) -> tuple:
    return tuple(Fraction(W.sign(cls[0])) for cls in W.conjugacy_classes)


def inner_product(W: CoxeterGroup, a: Sequence, b: Sequence) -> Fraction:
    """(1/|W|) sum over classes; characters of Coxeter groups are real."""
    return sum((Fraction(n) * a[k] * b[k] for k, n in enumerate(class_sizes(W))), Fraction(0)) / W.order


def multiplicity_in(W: CoxeterGroup, module_character: Sequence, label) -> int:
    V = irrep(W, label)
    val = inner_product(W, module_character, V.orbit_character) / V.orbit_size
    if val.denominator != 1 or val < 0:
        raise ValueError(f"multiplicity of {label!r} came out as {val}")
    return int(val)


@lru_cache(maxsize=None)
def _ribbon_char(W: CoxeterGroup, I: tuple) -> tuple:
    return tuple(_ribbon(W, I).class_character())


@lru_cache(maxsize=None)
def _induced_char(W: CoxeterGroup, I: tuple) -> tuple:
    return tuple(_induced(W, I).class_character())


def ribbon_character(W: CoxeterGroup, I: Sequence[int]) -> tuple:
    return _ribbon_char(W, _subset(W, I))


def induced_character(W: CoxeterGroup, I: Sequence[int]) -> tuple:
    return _induced_char(W, _subset(W, I))


def w_kostka(W: CoxeterGroup, label, I: Sequence[int]) -> int:
    """Multiplicity of V in the induced module M_I."""
    return multiplicity_in(W, induced_character(W, I), label)


def small_w_kostka(W: CoxeterGroup, label, I: Sequence[int]) -> int:
    """Alternating sum of W-Kostka numbers over J inside I."""
    I = _subset(W, I)
    irrep(W, label)
    return sum(
        (-1) ** (len(I) - len(J)) * w_kostka(W, label, J)
        for J in _all_subsets(W) if _within(W, J, I)
    )


def small_w_kostka_ribbon(W: CoxeterGroup, label, I: Sequence[int]) -> int:
    """Multiplicity of V in the ribbon module R_I (the independent route)."""
    return multiplicity_in(W, ribbon_character(W, I), label)


def ribbon_sign_twist_check(W: CoxeterGroup) -> dict:
    eps = sign_class_character(W)
    failures = []
    for I in _all_subsets(W):
        twisted = tuple(x * e for x, e in zip(ribbon_character(W, I), eps))
        if twisted != ribbon_character(W, _comp(W, I)):
            failures.append(list(I))
    return {"check": "ribbon_sign_twist", "group": W.name, "passed": not failures, "failures": failures}


def small_w_kostka_table(W: CoxeterGroup) -> dict:
    """kappa_{V,I} for every irreducible V and subset I, by both routes."""
    table, agree = {}, True
    for V in irreducibles(W):
        for I in _all_subsets(W):
            alt = small_w_kostka(W, V.label, I)
            rib = small_w_kostka_ribbon(W, V.label, I)
            agree &= alt == rib
            table[(V.label, I)] = alt
    return {"table": table, "routes_agree": agree}


def reference_s3_descent_basis() -> dict:
    """The six descent-basis elements of S_3 written as signed word sums."""
    return {
        "1": {"1": 1, "s1": 1, "s2": 1, "s1s2": 1, "s2s1": 1, "s1s2s1": 1},
        "s1": {"1": -1, "s1": 1, "s2": -1, "s1s2": 1},
        "s2": {"1": -1, "s1": -1, "s2": 1, "s2s1": 1},
        "s1s2": {"1": -1, "s1": -1, "s1s2": 1, "s1s2s1": 1},
        "s2s1": {"1": -1, "s2": -1, "s2s1": 1, "s1s2s1": 1},
        "s1s2s1": {"1": -1, "s1": 1, "s2": 1, "s1s2": -1, "s2s1": -1, "s1s2s1": 1},
    }


def descent_basis_by_words(W: CoxeterGroup) -> dict:
    out = {}
    for w in range(W.order):
        d = descent_basis_elt(W, w)
        out[W.word_name(w)] = {W.word_name(v): int(x) for v, x in d.terms().items()}
    return out


def young_ribbon_symmetrizer(W: CoxeterGroup, I: Sequence[int]) -> GroupAlgebraElement:
    """Young symmetrizer of the semitic filling of ribbon(rho(I)) (type A only)."""
    from .symgroup import young_symmetrizer

    if W.kind != "A":
        raise ValueError("ribbon tableaux only make sense for type A")
    t = semitic_filling(ribbon(rho(I, W.rank)))
    y = young_symmetrizer(t)
    if y.group is not W:
        y = GroupAlgebraElement(W, y.coeffs)
    return y
