"""Quiver models of perverse sheaves on C^n with the coordinate stratification.

Two presentations are implemented:

* ``GGMSheaf``: spaces ``Phi(I)`` for ``I`` a subset of ``[n]`` with canonical
  maps ``u[(I, i)]: Phi(I - i) -> Phi(I)`` and variation maps
  ``v[(I, i)]: Phi(I) -> Phi(I - i)``.
* ``HyperbolicSheaf``: spaces ``E(C)`` on the 3^n sign vectors with, for every
  cover ``C < C'`` (``C'`` has one zero of ``C`` replaced by a sign),
  ``gamma[(C, C')]: E(C) -> E(C')`` and ``delta[(C, C')]: E(C') -> E(C)``.

Internally both are instances of one "mixed" quiver in which every coordinate
is either hyperbolic (positions -1, 0, +1) or GGM-like (positions 0 and 1,
where 1 means ``i`` belongs to ``I``).  The axioms split into a local part per
coordinate plus commutation of moves in different coordinates, and the
equivalences P and Q convert one coordinate at a time.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .exact_linalg import (
    ExactMatrix,
    block_diag,
    hstack,
    is_invertible,
    kernel_basis,
    kron,
    rank,
    rref,
    solve,
    spans_equal,
    vstack,
)
from .tableaux import complement, conjugate, partitions, small_kostka_syt, subsets, syt_count

HYP, GGM = "h", "g"


class SheafShapeError(ValueError):
    """A structure map does not have the size dictated by the stalks."""


class InvalidSheafError(ValueError):
    def __init__(self, report: dict):
        self.report = report
        v = report.get("violation") or {}
        super().__init__(f"invalid sheaf: {v.get('axiom')} at {v.get('where')}")


# ---------------------------------------------------------------------------
# index helpers

def subset_positions(I: Sequence[int], n: int) -> tuple:
    s = set(I)
    return tuple(int(i in s) for i in range(1, n + 1))


def positions_subset(p: Sequence[int]) -> tuple:
    return tuple(i + 1 for i, x in enumerate(p) if x)


def cells(n: int) -> list[tuple]:
    return list(product((-1, 0, 1), repeat=n))


def positive_cell(I: Sequence[int], n: int) -> tuple:
    """The cell ``C_I``: zero on ``I``, positive elsewhere."""
    s = set(I)
    return tuple(0 if i in s else 1 for i in range(1, n + 1))


def cell_covers(n: int) -> list[tuple]:
    """All pairs ``(C, C')`` with ``C'`` obtained by turning one zero of ``C`` into a sign."""
    out = []
    for c in cells(n):
        for k, x in enumerate(c):
            if x == 0:
                for e in (-1, 1):
                    out.append((c, c[:k] + (e,) + c[k + 1:]))
    return out


def ggm_arrows(n: int) -> list[tuple]:
    """All ``(I, i)`` with ``i`` in ``I``."""
    return [(I, i) for I in subsets(n) for i in I]


def _without(I: tuple, i: int) -> tuple:
    return tuple(x for x in I if x != i)


def format_cell(c: Sequence[int]) -> str:
    return "".join("+" if x > 0 else "-" if x < 0 else "0" for x in c)


def parse_cell(text: str, n: int) -> tuple:
    table = {"+": 1, "-": -1, "0": 0}
    if len(text) != n or any(ch not in table for ch in text):
        raise ValueError(f"bad cell key {text!r}: expected {n} characters from '+', '0', '-'")
    return tuple(table[ch] for ch in text)


def format_subset(I: Sequence[int]) -> str:
    return ",".join(str(i) for i in I)


def parse_subset(text: str, n: int) -> tuple:
    if text.strip() == "":
        return ()
    try:
        vals = [int(t) for t in text.split(",")]
    except ValueError:
        raise ValueError(f"bad subset key {text!r}") from None
    if len(set(vals)) != len(vals) or any(i < 1 or i > n for i in vals):
        raise ValueError(f"bad subset key {text!r}: members must be distinct and in 1..{n}")
    return tuple(sorted(vals))


# ---------------------------------------------------------------------------
# public sheaf types

@dataclass(frozen=True)
class GGMSheaf:
    n: int
    stalks: dict
    u: dict = field(default_factory=dict)
    v: dict = field(default_factory=dict)

    @classmethod
    def build(cls, n: int, stalks: dict, u: dict | None = None, v: dict | None = None) -> "GGMSheaf":
        """Fill in zero stalks and zero maps for everything not given."""
        dims = {I: int(stalks.get(I, 0)) for I in subsets(n)}
        u, v = dict(u or {}), dict(v or {})
        for I, i in ggm_arrows(n):
            J = _without(I, i)
            u.setdefault((I, i), ExactMatrix.zeros(dims[I], dims[J]))
            v.setdefault((I, i), ExactMatrix.zeros(dims[J], dims[I]))
        return cls(n, dims, {k: u[k] for k in ggm_arrows(n)}, {k: v[k] for k in ggm_arrows(n)})

    def dim(self, I) -> int:
        return self.stalks[tuple(I)]

    def dims(self) -> list[int]:
        return [self.stalks[I] for I in subsets(self.n)]

    def is_amonodromic(self) -> bool:
        return all(m.is_zero() for m in self.u.values()) and all(m.is_zero() for m in self.v.values())


@dataclass(frozen=True)
class HyperbolicSheaf:
    n: int
    stalks: dict
    gamma: dict = field(default_factory=dict)
    delta: dict = field(default_factory=dict)

    @classmethod
    def build(cls, n: int, stalks: dict, gamma: dict | None = None, delta: dict | None = None) -> "HyperbolicSheaf":
        dims = {c: int(stalks.get(c, 0)) for c in cells(n)}
        gamma, delta = dict(gamma or {}), dict(delta or {})
        for c, c2 in cell_covers(n):
            gamma.setdefault((c, c2), ExactMatrix.zeros(dims[c2], dims[c]))
            delta.setdefault((c, c2), ExactMatrix.zeros(dims[c], dims[c2]))
        keys = cell_covers(n)
        return cls(n, dims, {k: gamma[k] for k in keys}, {k: delta[k] for k in keys})

    def dim(self, c) -> int:
        return self.stalks[tuple(c)]

    def positive_dims(self) -> dict:
        return {I: self.stalks[positive_cell(I, self.n)] for I in subsets(self.n)}

    def gamma_path(self, lo: tuple, hi: tuple) -> ExactMatrix:
        """Composite gamma from ``lo`` up to ``hi`` (``lo <= hi``), coordinates filled left to right."""
        m = ExactMatrix.identity(self.stalks[lo])
        cur = lo
        for k in range(self.n):
            if cur[k] != hi[k]:
                if cur[k] != 0:
                    raise ValueError(f"{format_cell(lo)} is not below {format_cell(hi)}")
                nxt = cur[:k] + (hi[k],) + cur[k + 1:]
                m = self.gamma[(cur, nxt)] @ m
                cur = nxt
        return m

    def delta_path(self, lo: tuple, hi: tuple) -> ExactMatrix:
        """Composite delta from ``E(hi)`` down to ``E(lo)``."""
        m = ExactMatrix.identity(self.stalks[hi])
        cur = hi
        for k in range(self.n):
            if cur[k] != lo[k]:
                if lo[k] != 0:
                    raise ValueError(f"{format_cell(lo)} is not below {format_cell(hi)}")
                nxt = cur[:k] + (0,) + cur[k + 1:]
                m = self.delta[(nxt, cur)] @ m
                cur = nxt
        return m


# ---------------------------------------------------------------------------
# mixed quivers

def _moves(kind: str, a: int) -> tuple:
    if kind == HYP:
        return (-1, 1) if a == 0 else (0,)
    return (1 - a,)


def _all_positions(kinds: Sequence[str]) -> list[tuple]:
    return list(product(*[(-1, 0, 1) if k == HYP else (0, 1) for k in kinds]))


def _set(p: tuple, k: int, a: int) -> tuple:
    return p[:k] + (a,) + p[k + 1:]


def _arrow_name(kind: str, a: int) -> str:
    if kind == HYP:
        return "gamma" if a == 0 else "delta"
    return "u" if a == 0 else "v"


@dataclass
class _Quiver:
    kinds: tuple
    dims: dict
    maps: dict  # (src position, dst position) -> ExactMatrix

    def arrow(self, src: tuple, dst: tuple) -> ExactMatrix:
        return self.maps[(src, dst)]


def _ggm_quiver(G: GGMSheaf) -> _Quiver:
    n = G.n
    dims = {subset_positions(I, n): d for I, d in G.stalks.items()}
    maps = {}
    for (I, i), m in G.u.items():
        maps[(subset_positions(_without(I, i), n), subset_positions(I, n))] = m
    for (I, i), m in G.v.items():
        maps[(subset_positions(I, n), subset_positions(_without(I, i), n))] = m
    return _Quiver((GGM,) * n, dims, maps)


def _quiver_ggm(q: _Quiver) -> GGMSheaf:
    n = len(q.kinds)
    stalks = {positions_subset(p): d for p, d in q.dims.items()}
    u, v = {}, {}
    for I, i in ggm_arrows(n):
        hi, lo = subset_positions(I, n), subset_positions(_without(I, i), n)
        u[(I, i)] = q.maps[(lo, hi)]
        v[(I, i)] = q.maps[(hi, lo)]
    return GGMSheaf(n, {I: stalks[I] for I in subsets(n)}, u, v)


def _hyp_quiver(E: HyperbolicSheaf) -> _Quiver:
    maps = {}
    for (c, c2), m in E.gamma.items():
        maps[(c, c2)] = m
    for (c, c2), m in E.delta.items():
        maps[(c2, c)] = m
    return _Quiver((HYP,) * E.n, dict(E.stalks), maps)


def _quiver_hyp(q: _Quiver) -> HyperbolicSheaf:
    n = len(q.kinds)
    gamma, delta = {}, {}
    for c, c2 in cell_covers(n):
        gamma[(c, c2)] = q.maps[(c, c2)]
        delta[(c, c2)] = q.maps[(c2, c)]
    return HyperbolicSheaf(n, {c: q.dims[c] for c in cells(n)}, gamma, delta)


def _check_shapes(q: _Quiver) -> None:
    for p in _all_positions(q.kinds):
        if p not in q.dims:
            raise SheafShapeError(f"missing stalk at {p}")
        for k, kind in enumerate(q.kinds):
            for a in _moves(kind, p[k]):
                dst = _set(p, k, a)
                m = q.maps.get((p, dst))
                if m is None:
                    raise SheafShapeError(f"missing {_arrow_name(kind, p[k])} map {p} -> {dst}")
                if m.shape != (q.dims[dst], q.dims[p]):
                    raise SheafShapeError(
                        f"{_arrow_name(kind, p[k])} map {p} -> {dst} has shape {m.shape}, "
                        f"expected {(q.dims[dst], q.dims[p])}"
                    )


def _validate_quiver(q: _Quiver, where) -> dict:
    """Local axioms per coordinate, then commutation of moves in distinct coordinates."""
    _check_shapes(q)
    n = len(q.kinds)
    positions = _all_positions(q.kinds)
    local = squares = 0
    monodromy_agree = True
    for k, kind in enumerate(q.kinds):
        for p in positions:
            if p[k] != 0:
                continue
            local += 1
            if kind == GGM:
                phi = _set(p, k, 1)
                u, v = q.arrow(p, phi), q.arrow(phi, p)
                on_psi = is_invertible(ExactMatrix.identity(q.dims[p]) + v @ u)
                on_phi = is_invertible(ExactMatrix.identity(q.dims[phi]) + u @ v)
                monodromy_agree &= on_psi == on_phi
                if not (on_psi and on_phi):
                    return _failure("monodromy_invertible", where(phi), k + 1,
                                    {"1+vu_invertible": on_psi, "1+uv_invertible": on_phi}, local, squares)
            else:
                for e in (-1, 1):
                    side = _set(p, k, e)
                    g, d = q.arrow(p, side), q.arrow(side, p)
                    if g @ d != ExactMatrix.identity(q.dims[side]):
                        return _failure("idempotence", where(side), k + 1, {}, local, squares)
                    other = _set(p, k, -e)
                    phi = q.arrow(p, other) @ d
                    if not is_invertible(phi):
                        return _failure("weak_invertibility", [where(side), where(other)], k + 1,
                                        {"rank": rank(phi), "shape": list(phi.shape)}, local, squares)
    for k in range(n):
        for l in range(k + 1, n):
            for p in positions:
                for a in _moves(q.kinds[k], p[k]):
                    for b in _moves(q.kinds[l], p[l]):
                        pa, pb = _set(p, k, a), _set(p, l, b)
                        pab = _set(pa, l, b)
                        squares += 1
                        left = q.arrow(pa, pab) @ q.arrow(p, pa)
                        right = q.arrow(pb, pab) @ q.arrow(p, pb)
                        if left != right:
                            names = {_arrow_name(q.kinds[k], p[k]), _arrow_name(q.kinds[l], p[l])}
                            axiom = f"{names.pop()}_functoriality" if len(names) == 1 else "mixed_commutativity"
                            return _failure(axiom, [where(p), where(pab)], [k + 1, l + 1], {}, local, squares)
    return {
        "passed": True,
        "violation": None,
        "local_checks": local,
        "commuting_squares": squares,
        "monodromy_tests_agree": monodromy_agree,
    }


def _failure(axiom, where, coordinate, extra, local, squares) -> dict:
    return {
        "passed": False,
        "violation": {"axiom": axiom, "where": where, "coordinate": coordinate, **extra},
        "local_checks": local,
        "commuting_squares": squares,
        "monodromy_tests_agree": True,
    }


def validate_ggm(G: GGMSheaf) -> dict:
    """Axiom report; raises SheafShapeError on size mismatches before checking anything."""
    n = G.n
    report = _validate_quiver(_ggm_quiver(G), lambda p: format_subset(positions_subset(p)))
    return {"kind": "ggm", "n": n, **report}


def validate_hyp(E: HyperbolicSheaf) -> dict:
    report = _validate_quiver(_hyp_quiver(E), format_cell)
    return {"kind": "hyperbolic", "n": E.n, **report}


def _require_ggm(G: GGMSheaf) -> None:
    r = validate_ggm(G)
    if not r["passed"]:
        raise InvalidSheafError(r)


def _require_hyp(E: HyperbolicSheaf) -> None:
    r = validate_hyp(E)
    if not r["passed"]:
        raise InvalidSheafError(r)


# ---------------------------------------------------------------------------
# Fourier transform

def fourier_ggm(G: GGMSheaf, check: bool = True) -> GGMSheaf:
    """``Phi'(I) = Phi(complement of I)``, ``u' = -v`` and ``v' = u (1 + v u)^{-1}``."""
    if check:
        _require_ggm(G)
    n = G.n
    stalks = {I: G.stalks[complement(I, n)] for I in subsets(n)}
    u, v = {}, {}
    for K, i in ggm_arrows(n):
        L = tuple(sorted(complement(K, n) + (i,)))
        uu, vv = G.u[(L, i)], G.v[(L, i)]
        u[(K, i)] = -vv
        t = ExactMatrix.identity(uu.cols) + vv @ uu
        v[(K, i)] = uu @ t.inverse()
    return GGMSheaf(n, stalks, u, v)


# ---------------------------------------------------------------------------
# Q: GGM -> hyperbolic

def _q_step(q: _Quiver, k: int, labels: dict) -> tuple[_Quiver, dict]:
    """Replace GGM coordinate ``k`` by a hyperbolic one (E+ = E- = Psi, E0 = Phi + Psi)."""
    kinds = _set(q.kinds, k, HYP)
    dims, maps, new_labels = {}, {}, {}
    for p in _all_positions(kinds):
        psi = _set(p, k, 0)
        if p[k] == 0:
            phi = _set(p, k, 1)
            dims[p] = q.dims[phi] + q.dims[psi]
            new_labels[p] = labels[phi] + labels[psi]
        else:
            dims[p] = q.dims[psi]
            new_labels[p] = list(labels[psi])
    for p in _all_positions(kinds):
        if p[k] != 0:
            continue
        phi, psi = _set(p, k, 1), _set(p, k, 0)
        a, b = q.dims[phi], q.dims[psi]
        u, v = q.arrow(psi, phi), q.arrow(phi, psi)
        one = ExactMatrix.identity(b)
        minus, plus = _set(p, k, -1), _set(p, k, 1)
        maps[(p, minus)] = hstack([ExactMatrix.zeros(b, a), one], rows=b)
        maps[(minus, p)] = vstack([ExactMatrix.zeros(a, b), one], cols=b)
        maps[(p, plus)] = hstack([-v, one], rows=b)
        maps[(plus, p)] = vstack([u, one + v @ u], cols=b)
    for p in _all_positions(kinds):
        for j, kind in enumerate(kinds):
            if j == k:
                continue
            for a in _moves(kind, p[j]):
                dst = _set(p, j, a)
                src_psi, dst_psi = _set(p, k, 0), _set(dst, k, 0)
                if p[k] == 0:
                    src_phi, dst_phi = _set(p, k, 1), _set(dst, k, 1)
                    maps[(p, dst)] = block_diag([q.arrow(src_phi, dst_phi), q.arrow(src_psi, dst_psi)])
                else:
                    maps[(p, dst)] = q.arrow(src_psi, dst_psi)
    return _Quiver(kinds, dims, maps), new_labels


def _q_with_labels(G: GGMSheaf) -> tuple[HyperbolicSheaf, dict]:
    q = _ggm_quiver(G)
    labels = {p: [positions_subset(p)] * d for p, d in q.dims.items()}
    for k in range(G.n):
        q, labels = _q_step(q, k, labels)
    return _quiver_hyp(q), labels


def q_equivalence(G: GGMSheaf, check: bool = True) -> HyperbolicSheaf:
    """Hyperbolic model of a GGM sheaf, built one coordinate at a time (coordinate 1 first)."""
    if check:
        _require_ggm(G)
    return _q_with_labels(G)[0]


def takeuchi_check(G: GGMSheaf, E: HyperbolicSheaf) -> bool:
    """``dim E(C_I)`` equals the sum of ``dim Phi(J)`` over ``J`` inside ``I``."""
    n = G.n
    for I in subsets(n):
        want = sum(G.stalks[J] for J in subsets(n) if set(J) <= set(I))
        if E.stalks[positive_cell(I, n)] != want:
            return False
    return True


# ---------------------------------------------------------------------------
# P: hyperbolic -> GGM

def _restrict(K: ExactMatrix, free: list[int], x: ExactMatrix, what: str) -> ExactMatrix:
    """Coordinates of the columns of ``x`` in the kernel basis ``K`` (identity on rows ``free``)."""
    coords = x.select_rows(free)
    if K @ coords != x:
        raise ArithmeticError(f"{what} does not preserve the kernel of gamma_-")
    return coords


def _kernel_matrix(m: ExactMatrix) -> tuple[ExactMatrix, list[int]]:
    # kernel_basis puts an identity block on the free columns of the rref
    _, pivots = rref(m)
    free = [j for j in range(m.cols) if j not in set(pivots)]
    K = ExactMatrix.from_columns(kernel_basis(m), rows=m.cols)
    return K, free


def _p_step(q: _Quiver, k: int, embeds: dict) -> tuple[_Quiver, dict]:
    """Replace hyperbolic coordinate ``k``: Psi = E+, Phi = Ker gamma_- inside E0."""
    kinds = _set(q.kinds, k, GGM)
    kern = {}
    for p in _all_positions(q.kinds):
        if p[k] == 0:
            kern[p] = _kernel_matrix(q.arrow(p, _set(p, k, -1)))
    dims, maps, new_embeds = {}, {}, {}
    for p in _all_positions(kinds):
        zero, plus = _set(p, k, 0), _set(p, k, 1)
        if p[k] == 1:
            K, _ = kern[zero]
            dims[p] = K.cols
            new_embeds[p] = embeds[zero] @ K
        else:
            dims[p] = q.dims[plus]
            new_embeds[p] = embeds[plus]
    for p in _all_positions(kinds):
        if p[k] != 0:
            continue
        zero, plus, minus = p, _set(p, k, 1), _set(p, k, -1)
        phi = _set(p, k, 1)
        K, free = kern[zero]
        g_plus, d_plus = q.arrow(zero, plus), q.arrow(plus, zero)
        g_minus, d_minus = q.arrow(zero, minus), q.arrow(minus, zero)
        maps[(phi, p)] = -(g_plus @ K)
        proj = ExactMatrix.identity(q.dims[zero]) - d_minus @ g_minus
        maps[(p, phi)] = _restrict(K, free, proj @ d_plus, "projected delta_+")
    for p in _all_positions(kinds):
        for j, kind in enumerate(kinds):
            if j == k:
                continue
            for a in _moves(kind, p[j]):
                dst = _set(p, j, a)
                if p[k] == 1:
                    src0, dst0 = _set(p, k, 0), _set(dst, k, 0)
                    K_src, _ = kern[src0]
                    K_dst, free = kern[dst0]
                    maps[(p, dst)] = _restrict(K_dst, free, q.arrow(src0, dst0) @ K_src, "a structure map")
                else:
                    maps[(p, dst)] = q.arrow(_set(p, k, 1), _set(dst, k, 1))
    return _Quiver(kinds, dims, maps), new_embeds


def _p_with_embeddings(E: HyperbolicSheaf) -> tuple[GGMSheaf, dict]:
    q = _hyp_quiver(E)
    embeds = {p: ExactMatrix.identity(d) for p, d in q.dims.items()}
    for k in range(E.n):
        q, embeds = _p_step(q, k, embeds)
    return _quiver_ggm(q), {positions_subset(p): m for p, m in embeds.items()}


def p_equivalence(E: HyperbolicSheaf, check: bool = True) -> GGMSheaf:
    """GGM model of a hyperbolic sheaf, built one coordinate at a time (coordinate 1 first)."""
    if check:
        _require_hyp(E)
    return _p_with_embeddings(E)[0]


def ggm_cell(I: Sequence[int], n: int) -> tuple:
    """Hyperbolic cell in which ``Phi(I)`` is realised by P: zero on ``I``, positive elsewhere."""
    return positive_cell(I, n)


def round_trip_intertwiner(G: GGMSheaf) -> dict:
    """Compare ``G`` with ``P(Q(G))`` through the maps recorded during both recursions.

    Both ``G(I)`` (as a direct summand from Q) and ``P(Q(G))(I)`` (as a
    subspace from P) sit inside the same hyperbolic stalk ``E(C_I)``; solving
    ``embed_P(I) h(I) = summand_Q(I)`` gives the comparison map ``h(I)``.
    """
    _require_ggm(G)
    E, labels = _q_with_labels(G)
    G2, embeds = _p_with_embeddings(E)
    n = G.n
    h, problems = {}, []
    for I in subsets(n):
        c = ggm_cell(I, n)
        lab = labels[c]
        cols = [j for j, b in enumerate(lab) if b == I]
        J = ExactMatrix.from_sparse(len(lab), len(cols), {(j, t): 1 for t, j in enumerate(cols)})
        x = solve(embeds[I], J)
        if x is None or not is_invertible(x):
            problems.append({"I": format_subset(I), "reason": "no invertible comparison map"})
            continue
        h[I] = x
    commutes = True
    if not problems:
        for I, i in ggm_arrows(n):
            Jm = _without(I, i)
            if h[I] @ G.u[(I, i)] != G2.u[(I, i)] @ h[Jm]:
                commutes = False
                problems.append({"arrow": f"{format_subset(I)}>{i}", "map": "u"})
            if h[Jm] @ G.v[(I, i)] != G2.v[(I, i)] @ h[I]:
                commutes = False
                problems.append({"arrow": f"{format_subset(I)}>{i}", "map": "v"})
    return {
        "dims_preserved": G.stalks == G2.stalks,
        "invertible": len(h) == len(G.stalks),
        "commutes": commutes and not problems,
        "passed": not problems and G.stalks == G2.stalks,
        "problems": problems,
        "intertwiner": h,
        "round_trip": G2,
    }


# ---------------------------------------------------------------------------
# amonodromic objects

def amonodromic_summands(c: Sequence[int]) -> list[tuple]:
    """Subsets ``J`` contributing to ``E(c)`` in the amonodromic model, in block order."""
    zeros = {i + 1 for i, x in enumerate(c) if x == 0}
    return [J for J in subsets(len(c)) if set(J) <= zeros]


def amonodromic_q(G: GGMSheaf) -> HyperbolicSheaf:
    """Direct model: ``E(C) = sum of Phi(J)`` over ``J`` inside the zero set of ``C``.

    gamma forgets the summands that no longer fit, delta includes them.
    """
    if not G.is_amonodromic():
        raise ValueError("amonodromic_q needs u = v = 0")
    n = G.n
    summands = {c: amonodromic_summands(c) for c in cells(n)}
    stalks = {c: sum(G.stalks[J] for J in summands[c]) for c in cells(n)}
    gamma, delta = {}, {}
    for c, c2 in cell_covers(n):
        items, r0 = {}, 0
        offsets, pos = {}, 0
        for J in summands[c]:
            offsets[J] = pos
            pos += G.stalks[J]
        for J in summands[c2]:
            for t in range(G.stalks[J]):
                items[(r0 + t, offsets[J] + t)] = 1
            r0 += G.stalks[J]
        g = ExactMatrix.from_sparse(stalks[c2], stalks[c], items)
        gamma[(c, c2)] = g
        delta[(c, c2)] = g.transpose()
    return HyperbolicSheaf(n, stalks, gamma, delta)


def _column_span(m: ExactMatrix) -> list[tuple]:
    return [m.column(j) for j in range(m.cols)]


def is_amonodromic_hyp(E: HyperbolicSheaf) -> bool:
    """Kernel and image conditions for every ``C <= C'`` against the reflected cell."""
    n = E.n
    for c2 in cells(n):
        signed = [k for k, x in enumerate(c2) if x != 0]
        for mask in product((0, 1), repeat=len(signed)):
            if not any(mask):
                continue
            c, refl = list(c2), list(c2)
            for k, bit in zip(signed, mask):
                if bit:
                    c[k] = 0
                    refl[k] = -c2[k]
            c, refl = tuple(c), tuple(refl)
            dim = E.stalks[c]
            if not spans_equal(kernel_basis(E.gamma_path(c, c2)), kernel_basis(E.gamma_path(c, refl)), dim):
                return False
            if not spans_equal(_column_span(E.delta_path(c, c2)), _column_span(E.delta_path(c, refl)), dim):
                return False
    return True


def amonodromic_p(E: HyperbolicSheaf) -> GGMSheaf:
    """``Phi(I)`` = intersection of the kernels of gamma from ``C_I`` to the cells just above it."""
    n = E.n
    stalks = {}
    for I in subsets(n):
        c = positive_cell(I, n)
        blocks = [E.gamma[(c, positive_cell(_without(I, i), n))] for i in I]
        if not blocks:
            stalks[I] = E.stalks[c]
        else:
            stalks[I] = E.stalks[c] - rank(vstack(blocks, cols=E.stalks[c]))
    return GGMSheaf.build(n, stalks)


# ---------------------------------------------------------------------------
# constructions for test corpora

def ggm_external_product(factors: Sequence[tuple]) -> GGMSheaf:
    """External product of rank-one GGM data ``(u, v)`` with ``u: Psi -> Phi``, ``v: Phi -> Psi``.

    ``Phi(I)`` is the tensor product over coordinates of ``Phi_k`` (k in I) or
    ``Psi_k`` (k not in I); each structure map acts in its own tensor slot.
    """
    n = len(factors)
    shapes = [(u.rows, u.cols) for u, _ in factors]  # (dim Phi, dim Psi)

    def slot_dim(k, bit):
        return shapes[k][0] if bit else shapes[k][1]

    stalks = {}
    for I in subsets(n):
        p = subset_positions(I, n)
        d = 1
        for k in range(n):
            d *= slot_dim(k, p[k])
        stalks[I] = d
    u, v = {}, {}
    for I, i in ggm_arrows(n):
        p = subset_positions(I, n)
        mats_u, mats_v = [], []
        for k in range(n):
            if k == i - 1:
                mats_u.append(factors[k][0])
                mats_v.append(factors[k][1])
            else:
                ident = ExactMatrix.identity(slot_dim(k, p[k]))
                mats_u.append(ident)
                mats_v.append(ident)
        mu, mv = mats_u[0], mats_v[0]
        for a, b in zip(mats_u[1:], mats_v[1:]):
            mu, mv = kron(mu, a), kron(mv, b)
        u[(I, i)], v[(I, i)] = mu, mv
    return GGMSheaf(n, stalks, u, v)


def ggm_direct_sum(A: GGMSheaf, B: GGMSheaf) -> GGMSheaf:
    if A.n != B.n:
        raise ValueError("direct sum of sheaves of different rank")
    stalks = {I: A.stalks[I] + B.stalks[I] for I in subsets(A.n)}
    u = {k: block_diag([A.u[k], B.u[k]]) for k in A.u}
    v = {k: block_diag([A.v[k], B.v[k]]) for k in A.v}
    return GGMSheaf(A.n, stalks, u, v)


def ggm_change_basis(G: GGMSheaf, bases: dict) -> GGMSheaf:
    """Transport structure along invertible maps ``bases[I]: Phi(I) -> Phi'(I)``."""
    inv = {I: m.inverse() for I, m in bases.items()}
    u, v = {}, {}
    for I, i in ggm_arrows(G.n):
        J = _without(I, i)
        u[(I, i)] = bases[I] @ G.u[(I, i)] @ inv[J]
        v[(I, i)] = bases[J] @ G.v[(I, i)] @ inv[I]
    return GGMSheaf(G.n, dict(G.stalks), u, v)


def _random_matrix(rng: random.Random, rows: int, cols: int, lo: int = -2, hi: int = 2) -> ExactMatrix:
    return ExactMatrix.from_rows([[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)], cols=cols)


def _random_unimodular(rng: random.Random, d: int) -> ExactMatrix:
    lower = ExactMatrix.from_sparse(d, d, {(i, j): (1 if i == j else rng.randint(-1, 1)) for i in range(d) for j in range(i + 1)})
    upper = ExactMatrix.from_sparse(d, d, {(i, j): (1 if i == j else rng.randint(-1, 1)) for i in range(d) for j in range(i, d)})
    return lower @ upper


def random_rank_one(rng: random.Random, phi: int, psi: int) -> tuple:
    """Random ``(u, v)`` on ``Psi = Q^psi``, ``Phi = Q^phi`` with ``1 + v u`` invertible."""
    while True:
        u = _random_matrix(rng, phi, psi)
        v = _random_matrix(rng, psi, phi)
        if is_invertible(ExactMatrix.identity(psi) + v @ u):
            return u, v


def random_product_ggm(rng: random.Random, n: int, max_dim: int = 4) -> GGMSheaf:
    while True:
        dims = [(rng.randint(0, 2), rng.randint(0, 2)) for _ in range(n)]
        top = 1
        for a, b in dims:
            top *= max(a, b)
        if 0 < top <= max_dim:
            break
    return ggm_external_product([random_rank_one(rng, a, b) for a, b in dims])


def random_amonodromic_ggm(rng: random.Random, n: int, max_dim: int = 4) -> GGMSheaf:
    return GGMSheaf.build(n, {I: rng.randint(0, min(2, max_dim)) for I in subsets(n)})


def random_ggm_corpus(seed: int = 0, count: int = 60, max_n: int = 3, max_dim: int = 4) -> list[GGMSheaf]:
    """Valid GGM sheaves: external products, their direct sums and amonodromic ones,
    each transported along a random integral change of basis."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(1, max_n)
        kind = len(out) % 4
        if kind == 3:
            G = random_amonodromic_ggm(rng, n, max_dim)
        elif kind == 2:
            A = random_product_ggm(rng, n, max_dim)
            B = random_product_ggm(rng, n, max_dim)
            G = ggm_direct_sum(A, B)
            if max(G.stalks.values()) > max_dim:
                continue
        else:
            G = random_product_ggm(rng, n, max_dim)
        if kind != 3:
            G = ggm_change_basis(G, {I: _random_unimodular(rng, d) for I, d in G.stalks.items()})
        out.append(G)
    return out


# ---------------------------------------------------------------------------
# JSON

def _matrix_json(m: ExactMatrix):
    return m.to_json() if m.rows else []


def _matrix_from(data, rows: int, cols: int, what: str) -> ExactMatrix:
    if not isinstance(data, list) or any(not isinstance(r, list) for r in data):
        raise ValueError(f"{what}: matrix must be a list of rows")
    if rows == 0 and data == []:
        return ExactMatrix.zeros(0, cols)
    if len(data) != rows or any(len(r) != cols for r in data):
        got = (len(data), len(data[0]) if data else 0)
        raise SheafShapeError(f"{what}: expected {rows}x{cols}, got {got[0]}x{got[1]}")
    try:
        return ExactMatrix.from_json(data, rows=rows, cols=cols)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ValueError(f"{what}: bad entry ({exc})") from None


def _check_n(data) -> int:
    n = data.get("n")
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"bad rank n={n!r}")
    return n


def _stalk_dims(raw: dict, parse, what: str) -> dict:
    out = {}
    for key, d in raw.items():
        k = parse(key)
        if not isinstance(d, int) or d < 0:
            raise ValueError(f"{what} {key!r}: bad dimension {d!r}")
        out[k] = d
    return out


def ggm_to_json(G: GGMSheaf) -> dict:
    return {
        "n": G.n,
        "stalks": {format_subset(I): G.stalks[I] for I in subsets(G.n)},
        "u": {f"{format_subset(I)}>{i}": _matrix_json(G.u[(I, i)]) for I, i in ggm_arrows(G.n)},
        "v": {f"{format_subset(I)}>{i}": _matrix_json(G.v[(I, i)]) for I, i in ggm_arrows(G.n)},
    }


def _parse_arrow(key: str, n: int) -> tuple:
    if ">" not in key:
        raise ValueError(f"bad arrow key {key!r}: expected 'I>i'")
    left, right = key.rsplit(">", 1)
    I = parse_subset(left, n)
    try:
        i = int(right)
    except ValueError:
        raise ValueError(f"bad arrow key {key!r}") from None
    if i not in I:
        raise ValueError(f"bad arrow key {key!r}: {i} is not in the subset")
    return I, i


def ggm_from_json(data: dict) -> GGMSheaf:
    n = _check_n(data)
    unknown = set(data) - {"n", "stalks", "u", "v"}
    if unknown:
        raise ValueError(f"unknown field {sorted(unknown)[0]!r}")
    dims = _stalk_dims(data.get("stalks", {}), lambda k: parse_subset(k, n), "stalk")
    dims = {I: dims.get(I, 0) for I in subsets(n)}
    maps = {"u": {}, "v": {}}
    for name in ("u", "v"):
        for key, m in data.get(name, {}).items():
            I, i = _parse_arrow(key, n)
            J = _without(I, i)
            rows, cols = (dims[I], dims[J]) if name == "u" else (dims[J], dims[I])
            maps[name][(I, i)] = _matrix_from(m, rows, cols, f"{name}[{key}]")
    return GGMSheaf.build(n, dims, maps["u"], maps["v"])


def hyp_to_json(E: HyperbolicSheaf) -> dict:
    keys = cell_covers(E.n)
    return {
        "n": E.n,
        "stalks": {format_cell(c): E.stalks[c] for c in cells(E.n)},
        "gamma": {f"{format_cell(c)}<{format_cell(c2)}": _matrix_json(E.gamma[(c, c2)]) for c, c2 in keys},
        "delta": {f"{format_cell(c)}<{format_cell(c2)}": _matrix_json(E.delta[(c, c2)]) for c, c2 in keys},
    }


def hyp_from_json(data: dict) -> HyperbolicSheaf:
    n = _check_n(data)
    unknown = set(data) - {"n", "stalks", "gamma", "delta"}
    if unknown:
        raise ValueError(f"unknown field {sorted(unknown)[0]!r}")
    dims = _stalk_dims(data.get("stalks", {}), lambda k: parse_cell(k, n), "stalk")
    dims = {c: dims.get(c, 0) for c in cells(n)}
    covers = set(cell_covers(n))
    maps = {"gamma": {}, "delta": {}}
    for name in ("gamma", "delta"):
        for key, m in data.get(name, {}).items():
            if key.count("<") != 1:
                raise ValueError(f"bad cover key {key!r}: expected 'C<C'")
            a, b = key.split("<")
            c, c2 = parse_cell(a, n), parse_cell(b, n)
            if (c, c2) not in covers:
                raise ValueError(f"bad cover key {key!r}: not a cover relation")
            rows, cols = (dims[c2], dims[c]) if name == "gamma" else (dims[c], dims[c2])
            maps[name][(c, c2)] = _matrix_from(m, rows, cols, f"{name}[{key}]")
    return HyperbolicSheaf.build(n, dims, maps["gamma"], maps["delta"])


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Kostka sheaf

@dataclass(frozen=True)
class MultiplicityGGM:
    """Amonodromic GGM sheaf with values in representations of S_{n+1}.

    ``multiplicities[I][lam]`` is the multiplicity of the irreducible ``V_lam``
    in ``Phi(I)``; all structure maps are zero.
    """

    n: int
    multiplicities: dict

    def dim(self, I) -> int:
        return sum(syt_count(lam) * k for lam, k in self.multiplicities[tuple(I)].items())

    def total_dim(self) -> int:
        return sum(self.dim(I) for I in subsets(self.n))

    def fourier(self) -> "MultiplicityGGM":
        return MultiplicityGGM(self.n, {I: dict(self.multiplicities[complement(I, self.n)]) for I in subsets(self.n)})


def kostka_sheaf(n: int) -> MultiplicityGGM:
    """``Phi(I)`` contains ``V_lam`` exactly ``kappa_{lam, I}`` times."""
    if n < 0:
        raise ValueError("n must be non-negative")
    lams = partitions(n + 1)
    return MultiplicityGGM(n, {I: {lam: small_kostka_syt(lam, I, n) for lam in lams} for I in subsets(n)})


def _module_character(M, m: int) -> tuple:
    from .symgroup import irreducible_character, regular_character, sign_character, trivial_character

    if isinstance(M, str):
        table = {"trivial": trivial_character, "sign": sign_character, "regular": regular_character}
        if M not in table:
            raise ValueError(f"unknown module {M!r}; use trivial, sign, regular or a partition")
        return table[M](m)
    lam = tuple(M)
    if sum(lam) != m:
        raise ValueError(f"{lam} is not a partition of {m}")
    return irreducible_character(lam)


def ft_kostka_check(n: int, M="trivial") -> dict:
    """Compare, stalk by stalk, the Fourier transform of ``M (x) Kostka sheaf``
    with ``(M (x) sign) (x) Kostka sheaf``, as multiplicity vectors."""
    from .symgroup import character_product, compose_character, decompose, sign_character

    m = n + 1
    chi_M = _module_character(M, m)
    eps = sign_character(m)
    K = kostka_sheaf(n)
    FK = K.fourier()
    failures = []
    symmetric = True
    for I in subsets(n):
        Ibar = complement(I, n)
        for lam in partitions(m):
            if K.multiplicities[I][lam] != K.multiplicities[Ibar][conjugate(lam)]:
                symmetric = False
        left = decompose(character_product(chi_M, compose_character(FK.multiplicities[I], m)), m)
        right = decompose(
            character_product(character_product(chi_M, eps), compose_character(K.multiplicities[I], m)), m
        )
        if left != right:
            lam = next(l for l in partitions(m) if left[l] != right[l])
            failures.append({"I": format_subset(I), "lambda": list(lam), "ft_side": left[lam], "twisted_side": right[lam]})
    return {
        "check": "ft_kostka",
        "n": n,
        "module": M if isinstance(M, str) else list(M),
        "kappa_symmetry": symmetric,
        "passed": symmetric and not failures,
        "failures": failures,
    }
