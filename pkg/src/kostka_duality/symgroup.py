"""Characters of the symmetric group S_m and module multiplicities.

A character vector is a tuple of Fractions indexed by cycle types, which are
ordered like ``tableaux.partitions(m)`` (lexicographically decreasing, so the
identity class ``(1,...,1)`` comes last).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import factorial
from typing import Callable, Hashable, Sequence

from .groups import CoxeterGroup, GroupAlgebraElement, Perm, Submodule, compose, cycle_type, perm_sign, symmetric_group
from .tableaux import Tableau, check_partition, conjugate, partitions


def class_order(m: int) -> tuple:
    return partitions(m)


def class_representative(mu: Sequence[int]) -> Perm:
    """Permutation with cycles (0 1 .. mu_1-1)(mu_1 ..) ..."""
    m = sum(mu)
    p = list(range(m))
    start = 0
    for length in mu:
        for k in range(length):
            p[start + k] = start + (k + 1) % length
        start += length
    return tuple(p)


def centralizer_order(mu: Sequence[int]) -> int:
    z = 1
    for part in set(mu):
        mult = list(mu).count(part)
        z *= part ** mult * factorial(mult)
    return z


def class_size(mu: Sequence[int]) -> int:
    return factorial(sum(mu)) // centralizer_order(mu)


@lru_cache(maxsize=None)
def _mn(lam: tuple, mu: tuple) -> int:
    if not mu:
        return 1 if not lam else 0
    r, rest = mu[0], mu[1:]
    k = len(lam)
    beta = [lam[i] + (k - 1 - i) for i in range(k)]
    bset = set(beta)
    total = 0
    for b in beta:
        t = b - r
        if t < 0 or t in bset:
            continue
        height = sum(1 for x in beta if t < x < b)
        new = sorted((bset - {b}) | {t}, reverse=True)
        new_lam = tuple(x for x in (new[i] - (k - 1 - i) for i in range(k)) if x > 0)
        total += (-1) ** height * _mn(new_lam, rest)
    return total


def character_value(lam: Sequence[int], mu: Sequence[int]) -> int:
    """Murnaghan-Nakayama: strip rim hooks of lengths mu_1, mu_2, ... from lam."""
    return _mn(tuple(lam), tuple(mu))


@lru_cache(maxsize=None)
def irreducible_character(lam: tuple) -> tuple:
    lam = check_partition(lam)
    return tuple(Fraction(_mn(lam, mu)) for mu in class_order(sum(lam)))


def sign_character(m: int) -> tuple:
    return tuple(Fraction((-1) ** (m - len(mu))) for mu in class_order(m))


def trivial_character(m: int) -> tuple:
    return tuple(Fraction(1) for _ in class_order(m))


def regular_character(m: int) -> tuple:
    return tuple(Fraction(factorial(m) if mu == (1,) * m else 0) for mu in class_order(m))


def character_tensor_sign(chi: Sequence) -> tuple:
    m = _degree_of(chi)
    return tuple(Fraction(a) * s for a, s in zip(chi, sign_character(m)))


def character_product(a: Sequence, b: Sequence) -> tuple:
    return tuple(Fraction(x) * Fraction(y) for x, y in zip(a, b))


def _degree_of(chi: Sequence) -> int:
    # p(m) is strictly increasing for m >= 1, so the length pins down m
    m = 1
    while len(partitions(m)) < len(chi):
        m += 1
    if len(partitions(m)) != len(chi):
        raise ValueError(f"character vector of length {len(chi)} matches no S_m")
    return m


def inner_product(a: Sequence, b: Sequence, m: int) -> Fraction:
    classes = class_order(m)
    if len(a) != len(classes) or len(b) != len(classes):
        raise ValueError("character vectors do not match S_m")
    total = sum((class_size(mu) * Fraction(x) * Fraction(y) for mu, x, y in zip(classes, a, b)), Fraction(0))
    return total / factorial(m)


def multiplicity(module_character: Sequence, lam: Sequence[int]) -> int:
    """Multiplicity of the Specht module V_lam in a module with the given character."""
    lam = check_partition(lam)
    m = sum(lam)
    val = inner_product(module_character, irreducible_character(lam), m)
    if val.denominator != 1 or val < 0:
        raise ValueError(f"<chi, chi_{lam}> = {val} is not a non-negative integer; invalid module character")
    return int(val)


def decompose(module_character: Sequence, m: int) -> dict:
    """``{lam: multiplicity}`` over all partitions of m (zeros included)."""
    return {lam: multiplicity(module_character, lam) for lam in partitions(m)}


def compose_character(mults: dict, m: int) -> tuple:
    out = [Fraction(0)] * len(class_order(m))
    for lam, k in mults.items():
        for i, x in enumerate(irreducible_character(tuple(lam))):
            out[i] += k * x
    return tuple(out)


# ---------------------------------------------------------------------------
# permutation modules

@dataclass
class PermutationAction:
    """S_m acting on ``points`` via ``act(perm, point) -> point`` (perms 0-based)."""

    m: int
    points: Sequence[Hashable]
    act: Callable[[Perm, Hashable], Hashable]

    def verify(self) -> None:
        pts = list(self.points)
        pset = set(pts)
        gens = symmetric_group(self.m).gen_perms if self.m > 1 else ()
        ident = tuple(range(self.m))
        for x in pts:
            if self.act(ident, x) != x:
                raise ValueError(f"identity moves {x!r}")
        for g in gens:
            images = [self.act(g, x) for x in pts]
            if set(images) != pset or len(set(images)) != len(pts):
                raise ValueError(f"generator {g} does not permute the points")
        for g, h in product(gens, repeat=2):
            gh = compose(g, h)
            for x in pts:
                if self.act(gh, x) != self.act(g, self.act(h, x)):
                    raise ValueError(f"not an action: (g h).x != g.(h.x) for g={g}, h={h}, x={x!r}")

    def permutation_of(self, g: Perm) -> list[int]:
        idx = {x: i for i, x in enumerate(self.points)}
        return [idx[self.act(g, x)] for x in self.points]


def permutation_module_character(action: PermutationAction) -> tuple:
    action.verify()
    out = []
    for mu in class_order(action.m):
        g = class_representative(mu)
        out.append(Fraction(sum(1 for x in action.points if action.act(g, x) == x)))
    return tuple(out)


def regular_action(m: int) -> PermutationAction:
    return PermutationAction(m, list(permutations(range(m))), lambda g, x: compose(g, x))


def natural_action(m: int) -> PermutationAction:
    return PermutationAction(m, list(range(m)), lambda g, x: g[x])


# ---------------------------------------------------------------------------
# Young symmetrizers

def _block_group(blocks: Sequence[Sequence[int]], m: int) -> list[Perm]:
    """All permutations of {0..m-1} preserving each block setwise."""
    blocks = [sorted(b) for b in blocks if len(b) > 1]
    out = []
    for choice in product(*(permutations(b) for b in blocks)):
        p = list(range(m))
        for b, img in zip(blocks, choice):
            for x, y in zip(b, img):
                p[x] = y
        out.append(tuple(p))
    return out


def young_symmetrizer(t: Tableau) -> GroupAlgebraElement:
    """``y_T = b_T a_T`` with a_T the row-group sum, b_T the signed column-group sum."""
    ents = t.entries()
    m = len(ents)
    if sorted(ents) != list(range(1, m + 1)):
        raise ValueError("filling must use each of 1..m exactly once")
    G = symmetric_group(m)
    rows = [[x - 1 for x in row] for row in t.rows]
    cols = [[x - 1 for x in col] for col in t.columns().values()]
    a = GroupAlgebraElement.sum_of(G, [G.index[p] for p in _block_group(rows, m)])
    col_perms = _block_group(cols, m)
    b = GroupAlgebraElement.from_terms(G, {G.index[p]: perm_sign(p) for p in col_perms})
    return b * a


def class_vector(group: CoxeterGroup, per_class: Sequence) -> tuple:
    """Reorder per-conjugacy-class values of S_m into cycle-type order."""
    m = group.degree
    by_type = {}
    for k, cls in enumerate(group.conjugacy_classes):
        by_type[cycle_type(group.elements[cls[0]])] = per_class[k]
    return tuple(Fraction(by_type[mu]) for mu in class_order(m))


def submodule_character(sub: Submodule) -> tuple:
    return class_vector(sub.group, sub.class_character())


def left_ideal_character(x: GroupAlgebraElement) -> tuple:
    return submodule_character(Submodule.left_ideal(x))


def is_self_conjugate(lam) -> bool:
    return conjugate(tuple(lam)) == tuple(lam)
