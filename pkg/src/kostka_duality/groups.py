"""Finite permutation groups, finite Coxeter groups and their group algebras.

Permutations are 0-based image tuples, composed right-to-left:
``(p * q)(x) = p[q[x]]``.  Group elements are indexed by their position in
the lexicographically sorted element list, which for the symmetric group is
the usual lexicographic enumeration of one-line notations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from .exact_linalg import ExactMatrix, column_space_basis

Perm = tuple


def compose(p: Perm, q: Perm) -> Perm:
    return tuple(p[x] for x in q)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def perm_sign(p: Perm) -> int:
    seen, sign = set(), 1
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def cycle_type(p: Perm) -> tuple:
    seen, lengths = set(), []
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def format_perm(p: Perm) -> str:
    """One-line notation, 1-based: ``"2 3 1"``."""
    return " ".join(str(x + 1) for x in p)


def parse_perm(text: str) -> Perm:
    vals = tuple(int(t) - 1 for t in text.split())
    if sorted(vals) != list(range(len(vals))):
        raise ValueError(f"not a permutation: {text!r}")
    return vals


class PermGroup:
    """A finite group given by generating permutations; elements enumerated by closure."""

    def __init__(self, generators: Sequence[Perm], degree: int):
        self.degree = degree
        self.gen_perms = tuple(tuple(g) for g in generators)
        ident = tuple(range(degree))
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for w in frontier:
                for g in self.gen_perms:
                    x = compose(w, g)
                    if x not in seen:
                        seen.add(x)
                        nxt.append(x)
            frontier = nxt
        self.elements: tuple = tuple(sorted(seen))
        self.index = {w: i for i, w in enumerate(self.elements)}
        self.identity = self.index[ident]

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def mult(self) -> list[list[int]]:
        els, idx = self.elements, self.index
        return [[idx[compose(a, b)] for b in els] for a in els]

    @cached_property
    def inv(self) -> list[int]:
        return [self.index[inverse(w)] for w in self.elements]

    def multiply(self, a: int, b: int) -> int:
        return self.mult[a][b]

    @cached_property
    def conjugacy_classes(self) -> list[tuple]:
        """Classes as sorted index tuples, in order of their smallest member."""
        done, classes = set(), []
        for x in range(self.order):
            if x in done:
                continue
            cls = {self.mult[self.mult[g][x]][self.inv[g]] for g in range(self.order)}
            done |= cls
            classes.append(tuple(sorted(cls)))
        return classes

    @cached_property
    def class_of(self) -> list[int]:
        out = [0] * self.order
        for k, cls in enumerate(self.conjugacy_classes):
            for x in cls:
                out[x] = k
        return out

    def left_regular_matrix(self, g: int) -> ExactMatrix:
        """Matrix of ``f -> g f`` on k[G] in the element basis."""
        items = {(self.mult[g][h], h): 1 for h in range(self.order)}
        return ExactMatrix.from_sparse(self.order, self.order, items)


class CoxeterGroup(PermGroup):
    """A finite Coxeter group realised as a permutation group.

    ``kind`` is ``"A"`` (symmetric group on n+1 letters, ``s_i = (i, i+1)``)
    or ``"I2"`` (dihedral group acting on Z/m with ``s_1: x -> -x`` and
    ``s_2: x -> 1 - x``).  Lengths come from breadth-first search in the
    Cayley graph; right descents are ``{i : l(w s_i) < l(w)}``.
    """

    def __init__(self, kind: str, param: int):
        self.kind, self.param = kind, param
        if kind == "A":
            n = param
            degree = n + 1
            gens = []
            for i in range(n):
                p = list(range(degree))
                p[i], p[i + 1] = p[i + 1], p[i]
                gens.append(tuple(p))
        elif kind == "I2":
            m = param
            if m < 2:
                raise ValueError("I2(m) needs m >= 2")
            degree = m
            gens = [tuple((-x) % m for x in range(m)), tuple((1 - x) % m for x in range(m))]
        else:
            raise ValueError(f"unsupported Coxeter type {kind!r}")
        super().__init__(gens, degree)
        self.rank = len(gens)
        self.generators = tuple(self.index[g] for g in gens)
        self._bfs()

    def _bfs(self):
        length = [None] * self.order
        words = [None] * self.order
        length[self.identity] = 0
        words[self.identity] = ()
        level = [self.identity]
        while level:
            level.sort(key=lambda x: words[x])
            nxt = []
            for w in level:
                for i, s in enumerate(self.generators, start=1):
                    x = self.mult[w][s]
                    if length[x] is None:
                        length[x] = length[w] + 1
                        words[x] = words[w] + (i,)
                        nxt.append(x)
            level = nxt
        self.length = tuple(length)
        self.words = tuple(words)
        self.descents = tuple(
            tuple(i for i, s in enumerate(self.generators, start=1) if length[self.mult[w][s]] < length[w])
            for w in range(self.order)
        )

    @property
    def name(self) -> str:
        return f"A{self.param}" if self.kind == "A" else f"I2:{self.param}"

    def sign(self, w: int) -> int:
        return -1 if self.length[w] % 2 else 1

    def word_name(self, w: int) -> str:
        return "".join(f"s{i}" for i in self.words[w]) or "1"

    def element_from_word(self, word: Sequence[int]) -> int:
        x = self.identity
        for i in word:
            x = self.mult[x][self.generators[i - 1]]
        return x

    @cached_property
    def longest(self) -> int:
        return max(range(self.order), key=lambda w: self.length[w])


@lru_cache(maxsize=None)
def coxeter_group(name: str) -> CoxeterGroup:
    """Parse ``"A3"`` or ``"I2:7"``."""
    name = name.strip()
    if name.startswith("I2:"):
        return CoxeterGroup("I2", int(name[3:]))
    if name.startswith("A") and name[1:].isdigit():
        return CoxeterGroup("A", int(name[1:]))
    raise ValueError(f"unknown Coxeter group {name!r}; use e.g. A3 or I2:7")


def symmetric_group(m: int) -> CoxeterGroup:
    return coxeter_group(f"A{m - 1}")


# ---------------------------------------------------------------------------
# group algebra

@dataclass(frozen=True, eq=False)
class GroupAlgebraElement:
    group: PermGroup
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.group.order:
            raise ValueError("coefficient vector has wrong length")

    @classmethod
    def from_terms(cls, group: PermGroup, terms: dict) -> "GroupAlgebraElement":
        c = [Fraction(0)] * group.order
        for w, x in terms.items():
            c[w] += Fraction(x)
        return cls(group, tuple(c))

    @classmethod
    def basis(cls, group: PermGroup, w: int) -> "GroupAlgebraElement":
        return cls.from_terms(group, {w: 1})

    @classmethod
    def sum_of(cls, group: PermGroup, elements, signs=None) -> "GroupAlgebraElement":
        terms = {}
        for w in elements:
            terms[w] = terms.get(w, 0) + (signs(w) if signs else 1)
        return cls.from_terms(group, terms)

    def terms(self) -> dict:
        return {w: x for w, x in enumerate(self.coeffs) if x}

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupAlgebraElement) and self.group is other.group and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        return GroupAlgebraElement(self.group, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return GroupAlgebraElement(self.group, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return GroupAlgebraElement(self.group, tuple(-a for a in self.coeffs))

    def scale(self, c) -> "GroupAlgebraElement":
        c = Fraction(c)
        return GroupAlgebraElement(self.group, tuple(c * a for a in self.coeffs))

    def __mul__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        if other.group is not self.group:
            raise ValueError("elements of different group algebras")
        mult = self.group.mult
        out = [Fraction(0)] * self.group.order
        rhs = other.terms()
        for a, x in self.terms().items():
            row = mult[a]
            for b, y in rhs.items():
                out[row[b]] += x * y
        return GroupAlgebraElement(self.group, tuple(out))

    def right_mult_matrix(self) -> ExactMatrix:
        """Matrix of ``f -> f * self``; its column space is the left ideal k[G]·self."""
        mult = self.group.mult
        items: dict = {}
        terms = self.terms()
        for g in range(self.group.order):
            for b, y in terms.items():
                key = (mult[g][b], g)
                items[key] = items.get(key, 0) + y
        return ExactMatrix.from_sparse(self.group.order, self.group.order, items)

    def left_ideal_generators(self) -> list[tuple]:
        """The vectors ``g * self`` for all g; they span k[G]·self."""
        mult = self.group.mult
        terms = self.terms()
        out = []
        for g in range(self.group.order):
            v = [Fraction(0)] * self.group.order
            for b, y in terms.items():
                v[mult[g][b]] += y
            out.append(tuple(v))
        return out


class Submodule:
    """A left submodule of k[G] held as a reduced basis of the ambient space."""

    def __init__(self, group: PermGroup, spanning: Sequence[Sequence]):
        self.group = group
        self.basis, self.pivots = column_space_basis(list(spanning), dim=group.order)
        self._sparse = [{j: x for j, x in enumerate(b) if x} for b in self.basis]

    @classmethod
    def left_ideal(cls, x: GroupAlgebraElement) -> "Submodule":
        return cls(x.group, x.left_ideal_generators())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates(self, v) -> tuple | None:
        """Coordinates of a sparse or dense vector, or None if outside the submodule."""
        if not isinstance(v, dict):
            v = {j: x for j, x in enumerate(v) if x}
        coeffs = tuple(v.get(p, Fraction(0)) for p in self.pivots)
        resid = dict(v)
        for c, b in zip(coeffs, self._sparse):
            if c:
                for j, y in b.items():
                    r = resid.get(j, 0) - c * y
                    if r:
                        resid[j] = r
                    else:
                        resid.pop(j, None)
        return None if resid else coeffs

    def contains(self, v: Sequence) -> bool:
        return self.coordinates(v) is not None

    def trace(self, g: int) -> Fraction:
        """Trace of left multiplication by ``g`` restricted to the submodule."""
        mult = self.group.mult[g]
        total = Fraction(0)
        for k, b in enumerate(self._sparse):
            coords = self.coordinates({mult[h]: x for h, x in b.items()})
            if coords is None:
                raise ValueError("subspace is not a left submodule")
            total += coords[k]
        return total

    def class_character(self) -> list[Fraction]:
        """Character value on each conjugacy class (one representative each)."""
        return [self.trace(cls[0]) for cls in self.group.conjugacy_classes]

    def action_matrix(self, g: int) -> ExactMatrix:
        """Matrix of left multiplication by ``g`` in the reduced basis."""
        mult = self.group.mult[g]
        cols = []
        for b in self._sparse:
            coords = self.coordinates({mult[h]: x for h, x in b.items()})
            if coords is None:
                raise ValueError("subspace is not a left submodule")
            cols.append(coords)
        return ExactMatrix.from_columns(cols, rows=self.dim)
