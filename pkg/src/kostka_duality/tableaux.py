"""Partitions, compositions, Young tableaux and (small) Kostka numbers.

Conventions
-----------
* A partition or composition is a plain tuple of positive ints.
* A subset ``I`` of ``[n] = {1..n}`` is a sorted tuple of ints.
* A tableau is a tuple of rows; for skew shapes the rows are paired with the
  shape's inner partition so that row ``r`` starts at column ``inner[r]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Sequence

Partition = tuple
Composition = tuple
Subset = tuple


def is_partition(p: Sequence[int]) -> bool:
    return all(x > 0 for x in p) and all(a >= b for a, b in zip(p, p[1:]))


def check_partition(p: Sequence[int]) -> Partition:
    p = tuple(int(x) for x in p)
    if not is_partition(p):
        raise ValueError(f"not a partition: {p}")
    return p


def check_composition(b: Sequence[int]) -> Composition:
    b = tuple(int(x) for x in b)
    if any(x <= 0 for x in b):
        raise ValueError(f"not a composition: {b}")
    return b


def normalize_weight(beta: Sequence[int]) -> Composition:
    """Drop zero parts from a weight."""
    if any(x < 0 for x in beta):
        raise ValueError(f"negative weight entry in {tuple(beta)}")
    return tuple(int(x) for x in beta if x)


@lru_cache(maxsize=None)
def partitions(m: int) -> tuple:
    """Partitions of ``m`` in lexicographically decreasing order."""

    def gen(rem, cap):
        if rem == 0:
            yield ()
            return
        for first in range(min(rem, cap), 0, -1):
            for rest in gen(rem - first, first):
                yield (first,) + rest

    return tuple(gen(m, m))


def conjugate(p: Partition) -> Partition:
    if not p:
        return ()
    return tuple(sum(1 for x in p if x > j) for j in range(p[0]))


def subsets(n: int) -> list[Subset]:
    """All subsets of [n], ordered by size then lexicographically."""
    return [c for k in range(n + 1) for c in combinations(range(1, n + 1), k)]


def complement(I: Subset, n: int) -> Subset:
    s = set(I)
    return tuple(i for i in range(1, n + 1) if i not in s)


def check_subset(I: Sequence[int], n: int) -> Subset:
    I = tuple(sorted(int(i) for i in I))
    if len(set(I)) != len(I) or any(i < 1 or i > n for i in I):
        raise ValueError(f"{I} is not a subset of [{n}]")
    return I


def rho(I: Sequence[int], n: int) -> Composition:
    """Subset of [n] -> composition of n+1 via consecutive gaps."""
    I = check_subset(I, n)
    pts = (0,) + I + (n + 1,)
    return tuple(b - a for a, b in zip(pts, pts[1:]))


def rho_inverse(beta: Sequence[int], n: int) -> Subset:
    beta = check_composition(beta)
    if sum(beta) != n + 1:
        raise ValueError(f"composition {beta} does not sum to n+1={n + 1}")
    out, s = [], 0
    for b in beta[:-1]:
        s += b
        out.append(s)
    return tuple(out)


# ---------------------------------------------------------------------------
# shapes and tableaux

@dataclass(frozen=True)
class SkewShape:
    outer: Partition
    inner: Partition = ()

    def __post_init__(self):
        object.__setattr__(self, "outer", check_partition(self.outer))
        inner = tuple(x for x in self.inner if x)
        object.__setattr__(self, "inner", check_partition(inner) if inner else ())
        if len(self.inner) > len(self.outer) or any(
            a > b for a, b in zip(self.inner, self.outer)
        ):
            raise ValueError(f"{self.inner} is not contained in {self.outer}")

    def row_starts(self) -> tuple:
        return tuple(self.inner[r] if r < len(self.inner) else 0 for r in range(len(self.outer)))

    def boxes(self) -> list[tuple[int, int]]:
        starts = self.row_starts()
        return [(r, c) for r, length in enumerate(self.outer) for c in range(starts[r], length)]

    def size(self) -> int:
        return sum(self.outer) - sum(self.inner)

    def components(self) -> int:
        boxes = set(self.boxes())
        seen, count = set(), 0
        for b in boxes:
            if b in seen:
                continue
            count += 1
            stack = [b]
            while stack:
                r, c = stack.pop()
                if (r, c) in seen:
                    continue
                seen.add((r, c))
                for nb in ((r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)):
                    if nb in boxes and nb not in seen:
                        stack.append(nb)
        return count

    def has_2x2(self) -> bool:
        boxes = set(self.boxes())
        return any({(r + 1, c), (r, c + 1), (r + 1, c + 1)} <= boxes for r, c in boxes)

    def render(self) -> str:
        starts = self.row_starts()
        return "\n".join("  " * starts[r] + "[]" * (self.outer[r] - starts[r])
                         for r in range(len(self.outer)))


@dataclass(frozen=True)
class Tableau:
    """A filling of a (skew) shape.

    ``rows[r]`` lists the entries of row ``r`` from left to right; the row
    begins at column ``shape.row_starts()[r]``.
    """

    shape: SkewShape
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        starts = self.shape.row_starts()
        if len(rows) != len(self.shape.outer) or any(
            len(rows[r]) != self.shape.outer[r] - starts[r] for r in range(len(rows))
        ):
            raise ValueError("filling does not match shape")

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]]) -> "Tableau":
        """Straight-shape tableau from its rows."""
        return cls(SkewShape(tuple(len(r) for r in rows)), tuple(tuple(r) for r in rows))

    def cells(self) -> dict:
        starts = self.shape.row_starts()
        return {(r, starts[r] + k): x for r, row in enumerate(self.rows) for k, x in enumerate(row)}

    def entries(self) -> list[int]:
        return [x for row in self.rows for x in row]

    def weight(self) -> Composition:
        ents = self.entries()
        top = max(ents, default=0)
        return tuple(ents.count(i) for i in range(1, top + 1))

    def columns(self) -> dict:
        cols: dict = {}
        for (r, c), x in sorted(self.cells().items()):
            cols.setdefault(c, []).append(x)
        return cols

    def is_semistandard(self) -> bool:
        cells = self.cells()
        for (r, c), x in cells.items():
            if (r, c + 1) in cells and cells[(r, c + 1)] < x:
                return False
            if (r + 1, c) in cells and cells[(r + 1, c)] <= x:
                return False
        return all(x >= 1 for x in cells.values())

    def is_standard(self) -> bool:
        return self.is_semistandard() and sorted(self.entries()) == list(range(1, self.shape.size() + 1))

    def transpose(self) -> "Tableau":
        if self.shape.inner:
            raise ValueError("transpose is only implemented for straight shapes")
        cols = self.columns()
        return Tableau.of([tuple(cols[c]) for c in sorted(cols)])

    def render(self) -> str:
        starts = self.shape.row_starts()
        width = max((len(str(x)) for x in self.entries()), default=1)
        return "\n".join(
            " " * ((width + 1) * starts[r]) + " ".join(str(x).rjust(width) for x in row)
            for r, row in enumerate(self.rows)
        )


def enumerate_ssyt(lam: Partition, beta: Sequence[int]) -> list[Tableau]:
    """All semistandard tableaux of shape ``lam`` and weight ``beta``.

    Backtracking over boxes in row-major order; a box takes a value at least
    its left neighbour and strictly above its upper neighbour, subject to the
    remaining weight budget.
    """
    lam = check_partition(lam)
    beta = tuple(int(x) for x in beta)
    if any(x < 0 for x in beta):
        raise ValueError(f"negative weight {beta}")
    if sum(lam) != sum(beta):
        raise ValueError(f"size mismatch: |lambda|={sum(lam)} but |beta|={sum(beta)}")
    k = len(beta)
    boxes = [(r, c) for r, length in enumerate(lam) for c in range(length)]
    fill: dict = {}
    left = list(beta)
    out: list[Tableau] = []

    def rec(pos: int):
        if pos == len(boxes):
            out.append(Tableau.of([[fill[(r, c)] for c in range(lam[r])] for r in range(len(lam))]))
            return
        r, c = boxes[pos]
        lo = 1
        if c > 0:
            lo = max(lo, fill[(r, c - 1)])
        if r > 0:
            lo = max(lo, fill[(r - 1, c)] + 1)
        for v in range(lo, k + 1):
            if left[v - 1]:
                left[v - 1] -= 1
                fill[(r, c)] = v
                rec(pos + 1)
                left[v - 1] += 1
        fill.pop((r, c), None)

    rec(0)
    return out


@lru_cache(maxsize=None)
def kostka(lam: Partition, beta: Composition) -> int:
    return len(enumerate_ssyt(tuple(lam), tuple(beta)))


@lru_cache(maxsize=None)
def standard_tableaux(lam: Partition) -> tuple:
    return tuple(enumerate_ssyt(tuple(lam), (1,) * sum(lam)))


def descent_set(t: Tableau) -> Subset:
    """Entries ``i`` such that ``i+1`` sits in a strictly lower row."""
    if not t.is_standard():
        raise ValueError("descent_set needs a standard tableau")
    row_of = {x: r for r, row in enumerate(t.rows) for x in row}
    m = len(row_of)
    return tuple(i for i in range(1, m) if row_of[i + 1] > row_of[i])


def standardize(t: Tableau) -> Tableau:
    """Relabel the ``beta_i`` copies of ``i`` by consecutive integers, left to right."""
    if not t.is_semistandard():
        raise ValueError("standardize needs a semistandard tableau")
    cells = t.cells()
    nxt = 1
    new = {}
    for v in sorted(set(cells.values())):
        for pos in sorted((p for p, x in cells.items() if x == v), key=lambda rc: (rc[1], rc[0])):
            new[pos] = nxt
            nxt += 1
    starts = t.shape.row_starts()
    return Tableau(t.shape, tuple(
        tuple(new[(r, starts[r] + k)] for k in range(len(row))) for r, row in enumerate(t.rows)
    ))


def _check_size(lam: Partition, n: int) -> Partition:
    lam = check_partition(lam)
    if sum(lam) != n + 1:
        raise ValueError(f"|lambda|={sum(lam)} but n+1={n + 1}")
    return lam


def small_kostka_alt(lam: Partition, I: Sequence[int], n: int) -> int:
    """Alternating sum over ``J`` inside ``I`` of ``K_{lam, rho(J)}``."""
    lam = _check_size(lam, n)
    I = check_subset(I, n)
    total = 0
    for k in range(len(I) + 1):
        for J in combinations(I, k):
            total += (-1) ** (len(I) - k) * kostka(lam, rho(J, n))
    return total


@lru_cache(maxsize=None)
def _descent_census(lam: Partition) -> dict:
    census: dict = {}
    for t in standard_tableaux(lam):
        d = descent_set(t)
        census[d] = census.get(d, 0) + 1
    return census


def small_kostka_syt(lam: Partition, I: Sequence[int], n: int) -> int:
    """Number of standard tableaux of shape ``lam`` with descent set exactly ``I``."""
    lam = _check_size(lam, n)
    I = check_subset(I, n)
    return _descent_census(lam).get(I, 0)


def syt_with_descents(lam: Partition, I: Sequence[int] | None = None) -> list[Tableau]:
    ts = standard_tableaux(check_partition(lam))
    if I is None:
        return list(ts)
    I = tuple(sorted(I))
    return [t for t in ts if descent_set(t) == I]


# ---------------------------------------------------------------------------
# strips and ribbons

def hstrip(beta: Sequence[int]) -> SkewShape:
    """Rows of lengths ``beta`` (top to bottom) meeting only at corners."""
    beta = check_composition(beta)
    k = len(beta)
    ends = [sum(beta[i:]) for i in range(k)]
    starts = [ends[i] - beta[i] for i in range(k)]
    return SkewShape(tuple(ends), tuple(starts))


def ribbon(beta: Sequence[int]) -> SkewShape:
    """Connected border strip whose consecutive rows share one column."""
    beta = check_composition(beta)
    k = len(beta)
    ends = [0] * k
    ends[-1] = beta[-1]
    for i in range(k - 2, -1, -1):
        # row i starts in the last column of row i+1
        ends[i] = ends[i + 1] - 1 + beta[i]
    starts = [ends[i] - beta[i] for i in range(k)]
    return SkewShape(tuple(ends), tuple(starts))


def semitic_filling(shape: SkewShape) -> Tableau:
    """Number boxes 1, 2, ... reading rows top to bottom, each right to left."""
    rows, nxt = [], 1
    starts = shape.row_starts()
    for r, end in enumerate(shape.outer):
        length = end - starts[r]
        rows.append(tuple(range(nxt + length - 1, nxt - 1, -1)))
        nxt += length
    return Tableau(shape, tuple(rows))


def parse_int_list(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        try:
            out.append(int(tok))
        except ValueError:
            raise ValueError(f"bad integer token {tok!r}") from None
    return tuple(out)


def format_int_list(xs: Sequence[int]) -> str:
    return ",".join(str(x) for x in xs)


def syt_count(lam: Partition) -> int:
    """Hook length formula (used as a cross-check on enumeration)."""
    from math import factorial

    lam = check_partition(lam)
    conj = conjugate(lam)
    hooks = 1
    for r, length in enumerate(lam):
        for c in range(length):
            hooks *= (length - c - 1) + (conj[c] - r - 1) + 1
    return factorial(sum(lam)) // hooks


def iter_partitions_upto(max_m: int) -> Iterator[Partition]:
    for m in range(1, max_m + 1):
        yield from partitions(m)
