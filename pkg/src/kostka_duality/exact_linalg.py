"""Exact rational matrices, fraction-free elimination and cochain cohomology.

Everything here works over ``fractions.Fraction``; no floating point is ever
involved.  Matrices are small-to-medium (a few hundred rows) and mostly
sparse with integer entries, so elimination runs on integer rows stored as
dicts and keeps entries primitive by dividing out the row content.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Vector = tuple  # tuple of Fraction


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass ints, Fractions or 'p/q' strings")
    return Fraction(x)


def format_rational(x: Fraction) -> str:
    x = to_fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class ExactMatrix:
    """A ``rows x cols`` matrix of Fractions stored row-major."""

    rows: int
    cols: int
    entries: tuple = field(repr=False)

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"entries length {len(self.entries)} != {self.rows}x{self.cols}"
            )

    # -- construction -----------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        flat = []
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
            flat.extend(to_fraction(x) for x in r)
        return cls(len(rows), cols, tuple(flat))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "ExactMatrix":
        cols = list(columns)
        data = [[Fraction(0)] * len(cols) for _ in range(rows)]
        for j, c in enumerate(cols):
            if len(c) != rows:
                raise ValueError("column length mismatch")
            for i, x in enumerate(c):
                data[i][j] = to_fraction(x)
        return cls.from_rows(data, cols=len(cols))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        e = [Fraction(0)] * (n * n)
        for i in range(n):
            e[i * n + i] = Fraction(1)
        return cls(n, n, tuple(e))

    @classmethod
    def from_sparse(cls, rows: int, cols: int, items: dict) -> "ExactMatrix":
        e = [Fraction(0)] * (rows * cols)
        for (i, j), x in items.items():
            e[i * cols + j] += to_fraction(x)
        return cls(rows, cols, tuple(e))

    # -- access -----------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def sparse_rows(self) -> list[dict]:
        out = []
        c = self.cols
        for i in range(self.rows):
            base = i * c
            out.append({j: x for j in range(c) if (x := self.entries[base + j])})
        return out

    def is_zero(self) -> bool:
        return not any(self.entries)

    # -- algebra ----------------------------------------------------------
    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    def transpose(self) -> "ExactMatrix":
        r, c = self.rows, self.cols
        return ExactMatrix(c, r, tuple(self.entries[i * c + j] for j in range(c) for i in range(r)))

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        b_rows = other.sparse_rows()
        out = []
        for a_row in self.sparse_rows():
            acc: dict = {}
            for k, a in a_row.items():
                for j, b in b_rows[k].items():
                    acc[j] = acc.get(j, 0) + a * b
            row = [Fraction(0)] * other.cols
            for j, x in acc.items():
                row[j] = Fraction(x)
            out.extend(row)
        return ExactMatrix(self.rows, other.cols, tuple(out))

    def apply(self, vec: Sequence) -> tuple:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        nz = [(j, x) for j, x in enumerate(vec) if x]
        c = self.cols
        return tuple(
            Fraction(sum((self.entries[i * c + j] * x for j, x in nz), Fraction(0)))
            for i in range(self.rows)
        )

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same(other)
        return ExactMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same(other)
        return ExactMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c) -> "ExactMatrix":
        c = to_fraction(c)
        return ExactMatrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def select_rows(self, idx: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix(len(idx), self.cols, tuple(x for i in idx for x in self.row(i)))

    def inverse(self) -> "ExactMatrix":
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        aug = ExactMatrix.from_rows(
            [list(self.row(i)) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)],
            cols=2 * n,
        )
        red, pivots = rref(aug)
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return ExactMatrix(n, n, tuple(x for i in range(n) for x in red.row(i)[n:]))

    def to_json(self) -> list[list[str]]:
        return [[format_rational(x) for x in self.row(i)] for i in range(self.rows)]

    @classmethod
    def from_json(cls, data, rows: int | None = None, cols: int | None = None) -> "ExactMatrix":
        parsed = [[to_fraction(x) for x in r] for r in data]
        if rows is not None and len(parsed) != rows:
            raise ValueError(f"expected {rows} rows, got {len(parsed)}")
        if cols is None:
            cols = len(parsed[0]) if parsed else 0
        return cls.from_rows(parsed, cols=cols)


def hstack(blocks: Sequence[ExactMatrix], rows: int | None = None) -> ExactMatrix:
    if not blocks:
        return ExactMatrix.zeros(rows or 0, 0)
    r = blocks[0].rows
    if any(b.rows != r for b in blocks):
        raise ValueError("hstack row mismatch")
    return ExactMatrix.from_rows([[x for b in blocks for x in b.row(i)] for i in range(r)],
                                 cols=sum(b.cols for b in blocks))


def vstack(blocks: Sequence[ExactMatrix], cols: int | None = None) -> ExactMatrix:
    if not blocks:
        return ExactMatrix.zeros(0, cols or 0)
    c = blocks[0].cols
    if any(b.cols != c for b in blocks):
        raise ValueError("vstack column mismatch")
    return ExactMatrix(sum(b.rows for b in blocks), c, tuple(x for b in blocks for x in b.entries))


def block_diag(blocks: Sequence[ExactMatrix]) -> ExactMatrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    items = {}
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b.sparse_rows()):
            for j, x in row.items():
                items[(r0 + i, c0 + j)] = x
        r0 += b.rows
        c0 += b.cols
    return ExactMatrix.from_sparse(rows, cols, items)


def kron(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    items = {}
    for i, ra in enumerate(a.sparse_rows()):
        for k, x in ra.items():
            for j, rb in enumerate(b.sparse_rows()):
                for l, y in rb.items():
                    items[(i * b.rows + j, k * b.cols + l)] = x * y
    return ExactMatrix.from_sparse(a.rows * b.rows, a.cols * b.cols, items)


# ---------------------------------------------------------------------------
# elimination

def _integer_row(row: dict) -> dict:
    """Scale a sparse rational row to a primitive integer row."""
    if not row:
        return {}
    den = 1
    for x in row.values():
        den = lcm(den, Fraction(x).denominator)
    ints = {j: int(Fraction(x) * den) for j, x in row.items()}
    g = 0
    for x in ints.values():
        g = gcd(g, x)
    return {j: x // g for j, x in ints.items()}


def _eliminate(rows: Iterable[dict]) -> dict:
    """Fraction-free forward elimination.

    Returns ``{pivot_column: primitive integer row}``.  Each incoming row is
    reduced against the stored pivots with cross-multiplication (no
    division), then divided by its content so entries stay small.
    """
    pivots: dict = {}
    for raw in rows:
        row = _integer_row(raw)
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                if row[c] < 0:
                    row = {j: -x for j, x in row.items()}
                pivots[c] = row
                break
            a, p = row[c], prow[c]
            new = {j: p * x for j, x in row.items()}
            for j, y in prow.items():
                v = new.get(j, 0) - a * y
                if v:
                    new[j] = v
                else:
                    new.pop(j, None)
            g = 0
            for x in new.values():
                g = gcd(g, x)
                if g == 1:
                    break
            row = {j: x // g for j, x in new.items()} if g > 1 else new
    return pivots


def rank(m: ExactMatrix) -> int:
    """Exact rank over Q."""
    if m.rows == 0 or m.cols == 0:
        return 0
    # eliminate along the shorter side
    src = m if m.rows <= m.cols else m.transpose()
    return len(_eliminate(src.sparse_rows()))


def bareiss_rank(m: ExactMatrix) -> int:
    """Dense Bareiss elimination; an independent route used to cross-check ``rank``."""
    a = []
    for i in range(m.rows):
        den = 1
        for x in m.row(i):
            den = lcm(den, x.denominator)
        a.append([int(x * den) for x in m.row(i)])
    rows, cols = m.rows, m.cols
    r = 0
    prev = 1
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
        if r == rows:
            break
    return r


def rref(m: ExactMatrix) -> tuple[ExactMatrix, list[int]]:
    """Reduced row echelon form and its pivot columns."""
    piv = _eliminate(m.sparse_rows())
    order = sorted(piv)
    # back substitution over Q on the sparse pivot rows
    reduced: dict = {}
    for c in reversed(order):
        row = {j: Fraction(x, piv[c][c]) for j, x in piv[c].items()}
        for c2 in list(row):
            if c2 != c and c2 in reduced:
                f = row[c2]
                for j, y in reduced[c2].items():
                    v = row.get(j, 0) - f * y
                    if v:
                        row[j] = v
                    else:
                        row.pop(j, None)
        reduced[c] = row
    out = [[Fraction(0)] * m.cols for _ in range(m.rows)]
    for i, c in enumerate(order):
        for j, x in reduced[c].items():
            out[i][j] = Fraction(x)
    return ExactMatrix.from_rows(out, cols=m.cols), order


def kernel_basis(m: ExactMatrix) -> list[tuple]:
    """Null-space basis in canonical form.

    One vector per free column ``f`` (increasing), with a 1 in position ``f``,
    zeros in the other free positions and the pivot positions solved for.
    """
    red, pivots = rref(m)
    pivset = set(pivots)
    free = [j for j in range(m.cols) if j not in pivset]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -red[i, f]
        basis.append(tuple(v))
    return basis


def solve(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix | None:
    """A matrix ``x`` with ``a @ x == b`` (free variables set to 0), or None."""
    if a.rows != b.rows:
        raise ValueError("solve: row counts differ")
    red, pivots = rref(hstack([a, b], rows=a.rows))
    if any(c >= a.cols for c in pivots):
        return None
    items = {}
    for i, c in enumerate(pivots):
        for j in range(b.cols):
            x = red[i, a.cols + j]
            if x:
                items[(c, j)] = x
    return ExactMatrix.from_sparse(a.cols, b.cols, items)


def is_invertible(m: ExactMatrix) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


def column_space_basis(vectors: Sequence[Sequence], dim: int | None = None) -> tuple[list[tuple], list[int]]:
    """Reduced basis of the span of ``vectors``.

    Returns ``(basis, pivots)`` where basis vector ``k`` has a 1 at
    ``pivots[k]`` and 0 at every other pivot.  The coordinates of any ``x``
    in the span are then simply ``[x[p] for p in pivots]``.
    """
    vectors = [tuple(to_fraction(x) for x in v) for v in vectors]
    if not vectors:
        return [], []
    n = len(vectors[0]) if dim is None else dim
    red, pivots = rref(ExactMatrix.from_rows(vectors, cols=n))
    return [red.row(i) for i in range(len(pivots))], pivots


def coordinates_in(basis: Sequence[tuple], pivots: Sequence[int], x: Sequence) -> tuple | None:
    """Coordinates of ``x`` in a reduced basis, or None if ``x`` is outside the span."""
    coeffs = tuple(Fraction(x[p]) for p in pivots)
    resid = list(Fraction(v) for v in x)
    for c, b in zip(coeffs, basis):
        if c:
            for j, y in enumerate(b):
                if y:
                    resid[j] -= c * y
    if any(resid):
        return None
    return coeffs


def trace_on_subspace(op: ExactMatrix, span: Sequence[Sequence]) -> Fraction:
    """Trace of ``op`` restricted to the span of the given column vectors.

    Raises ValueError if the span is not mapped into itself.
    """
    if op.rows != op.cols:
        raise ValueError("operator must be square")
    basis, pivots = column_space_basis(span, dim=op.cols)
    total = Fraction(0)
    for k, b in enumerate(basis):
        img = op.apply(b)
        coords = coordinates_in(basis, pivots, img)
        if coords is None:
            raise ValueError(f"span is not invariant: image of basis vector {k} leaves it")
        total += coords[k]
    return total


def span_rank(vectors: Sequence[Sequence], dim: int) -> int:
    if not vectors:
        return 0
    return len(_eliminate([{j: x for j, x in enumerate(v) if x} for v in vectors]))


def spans_equal(a: Sequence[Sequence], b: Sequence[Sequence], dim: int) -> bool:
    ra, rb = span_rank(a, dim), span_rank(b, dim)
    return ra == rb == span_rank(list(a) + list(b), dim)


def intersection_dim(a: Sequence[Sequence], b: Sequence[Sequence], dim: int) -> int:
    return span_rank(a, dim) + span_rank(b, dim) - span_rank(list(a) + list(b), dim)


# ---------------------------------------------------------------------------
# cochain complexes

class NonComplexError(ValueError):
    pass


@dataclass(frozen=True)
class ChainComplex:
    """Cochain complex ``C^lo -> C^{lo+1} -> ... -> C^hi``.

    ``differentials[k]`` maps degree ``lo + k`` to ``lo + k + 1``, so it has
    ``dims[k]`` columns and ``dims[k+1]`` rows.
    """

    dims: tuple
    differentials: tuple
    lo: int = 0

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(self, "differentials", tuple(self.differentials))
        if len(self.differentials) != max(len(self.dims) - 1, 0):
            raise ValueError("need one differential between each pair of consecutive degrees")
        for k, d in enumerate(self.differentials):
            if d.shape != (self.dims[k + 1], self.dims[k]):
                raise ValueError(
                    f"differential at degree {self.lo + k} has shape {d.shape}, "
                    f"expected {(self.dims[k + 1], self.dims[k])}"
                )
        for k in range(len(self.differentials) - 1):
            if not (self.differentials[k + 1] @ self.differentials[k]).is_zero():
                raise NonComplexError(f"d o d != 0 at degree {self.lo + k}")

    @property
    def degrees(self) -> range:
        return range(self.lo, self.lo + len(self.dims))

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * d for p, d in zip(self.degrees, self.dims))


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get("DD_THREADS", "1")))
    except ValueError:
        return 1


def cohomology_dims(c: ChainComplex, threads: int | None = None) -> list[int]:
    """``dim H^p = dim ker d_p - rank d_{p-1}`` in every degree."""
    threads = threads or _default_threads()
    if threads > 1 and len(c.differentials) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            ranks = list(ex.map(rank, c.differentials))
    else:
        ranks = [rank(d) for d in c.differentials]
    out = []
    for k, dim in enumerate(c.dims):
        r_out = ranks[k] if k < len(ranks) else 0
        r_in = ranks[k - 1] if k > 0 else 0
        out.append(dim - r_out - r_in)
    return out
