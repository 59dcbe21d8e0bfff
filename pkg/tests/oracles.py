"""Brute-force reference implementations that share no code with the package."""

from fractions import Fraction
from itertools import permutations


def dense_rank(rows):
    """Plain Gaussian elimination over Fractions."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    r = 0
    for c in range(len(m[0])):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def shape_cells(lam):
    return [(r, c) for r, length in enumerate(lam) for c in range(length)]


def _is_tableau(f, strict_rows):
    for (r, c), x in f.items():
        right, below = f.get((r, c + 1)), f.get((r + 1, c))
        if right is not None and (right < x or (strict_rows and right == x)):
            return False
        if below is not None and below <= x:
            return False
    return True


def brute_syt(lam):
    cells = shape_cells(lam)
    out = []
    for p in permutations(range(1, len(cells) + 1)):
        f = dict(zip(cells, p))
        if _is_tableau(f, True):
            out.append(f)
    return out


def brute_descents(f):
    row = {v: r for (r, _), v in f.items()}
    return tuple(i for i in range(1, len(f)) if row[i + 1] > row[i])


def brute_small_kostka(lam, I):
    return sum(1 for f in brute_syt(lam) if brute_descents(f) == tuple(I))


def brute_kostka(lam, beta):
    cells = shape_cells(lam)
    values = [i + 1 for i, b in enumerate(beta) for _ in range(b)]
    if len(values) != len(cells):
        return 0
    return sum(1 for p in set(permutations(values)) if _is_tableau(dict(zip(cells, p)), False))


def set_flags(n, chi):
    """Chains of subsets of {1..n+1} with the given sizes, by brute force."""
    from itertools import combinations

    ground = range(1, n + 2)
    chains = [()]
    for k in chi:
        chains = [c + (s,) for c in chains for s in map(frozenset, combinations(ground, k))
                  if not c or c[-1] < s]
    return chains
