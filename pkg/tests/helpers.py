"""Fixtures, random instance builders and brute-force oracles for the tests.

The oracles here deliberately avoid the package's own linear algebra:
ranks are computed with fraction-free Bareiss elimination on integers.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from hyperkstab.arrangement import Arrangement, make_arrangement, total_degree
from hyperkstab.classp import is_klt_cy
from hyperkstab.exactq import primitive_vector
from hyperkstab.lattice import all_flats, flat_weight

F = Fraction

ACCEPTANCE_LOG: list[str] = []


def report(criterion: str, ok: bool, detail: str = "") -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {criterion}" + (f" -- {detail}" if detail else "")
    ACCEPTANCE_LOG.append(line)
    print(line)


# -- fixtures --------------------------------------------------------------


def triangle(w=F(1, 2)) -> Arrangement:
    return make_arrangement(2, [[1, 0, 0], [0, 1, 0], [0, 0, 1]], [w] * 3)


def concurrent3(w=F(1)) -> Arrangement:
    return make_arrangement(2, [[1, 0, 0], [0, 1, 0], [1, 1, 0]], [w] * 3)


def concurrent4(w=F(1, 3)) -> Arrangement:
    return make_arrangement(2, [[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, 2, 0]], [w] * 4)


def generic4(w=F(1, 4)) -> Arrangement:
    return make_arrangement(2, [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]], [w] * 4)


def coordinate(n: int, w) -> Arrangement:
    forms = [[int(i == j) for j in range(n + 1)] for i in range(n + 1)]
    return make_arrangement(n, forms, [w] * (n + 1))


def line_plus_pencil() -> Arrangement:
    """L = (z0 = 0) at 1 plus three lines through p = (1:0:0) at 2/3."""
    return make_arrangement(
        2, [[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 1, 1]], [F(1), F(2, 3), F(2, 3), F(2, 3)]
    )


def line_plus_generic4() -> Arrangement:
    """Line at 1 plus four general lines at 1/2: lc CY, not of class P."""
    return make_arrangement(
        2,
        [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3]],
        [F(1), F(1, 2), F(1, 2), F(1, 2), F(1, 2)],
    )


def points_p1(weights) -> Arrangement:
    forms = [[0, 1], [1, 0]] + [[1, k] for k in range(1, len(weights) - 1)]
    return make_arrangement(1, forms[: len(weights)], weights)


# -- brute-force oracles ---------------------------------------------------


def bareiss_rank(rows: list[list[int]]) -> int:
    a = [list(r) for r in rows]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    r, prev = 0, 1
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
        if r == nrows:
            break
    return r


def brute_force_flats(a: Arrangement) -> dict[tuple[int, ...], int]:
    """closure -> codim over all 2^m - 1 nonempty subsets."""
    forms = a.forms()
    m = a.m
    ranks = {0: 0}
    for mask in range(1, 1 << m):
        ranks[mask] = bareiss_rank([forms[i] for i in range(m) if mask >> i & 1])
    out = {}
    for mask in range(1, 1 << m):
        r = ranks[mask]
        if r == a.dim + 1:
            continue
        closure = tuple(i for i in range(m) if ranks[mask | (1 << i)] == r)
        out[closure] = r
    return out


def snc_all_subsets(a: Arrangement) -> tuple[bool, bool]:
    total = total_degree(a)
    n1 = a.dim + 1
    semi = strict = True
    for k in range(1, min(a.dim, a.m) + 1):
        for sub in combinations(a.weights, k):
            lhs, rhs = k * total, n1 * sum(sub)
            semi &= lhs >= rhs
            strict &= lhs > rhs
    return semi, strict


def census(a: Arrangement) -> list[tuple[int, int, Fraction]]:
    """Projective-invariant summary of the lattice: (|closure|, codim, d)."""
    return sorted((len(w.closure), w.codim, flat_weight(a, w, check=False)) for w in all_flats(a))


# -- random instances ------------------------------------------------------


def random_rat(rng: random.Random, lo=0, hi=1, dens=(2, 3, 4, 5, 6, 8, 12)) -> Fraction:
    """Uniform-ish rational strictly inside (lo, hi) with a small denominator."""
    while True:
        den = rng.choice(dens)
        x = F(rng.randint(1, den * (hi - lo) - 1), den) + lo
        if lo < x < hi:
            return x


def random_dim1_weights(rng: random.Random) -> list[Fraction]:
    """Log Fano weights on P^1: each in (0,1), total below 2."""
    while True:
        m = rng.randint(1, 8)
        ws = [random_rat(rng) for _ in range(m)]
        if sum(ws) < 2:
            return ws


def random_forms(rng: random.Random, n: int, m: int, bound: int) -> list[list[int]] | None:
    forms, seen = [], set()
    for _ in range(50 * m):
        if len(forms) == m:
            break
        v = [rng.randint(-bound, bound) for _ in range(n + 1)]
        if not any(v):
            continue
        key = primitive_vector(v)
        if key in seen:
            continue
        seen.add(key)
        forms.append(v)
    return forms if len(forms) == m else None


def random_arrangement(rng: random.Random, n: int, m: int, bound: int = 2, weights=None):
    if n == 1 and m > 4 * bound:
        raise ValueError(f"too few distinct forms with coefficients in [-{bound}, {bound}]")
    while True:
        forms = random_forms(rng, n, m, bound)
        if forms is not None:
            ws = weights if weights is not None else [random_rat(rng) for _ in range(m)]
            return make_arrangement(n, forms, ws)


def random_klt_cy(rng: random.Random, dim: int) -> Arrangement:
    """Random klt Calabi-Yau arrangement on P^dim (dim <= 2)."""
    if dim == 0:
        return Arrangement(0)
    while True:
        k = rng.randint(dim + 2, dim + 3)
        raw = [rng.randint(2, 9) for _ in range(k)]
        scale = F(dim + 1, sum(raw))
        ws = [r * scale for r in raw]
        forms = random_forms(rng, dim, k, 3)
        if forms is None:
            continue
        a = make_arrangement(dim, forms, ws)
        if is_klt_cy(a):
            return a
