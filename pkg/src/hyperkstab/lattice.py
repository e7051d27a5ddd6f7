"""Intersection lattice L'(X, Gamma) of a hyperplane arrangement.

A flat is identified by its closure, the set of all hyperplanes that
contain it.  The enumeration works level by level: for a flat W of
codimension k, every hyperplane H outside its closure is reduced modulo
the defining forms of W.  Two hyperplanes give the same codimension k+1
flat W & H exactly when their residuals are proportional, so grouping
residuals by projective direction yields all covers of W at once.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Iterator

from .arrangement import Arrangement
from .exactq import QMatrix, in_row_space, rref


@dataclass(frozen=True)
class Flat:
    closure: tuple[int, ...]
    codim: int
    forms: QMatrix = field(compare=False, repr=False)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(r) if x != 0) for r in self.forms.rows)

    def dim(self, n: int) -> int:
        return n - self.codim

    def sort_key(self):
        return (self.codim, self.closure)


@dataclass(frozen=True)
class Lattice:
    """Flats of L' sorted by (codim, closure)."""

    flats: tuple[Flat, ...]
    _index: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        self._index.update({f.closure: f for f in self.flats})

    def __iter__(self) -> Iterator[Flat]:
        return iter(self.flats)

    def __len__(self):
        return len(self.flats)

    def __getitem__(self, i) -> Flat:
        return self.flats[i]

    def get(self, closure: Iterable[int]) -> Flat | None:
        return self._index.get(tuple(sorted(closure)))

    def __contains__(self, w: Flat) -> bool:
        return self._index.get(w.closure) == w


def _check_indices(a: Arrangement, indices) -> tuple[int, ...]:
    idx = tuple(sorted(set(indices)))
    if not idx:
        raise ValueError("empty index set")
    for i in idx:
        if not 0 <= i < a.m:
            raise IndexError(f"hyperplane index {i} out of range for m={a.m}")
    return idx


def closure_of(a: Arrangement, indices: Iterable[int]) -> Flat | None:
    """The flat cut out by the given hyperplanes, or None when their
    intersection is empty."""
    idx = _check_indices(a, indices)
    forms = a.forms()
    red = rref(QMatrix.from_rows([forms[i] for i in idx], a.dim + 1))
    if red.rank == a.dim + 1:
        return None
    basis = QMatrix(red.matrix.rows[: red.rank], a.dim + 1)
    closure = tuple(i for i in range(a.m) if in_row_space(basis, red.pivots, forms[i]))
    return Flat(closure, red.rank, basis)


class _Reducer:
    """Integer-scaled residuals modulo the defining forms of one flat."""

    __slots__ = ("pivots", "free", "scale", "rows")

    def __init__(self, w: Flat, ncols: int):
        self.pivots = w.pivots
        pset = set(self.pivots)
        self.free = [c for c in range(ncols) if c not in pset]
        den = 1
        for r in w.forms.rows:
            for c in self.free:
                d = r[c].denominator
                den = den * d // gcd(den, d)
        self.scale = den
        self.rows = [[int(r[c] * den) for c in self.free] for r in w.forms.rows]

    def key(self, h: tuple[int, ...]) -> tuple[int, ...] | None:
        res = [self.scale * h[c] for c in self.free]
        for p, row in zip(self.pivots, self.rows):
            f = h[p]
            if f:
                res = [x - f * y for x, y in zip(res, row)]
        g = 0
        for x in res:
            g = gcd(g, x)
        if g == 0:
            return None
        if next(x for x in res if x) < 0:
            g = -g
        return tuple(x // g for x in res)


def _extend(w: Flat, h: tuple[int, ...], ncols: int) -> QMatrix:
    """rref basis of W's forms plus h, assuming h is not in their span."""
    rows, pivots = w.forms.rows, w.pivots
    res = [Fraction(x) for x in h]
    for p, row in zip(pivots, rows):
        f = res[p]
        if f:
            res = [x - f * y for x, y in zip(res, row)]
    c = next(j for j, x in enumerate(res) if x)
    lead = res[c]
    new = tuple(x / lead for x in res)
    out = [tuple(x - r[c] * y for x, y in zip(r, new)) if r[c] else r for r in rows]
    out.insert(bisect_left(pivots, c), new)
    return QMatrix(tuple(out), ncols)


@lru_cache(maxsize=256)
def all_flats(a: Arrangement) -> Lattice:
    """Every flat of L'(X, Gamma), by level saturation."""
    n, ncols = a.dim, a.dim + 1
    forms = a.forms()
    level = []
    for i, h in enumerate(forms):
        lead = next(x for x in h if x != 0)
        row = tuple(Fraction(x, lead) for x in h)
        level.append(Flat((i,), 1, QMatrix((row,), ncols)))
    result = list(level)
    codim = 1
    while level and codim < n:
        nxt: dict[tuple[int, ...], Flat] = {}
        for w in level:
            red = _Reducer(w, ncols)
            inside = set(w.closure)
            groups: dict[tuple[int, ...], list[int]] = {}
            for i, h in enumerate(forms):
                if i in inside:
                    continue
                groups.setdefault(red.key(h), []).append(i)
            for members in groups.values():
                closure = tuple(sorted(inside.union(members)))
                if closure not in nxt:
                    nxt[closure] = Flat(closure, codim + 1, _extend(w, forms[members[0]], ncols))
        codim += 1
        level = sorted(nxt.values(), key=Flat.sort_key)
        result.extend(level)
    result.sort(key=Flat.sort_key)
    return Lattice(tuple(result))


def check_member(a: Arrangement, w: Flat) -> None:
    """Raise ValueError unless ``w`` is a flat of ``a``."""
    if w.forms.ncols != a.dim + 1 or w.forms.nrows != w.codim or not 1 <= w.codim <= a.dim:
        raise ValueError("foreign flat: shape does not match the arrangement")
    if any(not 0 <= i < a.m for i in w.closure):
        raise ValueError("foreign flat: closure index out of range")
    forms = a.forms()
    piv = w.pivots
    closure = tuple(i for i in range(a.m) if in_row_space(w.forms, piv, forms[i]))
    if closure != w.closure:
        raise ValueError("foreign flat: closure does not match the arrangement")


def flat_weight(a: Arrangement, w: Flat, check: bool = True) -> Fraction:
    """d(W): total weight of the hyperplanes containing W."""
    if check:
        check_member(a, w)
    return sum((a.weights[i] for i in w.closure), Fraction(0))


@lru_cache(maxsize=256)
def flat_weights(a: Arrangement) -> dict[tuple[int, ...], Fraction]:
    """closure -> d(W) for every flat, summed over a common denominator.

    The table is cached and shared; treat it as read-only.
    """
    den = lcm(*(w.denominator for w in a.weights))
    scaled = [w.numerator * (den // w.denominator) for w in a.weights]
    return {w.closure: Fraction(sum(scaled[i] for i in w.closure), den) for w in all_flats(a)}


def is_snc(a: Arrangement) -> bool:
    return all(len(w.closure) == w.codim for w in all_flats(a))


def is_lc_cy(a: Arrangement) -> bool:
    if a.m == 0 or sum(a.weights) != a.dim + 1:
        return False
    d = flat_weights(a)
    return all(d[w.closure] <= w.codim for w in all_flats(a))


def lc_centers(a: Arrangement) -> list[Flat]:
    """Flats with d(W) = c(W) of an lc Calabi-Yau arrangement."""
    if a.m == 0:
        raise ValueError("lc centers need a nonempty arrangement")
    if sum(a.weights) != a.dim + 1:
        raise ValueError(f"not Calabi-Yau: total degree {sum(a.weights)} != {a.dim + 1}")
    centers = []
    weights = flat_weights(a)
    for w in all_flats(a):
        d = weights[w.closure]
        if d > w.codim:
            raise ValueError(f"not lc: flat {list(w.closure)} has d={d} > c={w.codim}")
        if d == w.codim:
            centers.append(w)
    return centers
