"""Exact rational arithmetic and linear algebra over Q.

Rationals are :class:`fractions.Fraction`; matrices are immutable
row-major tuples of fractions.  Nothing in this package ever touches a
float.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, NamedTuple, Sequence

Rat = Fraction

_RAT_RE = re.compile(r"^(-?)(\d+)(?:/(\d+))?$")


def parse_rat(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (sign on ``p`` only) into a Fraction.

    Python ints are accepted as well; floats and bools are rejected.
    """
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a rational string: {text!r}")
    match = _RAT_RE.match(text.strip())
    if match is None:
        raise ValueError(f"not a rational string: {text!r}")
    sign, num, den = match.groups()
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator: {text!r}")
    value = Fraction(int(num), int(den) if den is not None else 1)
    return -value if sign else value


def format_rat(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def primitive_vector(vec: Iterable) -> tuple[int, ...]:
    """Scale a nonzero rational vector to a primitive integer vector whose
    first nonzero entry is positive."""
    vals = [Fraction(v) for v in vec]
    lcm = 1
    for v in vals:
        lcm = lcm * v.denominator // gcd(lcm, v.denominator)
    ints = [int(v * lcm) for v in vals]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        g = -g
    return tuple(x // g for x in ints)


@dataclass(frozen=True)
class QMatrix:
    """Rectangular matrix with exact rational entries."""

    rows: tuple[tuple[Fraction, ...], ...]
    ncols: int

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], ncols: int | None = None) -> "QMatrix":
        tup = tuple(tuple(Fraction(x) for x in r) for r in rows)
        if ncols is None:
            if not tup:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(tup[0])
        for r in tup:
            if len(r) != ncols:
                raise ValueError(f"ragged matrix: row of length {len(r)}, expected {ncols}")
        return cls(tup, ncols)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "QMatrix":
        return cls(tuple((Fraction(0),) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(
            tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)), n
        )

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def transpose(self) -> "QMatrix":
        return QMatrix(
            tuple(tuple(r[j] for r in self.rows) for j in range(self.ncols)), self.nrows
        )

    def stack(self, other: "QMatrix") -> "QMatrix":
        if self.ncols != other.ncols:
            raise ValueError(f"column mismatch: {self.ncols} vs {other.ncols}")
        return QMatrix(self.rows + other.rows, self.ncols)

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
        cols = other.transpose().rows
        return QMatrix(
            tuple(tuple(sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols) for r in self.rows),
            other.ncols,
        )

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def to_strings(self) -> list[list[str]]:
        return [[format_rat(x) for x in r] for r in self.rows]


class RREF(NamedTuple):
    matrix: QMatrix
    rank: int
    pivots: tuple[int, ...]


def rref(m: QMatrix) -> RREF:
    """Reduced row echelon form.  Pivot choice: leftmost nonzero column,
    topmost nonzero row.  Zero rows are kept at the bottom."""
    a = [list(r) for r in m.rows]
    nrows, ncols = m.nrows, m.ncols
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        lead = a[r][c]
        if lead != 1:
            a[r] = [x / lead for x in a[r]]
        row = a[r]
        for i in range(nrows):
            if i != r:
                f = a[i][c]
                if f != 0:
                    a[i] = [x - f * y for x, y in zip(a[i], row)]
        pivots.append(c)
        r += 1
    return RREF(QMatrix(tuple(tuple(x) for x in a), ncols), r, tuple(pivots))


def rank(m: QMatrix) -> int:
    return rref(m).rank


def row_basis(m: QMatrix) -> QMatrix:
    """Nonzero rows of rref(m): the canonical basis of the row space."""
    red = rref(m)
    return QMatrix(red.matrix.rows[: red.rank], m.ncols)


def kernel_basis(m: QMatrix) -> QMatrix:
    """Basis of the right kernel, one row per free column of rref(m)."""
    red = rref(m)
    pivots = red.pivots
    pivot_set = set(pivots)
    basis = []
    for f in range(m.ncols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * m.ncols
        v[f] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            v[pc] = -red.matrix.rows[row_idx][f]
        basis.append(tuple(v))
    return QMatrix(tuple(basis), m.ncols)


def stack_rank(a: QMatrix, b: QMatrix) -> int:
    """Rank of ``a`` stacked over ``b``."""
    return rref(a.stack(b)).rank


def in_row_space(basis_rref: QMatrix, pivots: Sequence[int], vec: Sequence) -> bool:
    """Whether ``vec`` lies in the row space of a matrix already in rref."""
    res = [Fraction(x) for x in vec]
    for row, pc in zip(basis_rref.rows, pivots):
        f = res[pc]
        if f != 0:
            res = [x - f * y for x, y in zip(res, row)]
    return not any(res)
