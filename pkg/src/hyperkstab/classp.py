"""Class P: lc Calabi-Yau arrangements that split as joins of klt ones.

An lc CY arrangement is of class P iff at every lc center P of dimension
c-1 the hyperplanes missing P cut out a subspace Q of dimension n-c
disjoint from P.  Q is forced: it must be the intersection of all
components not containing P.  :func:`decompose` then peels off a minimal
lc center P as a klt factor and recurses on Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arrangement import Arrangement, make_arrangement, normalize_form, to_document, total_degree
from .exactq import QMatrix, in_row_space, kernel_basis, rank, rref, stack_rank
from .lattice import Flat, all_flats, flat_weight, flat_weights, is_lc_cy, lc_centers


class ClassPError(RuntimeError):
    """An internal consistency check failed; this indicates a bug."""


@dataclass(frozen=True)
class Subspace:
    """Linear subspace of P^n cut out by the rows of ``forms`` (rref)."""

    forms: QMatrix
    n: int

    @classmethod
    def cut_out_by(cls, rows: Sequence[Sequence], n: int) -> "Subspace":
        red = rref(QMatrix.from_rows(rows, n + 1))
        return cls(QMatrix(red.matrix.rows[: red.rank], n + 1), n)

    @classmethod
    def of_flat(cls, w: Flat, n: int) -> "Subspace":
        return cls(w.forms, n)

    @property
    def dim(self) -> int:
        return self.n - self.forms.nrows

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(r) if x != 0) for r in self.forms.rows)

    def basis(self) -> QMatrix:
        """Rows span the subspace; they give its intrinsic coordinates."""
        return kernel_basis(self.forms)

    def lies_in(self, h: Sequence) -> bool:
        """Whether the subspace is contained in the hyperplane h = 0."""
        return in_row_space(self.forms, self.pivots, h)


@dataclass(frozen=True)
class Factor:
    ambient_dim: int
    arrangement: Arrangement
    embedding: QMatrix

    def to_document(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "arrangement": to_document(self.arrangement) if self.ambient_dim > 0 else None,
            "embedding": self.embedding.to_strings(),
        }


@dataclass(frozen=True)
class Decomposition:
    factors: tuple[Factor, ...]

    def __len__(self):
        return len(self.factors)

    def to_document(self) -> list[dict]:
        return [f.to_document() for f in self.factors]


def is_klt_cy(a: Arrangement) -> bool:
    if a.dim == 0:
        return a.m == 0
    if total_degree(a) != a.dim + 1:
        return False
    d = flat_weights(a)
    return all(d[w.closure] < w.codim for w in all_flats(a))


def _require_lc_center(a: Arrangement, p: Flat) -> None:
    if not is_lc_cy(a):
        raise ValueError("arrangement is not lc Calabi-Yau")
    if all_flats(a).get(p.closure) != p:
        raise ValueError("foreign flat")
    if flat_weight(a, p, check=False) != p.codim:
        raise ValueError(f"flat {list(p.closure)} is not an lc center")


def q_of(a: Arrangement, p: Flat) -> Subspace:
    """Intersection of every hyperplane not containing the lc center p."""
    _require_lc_center(a, p)
    return _q_of(a, p)


def _q_of(a: Arrangement, p: Flat) -> Subspace:
    inside = set(p.closure)
    rows = [h for i, h in enumerate(a.forms()) if i not in inside]
    return Subspace.cut_out_by(rows, a.dim)


def q_condition_holds(a: Arrangement, p: Flat) -> bool:
    """dim Q = n - c and P, Q disjoint, where dim P = c - 1."""
    _require_lc_center(a, p)
    return _q_condition(a, p)


def _q_condition(a: Arrangement, p: Flat) -> bool:
    q = _q_of(a, p)
    n = a.dim
    c = n + 1 - p.codim
    if q.forms.nrows != c:
        return False
    if stack_rank(p.forms, q.forms) != n + 1:
        return False
    dq = sum((w for h, w in zip(a.forms(), a.weights) if q.lies_in(h)), Fraction(0))
    if dq != c:
        raise ClassPError(f"d(Q) = {dq} but c = {c} at lc center {list(p.closure)}")
    return True


def class_p_obstruction(g: Arrangement) -> Flat | None:
    """First flat preventing class P: a non-lc flat or a failing lc center.

    Returns None when ``g`` is of class P.  (P^0, 0) counts as a single
    klt factor.
    """
    if g.dim == 0 and g.m == 0:
        return None
    if total_degree(g) != g.dim + 1:
        raise ValueError(f"total degree {total_degree(g)} != n+1 = {g.dim + 1}")
    d = flat_weights(g)
    for w in all_flats(g):
        if d[w.closure] > w.codim:
            return w
    if rank(QMatrix.from_rows(g.forms(), g.dim + 1)) != g.dim + 1:
        raise ClassPError("lc Calabi-Yau arrangement with nonempty base locus")
    for p in lc_centers(g):
        if not _q_condition(g, p):
            return p
    return None


def is_class_p(g: Arrangement) -> bool:
    return class_p_obstruction(g) is None


def restrict(a: Arrangement, s: Subspace) -> Arrangement:
    """Intersect the components not containing s with s, in the intrinsic
    coordinates given by ``s.basis()``.  Coinciding traces add up."""
    if s.dim < 0:
        raise ValueError("cannot restrict to the empty subspace")
    if s.dim == 0:
        return Arrangement(0)
    basis = s.basis().rows
    merged: dict = {}
    for h, w in zip(a.forms(), a.weights):
        image = [sum((b * x for b, x in zip(row, h)), Fraction(0)) for row in basis]
        if not any(image):
            continue
        f = normalize_form(image)
        merged[f] = merged.get(f, Fraction(0)) + w
    return Arrangement(s.dim, tuple(merged), tuple(merged.values()))


def _split(g: Arrangement, embedding: QMatrix) -> list[Factor]:
    if g.dim == 0:
        return [Factor(0, Arrangement(0), embedding)]
    centers = lc_centers(g)
    if not centers:
        if not is_klt_cy(g):
            raise ClassPError("factor without lc centers is not klt Calabi-Yau")
        return [Factor(g.dim, g, embedding)]
    p = min(centers, key=lambda w: (-w.codim, w.closure))
    big_p = Subspace.of_flat(p, g.dim)
    big_q = _q_of(g, p)
    xi_p = restrict(g, big_p)
    if not is_klt_cy(xi_p):
        raise ClassPError(f"minimal lc center {list(p.closure)} does not carry a klt factor")
    head = Factor(big_p.dim, xi_p, big_p.basis() @ embedding)
    return [head] + _split(restrict(g, big_q), big_q.basis() @ embedding)


def decompose(g: Arrangement) -> Decomposition:
    """Factor a class P arrangement into klt Calabi-Yau pieces."""
    if not is_class_p(g):
        raise ValueError("arrangement is not of class P")
    factors = _split(g, QMatrix.identity(g.dim + 1))
    order = sorted(range(len(factors)), key=lambda i: (factors[i].ambient_dim, i))
    factors = [factors[i] for i in order]
    if sum(f.ambient_dim + 1 for f in factors) != g.dim + 1:
        raise ClassPError("factor dimensions do not add up")
    return Decomposition(tuple(factors))


def s_join(factors: Sequence[Arrangement]) -> Arrangement:
    """S((P^{n_1}, Xi_1), ..., (P^{n_s}, Xi_s)) in block coordinates.

    A P^0 factor is given as the empty arrangement of dimension 0 and
    contributes its single block coordinate at weight 1.
    """
    if not factors:
        raise ValueError("need at least one factor")
    for i, f in enumerate(factors):
        if not is_klt_cy(f):
            raise ValueError(f"factor {i} is not a klt Calabi-Yau arrangement")
    n = sum(f.dim + 1 for f in factors) - 1
    if n == 0:
        return Arrangement(0)
    forms, weights = [], []
    offset = 0
    for f in factors:
        if f.dim == 0:
            row = [0] * (n + 1)
            row[offset] = 1
            forms.append(row)
            weights.append(Fraction(1))
        else:
            for h, w in zip(f.hyperplanes, f.weights):
                row = [0] * (n + 1)
                row[offset : offset + f.dim + 1] = h.coeffs
                forms.append(row)
                weights.append(w)
        offset += f.dim + 1
    return make_arrangement(n, forms, weights)
