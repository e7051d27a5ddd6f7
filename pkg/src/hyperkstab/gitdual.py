"""Weighted point configurations in the dual projective space.

A hyperplane sum h_j z_j = 0 of P^n is the point (h_0 : ... : h_n) of the
dual space.  :func:`hm_check` decides GIT (semi)stability numerically by
scanning the linear spans of subsets of the points; it is deliberately
written without the lattice module so that it can serve as a second
opinion on :func:`hyperkstab.stability.classify`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .arrangement import (
    Arrangement,
    ParseError,
    check_keys,
    field_dim,
    field_rat,
    load_json,
    normalize_form,
)
from .exactq import QMatrix, format_rat, in_row_space, primitive_vector, rref
from .stability import Classification, Verdict, classify, is_log_fano


@dataclass(frozen=True)
class PointConfiguration:
    dim: int
    points: tuple[tuple[int, ...], ...]
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.points) != len(self.weights):
            raise ValueError(f"{len(self.points)} points but {len(self.weights)} weights")
        pts = []
        for i, p in enumerate(self.points):
            if len(p) != self.dim + 1:
                raise ValueError(f"point {i} has {len(p)} coordinates, expected {self.dim + 1}")
            if not any(p):
                raise ValueError(f"point {i} is the zero vector")
            pts.append(primitive_vector(p))
        ws = tuple(Fraction(w) for w in self.weights)
        for i, w in enumerate(ws):
            if w <= 0:
                raise ValueError(f"point {i} has nonpositive weight {format_rat(w)}")
        object.__setattr__(self, "points", tuple(pts))
        object.__setattr__(self, "weights", ws)

    @property
    def total_weight(self) -> Fraction:
        return sum(self.weights, Fraction(0))


class HMResult(NamedTuple):
    semistable: bool
    stable: bool
    witness: tuple[int, ...] | None
    witness_dim: int | None


def merged(pc: PointConfiguration) -> PointConfiguration:
    """Coincident points collapse to one, weights added, first-seen order."""
    acc: dict[tuple[int, ...], Fraction] = {}
    for p, w in zip(pc.points, pc.weights):
        acc[p] = acc.get(p, Fraction(0)) + w
    return PointConfiguration(pc.dim, tuple(acc), tuple(acc.values()))


def dualize(pc: PointConfiguration) -> Arrangement:
    m = merged(pc)
    return Arrangement(m.dim, tuple(normalize_form(p) for p in m.points), m.weights)


def configuration_of(a: Arrangement) -> PointConfiguration:
    """The dual points of an arrangement's hyperplanes."""
    return PointConfiguration(a.dim, tuple(h.coeffs for h in a.hyperplanes), a.weights)


def _spans(pc: PointConfiguration):
    """Yield (members, dim) for every proper span of a subset of points."""
    n = pc.dim
    ncols = n + 1
    seen: set[tuple[int, ...]] = set()
    frontier = []
    for i in range(len(pc.points)):
        members = tuple(j for j, q in enumerate(pc.points) if q == pc.points[i])
        if members not in seen:
            seen.add(members)
            basis = QMatrix.from_rows([pc.points[i]], ncols)
            red = rref(basis)
            frontier.append((members, QMatrix(red.matrix.rows[:1], ncols), red.pivots))
    dim = 0
    while frontier and dim < n:
        for members, _, _ in frontier:
            yield members, dim
        nxt = []
        for members, basis, pivots in frontier:
            inside = set(members)
            for j, q in enumerate(pc.points):
                if j in inside:
                    continue
                red = rref(QMatrix(basis.rows + (tuple(Fraction(x) for x in q),), ncols))
                new_basis = QMatrix(red.matrix.rows[: red.rank], ncols)
                span = tuple(
                    k for k, r in enumerate(pc.points) if in_row_space(new_basis, red.pivots, r)
                )
                if span not in seen:
                    seen.add(span)
                    nxt.append((span, new_basis, red.pivots))
        frontier = nxt
        dim += 1


def hm_check(pc: PointConfiguration) -> HMResult:
    """Numerical criterion: every proper span V of dimension k must carry
    weight at most (k+1)/(n+1) of the total (strictly, for stability)."""
    total = pc.total_weight
    if total <= 0:
        raise ValueError("total weight must be positive")
    n1 = pc.dim + 1
    violation = equality = None
    for members, k in _spans(pc):
        lhs = n1 * sum((pc.weights[i] for i in members), Fraction(0))
        rhs = (k + 1) * total
        key = (k, members)
        if lhs > rhs and (violation is None or key < violation):
            violation = key
        elif lhs == rhs and (equality is None or key < equality):
            equality = key
    if violation is not None:
        return HMResult(False, False, violation[1], violation[0])
    if equality is not None:
        return HMResult(True, False, equality[1], equality[0])
    return HMResult(True, True, None, None)


def git_classify(pc: PointConfiguration) -> Classification:
    a = dualize(pc)
    if pc.total_weight >= pc.dim + 1:
        return Classification(Verdict.NOT_LOG_FANO, note="total weight is not below n+1")
    ok, reason = is_log_fano(a)
    if not ok:
        return Classification(Verdict.NOT_LOG_FANO, note=reason)
    return classify(a)


# -- JSON document ---------------------------------------------------------


def from_document(doc) -> PointConfiguration:
    check_keys(doc, {"dim", "points"}, {"dim", "points"}, "$")
    dim = field_dim(doc["dim"], "dim")
    entries = doc["points"]
    if not isinstance(entries, list):
        raise ParseError("expected an array", "points")
    points, weights = [], []
    for i, entry in enumerate(entries):
        where = f"points[{i}]"
        check_keys(entry, {"coords", "weight"}, {"coords", "weight"}, where)
        coords = entry["coords"]
        if not isinstance(coords, list) or len(coords) != dim + 1:
            raise ParseError(f"expected an array of {dim + 1} rationals", where + ".coords")
        vals = [field_rat(c, f"{where}.coords[{j}]") for j, c in enumerate(coords)]
        if not any(vals):
            raise ParseError("zero point", where + ".coords")
        w = field_rat(entry["weight"], where + ".weight")
        if w <= 0:
            raise ParseError(f"weight must be positive, got {format_rat(w)}", where + ".weight")
        points.append(primitive_vector(vals))
        weights.append(w)
    if dim == 0 and points:
        raise ParseError("the dual of P^0 carries no hyperplanes", "points")
    return PointConfiguration(dim, tuple(points), tuple(weights))


def to_document(pc: PointConfiguration) -> dict:
    return {
        "dim": pc.dim,
        "points": [
            {"coords": [str(c) for c in p], "weight": format_rat(w)}
            for p, w in zip(pc.points, pc.weights)
        ],
    }


def parse(data) -> PointConfiguration:
    return from_document(load_json(data, "point configuration"))


def serialize(pc: PointConfiguration) -> bytes:
    return (json.dumps(to_document(pc), indent=2) + "\n").encode("utf-8")
