"""Weighted hyperplane arrangements (P^n, sum d_i H_i) and their JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exactq import format_rat, parse_rat, primitive_vector


class ArrangementError(ValueError):
    """An arrangement violates one of its invariants.

    ``indices`` names the offending hyperplanes, when there are any.
    """

    def __init__(self, message: str, indices: Sequence[int] = ()):
        super().__init__(message)
        self.indices = tuple(indices)


class ParseError(ValueError):
    """Malformed input document; ``where`` is a line/column or field path."""

    def __init__(self, message: str, where: str = ""):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


@dataclass(frozen=True, order=True)
class LinearForm:
    """A hyperplane sum_j coeffs[j] * z_j = 0, stored in canonical form:
    primitive integer vector with positive leading entry."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def is_canonical(self) -> bool:
        return any(self.coeffs) and primitive_vector(self.coeffs) == self.coeffs


def normalize_form(raw: Iterable) -> LinearForm:
    """Canonical form of a nonzero rational covector."""
    vals = [parse_rat(x) if isinstance(x, str) else Fraction(x) for x in raw]
    if not any(vals):
        raise ArrangementError("zero linear form")
    return LinearForm(primitive_vector(vals))


@dataclass(frozen=True)
class Arrangement:
    """The pair (P^dim, sum weights[i] * hyperplanes[i]).

    Construction does not validate; use :func:`make_arrangement` for raw
    input or call :func:`validate` explicitly.
    """

    dim: int
    hyperplanes: tuple[LinearForm, ...] = ()
    weights: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "hyperplanes", tuple(self.hyperplanes))
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))

    @property
    def m(self) -> int:
        return len(self.hyperplanes)

    def __len__(self):
        return len(self.hyperplanes)

    def with_weights(self, weights: Iterable) -> "Arrangement":
        return Arrangement(self.dim, self.hyperplanes, tuple(weights))

    def forms(self) -> list[tuple[int, ...]]:
        return [h.coeffs for h in self.hyperplanes]


def validate(a: Arrangement) -> None:
    """Raise :class:`ArrangementError` on the first violated invariant."""
    if not isinstance(a.dim, int) or a.dim < 0:
        raise ArrangementError(f"dimension must be a non-negative integer, got {a.dim!r}")
    if len(a.hyperplanes) != len(a.weights):
        raise ArrangementError(
            f"length mismatch: {len(a.hyperplanes)} hyperplanes, {len(a.weights)} weights"
        )
    if a.dim == 0 and a.hyperplanes:
        raise ArrangementError("P^0 carries no hyperplanes", range(len(a.hyperplanes)))
    seen: dict[tuple[int, ...], int] = {}
    for i, (h, w) in enumerate(zip(a.hyperplanes, a.weights)):
        if len(h.coeffs) != a.dim + 1:
            raise ArrangementError(
                f"hyperplane {i} has {len(h.coeffs)} coefficients, expected {a.dim + 1}", [i]
            )
        if not any(h.coeffs):
            raise ArrangementError(f"hyperplane {i} is the zero form", [i])
        if not h.is_canonical():
            raise ArrangementError(f"hyperplane {i} is not in canonical form", [i])
        if h.coeffs in seen:
            j = seen[h.coeffs]
            raise ArrangementError(f"hyperplanes {j} and {i} coincide", [j, i])
        seen[h.coeffs] = i
        if w <= 0:
            raise ArrangementError(f"hyperplane {i} has nonpositive weight {format_rat(w)}", [i])


def make_arrangement(dim: int, forms: Iterable[Iterable], weights: Iterable) -> Arrangement:
    """Normalize raw covectors and weights, then validate."""
    hs = []
    for i, f in enumerate(forms):
        try:
            hs.append(normalize_form(f))
        except ArrangementError:
            raise ArrangementError(f"hyperplane {i} is the zero form", [i]) from None
    ws = [parse_rat(w) if isinstance(w, str) else Fraction(w) for w in weights]
    a = Arrangement(dim, tuple(hs), tuple(ws))
    validate(a)
    return a


def total_degree(a: Arrangement) -> Fraction:
    return sum(a.weights, Fraction(0))


# -- JSON document ---------------------------------------------------------


def load_json(data, what: str = "document"):
    if isinstance(data, (bytes, bytearray)):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"{what} is not UTF-8: {exc}") from None
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None


def check_keys(obj, allowed: set[str], required: set[str], where: str) -> None:
    if not isinstance(obj, dict):
        raise ParseError("expected an object", where)
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise ParseError(f"unknown key(s) {unknown}", where)
    missing = sorted(required - set(obj))
    if missing:
        raise ParseError(f"missing key(s) {missing}", where)


def field_rat(value, where: str) -> Fraction:
    try:
        return parse_rat(value)
    except ValueError as exc:
        raise ParseError(str(exc), where) from None


def field_dim(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ParseError(f"expected a non-negative integer, got {value!r}", where)
    return value


def from_document(doc) -> Arrangement:
    check_keys(doc, {"dim", "hyperplanes"}, {"dim", "hyperplanes"}, "$")
    dim = field_dim(doc["dim"], "dim")
    entries = doc["hyperplanes"]
    if not isinstance(entries, list):
        raise ParseError("expected an array", "hyperplanes")
    forms, weights = [], []
    for i, entry in enumerate(entries):
        where = f"hyperplanes[{i}]"
        check_keys(entry, {"coeffs", "weight"}, {"coeffs", "weight"}, where)
        coeffs = entry["coeffs"]
        if not isinstance(coeffs, list) or len(coeffs) != dim + 1:
            raise ParseError(f"expected an array of {dim + 1} rationals", where + ".coeffs")
        forms.append([field_rat(c, f"{where}.coeffs[{j}]") for j, c in enumerate(coeffs)])
        w = field_rat(entry["weight"], where + ".weight")
        if w <= 0:
            raise ParseError(f"weight must be positive, got {format_rat(w)}", where + ".weight")
        weights.append(w)
    return make_arrangement(dim, forms, weights)


def to_document(a: Arrangement) -> dict:
    return {
        "dim": a.dim,
        "hyperplanes": [
            {"coeffs": [str(c) for c in h.coeffs], "weight": format_rat(w)}
            for h, w in zip(a.hyperplanes, a.weights)
        ],
    }


def parse(data) -> Arrangement:
    """Parse a UTF-8 JSON arrangement document (bytes or str)."""
    return from_document(load_json(data, "arrangement"))


def serialize(a: Arrangement) -> bytes:
    return (json.dumps(to_document(a), indent=2) + "\n").encode("utf-8")
