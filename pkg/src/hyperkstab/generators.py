"""Seeded instance generators.

Randomness only proposes candidates; every "general position" requirement
is certified afterwards with exact lattice checks, and failing candidates
are redrawn.  Output depends only on the parameters and the seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .arrangement import Arrangement, make_arrangement
from .classp import s_join
from .lattice import all_flats, is_snc

KINDS = ("snc", "pencil", "sjoin", "alpha_example", "dim1")

MAX_TRIES = 2000
COEFF_RANGE = 9


class GenerationError(ValueError):
    pass


@dataclass(frozen=True)
class GenSpec:
    kind: str
    params: dict[str, Any] = field(default_factory=dict)


def _weights(weights, m: int) -> list[Fraction]:
    if weights is None:
        raise GenerationError("weights are required")
    if isinstance(weights, (str, int, Fraction)):
        weights = [weights] * m
    ws = [Fraction(w) for w in weights]
    if len(ws) == 1 and m != 1:
        ws = ws * m
    if len(ws) != m:
        raise GenerationError(f"{len(ws)} weights given for {m} hyperplanes")
    if any(w <= 0 for w in ws):
        raise GenerationError("weights must be positive")
    return ws


def _random_form(rng: random.Random, ncols: int, bound: int = COEFF_RANGE) -> list[int]:
    while True:
        v = [rng.randint(-bound, bound) for _ in range(ncols)]
        if any(v):
            return v


def _distinct(forms) -> bool:
    try:
        make_arrangement(len(forms[0]) - 1, forms, [1] * len(forms))
    except ValueError:
        return False
    return True


def gen_snc(n: int, m: int, weights, seed: int = 0) -> Arrangement:
    """m random hyperplanes of P^n in simple normal crossing position."""
    if n < 1 or m < 0:
        raise GenerationError("need n >= 1 and m >= 0")
    ws = _weights(weights, m) if m else []
    rng = random.Random(seed)
    for _ in range(MAX_TRIES):
        forms = [_random_form(rng, n + 1) for _ in range(m)]
        if m and not _distinct(forms):
            continue
        a = make_arrangement(n, forms, ws)
        if is_snc(a):
            return a
    raise GenerationError("could not find an SNC arrangement; genericity resampling exhausted")


def gen_pencil(n: int, m: int, weights, extras: int = 0, seed: int = 0) -> Arrangement:
    """m hyperplanes through a common codimension-2 flat (the axis), then
    ``extras`` hyperplanes in general position.  ``weights`` covers all
    m + extras hyperplanes, pencil members first."""
    if n < 2 or m < 2 or extras < 0:
        raise GenerationError("need n >= 2, m >= 2, extras >= 0")
    ws = _weights(weights, m + extras)
    rng = random.Random(seed)
    for _ in range(MAX_TRIES):
        f, g = _random_form(rng, n + 1), _random_form(rng, n + 1)
        ratios: set = set()
        while len(ratios) < m:
            u, v = rng.randint(-COEFF_RANGE, COEFF_RANGE), rng.randint(-COEFF_RANGE, COEFF_RANGE)
            if (u, v) != (0, 0):
                ratios.add(Fraction(u, v) if v else None)
        members = []
        for r in sorted(ratios, key=lambda x: (x is None, x)):
            u, v = (1, 0) if r is None else (r.numerator, r.denominator)
            members.append([u * x + v * y for x, y in zip(f, g)])
        forms = members + [_random_form(rng, n + 1) for _ in range(extras)]
        if not _distinct(forms):
            continue
        a = make_arrangement(n, forms, ws)
        if _pencil_generic(a, m):
            return a
    raise GenerationError("could not place a generic pencil; genericity resampling exhausted")


def _pencil_generic(a: Arrangement, m: int) -> bool:
    """The axis has closure exactly the m members, flats through it pick up
    one extra per codimension, and everything else is transverse."""
    pencil = set(range(m))
    axis = all_flats(a).get(pencil)
    if axis is None or axis.codim != 2 or set(axis.closure) != pencil:
        return False
    for w in all_flats(a):
        if pencil <= set(w.closure):
            if len(w.closure) - m != w.codim - 2:
                return False
        elif len(w.closure) != w.codim:
            return False
    return True


def gen_dim1(weights: Sequence) -> Arrangement:
    """Distinct points (0:1), (1:0), (1:1), (1:2), ... of P^1."""
    ws = [Fraction(w) for w in weights]
    forms = [[0, 1], [1, 0]] + [[1, k] for k in range(1, len(ws) - 1)]
    return make_arrangement(1, forms[: len(ws)], ws)


def gen_sjoin(factors: Sequence[Arrangement]) -> Arrangement:
    return s_join(factors)


def alpha_lower_bound(n: int, m: int) -> Fraction:
    return Fraction(m * (n - 1), (m - 1) * n)


def gen_alpha_example(n: int, m: int, t, seed: int = 0) -> Arrangement:
    """Cone over a general arrangement of mn hyperplanes of P^{n-1} with
    vertex p = (1:0:...:0), plus m general hyperplanes, all at weight t/m.

    For n = 1 the mn cone components all equal the point p itself, so they
    merge into a single point of weight t.
    """
    t = Fraction(t)
    if n < 1:
        raise GenerationError("need n >= 1")
    if m < n + 1:
        raise GenerationError(f"need m >= n+1 = {n + 1}, got m = {m}")
    if not (alpha_lower_bound(n, m) <= t < 1 and t > 0):
        raise GenerationError(
            f"t = {t} outside [{alpha_lower_bound(n, m)}, 1) for n = {n}, m = {m}"
        )
    w = t / m
    rng = random.Random(seed)
    for _ in range(MAX_TRIES):
        if n == 1:
            cone = [[0, 1]]
            cone_w = [t]
        else:
            xi = [_random_form(rng, n) for _ in range(m * n)]
            if not _distinct(xi):
                continue
            xi_arr = make_arrangement(n - 1, xi, [1] * len(xi))
            if not is_snc(xi_arr):
                continue
            cone = [[0] + h for h in xi]
            cone_w = [w] * len(cone)
        general = []
        for _ in range(m):
            h = _random_form(rng, n + 1)
            if h[0] == 0:
                h[0] = 1
            general.append(h)
        forms = cone + general
        if not _distinct(forms):
            continue
        a = make_arrangement(n, forms, cone_w + [w] * m)
        # the vertex p is the only flat allowed to be non-transverse
        cone_idx = tuple(range(len(cone)))
        if all(
            len(f.closure) == f.codim or (f.closure == cone_idx and f.codim == n)
            for f in all_flats(a)
        ):
            return a
    raise GenerationError("could not place general hyperplanes; genericity resampling exhausted")


def generate(spec: GenSpec) -> Arrangement:
    p = dict(spec.params)
    if spec.kind == "snc":
        return gen_snc(p["n"], p["m"], p.get("weights"), p.get("seed", 0))
    if spec.kind == "pencil":
        return gen_pencil(p["n"], p["m"], p.get("weights"), p.get("extras", 0), p.get("seed", 0))
    if spec.kind == "sjoin":
        return gen_sjoin(p["factors"])
    if spec.kind == "alpha_example":
        return gen_alpha_example(p["n"], p["m"], p["t"], p.get("seed", 0))
    if spec.kind == "dim1":
        return gen_dim1(p["weights"])
    raise GenerationError(f"unknown generator kind {spec.kind!r}; expected one of {KINDS}")
