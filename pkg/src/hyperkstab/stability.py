"""K-stability verdicts for log Fano hyperplane arrangements.

Everything is decided by exact comparison of the flat ratios c(W)/d(W)
against tau = (n+1)/d_total.  Polystability in the equality case is
handed to :mod:`hyperkstab.classp`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from . import classp
from .arrangement import Arrangement, total_degree
from .lattice import Flat, all_flats, check_member, flat_weight, flat_weights, is_snc


class Verdict(str, enum.Enum):
    NOT_LOG_FANO = "not_log_fano"
    UNSTABLE = "unstable"
    SEMISTABLE_NOT_POLYSTABLE = "semistable_not_polystable"
    POLYSTABLE_NOT_K_STABLE = "polystable_not_k_stable"
    UNIFORMLY_K_STABLE = "uniformly_k_stable"

    @property
    def semistable(self) -> bool:
        return self in _SEMISTABLE

    @property
    def polystable(self) -> bool:
        return self in (Verdict.POLYSTABLE_NOT_K_STABLE, Verdict.UNIFORMLY_K_STABLE)


_SEMISTABLE = (
    Verdict.SEMISTABLE_NOT_POLYSTABLE,
    Verdict.POLYSTABLE_NOT_K_STABLE,
    Verdict.UNIFORMLY_K_STABLE,
)


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    witness: Flat | None = None
    note: str | None = None

    @property
    def semistable(self) -> bool:
        return self.verdict.semistable

    @property
    def uniformly_stable(self) -> bool:
        return self.verdict is Verdict.UNIFORMLY_K_STABLE


@dataclass(frozen=True)
class BetaValue:
    value: Fraction
    c: int
    dW: Fraction
    d: Fraction


class StabilityFlags(NamedTuple):
    semistable: bool
    uniformly_stable: bool


def lct(a: Arrangement) -> Fraction:
    """lct(P^n, 0; Gamma) = min over flats of c(W)/d(W)."""
    if a.m == 0:
        raise ValueError("lct is undefined for the empty arrangement")
    d = flat_weights(a)
    return min(Fraction(w.codim) / d[w.closure] for w in all_flats(a))


def is_log_fano(a: Arrangement) -> tuple[bool, str]:
    d = total_degree(a)
    if d >= a.dim + 1:
        return False, f"total degree {d} is not below n+1 = {a.dim + 1}"
    weights = flat_weights(a)
    for w in all_flats(a):
        dw = weights[w.closure]
        if dw >= w.codim:
            return False, f"not klt along flat {list(w.closure)}: d={dw} >= c={w.codim}"
    return True, "log Fano"


def scale_to_cy(a: Arrangement) -> Arrangement:
    """Rescale the weights so the total degree is exactly n+1."""
    if a.m == 0:
        raise ValueError("cannot rescale the empty arrangement")
    factor = Fraction(a.dim + 1) / total_degree(a)
    return a.with_weights(w * factor for w in a.weights)


def classify(a: Arrangement) -> Classification:
    if a.m == 0:
        return Classification(Verdict.POLYSTABLE_NOT_K_STABLE, note=f"(P^{a.dim}, 0)")
    ok, reason = is_log_fano(a)
    if not ok:
        return Classification(Verdict.NOT_LOG_FANO, note=reason)
    tau = Fraction(a.dim + 1) / total_degree(a)
    lowest, low_flat = None, None
    equal: Flat | None = None
    weights = flat_weights(a)
    for w in all_flats(a):
        r = Fraction(w.codim) / weights[w.closure]
        if lowest is None or r < lowest:
            lowest, low_flat = r, w
        # deepest equality flat, earliest in lattice order among those
        if r == tau and (equal is None or w.codim > equal.codim):
            equal = w
    if lowest < tau:
        return Classification(Verdict.UNSTABLE, witness=low_flat)
    if lowest > tau:
        return Classification(Verdict.UNIFORMLY_K_STABLE)
    if classp.is_class_p(scale_to_cy(a)):
        return Classification(Verdict.POLYSTABLE_NOT_K_STABLE, witness=equal)
    return Classification(Verdict.SEMISTABLE_NOT_POLYSTABLE, witness=equal)


def beta_hat_blowup(a: Arrangement, w: Flat) -> BetaValue:
    """beta-hat of the exceptional divisor of the blowup of P^n along W."""
    ok, reason = is_log_fano(a)
    if not ok:
        raise ValueError(f"not log Fano: {reason}")
    check_member(a, w)
    n1 = a.dim + 1
    c = w.codim
    dw = flat_weight(a, w, check=False)
    d = total_degree(a)
    return BetaValue((c * d - n1 * dw) / (n1 * (c - dw)), c, dw, d)


def oracle_dim1(weights: Sequence) -> StabilityFlags:
    """Weighted distinct points on P^1: compare each weight with the rest."""
    ws = [Fraction(w) for w in weights]
    for w in ws:
        if not 0 < w < 1:
            raise ValueError(f"weight {w} outside (0, 1)")
    total = sum(ws, Fraction(0))
    return StabilityFlags(
        all(total - w >= w for w in ws),
        all(total - w > w for w in ws),
    )


def oracle_snc(a: Arrangement) -> StabilityFlags:
    """Subset-sum inequalities k * sum(d) >= (n+1) * (sum of k weights)."""
    if not is_snc(a):
        raise ValueError("arrangement is not simple normal crossing")
    ok, reason = is_log_fano(a)
    if not ok:
        raise ValueError(f"not log Fano: {reason}")
    total = total_degree(a)
    n1 = a.dim + 1
    desc = sorted(a.weights, reverse=True)
    semi = strict = True
    top = Fraction(0)
    for k in range(1, min(a.dim, a.m) + 1):
        top += desc[k - 1]
        lhs, rhs = k * total, n1 * top
        semi &= lhs >= rhs
        strict &= lhs > rhs
    return StabilityFlags(semi, strict)

