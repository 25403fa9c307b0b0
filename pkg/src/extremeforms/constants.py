"""Sharp constants of multilinear inequalities as finite maximizations.

A convex continuous functional on the unit ball of m-linear forms attains
its maximum at an extreme point, so once the extreme points are enumerated
every such sharp constant reduces to a finite scan. This module provides
the scan (with a deterministic tie-break), the power-sum functionals f_lambda,
the Bohnenblust-Hille and mixed-Littlewood constants they induce, the best
Khinchin constants A_q with a computed branch point, and the two-slot
constant 2^(1 - 1/m).

Inputs stay exact rationals throughout; only the final power and root
evaluations use binary64. Maximizer selection uses a 1e-12 tie window and
then picks the lexicographically largest coefficient tuple, which makes
reports reproducible across platforms and worker counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

from .core import FormVector
from .search import ExtremeSet

TIE_WINDOW = 1e-12

__all__ = [
    "ConstantReport",
    "bh_constant",
    "f_lambda",
    "khinchin_Aq",
    "khinchin_branch_point",
    "maximize_convex",
    "mixed_littlewood_constant",
    "two_slot_constant",
]


# ---------------------------------------------------------------------------
# report type
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConstantReport:
    """Result of maximizing a functional over an extreme-point set.

    value is the binary64 maximum, argmax an attaining extreme point, and
    exact_note an optional recognized closed form (powers of two only; the
    general values are algebraic numbers without a recognized pattern).
    """

    name: str
    m: int
    n: int
    exponent: Fraction | None
    value: float
    argmax: FormVector
    exact_note: str | None = None

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "m": self.m,
            "n": self.n,
            "lambda": None if self.exponent is None else str(self.exponent),
            "value": self.value,
            "argmax": [str(c) for c in self.argmax.coeffs],
            "exact_note": self.exact_note,
        }


def _recognize_closed_form(value: float) -> str | None:
    """Match ``value`` against 2^(p/q) for small p, q; None otherwise."""

    if value <= 0.0:
        return None
    for q in range(1, 13):
        for p in range(-24, 25):
            if math.gcd(abs(p), q) != 1 and not (p == 0 and q == 1):
                continue
            if abs(value - 2.0 ** (p / q)) < 1e-9:
                if p == 0:
                    return "1"
                if q == 1:
                    return f"2^{p}" if p != 1 else "2"
                return f"2^({p}/{q})"
    return None


# ---------------------------------------------------------------------------
# functionals
# ---------------------------------------------------------------------------

def f_lambda(a: FormVector, exponent) -> float:
    """ell_lambda norm of the coefficient vector, lambda >= 1, in binary64.

    The lambda = 1 and lambda = 2 cases are accumulated exactly in rational
    arithmetic before the single final conversion (and square root).
    """

    lam = Fraction(exponent)
    if lam < 1:
        raise ValueError(f"exponent must be >= 1, got {exponent}")
    if lam == 1:
        return float(sum(abs(c) for c in a.coeffs))
    if lam == 2:
        return math.sqrt(float(sum(c * c for c in a.coeffs)))
    lam_f = float(lam)
    total = math.fsum(float(abs(c)) ** lam_f for c in a.coeffs if c != 0)
    if total == 0.0:
        return 0.0
    return total ** (1.0 / lam_f)


# ---------------------------------------------------------------------------
# finite maximization over extreme points
# ---------------------------------------------------------------------------

def maximize_convex(extreme_set: ExtremeSet, functional, name: str,
                    exponent: Fraction | None = None) -> ConstantReport:
    """Maximize a convex continuous functional over an extreme-point set.

    By convexity the result is the maximum over the whole unit ball. All
    candidates within TIE_WINDOW of the best value are considered tied and
    the lexicographically largest coefficient tuple is reported, so the
    argmax is deterministic even when the maximum is attained many times.
    """

    if len(extreme_set) == 0:
        raise ValueError("cannot maximize over an empty extreme-point set")
    best_value = -math.inf
    for point in extreme_set.points:
        value = functional(point)
        if value > best_value:
            best_value = value
    tied = [point for point in extreme_set.points
            if functional(point) >= best_value - TIE_WINDOW]
    argmax = max(tied, key=lambda point: point.coeffs)
    return ConstantReport(name=name, m=extreme_set.m, n=extreme_set.n,
                          exponent=exponent, value=best_value, argmax=argmax)


def _require_matching(m: int, n: int, extreme_set: ExtremeSet) -> None:
    if extreme_set.m != m or extreme_set.n != n:
        raise ValueError(f"extreme set is for (m={extreme_set.m}, "
                         f"n={extreme_set.n}), expected ({m}, {n})")


def bh_constant(m: int, n: int, extreme_set: ExtremeSet) -> ConstantReport:
    """Sharp Bohnenblust-Hille constant: max of f_{2m/(m+1)} over the ball."""

    _require_matching(m, n, extreme_set)
    exponent = Fraction(2 * m, m + 1)
    report = maximize_convex(extreme_set,
                             lambda a: f_lambda(a, exponent),
                             name="bohnenblust-hille", exponent=exponent)
    return replace(report, exact_note=_recognize_closed_form(report.value))


def mixed_littlewood_constant(m: int, n: int,
                              extreme_set: ExtremeSet) -> ConstantReport:
    """Sharp mixed (ell_1, ell_2) Littlewood constant: 2^(1/(2m)) * BH."""

    bh = bh_constant(m, n, extreme_set)
    value = 2 ** (1 / (2 * m)) * bh.value
    return replace(bh, name="mixed-littlewood", value=value,
                   exact_note=_recognize_closed_form(value))


# ---------------------------------------------------------------------------
# Khinchin constants
# ---------------------------------------------------------------------------

@lru_cache(maxsize=1)
def khinchin_branch_point() -> float:
    """The exponent q0 where Gamma((q+1)/2) = sqrt(pi)/2, about 1.8474.

    Below q0 the best Khinchin constant is 2^(1/2 - 1/q); at and above it,
    the Gamma expression takes over. The root is isolated in [1.5, 1.9]:
    the function is positive at 1.5, negative at 1.9, and the bracket stays
    left of the Gamma minimum so the second root at q = 2 is excluded.
    """

    from scipy.optimize import brentq

    target = math.sqrt(math.pi) / 2
    return float(brentq(lambda q: math.gamma((q + 1) / 2) - target,
                        1.5, 1.9, xtol=1e-12))


def khinchin_Aq(q) -> float:
    """Best constant A_q in the Khinchin inequality for 0 < q <= 2."""

    q_f = float(q)
    if not 0 < q_f <= 2:
        raise ValueError(f"Khinchin exponent must lie in (0, 2], got {q}")
    if q_f < khinchin_branch_point():
        return 2.0 ** (0.5 - 1.0 / q_f)
    return math.sqrt(2.0) * (math.gamma((1 + q_f) / 2)
                             / math.sqrt(math.pi)) ** (1.0 / q_f)


# ---------------------------------------------------------------------------
# two-slot constant
# ---------------------------------------------------------------------------

def two_slot_constant(m: int) -> float:
    """The constant 2^(1 - 1/m) (sup over two-valued slot collapses)."""

    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    return 2.0 ** (1.0 - 1.0 / m)
