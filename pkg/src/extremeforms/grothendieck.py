"""Truncated Grothendieck lower bounds and the constrained KKT check.

The truncated constant for bilinear forms on R^m with vectors restricted
to the sphere S^(d-1) is an exact finite maximum over the extreme points
of the bilinear unit ball; the inner sphere maximization is solved exactly
by sign enumeration when d = 1 and otherwise by alternating maximization
(each half-problem has the closed-form normalize-the-image solution) over
seeded random restarts. Values from the alternating solver are therefore
certified lower bounds, never claimed maxima.

The KKT check maximizes f(a,b,c,d,h) = sqrt(a^2+b^2+2h^2) +
sqrt(c^2+d^2+2h^2) over the constraint region a+b+c+d = 1, all pairwise
sums of {a,b,c,d} nonnegative, h^2 <= bcd+acd+abd+abc; the maximum is 1,
which is what makes the associated 2x2 constants collapse to 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from .constants import ConstantReport
from .core import FormVector
from .search import ExtremeSet, InternalInvariantError

SIGN_ENUM_LIMIT = 20
CONVERGENCE_TOL = 1e-12
MAX_ITERATIONS = 1000
_MONOTONE_SLACK = 1e-9

__all__ = [
    "BleiPoint",
    "SphereConfig",
    "blei_kkt_max",
    "blei_objective",
    "inner_sphere_max",
    "kg_lower_bound",
]


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SphereConfig:
    """A pair of unit-vector families on S^(d-1) and the attained value."""

    x_vectors: tuple
    y_vectors: tuple
    value: float

    def __post_init__(self):
        xs = tuple(tuple(float(c) for c in v) for v in self.x_vectors)
        ys = tuple(tuple(float(c) for c in v) for v in self.y_vectors)
        object.__setattr__(self, "x_vectors", xs)
        object.__setattr__(self, "y_vectors", ys)
        for vector in xs + ys:
            norm = math.sqrt(math.fsum(c * c for c in vector))
            if abs(norm - 1.0) > 1e-12:
                raise ValueError(f"vector {vector} has norm {norm}, "
                                 "expected 1 within 1e-12")


@dataclass(frozen=True)
class BleiPoint:
    """A feasible point of the constrained KKT problem.

    Constraint violations beyond the stated tolerances raise immediately;
    points are never clamped into feasibility.
    """

    a: float
    b: float
    c: float
    d: float
    h: float

    def __post_init__(self):
        a, b, c, d, h = (float(self.a), float(self.b), float(self.c),
                         float(self.d), float(self.h))
        for name, value in zip("abcdh", (a, b, c, d, h)):
            object.__setattr__(self, name, value)
        if abs(a + b + c + d - 1.0) > 1e-10:
            raise ValueError(f"coordinates sum to {a + b + c + d}, not 1")
        pairs = {"a+b": a + b, "c+d": c + d, "a+c": a + c,
                 "b+d": b + d, "a+d": a + d, "b+c": b + c}
        for label, total in pairs.items():
            if total < -1e-12:
                raise ValueError(f"pair sum {label} = {total} is negative")
        bound = b * c * d + a * c * d + a * b * d + a * b * c
        if h * h > bound + 1e-12:
            raise ValueError(f"h^2 = {h * h} exceeds the cubic bound {bound}")


def blei_objective(point: BleiPoint) -> float:
    """f(a,b,c,d,h) = sqrt(a^2+b^2+2h^2) + sqrt(c^2+d^2+2h^2)."""

    h2 = 2.0 * point.h * point.h
    return (math.sqrt(point.a ** 2 + point.b ** 2 + h2)
            + math.sqrt(point.c ** 2 + point.d ** 2 + h2))


# ---------------------------------------------------------------------------
# inner sphere maximization
# ---------------------------------------------------------------------------

def _unit(d: int) -> tuple:
    return (1.0,) + (0.0,) * (d - 1)


def _sign_enumeration(coeffs, k: int):
    """Exact d = 1 maximum over sign vectors, in rational arithmetic."""

    rows = [[coeffs[i * k + j] for j in range(k)] for i in range(k)]
    best_value = None
    best_x = best_y = None
    for x in product((1, -1), repeat=k):
        columns = [sum(x[i] * rows[i][j] for i in range(k))
                   for j in range(k)]
        value = sum(abs(c) for c in columns)
        if best_value is None or value > best_value:
            best_value = value
            best_x = x
            best_y = tuple(1 if c >= 0 else -1 for c in columns)
    return best_value, best_x, best_y


def _half_step(matrix, sources, previous):
    """Closed-form half-problem solution: normalize the image rows."""

    image = matrix @ sources
    norms = np.linalg.norm(image, axis=1)
    out = previous.copy()
    moving = norms > 1e-300
    out[moving] = image[moving] / norms[moving, None]
    return out


def inner_sphere_max(T: FormVector, d: int, restarts: int = 64,
                     seed: int = 0) -> SphereConfig:
    """Maximize sum_ij T_ij <x_i, y_j> over unit vectors on S^(d-1).

    Exact by sign enumeration when d = 1 (and the form is small enough);
    otherwise alternating maximization from seeded random starts, which
    yields a certified lower bound. Identical (seed, restarts) inputs give
    identical outputs.
    """

    if T.m != 2:
        raise ValueError(f"inner_sphere_max needs a bilinear form, got m={T.m}")
    if d < 1:
        raise ValueError(f"sphere dimension d must be >= 1, got {d}")
    if restarts < 1:
        raise ValueError(f"restarts must be >= 1, got {restarts}")
    k = T.n
    if all(c == 0 for c in T.coeffs):
        vectors = tuple(_unit(d) for _ in range(k))
        return SphereConfig(vectors, vectors, 0.0)
    if d == 1 and k <= SIGN_ENUM_LIMIT:
        value, x_signs, y_signs = _sign_enumeration(T.coeffs, k)
        return SphereConfig(tuple((float(s),) for s in x_signs),
                            tuple((float(s),) for s in y_signs),
                            float(value))

    matrix = np.array([[float(T.coeffs[i * k + j]) for j in range(k)]
                       for i in range(k)])
    best = None
    for child in np.random.SeedSequence(seed).spawn(restarts):
        rng = np.random.default_rng(child)
        y_vectors = rng.normal(size=(k, d))
        norms = np.linalg.norm(y_vectors, axis=1)
        while (norms < 1e-12).any():
            y_vectors[norms < 1e-12] = rng.normal(
                size=(int((norms < 1e-12).sum()), d))
            norms = np.linalg.norm(y_vectors, axis=1)
        y_vectors /= norms[:, None]
        x_vectors = np.zeros((k, d))
        x_vectors[:, 0] = 1.0

        value = -math.inf
        for _ in range(MAX_ITERATIONS):
            x_vectors = _half_step(matrix, y_vectors, x_vectors)
            half = float(np.sum(x_vectors * (matrix @ y_vectors)))
            if half + _MONOTONE_SLACK < value:
                raise InternalInvariantError(
                    f"x half-step decreased the objective: {value} -> {half}")
            y_vectors = _half_step(matrix.T, x_vectors, y_vectors)
            full = float(np.sum(y_vectors * (matrix.T @ x_vectors)))
            if full + _MONOTONE_SLACK < half:
                raise InternalInvariantError(
                    f"y half-step decreased the objective: {half} -> {full}")
            if abs(full - value) <= CONVERGENCE_TOL * max(1.0, abs(full)):
                value = full
                break
            value = full
        if best is None or value > best[0]:
            best = (value, x_vectors.copy(), y_vectors.copy())

    value, x_vectors, y_vectors = best
    return SphereConfig(tuple(map(tuple, x_vectors)),
                        tuple(map(tuple, y_vectors)), value)


# ---------------------------------------------------------------------------
# truncated constants
# ---------------------------------------------------------------------------

def kg_lower_bound(m: int, d: int, extreme_set: ExtremeSet | None = None,
                   restarts: int = 64, seed: int = 0) -> ConstantReport:
    """Lower bound for the truncated Grothendieck constant K_G^(m)(d).

    Scans every extreme point of the bilinear ball on R^m (the outer
    maximum is exactly a finite maximum there) and takes the best inner
    sphere value. Exact at d = 1, where the result is 1; for d >= 2 the
    inner solver is heuristic, so the report is labeled a lower bound.
    Ties resolve to the earliest point in canonical order.
    """

    if extreme_set is None:
        from .search import extreme_points

        extreme_set = extreme_points(2, m)
    if extreme_set.m != 2 or extreme_set.n != m:
        raise ValueError(f"extreme set is for (m={extreme_set.m}, "
                         f"n={extreme_set.n}), expected (2, {m})")
    if len(extreme_set) == 0:
        raise ValueError("cannot bound over an empty extreme-point set")
    best_value = -math.inf
    best_point = None
    for point in extreme_set.points:
        config = inner_sphere_max(point, d, restarts=restarts, seed=seed)
        if config.value > best_value:
            best_value = config.value
            best_point = point
    return ConstantReport(name=f"kg-lower-bound-d{d}", m=2, n=m,
                          exponent=None, value=best_value, argmax=best_point,
                          exact_note="1" if d == 1 else None)


# ---------------------------------------------------------------------------
# constrained KKT maximization
# ---------------------------------------------------------------------------

def _blei_candidate(a: float, b: float, c: float) -> float | None:
    """Objective at (a,b,c,1-a-b-c) with the optimal h, None if infeasible."""

    d = 1.0 - a - b - c
    bound = b * c * d + a * c * d + a * b * d + a * b * c
    if bound < -1e-12:
        return None
    h = math.sqrt(max(bound, 0.0))
    try:
        point = BleiPoint(a, b, c, d, h)
    except ValueError:
        return None
    return blei_objective(point)


def blei_kkt_max(grid_density: int = 24, refine_iters: int = 200) -> float:
    """Maximize the KKT objective over the feasible region; expected 1.

    Dense grid over (a,b,c) in [-1/2, 3/2]^3 (the projection of the
    feasible region), d eliminated by the simplex equality and h set to
    its cubic bound (the objective is increasing in h^2), then projected
    coordinate ascent with step halving from the best grid points.
    """

    if grid_density < 8:
        raise ValueError(f"grid_density must be >= 8, got {grid_density}")
    grid = np.linspace(-0.5, 1.5, grid_density)
    scored = []
    for a in grid:
        for b in grid:
            for c in grid:
                value = _blei_candidate(float(a), float(b), float(c))
                if value is not None:
                    scored.append((value, (float(a), float(b), float(c))))
    if not scored:
        raise InternalInvariantError("no feasible grid point found")
    scored.sort(key=lambda item: item[0], reverse=True)
    best_value = scored[0][0]

    spacing = float(grid[1] - grid[0])
    for start_value, start in scored[:8]:
        point = list(start)
        value = start_value
        step = spacing
        for _ in range(refine_iters):
            improved = False
            for index in range(3):
                for delta in (step, -step):
                    candidate = list(point)
                    candidate[index] += delta
                    trial = _blei_candidate(*candidate)
                    if trial is not None and trial > value + 1e-15:
                        point, value = candidate, trial
                        improved = True
            if not improved:
                step *= 0.5
                if step < 1e-10:
                    break
        best_value = max(best_value, value)
    return best_value
