"""Constructive enumeration of the extreme points of the unit ball.

A coefficient vector a (an m-linear form on R^n) of sup norm at most one is
extreme in the unit ball exactly when the tensor vertices v with
|<a, v>| = 1 span R^(n^m). That criterion drives a four-step pipeline:

1. enumerate bases of R^(n^m) drawn from the tensor-vertex set V that
   contain the all-ones anchor w(e, ..., e);
2. for each basis H and each sign vector f solve H a^t = f^t exactly;
3. keep the solutions whose sup norm is at most one (checked against all
   of V);
4. expand the survivors by the sign-group orbit, deduplicate, sort.

Every solution kept in step 3 is tight on an entire basis, so it is a true
extreme point regardless of how much of step 1 has completed; budgeted
runs therefore return honest partial subsets together with a resume
cursor.

Two exact-arithmetic reductions keep the search small without changing the
result set. Bases differing only by row negations produce identical
solution sets as f ranges over all sign vectors, so only rows from one
representative per antipodal pair {v, -v} are enumerated. And the anchor
entry of f is pinned to +1: the omitted half yields exactly the negated
solutions, which step 4 restores because the all-minus-ones diagonal lies
in the group.

The hot loop works on integer numerators u with a common denominator D
(the basis determinant, via the exact adjugate); Fractions appear only at
the final conversion. For n = 2 the representative rows are mutually
orthogonal, the anchored basis is unique (a Walsh-Hadamard matrix), and
every solution is automatically extreme; planar_extreme_points exploits
that shortcut to reach 2^(2^m) points directly.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Iterator, Sequence

import numpy as np

from extremeforms.core import (
    FormVector,
    ResourceBudgetError,
    enumerate_tensor_vertices,
    inner,
)

RESUME_FORMAT_VERSION = 1
MAX_PIPELINE_DIMENSION = 16  # largest n^m the general pipeline will attempt


class BudgetExceeded(RuntimeError):
    """Search budget ran out; carries a resume cursor and any partial set."""

    def __init__(self, message, resume, partial=None):
        super().__init__(message)
        self.resume = resume
        self.partial = partial


class InternalInvariantError(RuntimeError):
    """An invariant the pipeline guarantees by construction failed."""


# ---------------------------------------------------------------------------
# result types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BasisMatrix:
    """Square matrix whose rows are independent tensor vertices.

    Rows follow the canonical order of V, so the all-ones anchor sits at
    position 0. Invertibility is the producer's contract; construction
    validates shape, sign entries, distinctness, and the anchor.
    """

    rows: tuple
    anchor_position: int
    m: int
    n: int

    def __post_init__(self):
        size = self.n ** self.m
        if len(self.rows) != size:
            raise ValueError(f"{len(self.rows)} rows for dimension {size}")
        for row in self.rows:
            if len(row) != size or any(c not in (-1, 1) for c in row):
                raise ValueError("rows must be sign vectors of length n^m")
        if len(set(self.rows)) != len(self.rows):
            raise ValueError("duplicate rows")
        if self.rows[self.anchor_position] != tuple([1] * size):
            raise ValueError("anchor row is not the all-ones tensor")


@dataclass(frozen=True)
class InBallResult:
    """Outcome of the exact sup-norm test, with a violating witness if any."""

    inside: bool
    value: Fraction
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.inside


@dataclass(frozen=True)
class ExtremalityCertificate:
    """Exact evidence for or against extremality of a coefficient vector.

    When the point is inside the ball but not extreme, midpoint_offset is a
    nonzero vector b with both a + b and a - b still in the ball, which
    exhibits a as a proper midpoint.
    """

    extreme: bool
    in_ball: bool
    norm_value: Fraction
    norm_witness: tuple | None
    dimension: int
    tight_count: int
    tight_rank: int
    tight_basis: tuple
    midpoint_offset: FormVector | None

    def __bool__(self) -> bool:
        return self.extreme


@dataclass(frozen=True)
class ExtremeSet:
    """Canonically sorted, deduplicated set of extreme coefficient vectors.

    complete=False marks a budget-truncated run; the points present are
    still genuine extreme points. provenance is an optional per-point
    record and is not populated by the enumerators (certificates are
    recomputable on demand and cheaper than storing search history).
    """

    m: int
    n: int
    points: tuple
    provenance: tuple | None = field(default=None, compare=False)
    complete: bool = field(default=True, compare=False)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, item) -> bool:
        if isinstance(item, FormVector):
            key = item.coeffs
        else:
            key = tuple(Fraction(c) for c in item)
        return key in self.coefficient_tuples()

    def coefficient_tuples(self) -> frozenset:
        try:
            return self._keys
        except AttributeError:
            keys = frozenset(p.coeffs for p in self.points)
            object.__setattr__(self, "_keys", keys)
            return keys


# ---------------------------------------------------------------------------
# exact linear algebra helpers
# ---------------------------------------------------------------------------

class _IntEliminator:
    """Incremental fraction-free Gaussian elimination over the integers.

    Rows are reduced against previously accepted rows in insertion order;
    each accepted row keeps a private pivot column, so a new row is
    independent exactly when its reduction is nonzero. push/pop follow the
    depth-first search stack.
    """

    def __init__(self):
        self.rows = []
        self.pivots = []

    def _reduced(self, row):
        row = list(row)
        for stored, pivot in zip(self.rows, self.pivots):
            coeff = row[pivot]
            if coeff:
                lead = stored[pivot]
                row = [x * lead - y * coeff for x, y in zip(row, stored)]
                g = 0
                for x in row:
                    g = math.gcd(g, x)
                if g > 1:
                    row = [x // g for x in row]
        return row

    def push(self, row) -> bool:
        reduced = self._reduced(row)
        for col, x in enumerate(reduced):
            if x:
                self.rows.append(reduced)
                self.pivots.append(col)
                return True
        return False

    def pop(self):
        self.rows.pop()
        self.pivots.pop()


def _fraction_solve(rows, rhs):
    """Exact solution of a square system by Gauss-Jordan over Fractions."""
    size = len(rows)
    aug = [[Fraction(x) for x in row] + [Fraction(rhs[i])]
           for i, row in enumerate(rows)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if aug[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular system")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        lead = aug[col][col]
        aug[col] = [x / lead for x in aug[col]]
        for r in range(size):
            if r != col and aug[r][col] != 0:
                coeff = aug[r][col]
                aug[r] = [x - coeff * y for x, y in zip(aug[r], aug[col])]
    return tuple(aug[r][size] for r in range(size))


def _exact_adjugate(mat):
    """Exact (determinant, adjugate) of an integer matrix via Fractions."""
    size = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == r))
                                         for i in range(size)]
           for r, row in enumerate(mat)]
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if aug[r][col] != 0), None)
        if pivot is None:
            return 0, None
        if pivot != col:
            aug[col], aug[pivot] = aug[pivot], aug[col]
            det = -det
        lead = aug[col][col]
        det *= lead
        aug[col] = [x / lead for x in aug[col]]
        for r in range(size):
            if r != col and aug[r][col] != 0:
                coeff = aug[r][col]
                aug[r] = [x - coeff * y for x, y in zip(aug[r], aug[col])]
    det_int = int(det)
    adj = [[aug[r][size + c] * det_int for c in range(size)]
           for r in range(size)]
    out = np.empty((size, size), dtype=np.int64)
    for r in range(size):
        for c in range(size):
            value = adj[r][c]
            if value.denominator != 1:
                raise InternalInvariantError("adjugate is not integral")
            out[r, c] = int(value)
    return det_int, out


def _det_adjugate(mat):
    """(|det|, adjugate) of an invertible sign matrix, orientation fixed.

    Float inverse guess verified exactly in integers; on any mismatch the
    exact Fraction route takes over, so the result is always bit-exact.
    """
    size = mat.shape[0]
    as_float = mat.astype(np.float64)
    detf = np.linalg.det(as_float)
    det = int(round(detf))
    adj = None
    if det != 0:
        guess = np.rint(np.linalg.inv(as_float) * detf).astype(np.int64)
        if np.array_equal(mat @ guess, det * np.eye(size, dtype=np.int64)):
            adj = guess
    if adj is None:
        det, adj = _exact_adjugate(mat.tolist())
        if det == 0:
            raise InternalInvariantError("basis matrix is singular")
    if det < 0:
        det, adj = -det, -adj
    return det, adj


def _null_vector(rows, width):
    """A nonzero rational vector orthogonal to every given row."""
    mat = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    rank = 0
    for col in range(width):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col] != 0),
                     None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        lead = mat[rank][col]
        mat[rank] = [x / lead for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                coeff = mat[r][col]
                mat[r] = [x - coeff * y for x, y in zip(mat[r], mat[rank])]
        pivots.append(col)
        rank += 1
    free = next(c for c in range(width) if c not in pivots)
    out = [Fraction(0)] * width
    out[free] = Fraction(1)
    for r, col in enumerate(pivots):
        out[col] = -mat[r][free]
    return tuple(out)


# ---------------------------------------------------------------------------
# shared tables and the depth-first basis search
# ---------------------------------------------------------------------------

@lru_cache(maxsize=64)
def _tables(m, n):
    vertices = enumerate_tensor_vertices(m, n)
    index = {v: i for i, v in enumerate(vertices)}
    negated = [index[tuple(-c for c in v)] for v in vertices]
    representatives = [i for i in range(1, len(vertices)) if i < negated[i]]
    vmat = np.array(vertices, dtype=np.int64)
    ball_rows = [0] + representatives  # one constraint per antipodal pair
    return {
        "vertices": vertices,
        "vmat": vmat,
        "representatives": representatives,
        "ball": vmat[ball_rows],
    }


@lru_cache(maxsize=8)
def _sign_block(size):
    """All sign vectors of the given length whose first entry is +1."""
    count = 1 << (size - 1)
    bits = (np.arange(count, dtype=np.int64)[:, None]
            >> np.arange(size - 2, -1, -1, dtype=np.int64)[None, :]) & 1
    block = np.empty((count, size), dtype=np.int64)
    block[:, 0] = 1
    block[:, 1:] = 1 - 2 * bits
    return block


def _independent_subsets(rows, candidates, need, seek):
    """Ascending candidate tuples that extend the anchor to a basis.

    seek is a previously completed tuple; everything up to and including
    it in depth-first order is skipped, which implements resume.
    """
    eliminator = _IntEliminator()
    if not eliminator.push(rows[0]):
        raise InternalInvariantError("anchor row reduced to zero")
    path = []

    def recurse(pos, need, seek) -> Iterator[tuple]:
        if need == 0:
            if seek is None:
                yield ()
            return
        for q in range(pos, len(candidates) - need + 1):
            idx = candidates[q]
            sub = None
            if seek is not None:
                if idx < seek[0]:
                    continue
                sub = seek[1:] if idx == seek[0] else None
            if not eliminator.push(rows[idx]):
                continue
            path.append(idx)
            if need == 1:
                if sub != ():
                    yield tuple(path)
            else:
                yield from recurse(q + 1, need - 1, sub)
            path.pop()
            eliminator.pop()

    yield from recurse(0, need, seek)


def _make_cursor(kind, m, n, last):
    return {
        "format-version": RESUME_FORMAT_VERSION,
        "kind": kind,
        "m": m,
        "n": n,
        "last_basis": None if last is None else list(last),
    }


def _read_cursor(resume, kind, m, n, depth):
    if resume is None:
        return None
    if resume.get("format-version") != RESUME_FORMAT_VERSION:
        raise ValueError("unsupported resume format")
    if (resume.get("kind"), resume.get("m"), resume.get("n")) != (kind, m, n):
        raise ValueError("resume state belongs to a different search")
    last = resume.get("last_basis")
    if last is None:
        return None
    last = tuple(int(x) for x in last)
    if len(last) != depth:
        raise ValueError("resume cursor has the wrong depth")
    return last


# ---------------------------------------------------------------------------
# step 1: anchored bases
# ---------------------------------------------------------------------------

def enumerate_anchored_bases(m, n, budget=None, resume=None
                             ) -> Iterator[BasisMatrix]:
    """Every basis of R^(n^m) drawn from V that contains the anchor.

    Yields each unordered basis exactly once, rows in canonical order.
    budget bounds the number of bases yielded by this call; when it runs
    out, BudgetExceeded carries a cursor accepted by a later call's
    resume argument.
    """
    size = n ** m
    if size > MAX_PIPELINE_DIMENSION:
        raise ResourceBudgetError(f"n^m = {size} exceeds supported dimension")
    tables = _tables(m, n)
    vertices = tables["vertices"]
    candidates = list(range(1, len(vertices)))
    seek = _read_cursor(resume, "anchored-bases", m, n, size - 1)
    emitted = 0
    last = seek
    for chosen in _independent_subsets(vertices, candidates, size - 1, seek):
        if budget is not None and emitted >= budget:
            raise BudgetExceeded(
                f"basis budget {budget} exhausted",
                resume=_make_cursor("anchored-bases", m, n, last))
        yield BasisMatrix(tuple(vertices[i] for i in (0, *chosen)), 0, m, n)
        emitted += 1
        last = chosen


# ---------------------------------------------------------------------------
# step 2: exact solving
# ---------------------------------------------------------------------------

def solve_anchored_system(basis: BasisMatrix, f: Sequence[int]) -> FormVector:
    """The unique a with <a, row_i> = f_i for every row of the basis."""
    size = basis.n ** basis.m
    if len(f) != size:
        raise ValueError(f"sign vector length {len(f)}, expected {size}")
    if any(s not in (-1, 1) for s in f):
        raise ValueError("sign vector entries must be -1 or +1")
    coeffs = _fraction_solve(basis.rows, tuple(f))
    return FormVector(coeffs, basis.m, basis.n)


# ---------------------------------------------------------------------------
# step 3: ball membership
# ---------------------------------------------------------------------------

def in_unit_ball(a: FormVector) -> InBallResult:
    """Exact test of max |<a, v>| <= 1 over V, first violator as witness."""
    best = Fraction(0)
    witness = None
    for v in enumerate_tensor_vertices(a.m, a.n):
        value = abs(inner(a.coeffs, v))
        if value > best:
            best = value
            if value > 1:
                witness = v
                break
    inside = best <= 1
    return InBallResult(inside, best, None if inside else witness)


# ---------------------------------------------------------------------------
# step 4: orbits
# ---------------------------------------------------------------------------

def orbit(a: FormVector) -> set:
    """The sign-group orbit {a . g}; always contains -a."""
    tables = _tables(a.m, a.n)
    out = set()
    for diag in tables["vertices"]:
        out.add(FormVector(tuple(d * c for d, c in zip(diag, a.coeffs)),
                           a.m, a.n))
    return out


# ---------------------------------------------------------------------------
# the assembled pipeline
# ---------------------------------------------------------------------------

def _process_basis(vmat, ball_t, sign_block, row_indices, keys):
    """Solve all anchored sign systems for one basis; record feasible keys.

    Keys are gcd-reduced (denominator, numerator tuple) pairs with the
    denominator positive, a unique representation of the rational vector.
    """
    h = vmat[row_indices]
    det, adj = _det_adjugate(h)
    numerators = sign_block @ adj.T
    values = numerators @ ball_t
    feasible = numerators[np.abs(values).max(axis=1) <= det]
    if not len(feasible):
        return
    g = np.gcd.reduce(np.abs(feasible), axis=1)
    g = np.gcd(g, det)
    reduced = feasible // g[:, None]
    dens = det // g
    for d, row in zip(dens.tolist(), reduced.tolist()):
        keys.add((d, tuple(row)))


def _finalize(m, n, keys, complete):
    """Orbit-expand candidate keys, deduplicate, sort, build the set."""
    tables = _tables(m, n)
    vmat = tables["vmat"]
    seen_orbits = set()
    rows = []
    for d, u in sorted(keys):
        block = np.unique(vmat * np.asarray(u, dtype=np.int64)[None, :],
                          axis=0)
        rep = (d, tuple(block[0].tolist()))
        if rep in seen_orbits:
            continue
        seen_orbits.add(rep)
        for row in block.tolist():
            rows.append((d, row))
    fraction_cache = {}

    def as_fraction(num, den):
        try:
            return fraction_cache[(num, den)]
        except KeyError:
            value = Fraction(num, den)
            fraction_cache[(num, den)] = value
            return value

    decorated = [tuple(as_fraction(x, d) for x in row) for d, row in rows]
    decorated.sort()
    points = tuple(FormVector(coeffs, m, n) for coeffs in decorated)
    return ExtremeSet(m, n, points, complete=complete)


def _subtree_keys(args):
    """Worker task: all candidate keys whose basis starts at one position."""
    m, n, position = args
    tables = _tables(m, n)
    vmat = tables["vmat"]
    vertices = tables["vertices"]
    reps = tables["representatives"]
    ball_t = tables["ball"].T
    size = n ** m
    sign_block = _sign_block(size)
    keys = set()
    eliminator = _IntEliminator()
    eliminator.push(vertices[0])
    if not eliminator.push(vertices[reps[position]]):
        return keys
    chosen = [reps[position]]

    def recurse(pos, need):
        if need == 0:
            _process_basis(vmat, ball_t, sign_block, [0] + chosen, keys)
            return
        for q in range(pos, len(reps) - need + 1):
            idx = reps[q]
            if not eliminator.push(vertices[idx]):
                continue
            chosen.append(idx)
            recurse(q + 1, need - 1)
            chosen.pop()
            eliminator.pop()

    recurse(position + 1, size - 2)
    return keys


def extreme_points(m, n, budget=None, resume=None, workers=1) -> ExtremeSet:
    """All extreme points of the unit ball of m-linear forms on R^n.

    budget bounds the number of (reduced) bases processed in this call;
    exceeding it raises BudgetExceeded whose .partial is an honest subset
    and whose .resume continues the search. workers > 1 parallelizes
    unbudgeted runs over first-row subtrees; output is byte-identical for
    any worker count because the merge is a set union followed by one
    canonical sort.
    """
    size = n ** m
    if size > MAX_PIPELINE_DIMENSION:
        raise ResourceBudgetError(f"n^m = {size} exceeds supported dimension")
    tables = _tables(m, n)
    vertices = tables["vertices"]
    vmat = tables["vmat"]
    reps = tables["representatives"]
    ball_t = tables["ball"].T
    sign_block = _sign_block(size)
    seek = _read_cursor(resume, "pipeline", m, n, size - 1)

    if budget is None and workers > 1 and size > 1:
        positions = range(len(reps) - size + 2)
        tasks = [(m, n, p) for p in positions]
        if len(tasks) > 1:
            keys = set()
            with ProcessPoolExecutor(
                    max_workers=min(workers, len(tasks))) as pool:
                for part in pool.map(_subtree_keys, tasks):
                    keys |= part
            return _finalize(m, n, keys, complete=True)

    keys = set()
    processed = 0
    last = seek
    for chosen in _independent_subsets(vertices, reps, size - 1, seek):
        if budget is not None and processed >= budget:
            raise BudgetExceeded(
                f"pipeline budget {budget} exhausted",
                resume=_make_cursor("pipeline", m, n, last),
                partial=_finalize(m, n, keys, complete=False))
        _process_basis(vmat, ball_t, sign_block, [0, *chosen], keys)
        processed += 1
        last = chosen
    return _finalize(m, n, keys, complete=True)


def planar_extreme_points(m, max_points=1 << 17) -> ExtremeSet:
    """Fast path for n = 2: one orthogonal anchored basis, no filtering.

    The 2^m representative rows are mutually orthogonal (each slot
    contributes an orthogonal vertex pair), so a = H^t f / 2^m solves the
    anchored system for every sign vector f, and |<a, v>| = 1 for all of
    V; all 2^(2^m) solutions are extreme and distinct.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    count = 2 ** (2 ** m)
    if count > max_points:
        raise ResourceBudgetError(
            f"planar set for m={m} has {count} points, cap {max_points}")
    tables = _tables(m, 2)
    h = tables["ball"]
    size = 2 ** m
    if not np.array_equal(h @ h.T, size * np.eye(size, dtype=np.int64)):
        raise InternalInvariantError("planar basis rows are not orthogonal")
    bits = (np.arange(count, dtype=np.int64)[:, None]
            >> np.arange(size - 1, -1, -1, dtype=np.int64)[None, :]) & 1
    signs = 1 - 2 * bits
    numerators = signs @ h
    order = np.lexsort(numerators.T[::-1])
    lut = {v: Fraction(v, size) for v in range(-size, size + 1)}
    points = tuple(
        FormVector(tuple(lut[x] for x in row), m, 2)
        for row in numerators[order].tolist())
    return ExtremeSet(m, 2, points)


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

def is_extreme(a: FormVector) -> ExtremalityCertificate:
    """Exact extremality certificate via the tight-set rank criterion."""
    size = a.n ** a.m
    ball = in_unit_ball(a)
    vertices = enumerate_tensor_vertices(a.m, a.n)
    tight = [v for v in vertices if abs(inner(a.coeffs, v)) == 1]
    eliminator = _IntEliminator()
    basis = [v for v in tight if eliminator.push(v)]
    rank = len(basis)
    extreme = bool(ball) and rank == size
    offset = None
    if ball and not extreme:
        direction = _null_vector(tight, size) if tight else \
            tuple(Fraction(int(i == 0)) for i in range(size))
        slack = [(1 - abs(inner(a.coeffs, v))) / abs(inner(direction, v))
                 for v in vertices if inner(direction, v) != 0]
        if not slack:
            raise InternalInvariantError("tensor vertices failed to span")
        eps = min(slack)
        offset = FormVector(tuple(eps * b for b in direction), a.m, a.n)
    return ExtremalityCertificate(
        extreme=extreme,
        in_ball=bool(ball),
        norm_value=ball.value,
        norm_witness=ball.witness,
        dimension=size,
        tight_count=len(tight),
        tight_rank=rank,
        tight_basis=tuple(basis),
        midpoint_offset=offset,
    )


# ---------------------------------------------------------------------------
# independent oracle
# ---------------------------------------------------------------------------

def brute_force_vertices(m, n) -> ExtremeSet:
    """Vertex enumeration of {a : |<a, v>| <= 1 for all v in V}.

    Independent route: every full-rank n^m-subset of the constraint
    vectors, every sign pattern, exact solve, exact feasibility filter.
    Intentionally shares no search structure with extreme_points beyond
    the vertex tables, so agreement between the two is meaningful.
    """
    size = n ** m
    tables = _tables(m, n)
    constraints = [tuple(int(x) for x in row) for row in tables["ball"]]
    work = math.comb(len(constraints), size) * 2 ** size
    if size > 9 or work > 2_000_000:
        raise ResourceBudgetError(
            f"brute force would need {work} solves; guard is 2000000")
    found = set()
    for subset in combinations(constraints, size):
        eliminator = _IntEliminator()
        if not all(eliminator.push(row) for row in subset):
            continue
        for signs in product((1, -1), repeat=size):
            candidate = _fraction_solve(subset, signs)
            if all(abs(inner(candidate, c)) <= 1 for c in constraints):
                found.add(candidate)
    points = tuple(FormVector(coeffs, m, n) for coeffs in sorted(found))
    return ExtremeSet(m, n, points)
