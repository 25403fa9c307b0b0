"""Exact combinatorial algebra of cube vertices and their sign tensors.

An m-linear form on R^n is identified with its coefficient vector in
Q^(n^m) through a fixed flattening of multi-indices (j_1, ..., j_m), j_1
most significant. The sup-norm geometry of such forms is controlled by the
finite set V of flattened tensor products w(x_1, ..., x_m) of cube vertices
x_i in {-1,+1}^n, and by the group G of diagonal +-1 matrices whose
diagonals are themselves members of V. G acts on coefficient vectors by
coordinatewise sign flips; the action is free and transitive on V.

Everything in this module is exact: integers for sign data, Fractions for
coefficients, no floating point anywhere. All values are immutable, all
functions pure, so they can be shared freely across worker processes.

Two normalization rules are fixed here and relied on everywhere else:

* w(x) = w(y) exactly when y differs from x by factor sign flips with an
  even number of -1 flips; the canonical representative forces factors
  1..m-1 to have first coordinate +1, leaving the last factor free. This
  gives |V| = 2^(nm-m+1) distinct elements.
* The canonical order of V (and of G) enumerates those representatives
  lexicographically with +1 sorting before -1, so the all-ones tensor
  comes first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

Vertex = tuple  # n signs, each -1 or +1
TensorVector = tuple  # n^m signs
MultiIndex = tuple  # m entries in [1, n]

DEFAULT_CELL_LIMIT = 1 << 24  # |V| * n^m cells allowed in one enumeration


class ResourceBudgetError(RuntimeError):
    """Raised when an enumeration would exceed its configured size limit."""


# ---------------------------------------------------------------------------
# multi-index flattening
# ---------------------------------------------------------------------------

def flatten(j: Sequence[int], n: int) -> int:
    """Flat position of the multi-index j in [n]^m, j_1 most significant."""
    if len(j) == 0:
        raise ValueError("empty multi-index")
    out = 0
    for entry in j:
        if not isinstance(entry, int) or not 1 <= entry <= n:
            raise ValueError(f"multi-index entry {entry!r} outside [1, {n}]")
        out = out * n + (entry - 1)
    return out


def unflatten(index: int, m: int, n: int) -> MultiIndex:
    """Inverse of flatten for the shape (m, n)."""
    if not 0 <= index < n ** m:
        raise ValueError(f"flat index {index} outside [0, {n ** m})")
    entries = []
    for _ in range(m):
        index, rem = divmod(index, n)
        entries.append(rem + 1)
    return tuple(reversed(entries))


# ---------------------------------------------------------------------------
# vertices and their tensors
# ---------------------------------------------------------------------------

def _check_vertex(x: Sequence[int], n: int | None = None) -> None:
    if n is not None and len(x) != n:
        raise ValueError(f"vertex has dimension {len(x)}, expected {n}")
    for c in x:
        if c not in (-1, 1):
            raise ValueError(f"vertex coordinate {c!r} is not a sign")


def vertex_from_code(code: int, n: int) -> Vertex:
    """Vertex for a bit code; bit 0 of the code flips the last coordinate."""
    return tuple(-1 if (code >> (n - 1 - j)) & 1 else 1 for j in range(n))


def omega(factors: Sequence[Vertex]) -> TensorVector:
    """Flattened tensor product of m vertices, first factor most significant."""
    if len(factors) == 0:
        raise ValueError("need at least one factor")
    n = len(factors[0])
    out = (1,)
    for x in factors:
        _check_vertex(x, n)
        out = tuple(o * c for o in out for c in x)
    return out


def inner(a, v):
    """Exact dot product; accepts sign tuples, rational tuples, FormVectors."""
    if isinstance(a, FormVector):
        a = a.coeffs
    if isinstance(v, FormVector):
        v = v.coeffs
    if len(a) != len(v):
        raise ValueError(f"length mismatch: {len(a)} vs {len(v)}")
    return sum(x * y for x, y in zip(a, v))


def tensor_vertex_count(m: int, n: int) -> int:
    return 2 ** (n * m - m + 1)


def canonical_factor_tuples(m: int, n: int) -> Iterator[tuple[Vertex, ...]]:
    """Canonical factor representatives in the order that defines V and G.

    Factors 1..m-1 range over vertices with first coordinate +1, the last
    factor over all vertices; codes increase lexicographically, so the
    all-ones tuple is first.
    """
    if m < 1 or n < 1:
        raise ValueError("need m >= 1 and n >= 1")
    restricted = 1 << (n - 1)
    free = 1 << n
    codes = [0] * m
    while True:
        yield tuple(vertex_from_code(c, n) for c in codes)
        slot = m - 1
        while slot >= 0:
            codes[slot] += 1
            cap = free if slot == m - 1 else restricted
            if codes[slot] < cap:
                break
            codes[slot] = 0
            slot -= 1
        if slot < 0:
            return


def enumerate_tensor_vertices(m: int, n: int,
                              cell_limit: int = DEFAULT_CELL_LIMIT
                              ) -> list[TensorVector]:
    """The set V of all distinct vertex tensors, canonically ordered."""
    count = tensor_vertex_count(m, n)
    if count * n ** m > cell_limit:
        raise ResourceBudgetError(
            f"V for (m={m}, n={n}) needs {count * n ** m} cells, "
            f"limit {cell_limit}")
    return [omega(t) for t in canonical_factor_tuples(m, n)]


def factorize(v: Sequence[int], m: int, n: int) -> tuple[Vertex, ...]:
    """Canonical factors of a tensor vertex; ValueError if v is not one.

    Coordinates along the axis lines of v determine each factor up to the
    shared sign, which the canonical representative pushes into the last
    factor.
    """
    if len(v) != n ** m:
        raise ValueError(f"length {len(v)} does not match n^m = {n ** m}")
    for c in v:
        if c not in (-1, 1):
            raise ValueError("tensor vertex coordinates must be signs")
    stride = n ** (m - 1)
    factors = []
    for i in range(m - 1):
        factors.append(tuple(v[(j - 1) * stride] * v[0] for j in range(1, n + 1)))
        stride //= n
    factors.append(tuple(v[j - 1] for j in range(1, n + 1)))
    candidate = tuple(factors)
    if omega(candidate) != tuple(v):
        raise ValueError("not a tensor product of vertices")
    return candidate


def is_tensor_vertex(v: Sequence[int], m: int, n: int) -> bool:
    try:
        factorize(v, m, n)
    except ValueError:
        return False
    return True


# ---------------------------------------------------------------------------
# the sign group
# ---------------------------------------------------------------------------

@lru_cache(maxsize=4096)
def _cached_diagonal(factors: tuple[Vertex, ...]) -> TensorVector:
    return omega(factors)


@dataclass(frozen=True)
class GroupElement:
    """Diagonal +-1 matrix diag(w(factors)), stored by canonical factors.

    Construction accepts any factor representative and canonicalizes it:
    a leading factor with first coordinate -1 is negated together with the
    last factor, which leaves the diagonal unchanged.
    """

    factors: tuple

    def __post_init__(self):
        factors = [tuple(x) for x in self.factors]
        if not factors:
            raise ValueError("need at least one factor")
        n = len(factors[0])
        for x in factors:
            _check_vertex(x, n)
        for i in range(len(factors) - 1):
            if factors[i][0] == -1:
                factors[i] = tuple(-c for c in factors[i])
                factors[-1] = tuple(-c for c in factors[-1])
        object.__setattr__(self, "factors", tuple(factors))

    @property
    def m(self) -> int:
        return len(self.factors)

    @property
    def n(self) -> int:
        return len(self.factors[0])

    def diagonal(self) -> TensorVector:
        return _cached_diagonal(self.factors)


def group_identity(m: int, n: int) -> GroupElement:
    return GroupElement(tuple(tuple([1] * n) for _ in range(m)))


def enumerate_group(m: int, n: int) -> list[GroupElement]:
    """All of G in canonical order; same cardinality as V."""
    return [GroupElement(t) for t in canonical_factor_tuples(m, n)]


def group_compose(g: GroupElement, h: GroupElement) -> GroupElement:
    if (g.m, g.n) != (h.m, h.n):
        raise ValueError("group elements have different shapes")
    product = tuple(tuple(a * b for a, b in zip(x, y))
                    for x, y in zip(g.factors, h.factors))
    return GroupElement(product)


def act(g: GroupElement, v):
    """Apply diag(w(g)) to a tensor vertex or a coefficient vector."""
    diag = g.diagonal()
    if isinstance(v, FormVector):
        if (v.m, v.n) != (g.m, g.n):
            raise ValueError("group element and form have different shapes")
        return FormVector(tuple(d * c for d, c in zip(diag, v.coeffs)),
                          v.m, v.n)
    if len(v) != len(diag):
        raise ValueError(f"length mismatch: {len(v)} vs {len(diag)}")
    return tuple(d * c for d, c in zip(diag, v))


def transporter(u: Sequence[int], w: Sequence[int], m: int, n: int
                ) -> GroupElement:
    """The unique g with act(g, u) = w, for u, w in V."""
    fu = factorize(u, m, n)
    fw = factorize(w, m, n)
    product = tuple(tuple(a * b for a, b in zip(x, y))
                    for x, y in zip(fu, fw))
    return GroupElement(product)


# ---------------------------------------------------------------------------
# coefficient vectors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FormVector:
    """Exact rational coefficient vector of an m-linear form on R^n.

    T(y_1, ..., y_m) = <coeffs, w(y_1, ..., y_m)> under the fixed
    flattening. Coefficients are reduced Fractions; floats are rejected to
    keep the exactness guarantee visible at the boundary.
    """

    coeffs: tuple
    m: int
    n: int

    def __post_init__(self):
        if len(self.coeffs) != self.n ** self.m:
            raise ValueError(
                f"{len(self.coeffs)} coefficients for shape "
                f"(m={self.m}, n={self.n}); expected {self.n ** self.m}")
        exact = []
        for c in self.coeffs:
            if isinstance(c, float):
                raise ValueError("coefficients must be exact rationals")
            exact.append(c if isinstance(c, Fraction) else Fraction(c))
        object.__setattr__(self, "coeffs", tuple(exact))

    def evaluate(self, *vertices: Vertex) -> Fraction:
        if len(vertices) != self.m:
            raise ValueError(f"form takes {self.m} arguments")
        return inner(self.coeffs, omega(vertices))

    def __neg__(self) -> "FormVector":
        return FormVector(tuple(-c for c in self.coeffs), self.m, self.n)
