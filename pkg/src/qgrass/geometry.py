"""Brute-force geometry of subspaces of F_p^n for a prime p.

Subspaces are stored by their reduced row echelon basis, which is a unique
representative, so equality and hashing are structural.  Enumeration order
is: pivot column tuples in lexicographic order, then the free entries in
``itertools.product`` order (row by row, left to right).
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import BudgetExceeded, DimensionError
from .qcomb import q_binomial

DEFAULT_BUDGET = 5000

Rows = tuple[tuple[int, ...], ...]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def _require_prime(p: int):
    if not is_prime(p):
        raise ValueError(f"q must be prime for geometric commands (got {p})")


def budget() -> int:
    """Point budget per enumerated space; ``QGRASS_BUDGET`` overrides the default."""
    raw = os.environ.get("QGRASS_BUDGET")
    if raw is None or raw.strip() == "":
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"QGRASS_BUDGET must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ValueError("QGRASS_BUDGET must be positive")
    return value


def rref_mod_p(rows: Sequence[Sequence[int]], p: int) -> Rows:
    """Reduced row echelon form over F_p with zero rows dropped."""
    m = [[v % p for v in row] for row in rows]
    if not m:
        return ()
    ncols = len(m[0])
    out: list[list[int]] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [(v * inv) % p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    out = m[:r]
    return tuple(tuple(row) for row in out)


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    return len(rref_mod_p(rows, p))


def _encode(vec: Sequence[int], p: int) -> int:
    code = 0
    for v in vec:
        code = code * p + v
    return code


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_p^n given by its RREF basis rows."""

    p: int
    n: int
    rows: Rows
    _span: frozenset = field(default=None, compare=False, repr=False, hash=False)

    @classmethod
    def from_vectors(cls, vectors: Sequence[Sequence[int]], p: int, n: int) -> "Subspace":
        if any(len(v) != n for v in vectors):
            raise DimensionError("vector length differs from ambient dimension")
        return cls(p, n, rref_mod_p(vectors, p))

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, v in enumerate(row) if v) for row in self.rows)

    @property
    def span(self) -> frozenset:
        """All vectors of the subspace, encoded base p."""
        if self._span is None:
            vecs = set()
            for coeffs in itertools.product(range(self.p), repeat=self.dim):
                v = [0] * self.n
                for c, row in zip(coeffs, self.rows):
                    if c:
                        v = [(a + c * b) % self.p for a, b in zip(v, row)]
                vecs.add(_encode(v, self.p))
            object.__setattr__(self, "_span", frozenset(vecs))
        return self._span

    def intersection_dim(self, other: "Subspace") -> int:
        _check_ambient(self, other)
        size = len(self.span & other.span)
        return round(math.log(size, self.p))

    def contains(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        return other.span <= self.span

    def __repr__(self):
        body = ";".join("".join(map(str, r)) for r in self.rows)
        return f"Subspace(p={self.p}, n={self.n}, [{body}])"


def _check_ambient(x: Subspace, y: Subspace):
    if x.p != y.p or x.n != y.n:
        raise DimensionError("subspaces live in different ambient spaces")


def distance(x: Subspace, y: Subspace) -> tuple[int, int]:
    """``(dim x - dim(x cap y), dim y - dim(x cap y))`` via exact rank mod p."""
    _check_ambient(x, y)
    total = rank_mod_p(list(x.rows) + list(y.rows), x.p)
    inter = x.dim + y.dim - total
    return x.dim - inter, y.dim - inter


def _iter_rref(p: int, n: int, r: int):
    for piv in itertools.combinations(range(n), r):
        pset = set(piv)
        free = [[j for j in range(c + 1, n) if j not in pset] for c in piv]
        slots = [(i, j) for i, cols in enumerate(free) for j in cols]
        for vals in itertools.product(range(p), repeat=len(slots)):
            mat = [[0] * n for _ in range(r)]
            for i, c in enumerate(piv):
                mat[i][c] = 1
            for (i, j), v in zip(slots, vals):
                mat[i][j] = v
            yield tuple(tuple(row) for row in mat)


@dataclass(frozen=True, eq=False)
class GrassmannSpace:
    """All ``r``-dimensional subspaces of F_p^n in a fixed order."""

    p: int
    n: int
    r: int
    points: tuple[Subspace, ...]
    lookup: dict = field(repr=False)

    def __len__(self):
        return len(self.points)

    def index(self, x: Subspace) -> int:
        return self.lookup[x.rows]

    def __repr__(self):
        return f"GrassmannSpace(p={self.p}, n={self.n}, r={self.r}, size={len(self.points)})"


def enumerate_subspaces(p: int, n: int, r: int, limit: int | None = None) -> GrassmannSpace:
    """Enumerate ``X_r`` of F_p^n; raises :class:`BudgetExceeded` above the budget."""
    _require_prime(p)
    if not 0 <= r <= n:
        raise DimensionError(f"r={r} outside 0..{n}")
    expected = int(q_binomial(n, r, p))
    cap = budget() if limit is None else limit
    if expected > cap:
        raise BudgetExceeded(f"X_{r}(F_{p}^{n}) has {expected} points, budget is {cap}")
    points = tuple(Subspace(p, n, rows) for rows in _iter_rref(p, n, r))
    if len(points) != expected:
        raise AssertionError("enumeration count disagrees with the Gaussian binomial")
    lookup = {x.rows: i for i, x in enumerate(points)}
    return GrassmannSpace(p, n, r, points, lookup)


@lru_cache(maxsize=64)
def _cached_space(p: int, n: int, r: int, cap: int) -> GrassmannSpace:
    return enumerate_subspaces(p, n, r, cap)


def grassmann_space(p: int, n: int, r: int) -> GrassmannSpace:
    """Cached :func:`enumerate_subspaces`."""
    return _cached_space(p, n, r, budget())


@lru_cache(maxsize=256)
def _distance_table_cached(src: GrassmannSpace, dst: GrassmannSpace) -> np.ndarray:
    table = np.empty((len(dst), len(src)), dtype=np.int64)
    spans = [x.span for x in src.points]
    for i, y in enumerate(dst.points):
        ys = y.span
        for j, xs in enumerate(spans):
            inter = round(math.log(len(ys & xs), src.p))
            table[i, j] = dst.r - inter
    table.setflags(write=False)
    return table


def distance_table(src: GrassmannSpace, dst: GrassmannSpace) -> np.ndarray:
    """``T[i, j] = dim(y_i / (y_i cap x_j))`` for ``x_j in src``, ``y_i in dst``."""
    if src.p != dst.p or src.n != dst.n:
        raise DimensionError("spaces over different ambient spaces")
    return _distance_table_cached(src, dst)


def sphere_neighbors(space: GrassmannSpace, x_index: int) -> list[int]:
    """Indices ``y`` with ``dim(x/(x cap y)) = 1``."""
    if not 0 <= x_index < len(space):
        raise IndexError(f"point index {x_index} out of range")
    row = distance_table(space, space)[:, x_index]
    return [int(i) for i in np.flatnonzero(row == 1)]


# ---------------------------------------------------------------------------
# group elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupElement:
    """An invertible ``n x n`` matrix over F_p acting on column vectors."""

    p: int
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if rank_mod_p(self.matrix, self.p) != len(self.matrix):
            raise ValueError("matrix is singular over F_p")

    @property
    def n(self) -> int:
        return len(self.matrix)

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        a, b, p = self.matrix, other.matrix, self.p
        n = self.n
        prod = tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(n)) % p for j in range(n)) for i in range(n)
        )
        return GroupElement(p, prod)

    def inverse(self) -> "GroupElement":
        n, p = self.n, self.p
        aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(self.matrix)]
        red = rref_mod_p(aug, p)
        return GroupElement(p, tuple(tuple(row[n:]) for row in red))

    @classmethod
    def identity(cls, p: int, n: int) -> "GroupElement":
        return cls(p, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def act(g: GroupElement, x: Subspace) -> Subspace:
    """Image ``g x`` in canonical form."""
    if g.p != x.p or g.n != x.n:
        raise DimensionError("group element and subspace do not match")
    m, p = g.matrix, g.p
    images = [[sum(m[i][k] * v[k] for k in range(x.n)) % p for i in range(x.n)] for v in x.rows]
    return Subspace(p, x.n, rref_mod_p(images, p))


def permutation_of(g: GroupElement, space: GrassmannSpace) -> list[int]:
    """``perm[j]`` = index of ``g x_j``."""
    return [space.index(act(g, x)) for x in space.points]


@lru_cache(maxsize=16)
def transvection_set(p: int, n: int) -> tuple[GroupElement, ...]:
    """All ``g`` with ``rk(g - 1) = 1`` and ``(g - 1)^2 = 0``, deduplicated by value.

    Built as ``1 + w a^T`` over nonzero ``w``, ``a`` with ``a . w = 0``.  There
    are ``(p^n - 1)(p^(n-1) - 1)/(p - 1)`` of them.
    """
    _require_prime(p)
    if n < 2:
        raise DimensionError("transvections need n >= 2")
    vectors = [v for v in itertools.product(range(p), repeat=n) if any(v)]
    seen: dict = {}
    for w in vectors:
        for a in vectors:
            if sum(x * y for x, y in zip(w, a)) % p:
                continue
            mat = tuple(
                tuple((int(i == j) + w[i] * a[j]) % p for j in range(n)) for i in range(n)
            )
            if mat not in seen:
                seen[mat] = GroupElement(p, mat)
    return tuple(seen[k] for k in sorted(seen))


def is_transvection(g: GroupElement) -> bool:
    n, p = g.n, g.p
    e = [[(g.matrix[i][j] - int(i == j)) % p for j in range(n)] for i in range(n)]
    sq = [[sum(e[i][k] * e[k][j] for k in range(n)) % p for j in range(n)] for i in range(n)]
    return rank_mod_p(e, p) == 1 and not any(any(row) for row in sq)


def random_group_element(p: int, n: int, rng) -> GroupElement:
    """Uniform-ish random element of GL(n, p) by rejection sampling."""
    while True:
        mat = tuple(tuple(rng.randrange(p) for _ in range(n)) for _ in range(n))
        if rank_mod_p(mat, p) == n:
            return GroupElement(p, mat)


def brute_count(predicate: Callable[..., bool], *domains: Iterable) -> Fraction:
    """Number of tuples in the product of ``domains`` satisfying ``predicate``."""
    return Fraction(sum(1 for combo in itertools.product(*domains) if predicate(*combo)))
