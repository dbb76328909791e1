"""Graph and group Laplacians on a level ``X_r`` and their closed-form data."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

import numpy as np

from .errors import DimensionError
from .exact import Mat
from .geometry import (
    GrassmannSpace,
    GroupElement,
    distance_table,
    permutation_of,
    transvection_set,
)
from .qcomb import QContext, index_range


def valence(r: int, ctx: QContext) -> Fraction:
    """Degree of the Grassmann graph ``X_r``: ``q(q^r-1)(q^{n-r}-1)/(q-1)^2``."""
    q, n = ctx.q, ctx.n
    if not 0 <= r <= n:
        raise DimensionError(f"r={r} outside 0..{n}")
    return Fraction(q * (q**r - 1) * (q ** (n - r) - 1), (q - 1) ** 2)


def transvection_count(ctx: QContext) -> Fraction:
    """``|T| = (q^n-1)(q^{n-1}-1)/(q-1)``."""
    q, n = ctx.q, ctx.n
    return Fraction((q**n - 1) * (q ** (n - 1) - 1), q - 1)


def gamma_factors(ctx: QContext, r: int) -> tuple[Fraction, Fraction]:
    """``(gamma0, gamma1)``: transvections fixing a point, and moving it to a given neighbour."""
    if ctx.n < 2:
        raise DimensionError("the transvection set needs n >= 2")
    gamma1 = ctx.qp(ctx.n - 2) * (ctx.q - 1)
    gamma0 = transvection_count(ctx) - valence(r, ctx) * gamma1
    return gamma0, gamma1


@lru_cache(maxsize=64)
def graph_laplacian(space: GrassmannSpace) -> Mat:
    """Matrix of ``phi -> sum_{y ~ x} (phi(y) - phi(x))``."""
    dist = distance_table(space, space)
    adj = (dist == 1).astype(np.int64)
    deg = adj.sum(axis=0)
    return Mat.from_int_array(adj - np.diag(deg))


def group_laplacian(space: GrassmannSpace, transvections=None) -> Mat:
    """Matrix of ``phi -> sum_{h in T} (phi(h x) - phi(x))``."""
    if transvections is None:
        transvections = transvection_set(space.p, space.n)
    size = len(space)
    acc = np.zeros((size, size), dtype=np.int64)
    cols = np.arange(size)
    for h in transvections:
        if not isinstance(h, GroupElement) or h.p != space.p or h.n != space.n:
            raise DimensionError("transvection does not act on this space")
        perm = permutation_of(h, space)
        # (L phi)(x) picks up phi(h x): entry [x, h x]
        np.add.at(acc, (cols, perm), 1)
    acc -= len(transvections) * np.eye(size, dtype=np.int64)
    return Mat.from_int_array(acc)


@dataclass(frozen=True)
class LaplacianCoefficients:
    """``b(t)``, ``c(t)`` of the three-term difference operator on ``I_n(r1, r2)``."""

    ctx: QContext
    r1: int
    r2: int
    b: Mapping[int, Fraction]
    c: Mapping[int, Fraction]

    @property
    def index(self) -> range:
        return index_range(self.ctx.n, self.r1, self.r2)


def b_coefficient(ctx: QContext, r1: int, r2: int, t: int) -> Fraction:
    q, n = ctx.q, ctx.n
    qt = ctx.qp(t)
    return ctx.qp(r1 - r2 + 1) * (qt - q**r2) * (qt - q ** (n - r1)) / (q - 1) ** 2


def c_coefficient(ctx: QContext, r1: int, r2: int, t: int) -> Fraction:
    q = ctx.q
    qt = ctx.qp(t)
    return ctx.qp(r1 - r2) * (qt - 1) * (qt - ctx.qp(r2 - r1)) / (q - 1) ** 2


def bc_coefficients(ctx: QContext, r1: int, r2: int) -> LaplacianCoefficients:
    if not (0 <= r1 <= ctx.n and 0 <= r2 <= ctx.n):
        raise DimensionError("dimensions outside 0..n")
    idx = index_range(ctx.n, r1, r2)
    b = {t: b_coefficient(ctx, r1, r2, t) for t in idx}
    c = {t: c_coefficient(ctx, r1, r2, t) for t in idx}
    return LaplacianCoefficients(ctx, r1, r2, b, c)


def kernel_difference_apply(coeffs: LaplacianCoefficients, kernel):
    """``t -> b(t)(lam(t+1)-lam(t)) + c(t)(lam(t-1)-lam(t))`` as a new kernel."""
    from .kernels import IntertwinerKernel

    idx = coeffs.index
    if (kernel.r1, kernel.r2, kernel.ctx) != (coeffs.r1, coeffs.r2, coeffs.ctx):
        raise DimensionError("kernel and coefficients describe different index sets")
    lam = kernel.values
    out = {}
    for t in idx:
        acc = Fraction(0)
        if coeffs.b[t]:
            acc += coeffs.b[t] * (lam[t + 1] - lam[t])
        if coeffs.c[t]:
            acc += coeffs.c[t] * (lam[t - 1] - lam[t])
        out[t] = acc
    return IntertwinerKernel(kernel.ctx, kernel.r1, kernel.r2, kernel.s, out, "applied")


def brute_bc(space1: GrassmannSpace, space2: GrassmannSpace, x1: int, x2: int) -> tuple[int, int]:
    """Geometric ``b`` and ``c`` for the pair ``(x1, x2)`` in ``X_r1 x X_r2``.

    With ``t = dim(x2/(x1 cap x2))``, ``b`` counts neighbours ``y`` of ``x2``
    at distance ``t+1`` from ``x1`` and ``c`` those at distance ``t-1``.
    """
    d21 = distance_table(space1, space2)
    nbrs = distance_table(space2, space2)[:, x2] == 1
    t = d21[x2, x1]
    col = d21[:, x1]
    return int(np.sum(nbrs & (col == t + 1))), int(np.sum(nbrs & (col == t - 1)))


def spectrum_multiplicities(space: GrassmannSpace, eigenvalues) -> list[int]:
    """Nullity of ``L - e I`` for each candidate eigenvalue ``e``."""
    from .exact import mat_rank

    lap = graph_laplacian(space)
    size = len(space)
    return [size - mat_rank(lap - Mat.scalar(size, e)) for e in eigenvalues]
