"""q-Pochhammer symbols, Gaussian binomials and subspace counting formulas.

Everything is evaluated at a concrete integer ``q >= 2`` and returned as an
exact :class:`~fractions.Fraction`.  Out-of-range indices give 0 so that
sums over ``k`` can run freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import DimensionError


@dataclass(frozen=True)
class QContext:
    """The base ``q`` and ambient dimension ``n``."""

    q: int
    n: int

    def __post_init__(self):
        if not isinstance(self.q, int) or self.q < 2:
            raise ValueError(f"q must be an integer >= 2, got {self.q!r}")
        if not isinstance(self.n, int) or self.n < 0:
            raise ValueError(f"n must be a nonnegative integer, got {self.n!r}")

    def qp(self, e: int) -> Fraction:
        """``q**e`` for any integer ``e``."""
        return Fraction(self.q) ** e

    @property
    def inv(self) -> Fraction:
        return Fraction(1, self.q)

    def with_n(self, n: int) -> "QContext":
        return QContext(self.q, n)


def q_pochhammer(u, base, k: int) -> Fraction:
    """``(u; base)_k = prod_{j<k} (1 - base**j * u)``."""
    if k < 0:
        raise ValueError("Pochhammer length must be nonnegative")
    u = Fraction(u)
    base = Fraction(base)
    out = Fraction(1)
    step = Fraction(1)
    for _ in range(k):
        out *= 1 - step * u
        step *= base
    return out


def qpoch_inv(q: int, e: int, k: int) -> Fraction:
    """``(q**e; q**-1)_k``, the form that appears throughout the kernel formulas."""
    return _qpoch_inv_cached(q, e, k)


@lru_cache(maxsize=None)
def _qpoch_inv_cached(q: int, e: int, k: int) -> Fraction:
    out = Fraction(1)
    for j in range(k):
        out *= 1 - Fraction(q) ** (e - j)
    return out


def qpoch_inv_multi(q: int, exps: Sequence[int], k: int) -> Fraction:
    """``(q**e1, q**e2, ...; q**-1)_k``."""
    out = Fraction(1)
    for e in exps:
        out *= qpoch_inv(q, e, k)
    return out


@lru_cache(maxsize=None)
def _qfact(q: int, m: int) -> int:
    # (q;q)_m up to sign: prod (q^j - 1); the sign cancels in every ratio used here
    out = 1
    for j in range(1, m + 1):
        out *= q**j - 1
    return out


def q_binomial(m: int, k: int, ctx: QContext | int) -> Fraction:
    """Gaussian binomial ``[m k]_q``; zero unless ``0 <= k <= m``."""
    q = ctx.q if isinstance(ctx, QContext) else ctx
    if m < 0 or k < 0 or k > m:
        return Fraction(0)
    return Fraction(_qfact(q, m) // (_qfact(q, k) * _qfact(q, m - k)))


def q_multinomial(m: int, parts: Sequence[int], ctx: QContext | int) -> Fraction:
    """``[m; parts]_q``; zero if a part is negative."""
    q = ctx.q if isinstance(ctx, QContext) else ctx
    if any(p < 0 for p in parts):
        return Fraction(0)
    if sum(parts) != m:
        raise ValueError(f"parts {list(parts)} do not sum to {m}")
    den = 1
    for p in parts:
        den *= _qfact(q, p)
    return Fraction(_qfact(q, m) // den)


def gl_order(ctx: QContext) -> Fraction:
    """``|GL(n, F_q)| = (-1)^n q^{C(n,2)} (q;q)_n``."""
    q, n = ctx.q, ctx.n
    return (-1) ** n * Fraction(q) ** (n * (n - 1) // 2) * q_pochhammer(q, q, n)


def count_between(r1: int, r: int, r2: int, ctx: QContext) -> Fraction:
    """Number of ``r``-spaces ``x`` with ``x1 <= x <= x2`` for fixed nested ``x1 <= x2``."""
    return q_binomial(r2 - r1, r - r1, ctx)


def count_complements(r: int, ctx: QContext) -> Fraction:
    """Number of complements of a fixed ``r``-space: ``q^{r(n-r)}``."""
    if not 0 <= r <= ctx.n:
        raise DimensionError(f"r={r} outside 0..{ctx.n}")
    return Fraction(ctx.q ** (r * (ctx.n - r)))


def index_range(n: int, r1: int, r2: int) -> range:
    """Possible values of ``dim(x2/(x1 cap x2))`` for ``x1 in X_r1``, ``x2 in X_r2``."""
    return range(max(0, r2 - r1), min(r2, n - r1) + 1)


def count_pairs_at_distance(r1: int, r2: int, t: int, ctx: QContext) -> Fraction:
    """Number of ``(x1, x2)`` in ``X_r1 x X_r2`` with ``dim(x2/(x1 cap x2)) = t``."""
    n = ctx.n
    if not (0 <= r1 <= n and 0 <= r2 <= n) or t not in index_range(n, r1, r2):
        return Fraction(0)
    parts = (t, r2 - t, r1 - r2 + t, n - r1 - t)
    return ctx.qp(t * (r1 - r2 + t)) * q_multinomial(n, parts, ctx)


def m_count(n: int, r: int, t: int, k: int, ctx: QContext | int) -> Fraction:
    """``#{x_r in X_r : dim(x_r/(x_r cap x)) = k}`` for ``x`` of codimension ``t``."""
    q = ctx.q if isinstance(ctx, QContext) else ctx
    a = q_binomial(t, k, q)
    if a == 0:
        return a
    b = q_binomial(n - t, r - k, q)
    if b == 0:
        return b
    return Fraction(q) ** (k * (n - t - r + k)) * a * b


def dim_irrep(s: int, ctx: QContext) -> Fraction:
    """``[n s]_q - [n s-1]_q``, the multiplicity of the ``s``-th eigenspace."""
    return q_binomial(ctx.n, s, ctx) - q_binomial(ctx.n, s - 1, ctx)
