"""Closed-form kernels of the canonical intertwiners between Grassmann levels.

A kernel ``lam`` on ``I_n(r1, r2)`` is the restriction of a polynomial ``f``
to the grid ``u = q^{-t}``: ``lam(t) = f(q^{-t})``.  All kernels here are
normalized by ``f(1) = 1``.

Half powers of ``q`` enter through the grid operators ``S`` and ``D`` and the
Rodrigues weights; those computations run in :class:`~qgrass.exact.QuadExt`
and every value that leaves this module is checked to be rational.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Mapping, Sequence

from .errors import DimensionError, InconsistencyError
from .exact import QuadExt, interpolating_polynomial, lagrange_eval, poly_eval
from .qcomb import (
    QContext,
    index_range,
    q_binomial,
    q_multinomial,
    qpoch_inv,
    qpoch_inv_multi,
)

FORMS = (1, 2, 3, 4)


def _c2(s: int) -> int:
    return comb(s, 2)


def _check_dims(ctx: QContext, r1: int, r2: int):
    if not (0 <= r1 <= ctx.n and 0 <= r2 <= ctx.n):
        raise DimensionError(f"dimensions ({r1}, {r2}) outside 0..{ctx.n}")


def index_set(ctx: QContext, r1: int, r2: int) -> range:
    """``I_n(r1, r2) = {max(0, r2-r1), ..., min(r2, n-r1)}``."""
    _check_dims(ctx, r1, r2)
    return index_range(ctx.n, r1, r2)


def n_max(ctx: QContext, r1: int, r2: int) -> int:
    """``N(r1, r2) = min(r1, r2, n-r1, n-r2)``: the largest admissible ``s``."""
    _check_dims(ctx, r1, r2)
    n = ctx.n
    return min(r1, r2, n - r1, n - r2)


def _check_s(ctx: QContext, r1: int, r2: int, s: int):
    top = n_max(ctx, r1, r2)
    if not 0 <= s <= top:
        raise ValueError(f"s={s} outside 0..N({r1},{r2})={top}")


def mu_eigenvalue(ctx: QContext, s: int) -> Fraction:
    """``mu_s(n) = (q^s-1)(q^{n-s+1}-1)/(q-1)^2``."""
    q, n = ctx.q, ctx.n
    if not 0 <= 2 * s <= n:
        raise ValueError(f"s={s} outside 0..n/2")
    return Fraction((q**s - 1) * (q ** (n - s + 1) - 1), (q - 1) ** 2)


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class IntertwinerKernel:
    """Values ``t -> lam(t)`` on ``I_n(r1, r2)`` for the ``s``-th canonical intertwiner."""

    ctx: QContext
    r1: int
    r2: int
    s: int
    values: Mapping[int, Fraction]
    normalization: str = "f1"

    def __post_init__(self):
        idx = index_set(self.ctx, self.r1, self.r2)
        if sorted(self.values) != list(idx):
            raise DimensionError(
                f"kernel keys {sorted(self.values)} differ from index set {list(idx)}"
            )
        object.__setattr__(self, "values", {t: Fraction(self.values[t]) for t in idx})

    @property
    def index(self) -> range:
        return index_range(self.ctx.n, self.r1, self.r2)

    def __getitem__(self, t: int) -> Fraction:
        return self.values[t]

    def __eq__(self, other):
        if not isinstance(other, IntertwinerKernel):
            return NotImplemented
        return (self.ctx, self.r1, self.r2) == (other.ctx, other.r1, other.r2) and (
            self.values == other.values
        )

    def __hash__(self):
        return hash((self.ctx, self.r1, self.r2, tuple(self.values.items())))

    def nodes(self) -> list[Fraction]:
        return [self.ctx.qp(-t) for t in self.index]

    def polynomial(self) -> list[Fraction]:
        """Coefficients of the interpolant in ``u``, lowest degree first."""
        return interpolating_polynomial(self.nodes(), [self.values[t] for t in self.index])

    def degree(self) -> int:
        poly = self.polynomial()
        return -1 if poly == [0] else len(poly) - 1

    def at_u(self, u) -> Fraction:
        """Value of the interpolating polynomial at an arbitrary rational ``u``."""
        return lagrange_eval(self.nodes(), [self.values[t] for t in self.index], u)

    def scaled(self, c) -> "IntertwinerKernel":
        c = Fraction(c)
        return IntertwinerKernel(
            self.ctx, self.r1, self.r2, self.s, {t: c * v for t, v in self.values.items()}, "scaled"
        )

    def as_rows(self) -> list[tuple[int, Fraction]]:
        return [(t, self.values[t]) for t in self.index]


def constant_kernel(ctx: QContext, r1: int, r2: int, value=1) -> IntertwinerKernel:
    return IntertwinerKernel(ctx, r1, r2, 0, {t: Fraction(value) for t in index_set(ctx, r1, r2)})


def phi32_truncated(
    numerators: Sequence, denominators: Sequence, base, argument, cutoff: int
) -> Fraction:
    """Truncated ``3phi2``: ``sum_{k<=cutoff} (a1,a2,a3;b)_k / (b,d1,d2;b)_k z^k``."""
    if len(numerators) != 3 or len(denominators) != 2:
        raise ValueError("3phi2 needs three numerator and two denominator parameters")
    a = [Fraction(x) for x in numerators]
    d = [Fraction(x) for x in (base, *denominators)]
    b = Fraction(base)
    z = Fraction(argument)
    total = Fraction(1)
    term = Fraction(1)
    bj = Fraction(1)
    for k in range(cutoff):
        num = Fraction(1)
        for x in a:
            num *= 1 - bj * x
        den = Fraction(1)
        for x in d:
            den *= 1 - bj * x
        if den == 0:
            raise ZeroDivisionError(f"3phi2 denominator vanishes at term {k + 1}")
        term = term * num / den * z
        total += term
        bj *= b
    return total


def anchor_ratio(ctx: QContext, r1: int, r2: int, s: int, form: int) -> Fraction:
    """``f(anchor)/f(1)`` for the anchor point of the given q-Hahn form."""
    q, n = ctx.q, ctx.n
    if form == 1:
        return Fraction(1)
    if form == 2:  # anchor u = q^{-r2}
        return (-1) ** s * ctx.qp(_c2(s) - r1 * s) * qpoch_inv(q, r1, s) / qpoch_inv(q, n - r1, s)
    if form == 3:  # anchor u = q^{r1-n}
        return (
            (-1) ** s
            * ctx.qp(_c2(s) + s * (r2 - n))
            * qpoch_inv(q, n - r2, s)
            / qpoch_inv(q, r2, s)
        )
    if form == 4:  # anchor u = q^{r1-r2}
        return (
            ctx.qp(s * (r2 - r1))
            * qpoch_inv_multi(q, (r1, n - r2), s)
            / qpoch_inv_multi(q, (n - r1, r2), s)
        )
    raise ValueError(f"unknown q-Hahn form {form!r}")


def anchor_point(ctx: QContext, r1: int, r2: int, form: int) -> Fraction:
    return {1: Fraction(1), 2: ctx.qp(-r2), 3: ctx.qp(r1 - ctx.n), 4: ctx.qp(r1 - r2)}[form]


def _series(ctx: QContext, r1: int, r2: int, s: int, form: int, u: Fraction) -> Fraction:
    q, n = ctx.q, ctx.n
    qp = ctx.qp
    b = ctx.inv
    if form == 1:
        nums = (qp(s), 1 / u, qp(n - s + 1))
        dens = (qp(n - r1), qp(r2))
        z = qp(r2 - r1 - 1) * u
    elif form == 2:
        nums = (qp(s), qp(r2) * u, qp(n - s + 1))
        dens = (qp(r1), qp(r2))
        z = b
    elif form == 3:
        nums = (qp(s), qp(n - r1) * u, qp(n - s + 1))
        dens = (qp(n - r1), qp(n - r2))
        z = b
    elif form == 4:
        nums = (qp(s), qp(r1 - r2) / u, qp(n - s + 1))
        dens = (qp(r1), qp(n - r2))
        z = b * u
    else:
        raise ValueError(f"unknown q-Hahn form {form!r}")
    return phi32_truncated(nums, dens, b, z, s)


def qhahn_kernel(ctx: QContext, r1: int, r2: int, s: int, form: int = 1) -> IntertwinerKernel:
    """Kernel ``lam_s^{r1,r2}`` from one of the four q-Hahn representations."""
    _check_s(ctx, r1, r2, s)
    ratio = anchor_ratio(ctx, r1, r2, s, form)
    values = {t: ratio * _series(ctx, r1, r2, s, form, ctx.qp(-t)) for t in index_set(ctx, r1, r2)}
    return IntertwinerKernel(ctx, r1, r2, s, values, f"form{form}")


def main_coefficient(ctx: QContext, r1: int, r2: int, s: int) -> Fraction:
    """Leading coefficient of ``f_s^{r1,r2}`` under ``f(1) = 1``."""
    _check_s(ctx, r1, r2, s)
    q, n = ctx.q, ctx.n
    return (
        (-1) ** s
        * ctx.qp(s * (r2 - r1) + _c2(s))
        * qpoch_inv(q, n - s + 1, s)
        / qpoch_inv_multi(q, (n - r1, r2), s)
    )


def anchor_values_from_main(ctx: QContext, r1: int, r2: int, s: int) -> dict[str, Fraction]:
    """``f`` at ``1, q^{-r2}, q^{r1-n}, q^{r1-r2}`` expressed through the leading coefficient."""
    q, n = ctx.q, ctx.n
    lead = main_coefficient(ctx, r1, r2, s)
    den = qpoch_inv(q, n - s + 1, s)
    return {
        "1": lead
        * (-1) ** s
        * ctx.qp(s * (r1 - r2) - _c2(s))
        * qpoch_inv_multi(q, (n - r1, r2), s)
        / den,
        "q^-r2": lead * ctx.qp(-s * r2) * qpoch_inv_multi(q, (r1, r2), s) / den,
        "q^(r1-n)": lead * ctx.qp(-s * (n - r1)) * qpoch_inv_multi(q, (n - r1, n - r2), s) / den,
        "q^(r1-r2)": lead * (-1) ** s * ctx.qp(-_c2(s)) * qpoch_inv_multi(q, (r1, n - r2), s) / den,
    }


def extremal_closed_form(ctx: QContext, r: int, s: int, which: str = "r-to-s") -> IntertwinerKernel:
    """Product formulas for ``lam_s^{r,s}`` (``which='r-to-s'``) or ``lam_s^{n-s,r}`` (``'ns-to-r'``)."""
    n, q = ctx.n, ctx.q
    if not (0 <= s and s <= r <= n - s):
        raise ValueError(f"need s <= r <= n - s, got r={r}, s={s}")
    if which == "r-to-s":
        r1, r2 = r, s
        top, bot = s - r - 1, n - r
    elif which == "ns-to-r":
        r1, r2 = n - s, r
        top, bot = r + s - n - 1, r
    else:
        raise ValueError(f"unknown extremal family {which!r}")
    values = {t: qpoch_inv(q, top, t) / qpoch_inv(q, bot, t) for t in index_set(ctx, r1, r2)}
    return IntertwinerKernel(ctx, r1, r2, s, values, "extremal")


def adjoint_ratio(ctx: QContext, r1: int, r2: int, s: int) -> Fraction:
    """``q^{s(r2-r1)} (q^{r1}, q^{n-r2}; q^-1)_s / (q^{n-r1}, q^{r2}; q^-1)_s``."""
    q, n = ctx.q, ctx.n
    return (
        ctx.qp(s * (r2 - r1))
        * qpoch_inv_multi(q, (r1, n - r2), s)
        / qpoch_inv_multi(q, (n - r1, r2), s)
    )


# ---------------------------------------------------------------------------
# Rodrigues weights
# ---------------------------------------------------------------------------


def rho_weight(ctx: QContext, r1: int, r2: int, t: int) -> Fraction:
    """``rho(q^{-t})``; zero off ``I_n(r1, r2)``."""
    n = ctx.n
    if t not in index_set(ctx, r1, r2):
        return Fraction(0)
    parts = (t, r2 - t, r1 - r2 + t, n - r1 - t)
    return ctx.qp(t * (r1 - r2 + t + 1)) * q_multinomial(n, parts, ctx)


def rho_s_weight(ctx: QContext, r1: int, r2: int, s: int, t: int) -> QuadExt:
    """``rho_s(q^{-t-s/2})``; zero off ``I_{n-2s}(r1-s, r2-s)``."""
    q, n = ctx.q, ctx.n
    m = n - 2 * s
    if m < 0 or not (0 <= r1 - s <= m and 0 <= r2 - s <= m) or t not in index_range(m, r1 - s, r2 - s):
        return QuadExt.rational(0, q)
    parts = (t, r2 - s - t, r1 - r2 + t, n - r1 - s - t)
    twice = 2 * s * (r1 - r2) - s + 2 * t * (r1 - r2 + t + 1)
    scale = qpoch_inv(q, n, 2 * s) * q_multinomial(m, parts, ctx)
    return QuadExt.half_power(q, twice) * scale


class ChiPair:
    """``chi^+``, ``chi^-`` and the derived ``sigma``, ``tau`` of the hypergeometric operator.

    Polynomials are coefficient lists (lowest degree first) over ``Q(sqrt q)``.
    """

    def __init__(self, ctx: QContext, r1: int, r2: int):
        _check_dims(ctx, r1, r2)
        self.ctx, self.r1, self.r2 = ctx, r1, r2
        q, n = ctx.q, ctx.n
        lead = QuadExt.half_power(q, 2 * (r1 - r2) - 1)
        a, b = ctx.qp(r2), ctx.qp(n - r1)
        c, d = Fraction(1), ctx.qp(r2 - r1)
        self.plus = [lead, lead * (-(a + b)), lead * (a * b)]
        self.minus = [lead, lead * (-(c + d)), lead * (c * d)]
        self.sigma = [(x + y) * Fraction(1, 2) for x, y in zip(self.plus, self.minus)]
        factor = QuadExt.half_power(q, -1) - QuadExt.half_power(q, 1)
        diff = [x - y for x, y in zip(self.plus, self.minus)]
        if not diff[0].is_zero():
            raise InconsistencyError("chi+ and chi- differ at u = 0")
        self.tau = [diff[1] / factor, diff[2] / factor]

    def chi_plus(self, u) -> QuadExt:
        return poly_eval(self.plus, u)

    def chi_minus(self, u) -> QuadExt:
        return poly_eval(self.minus, u)

    def sigma_at(self, u) -> QuadExt:
        return poly_eval(self.sigma, u)

    def tau_at(self, u) -> QuadExt:
        return poly_eval(self.tau, u)

    def reconstructs(self) -> bool:
        """``chi^{+/-} = sigma +/- ((q^{-1/2}-q^{1/2})/2) u tau`` coefficientwise."""
        q = self.ctx.q
        half = (QuadExt.half_power(q, -1) - QuadExt.half_power(q, 1)) * Fraction(1, 2)
        u_tau = [QuadExt.rational(0, q), half * self.tau[0], half * self.tau[1]]
        plus = [s + x for s, x in zip(self.sigma, u_tau)]
        minus = [s - x for s, x in zip(self.sigma, u_tau)]
        return plus == self.plus and minus == self.minus


# ---------------------------------------------------------------------------
# grid functions and the operators S, D
# ---------------------------------------------------------------------------

HALF = Fraction(1, 2)


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Finitely supported function on ``u = q^{-(t + offset)}``, ``t`` integer.

    ``offset`` is 0 or 1/2; missing indices are zero.
    """

    q: int
    offset: Fraction
    values: Mapping[int, QuadExt] = field(default_factory=dict)

    def __post_init__(self):
        off = Fraction(self.offset) % 1
        if off not in (0, HALF):
            raise ValueError("grid offset must be an integer or half-integer")
        object.__setattr__(self, "offset", off)
        vals = {}
        for t, v in self.values.items():
            vals[int(t)] = v if isinstance(v, QuadExt) else QuadExt.rational(v, self.q)
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_callable(cls, q: int, offset, window: range, fn: Callable) -> "GridFunction":
        grid = cls(q, offset)
        return cls(q, offset, {t: fn(grid.point(t)) for t in window})

    def point(self, t: int) -> QuadExt:
        """``u = q^{-(t + offset)}``."""
        return QuadExt.half_power(self.q, -int(2 * (t + self.offset)))

    def __call__(self, t: int) -> QuadExt:
        v = self.values.get(t)
        return v if v is not None else QuadExt.rational(0, self.q)

    @property
    def window(self) -> range:
        if not self.values:
            return range(0)
        return range(min(self.values), max(self.values) + 1)

    def support(self) -> list[int]:
        return sorted(t for t, v in self.values.items() if not v.is_zero())


def _neighbours(f: GridFunction):
    """Output offset, output window and the (upper, lower) input indices per output index.

    For output point ``u``, ``upper`` is the index of ``q^{1/2} u`` and
    ``lower`` that of ``q^{-1/2} u``.
    """
    win = f.window
    if f.offset == 0:
        out_off = HALF
        out = range(win.start - 1, win.stop) if win else range(0)
        return out_off, out, (lambda t: t), (lambda t: t + 1)
    out_off = Fraction(0)
    out = range(win.start, win.stop + 1) if win else range(0)
    return out_off, out, (lambda t: t - 1), (lambda t: t)


def grid_S(f: GridFunction) -> GridFunction:
    """``S f(u) = (f(q^{1/2}u) + f(q^{-1/2}u)) / 2``."""
    off, out, up, lo = _neighbours(f)
    return GridFunction(f.q, off, {t: (f(up(t)) + f(lo(t))) * HALF for t in out})


def grid_D(f: GridFunction) -> GridFunction:
    """``D f(u) = (f(q^{1/2}u) - f(q^{-1/2}u)) / ((q^{1/2} - q^{-1/2}) u)``."""
    q = f.q
    off, out, up, lo = _neighbours(f)
    step = QuadExt.half_power(q, 1) - QuadExt.half_power(q, -1)
    res = GridFunction(q, off)
    vals = {t: (f(up(t)) - f(lo(t))) / (step * res.point(t)) for t in out}
    return GridFunction(q, off, vals)


def grid_D_power(f: GridFunction, k: int) -> GridFunction:
    for _ in range(k):
        f = grid_D(f)
    return f


def kernel_grid(kernel: IntertwinerKernel) -> GridFunction:
    """The kernel as an integer-offset grid function (zero off its index set)."""
    return GridFunction(kernel.ctx.q, 0, dict(kernel.values))


def hyperop_apply(chi: ChiPair, f: GridFunction) -> GridFunction:
    """``(sigma D^2 + tau S D) f`` on the integer grid."""
    if f.offset != 0:
        raise ValueError("the hypergeometric operator acts on integer-offset grids")
    d1 = grid_D(f)
    d2 = grid_D(d1)
    sd = grid_S(d1)
    out = {}
    for t in d2.window:
        u = d2.point(t)
        out[t] = chi.sigma_at(u) * d2(t) + chi.tau_at(u) * sd(t)
    return GridFunction(f.q, 0, out)


def hyperop_kernel(kernel: IntertwinerKernel) -> IntertwinerKernel:
    """Apply the hypergeometric operator to a kernel; result restricted to its index set."""
    chi = ChiPair(kernel.ctx, kernel.r1, kernel.r2)
    res = hyperop_apply(chi, kernel_grid(kernel))
    vals = {}
    for t in kernel.index:
        v = res(t)
        if not v.is_rational():
            raise InconsistencyError(f"hypergeometric operator left a sqrt(q) part at t={t}")
        vals[t] = v.to_rat()
    return IntertwinerKernel(kernel.ctx, kernel.r1, kernel.r2, kernel.s, vals, "applied")


def rho_s_grid(ctx: QContext, r1: int, r2: int, s: int) -> GridFunction:
    """``rho_s`` on its grid ``q^{-t-s/2}``, stored with offset ``(s mod 2)/2``."""
    m = ctx.n - 2 * s
    vals = {}
    if m >= 0 and 0 <= r1 - s <= m and 0 <= r2 - s <= m:
        for t in index_range(m, r1 - s, r2 - s):
            vals[t + s // 2] = rho_s_weight(ctx, r1, r2, s, t)
    return GridFunction(ctx.q, Fraction(s % 2, 2), vals)


def rodrigues_constant(ctx: QContext, r1: int, r2: int, s: int) -> QuadExt:
    """``(-1)^s q^{s(r2-r1) - C(s,2)/2} (q-1)^s / (q^{n-r1}, q^{r2}; q^-1)_s``."""
    q, n = ctx.q, ctx.n
    rational = (-1) ** s * Fraction(q - 1) ** s / qpoch_inv_multi(q, (n - r1, r2), s)
    return QuadExt.half_power(q, 2 * s * (r2 - r1) - _c2(s)) * rational


def rodrigues_eval(ctx: QContext, r1: int, r2: int, s: int) -> IntertwinerKernel:
    """Kernel from ``rho f_s = C D^s rho_s`` evaluated on the grid."""
    _check_s(ctx, r1, r2, s)
    ds = grid_D_power(rho_s_grid(ctx, r1, r2, s), s)
    if ds.offset != 0:
        raise InconsistencyError("D^s rho_s did not land on the integer grid")
    const = rodrigues_constant(ctx, r1, r2, s)
    vals = {}
    for t in index_set(ctx, r1, r2):
        v = const * ds(t) / rho_weight(ctx, r1, r2, t)
        if not v.is_rational():
            raise InconsistencyError(f"Rodrigues value at t={t} kept a sqrt(q) component")
        vals[t] = v.to_rat()
    return IntertwinerKernel(ctx, r1, r2, s, vals, "rodrigues")


def summation_by_parts_check(f: GridFunction, g: GridFunction) -> tuple[QuadExt, QuadExt]:
    """Both sides of ``sum_Z f Dg u = - sum_{Z+1/2} Df g u``."""
    if f.offset != 0 or g.offset != HALF:
        raise ValueError("need f on the integer grid and g on the half-integer grid")
    if f.q != g.q:
        raise ValueError("grids over different q")
    zero = QuadExt.rational(0, f.q)
    dg = grid_D(g)
    lhs = zero
    for t in dg.window:
        if f(t).is_zero():
            continue
        lhs = lhs + f(t) * dg(t) * dg.point(t)
    df = grid_D(f)
    rhs = zero
    for t in df.window:
        if g(t).is_zero():
            continue
        rhs = rhs - df(t) * g(t) * df.point(t)
    return lhs, rhs


# ---------------------------------------------------------------------------
# identities on the grid
# ---------------------------------------------------------------------------


def fe2_pairs(ctx: QContext, r1: int, r2: int) -> list[tuple[int, Fraction, Fraction]]:
    """``(t, rho(q^{-t}), rho(q^{-t-1}) chi^-(q^{-t-1}) / chi^+(q^{-t}))`` for consecutive ``t``."""
    chi = ChiPair(ctx, r1, r2)
    idx = index_set(ctx, r1, r2)
    out = []
    for t in idx:
        if t + 1 not in idx:
            continue
        u0, u1 = ctx.qp(-t), ctx.qp(-t - 1)
        rhs = rho_weight(ctx, r1, r2, t + 1) * chi.chi_minus(u1) / chi.chi_plus(u0)
        out.append((t, rho_weight(ctx, r1, r2, t), rhs.to_rat()))
    return out


def rho_s_recurrences(ctx: QContext, r1: int, r2: int, s: int):
    """For each ``t``: closed-form ``rho_{s+1}`` and the two recurrence values from ``rho_s``.

    Recurrence 1: ``rho_s(q^{-t-s/2}) chi^+(q^{-t-s})``.
    Recurrence 2: ``rho_s(q^{-t-1-s/2}) chi^-(q^{-t-1})``.
    """
    chi = ChiPair(ctx, r1, r2)
    lo, hi = -2, ctx.n + 2
    rows = []
    for t in range(lo, hi + 1):
        target = rho_s_weight(ctx, r1, r2, s + 1, t)
        first = rho_s_weight(ctx, r1, r2, s, t) * chi.chi_plus(ctx.qp(-t - s))
        second = rho_s_weight(ctx, r1, r2, s, t + 1) * chi.chi_minus(ctx.qp(-t - 1))
        rows.append((t, target, first, second))
    return rows


def weight_sum(ctx: QContext, r1: int, r2: int, s: int = 0) -> Fraction:
    """``q^{-s/2} sum_t rho_s(q^{-t-s/2}) q^{-t}`` (``s = 0`` gives ``sum rho(q^{-t}) q^{-t}``)."""
    q = ctx.q
    total = QuadExt.rational(0, q)
    m = ctx.n - 2 * s
    for t in range(-1, max(m, 0) + 2):
        total = total + rho_s_weight(ctx, r1, r2, s, t) * ctx.qp(-t)
    total = total * QuadExt.half_power(q, -s)
    if not total.is_rational():
        raise InconsistencyError("weight sum has a sqrt(q) component")
    return total.to_rat()


def weight_sums(ctx: QContext, r1: int, r2: int, s: int) -> tuple[Fraction, Fraction]:
    """``(direct sum, closed form)`` for the weight mass of ``rho_s``."""
    return weight_sum(ctx, r1, r2, s), weight_sum_closed(ctx, r1, r2, s)


def weight_sum_closed(ctx: QContext, r1: int, r2: int, s: int) -> Fraction:
    """``q^{s(r1-r2-1)} (q^n; q^-1)_{2s} [n-2s, r1-s][n-2s, r2-s]``."""
    q, n = ctx.q, ctx.n
    return (
        ctx.qp(s * (r1 - r2 - 1))
        * qpoch_inv(q, n, 2 * s)
        * q_binomial(n - 2 * s, r1 - s, q)
        * q_binomial(n - 2 * s, r2 - s, q)
    )


def weight_sum_closed_alt(ctx: QContext, r1: int, r2: int, s: int) -> Fraction:
    """Second closed form: Pochhammer ratio times ``[n r1][n r2]``."""
    q, n = ctx.q, ctx.n
    num = qpoch_inv_multi(q, (r1, n - r1, r2, n - r2), s)
    den = ctx.qp(s * (r2 - r1 + 1)) * qpoch_inv(q, n, 2 * s)
    return num / den * q_binomial(n, r1, q) * q_binomial(n, r2, q)


def kernel_inner_product(
    ctx: QContext, r1: int, r2: int, a: IntertwinerKernel, b: IntertwinerKernel
) -> Fraction:
    """``sum_t rho(q^{-t}) q^{-t} a(t) b(t)``."""
    for k in (a, b):
        if (k.ctx, k.r1, k.r2) != (ctx, r1, r2):
            raise DimensionError("kernel lives on a different index set")
    return sum(
        (rho_weight(ctx, r1, r2, t) * ctx.qp(-t) * a[t] * b[t] for t in index_set(ctx, r1, r2)),
        Fraction(0),
    )


def s_derivative_law(ctx: QContext, r1: int, r2: int, s: int) -> tuple[list[QuadExt], QuadExt, QuadExt]:
    """``D^s`` of the polynomial grid of ``f_s`` and the two stated constants.

    Returns ``(interior values of D^s f, lead-coefficient form, closed form)``.
    """
    q, n = ctx.q, ctx.n
    kernel = qhahn_kernel(ctx, r1, r2, s, 1)
    poly = kernel.polynomial()
    width = 2 * s + 2
    grid = GridFunction.from_callable(q, 0, range(0, width + 1), lambda u: poly_eval(poly, u))
    ds = grid_D_power(grid, s)
    interior = []
    for t in ds.window:
        e = t + ds.offset
        if e - Fraction(s, 2) >= 0 and e + Fraction(s, 2) <= width:
            interior.append(ds(t))
    lead = main_coefficient(ctx, r1, r2, s)
    via_lead = lead * (-1) ** s * qpoch_inv(q, s, s) / Fraction(q - 1) ** s
    via_lead_q = QuadExt.half_power(q, -_c2(s)) * via_lead
    closed = QuadExt.half_power(q, 2 * s * (r2 - r1) + _c2(s)) * (
        qpoch_inv_multi(q, (n - s + 1, s), s)
        / (Fraction(q - 1) ** s * qpoch_inv_multi(q, (n - r1, r2), s))
    )
    return interior, via_lead_q, closed
