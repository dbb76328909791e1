"""Matrix realizations of intertwiners and the operator identities between them.

Matrices are indexed ``(target point, source point)`` in enumeration order of
the two :class:`~qgrass.geometry.GrassmannSpace` objects.  Everything here
requires a prime ``q`` because it goes through explicit geometry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DimensionError, InconsistencyError
from .exact import Mat, lagrange_projection
from .geometry import (
    GrassmannSpace,
    GroupElement,
    distance_table,
    grassmann_space,
    permutation_of,
)
from .kernels import (
    IntertwinerKernel,
    adjoint_ratio,
    index_set,
    mu_eigenvalue,
    n_max,
    qhahn_kernel,
)
from .laplacians import graph_laplacian
from .qcomb import QContext, dim_irrep, m_count, q_binomial, qpoch_inv


@dataclass(frozen=True, eq=False)
class IntertwinerOp:
    """A G-map ``V_r1 -> V_r2`` as an exact matrix."""

    ctx: QContext
    r1: int
    r2: int
    matrix: Mat
    src: GrassmannSpace
    dst: GrassmannSpace

    def __post_init__(self):
        if self.matrix.shape != (len(self.dst), len(self.src)):
            raise DimensionError("matrix shape does not match the spaces")

    def __matmul__(self, other: "IntertwinerOp") -> "IntertwinerOp":
        if other.r2 != self.r1:
            raise DimensionError("composition of non-matching levels")
        return IntertwinerOp(self.ctx, other.r1, self.r2, self.matrix @ other.matrix, other.src, self.dst)

    def scaled(self, c) -> "IntertwinerOp":
        return IntertwinerOp(self.ctx, self.r1, self.r2, self.matrix * c, self.src, self.dst)

    @property
    def T(self) -> "IntertwinerOp":
        return IntertwinerOp(self.ctx, self.r2, self.r1, self.matrix.T, self.dst, self.src)

    def trace(self) -> Fraction:
        return self.matrix.trace()

    def commutes_with(self, g: GroupElement) -> bool:
        """``entry(g y, g x) == entry(y, x)`` for all ``x``, ``y``."""
        p_src = np.asarray(permutation_of(g, self.src))
        p_dst = np.asarray(permutation_of(g, self.dst))
        num = self.matrix.numerator
        return bool(np.all(num[np.ix_(p_dst, p_src)] == num))


def _ctx_spaces(ctx: QContext, r1: int, r2: int):
    return grassmann_space(ctx.q, ctx.n, r1), grassmann_space(ctx.q, ctx.n, r2)


def operator_from_kernel(
    kernel: IntertwinerKernel, src: GrassmannSpace | None = None, dst: GrassmannSpace | None = None
) -> IntertwinerOp:
    """Matrix with entry ``(x2, x1) = lam(dim(x2/(x1 cap x2)))``."""
    ctx = kernel.ctx
    if src is None or dst is None:
        src, dst = _ctx_spaces(ctx, kernel.r1, kernel.r2)
    if src.p != ctx.q or dst.p != ctx.q or src.n != ctx.n or dst.n != ctx.n:
        raise DimensionError("spaces do not match the kernel's field and dimension")
    if (src.r, dst.r) != (kernel.r1, kernel.r2):
        raise DimensionError("space dimensions do not match the kernel")
    dist = distance_table(src, dst)
    den = math.lcm(*(v.denominator for v in kernel.values.values()))
    lookup = np.zeros(int(dist.max()) + 1 if dist.size else 1, dtype=object)
    for t, v in kernel.values.items():
        lookup[t] = v.numerator * (den // v.denominator)
    return IntertwinerOp(ctx, kernel.r1, kernel.r2, Mat(lookup[dist], den), src, dst)


def kernel_from_operator(op: IntertwinerOp, normalize: bool = True) -> IntertwinerKernel:
    """Read the kernel off an orbit-constant matrix, rescaled so that ``f(1) = 1``."""
    dist = distance_table(op.src, op.dst)
    num, den = op.matrix.numerator, op.matrix.denominator
    values = {}
    for t in index_set(op.ctx, op.r1, op.r2):
        block = num[dist == t]
        if block.size == 0:
            raise InconsistencyError(f"distance {t} never occurs")
        if not np.all(block == block[0]):
            raise ValueError(f"matrix is not constant on the distance class t={t}")
        values[t] = Fraction(block[0], den)
    raw = IntertwinerKernel(op.ctx, op.r1, op.r2, 0, values, "raw")
    deg = raw.degree()
    raw = IntertwinerKernel(op.ctx, op.r1, op.r2, max(deg, 0), values, "raw")
    if not normalize:
        return raw
    f1 = raw.at_u(1)
    if f1 == 0:
        raise ValueError("interpolated f(1) vanishes; the kernel cannot be normalized")
    return IntertwinerKernel(
        op.ctx, op.r1, op.r2, raw.s, {t: v / f1 for t, v in values.items()}, "f1"
    )


@lru_cache(maxsize=128)
def _projection(p: int, n: int, r: int, s: int) -> Mat:
    space = grassmann_space(p, n, r)
    ctx = QContext(p, n)
    top = min(r, n - r)
    eig = [-mu_eigenvalue(ctx, j) for j in range(top + 1)]
    return lagrange_projection(graph_laplacian(space), eig, s)


def projection_P(space: GrassmannSpace, s: int) -> IntertwinerOp:
    """Orthogonal projection of ``V_r`` onto the ``s``-th Laplacian eigenspace."""
    top = min(space.r, space.n - space.r)
    if not 0 <= s <= top:
        raise ValueError(f"s={s} outside 0..{top}")
    ctx = QContext(space.p, space.n)
    return IntertwinerOp(ctx, space.r, space.r, _projection(space.p, space.n, space.r, s), space, space)


@lru_cache(maxsize=128)
def _radon_subset(p: int, n: int, r1: int, r2: int) -> Mat:
    src, dst = grassmann_space(p, n, r1), grassmann_space(p, n, r2)
    # distance_table(dst, src)[i, j] = dim(x1_i / (x1_i cap x2_j)), zero iff x1_i <= x2_j
    return Mat.from_int_array((distance_table(dst, src) == 0).T.astype(np.int64))


def radon_subset(src: GrassmannSpace, dst: GrassmannSpace) -> IntertwinerOp:
    """``R phi(x2) = sum_{x1 <= x2} phi(x1)``."""
    if src.r > dst.r:
        raise DimensionError("the inclusion transform needs r1 <= r2")
    if (src.p, src.n) != (dst.p, dst.n):
        raise DimensionError("spaces over different ambient spaces")
    ctx = QContext(src.p, src.n)
    return IntertwinerOp(ctx, src.r, dst.r, _radon_subset(src.p, src.n, src.r, dst.r), src, dst)


def radon_complement(src: GrassmannSpace) -> IntertwinerOp:
    """``R_c phi(z) = sum_{x cap z = 0} phi(x)`` for ``z`` in ``X_{n-r}``."""
    dst = grassmann_space(src.p, src.n, src.n - src.r)
    # x cap z = 0 iff dim(z/(x cap z)) = dim z
    mat = (distance_table(src, dst) == dst.r).astype(np.int64)
    return IntertwinerOp(QContext(src.p, src.n), src.r, dst.r, Mat.from_int_array(mat), src, dst)


@lru_cache(maxsize=512)
def _oracle(q: int, n: int, r1: int, r2: int, s: int) -> tuple[IntertwinerOp, IntertwinerKernel]:
    ctx = QContext(q, n)
    src, dst = _ctx_spaces(ctx, r1, r2)
    if r1 <= r2:
        seed = radon_subset(src, dst).matrix
    else:
        seed = radon_subset(dst, src).matrix.T
    composite = projection_P(dst, s).matrix @ seed @ projection_P(src, s).matrix
    if composite.is_zero():
        raise InconsistencyError(f"projected seed vanishes for (r1,r2,s)=({r1},{r2},{s})")
    raw = IntertwinerOp(ctx, r1, r2, composite, src, dst)
    kernel = kernel_from_operator(raw)
    return operator_from_kernel(kernel, src, dst), kernel


def lambda_oracle(ctx: QContext, r1: int, r2: int, s: int) -> IntertwinerOp:
    """``Lam_s^{r1,r2}`` from spectral projections of an inclusion transform, ``f(1) = 1``."""
    if not 0 <= s <= n_max(ctx, r1, r2):
        raise ValueError(f"s={s} outside 0..N({r1},{r2})")
    return _oracle(ctx.q, ctx.n, r1, r2, s)[0]


def lambda_oracle_kernel(ctx: QContext, r1: int, r2: int, s: int) -> IntertwinerKernel:
    lambda_oracle(ctx, r1, r2, s)
    return _oracle(ctx.q, ctx.n, r1, r2, s)[1]


@lru_cache(maxsize=512)
def _canonical(q: int, n: int, r1: int, r2: int, s: int) -> IntertwinerOp:
    return operator_from_kernel(qhahn_kernel(QContext(q, n), r1, r2, s))


def canonical_operator(ctx: QContext, r1: int, r2: int, s: int) -> IntertwinerOp:
    """``Lam_s^{r1,r2}`` built directly from the closed-form kernel."""
    return _canonical(ctx.q, ctx.n, r1, r2, s)


# ---------------------------------------------------------------------------
# constants
# ---------------------------------------------------------------------------


def product_constant(ctx: QContext, r2: int, s: int) -> Fraction:
    """``k(r2, s) = [n r2] / ([n s] - [n s-1])``."""
    return q_binomial(ctx.n, r2, ctx) / dim_irrep(s, ctx)


def verify_product(ctx: QContext, r1: int, r2: int, r3: int, s: int) -> dict:
    """Compare ``Lam^{r2,r3} Lam^{r1,r2}`` with ``k(r2,s) Lam^{r1,r3}`` exactly."""
    if not 0 <= s <= min(n_max(ctx, r1, r2), n_max(ctx, r2, r3)):
        raise ValueError("s outside the common range")
    left = canonical_operator(ctx, r2, r3, s).matrix @ canonical_operator(ctx, r1, r2, s).matrix
    k = product_constant(ctx, r2, s)
    right = canonical_operator(ctx, r1, r3, s).matrix * k
    found = left.proportionality(canonical_operator(ctx, r1, r3, s).matrix)
    return {"status": left == right, "constant": k, "found": found}


def radon_composition_constant(ctx: QContext, r1: int, r2: int, r3: int) -> Fraction:
    """``[r3 r2][r2 r1]/[r3 r1]``."""
    return q_binomial(r3, r2, ctx) * q_binomial(r2, r1, ctx) / q_binomial(r3, r1, ctx)


def radon_decomposition(ctx: QContext, r1: int, r2: int) -> list[Fraction]:
    """Coefficients ``w_s`` with ``R_sub^{r1,r2} = sum_s w_s Lam_s^{r1,r2}``."""
    if r1 > r2:
        raise DimensionError("need r1 <= r2")
    base = q_binomial(r2, r1, ctx) / q_binomial(ctx.n, r1, ctx)
    return [base * dim_irrep(s, ctx) for s in range(n_max(ctx, r1, r2) + 1)]


def m_constant(ctx: QContext, r: int, s: int) -> Fraction:
    """``m(r,s) = (-1)^s q^{(r-s)(n-r)+C(s,2)} (q^{n-r};q^-1)_s / (q^r;q^-1)_s``."""
    q, n = ctx.q, ctx.n
    return (
        (-1) ** s
        * ctx.qp((r - s) * (n - r) + math.comb(s, 2))
        * qpoch_inv(q, n - r, s)
        / qpoch_inv(q, r, s)
    )


def hs_norm(ctx: QContext, r1: int, r2: int, s: int) -> Fraction:
    """Squared Hilbert-Schmidt norm of ``Lam_s^{r1,r2}`` in closed form."""
    if not 0 <= s <= n_max(ctx, r1, r2):
        raise ValueError("s out of range")
    return (
        adjoint_ratio(ctx, r1, r2, s)
        * q_binomial(ctx.n, r1, ctx)
        * q_binomial(ctx.n, r2, ctx)
        / dim_irrep(s, ctx)
    )


def hs_norm_matrix(op: IntertwinerOp) -> Fraction:
    """``tr(M^T M)``: sum of squared entries."""
    num = op.matrix.numerator
    return Fraction(int((num * num).sum()), op.matrix.denominator**2)


def d_constant(ctx: QContext, r: int, s: int) -> Fraction:
    """``d(r,s) = q^{sr} (q^{n-r};q^-1)_s / (q^r;q^-1)_s``."""
    q, n = ctx.q, ctx.n
    return ctx.qp(s * r) * qpoch_inv(q, n - r, s) / qpoch_inv(q, r, s)


def adjoint_constant(ctx: QContext, r1: int, r2: int, s: int, oracle: bool = True):
    """``(poch_value, d_ratio_value, oracle_value)`` for ``Lam_s^{r1,r2}^T = c Lam_s^{r2,r1}``.

    ``poch_value`` is the Pochhammer-ratio expression, ``d_ratio_value`` is
    ``d(r1,s)/d(r2,s)``; the oracle compares the spectral-projection matrices.
    """
    poch = adjoint_ratio(ctx, r1, r2, s)
    d_ratio = d_constant(ctx, r1, s) / d_constant(ctx, r2, s)
    found = None
    if oracle:
        a = lambda_oracle(ctx, r1, r2, s).matrix
        b = lambda_oracle(ctx, r2, r1, s).matrix
        found = a.T.proportionality(b)
        if found is None:
            raise InconsistencyError("transpose is not proportional to the reverse operator")
    return poch, d_ratio, found


# ---------------------------------------------------------------------------
# spherical functions
# ---------------------------------------------------------------------------


def spherical_check(space: GrassmannSpace, s: int, x0: int, x1: int, x2: int) -> tuple[Fraction, Fraction]:
    """Both sides of the averaged product identity for ``psi = lam_s^{r,r}``.

    The average over the isotropy group of ``x0`` is taken as a uniform average
    over the sphere ``{x : d(x, x0) = d(x1, x0)}``.  Spheres around ``x0`` are
    single orbits of the isotropy group (the action is two-point homogeneous)
    and every point of an orbit is hit by the same number of group elements,
    so the two averages agree.
    """
    size = len(space)
    for i in (x0, x1, x2):
        if not 0 <= i < size:
            raise IndexError(f"point index {i} out of range")
    ctx = QContext(space.p, space.n)
    psi = qhahn_kernel(ctx, space.r, space.r, s)
    dist = distance_table(space, space)
    lhs = psi[int(dist[x1, x0])] * psi[int(dist[x0, x2])]
    sphere = np.flatnonzero(dist[:, x0] == dist[x1, x0])
    total = sum((psi[int(dist[x, x2])] for x in sphere), Fraction(0))
    return lhs, total / len(sphere)


def spherical_triples(space: GrassmannSpace, x0: int = 0) -> list[tuple[int, int, int]]:
    """One ``(x0, x1, x2)`` per ``(d(x1,x0), d(x0,x2), d(x1,x2))`` class, ``x0`` fixed."""
    dist = distance_table(space, space)
    reps: dict = {}
    for x1 in range(len(space)):
        for x2 in range(len(space)):
            key = (int(dist[x1, x0]), int(dist[x0, x2]), int(dist[x1, x2]))
            reps.setdefault(key, (x0, x1, x2))
    return [reps[k] for k in sorted(reps)]


# ---------------------------------------------------------------------------
# fixed-s relations
# ---------------------------------------------------------------------------

VARIANTS = ("a", "b", "c", "d", "e")


def _lam(ctx: QContext, r1: int, r2: int, s: int, t: int) -> Fraction:
    """Kernel value with the convention that out-of-range kernels vanish."""
    if not (0 <= r1 <= ctx.n and 0 <= r2 <= ctx.n) or not 0 <= s <= n_max(ctx, r1, r2):
        return Fraction(0)
    kernel = _kernel_cached(ctx.q, ctx.n, r1, r2, s)
    return kernel.values.get(t, Fraction(0))


@lru_cache(maxsize=1024)
def _kernel_cached(q: int, n: int, r1: int, r2: int, s: int) -> IntertwinerKernel:
    return qhahn_kernel(QContext(q, n), r1, r2, s)


def variant_applies(ctx: QContext, r1: int, r2: int, r3: int, variant: str) -> bool:
    return {
        "a": True,
        "b": r2 <= r3,
        "c": r1 <= r2,
        "d": r2 <= r1,
        "e": r3 <= r2,
    }[variant]


def fixed_s_sides(ctx: QContext, r1: int, r2: int, r3: int, s: int, variant: str, t: int):
    """``(A(t), B(t))`` such that the relation reads ``c A(t) = B(t)``."""
    n = ctx.n
    q = ctx.q
    if variant == "a":
        return _lam(ctx, r3, r1, s, r1 - r3 + t), _lam(ctx, r1, r3, s, t)
    lhs = _lam(ctx, r1, r3, s, t)
    if variant == "b":
        ks = index_set(ctx, r1, r2)
        rhs = sum((m_count(r3, r2, t, k, q) * _lam(ctx, r1, r2, s, k) for k in ks), Fraction(0))
    elif variant == "c":
        ks = index_set(ctx, r2, r3)
        rhs = sum(
            (m_count(n - r1, n - r2, t, k, q) * _lam(ctx, r2, r3, s, k) for k in ks), Fraction(0)
        )
    elif variant == "d":
        ks = index_set(ctx, r2, r3)
        rhs = sum(
            (m_count(r1, r2, r1 - r3 + t, r2 - r3 + k, q) * _lam(ctx, r2, r3, s, k) for k in ks),
            Fraction(0),
        )
    elif variant == "e":
        ks = index_set(ctx, r1, r2)
        rhs = sum(
            (
                m_count(n - r3, n - r2, r1 - r3 + t, r1 - r2 + k, q) * _lam(ctx, r1, r2, s, k)
                for k in ks
            ),
            Fraction(0),
        )
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return lhs, rhs


def fixed_s_check(ctx: QContext, r1: int, r2: int, r3: int, s: int, variant: str) -> dict:
    """Find the constant at the first index with ``A(t) != 0`` and test every index.

    When ``A`` vanishes identically the relation holds only if ``B`` does too;
    the constant is then reported as ``None``.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if not variant_applies(ctx, r1, r2, r3, variant):
        raise ValueError(f"variant ({variant}) does not apply to ({r1},{r2},{r3})")
    rows = [(t, *fixed_s_sides(ctx, r1, r2, r3, s, variant, t)) for t in index_set(ctx, r1, r3)]
    anchor = next(((a, b) for _, a, b in rows if a != 0), None)
    if anchor is None:
        ok = all(b == 0 for _, _, b in rows)
        if not ok:
            raise InconsistencyError("left side vanishes identically but the right side does not")
        return {"status": True, "constant": None, "rows": rows}
    const = anchor[1] / anchor[0]
    ok = all(const * a == b for _, a, b in rows)
    return {"status": ok, "constant": const, "rows": rows}
