"""Exact scalars and dense exact linear algebra.

Rationals are :class:`fractions.Fraction`.  Elements of the quadratic field
Q(sqrt(q)) are :class:`QuadExt`.  Matrices (:class:`Mat`) keep a single
positive common denominator over an integer numerator array, which turns
matrix products into integer products; when the magnitudes are small enough
the integer product is delegated to float64/int64 kernels whose exactness is
guaranteed by an a-priori bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import DimensionError, InconsistencyError

Rat = Fraction
Scalar = Union[int, Fraction]

_FLOAT_EXACT = 2**53
_INT64_EXACT = 2**63


def as_rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, QuadExt):
        return x.to_rat()
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


def format_rat(x: Scalar) -> str:
    """Serialize as ``num/den`` (``den`` omitted when it is 1)."""
    return str(Fraction(x))


def parse_rat(text: str) -> Fraction:
    return Fraction(text.strip().replace("−", "-"))


# ---------------------------------------------------------------------------
# Q(sqrt q)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadExt:
    """The number ``a + b*sqrt(q)`` with rational ``a``, ``b``."""

    a: Fraction
    b: Fraction
    q: int

    def __post_init__(self):
        if self.q < 2:
            raise ValueError("QuadExt needs q >= 2")
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @classmethod
    def rational(cls, x: Scalar, q: int) -> "QuadExt":
        return cls(Fraction(x), Fraction(0), q)

    @classmethod
    def sqrt(cls, q: int) -> "QuadExt":
        return cls(Fraction(0), Fraction(1), q)

    @classmethod
    def half_power(cls, q: int, k: int) -> "QuadExt":
        """``q**(k/2)`` for any integer ``k``."""
        whole, odd = divmod(k, 2)
        scale = Fraction(q) ** whole
        if odd:
            return cls(Fraction(0), scale, q)
        return cls(scale, Fraction(0), q)

    def _coerce(self, other) -> "QuadExt":
        if isinstance(other, QuadExt):
            if other.q != self.q:
                raise ValueError(f"mixing Q(sqrt {self.q}) and Q(sqrt {other.q})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(Fraction(other), Fraction(0), self.q)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadExt(self.a + o.a, self.b + o.b, self.q)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.q)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadExt(self.a - o.a, self.b - o.b, self.q)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadExt(
            self.a * o.a + self.b * o.b * self.q,
            self.a * o.b + self.b * o.a,
            self.q,
        )

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """``(a + b sqrt q)(a - b sqrt q) = a^2 - q b^2``."""
        return self.a * self.a - self.q * self.b * self.b

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.q)

    def inverse(self) -> "QuadExt":
        nrm = self.norm()
        if nrm == 0:
            # q a perfect square makes sqrt(q) rational; a + b sqrt(q) may vanish
            if self.is_zero():
                raise ZeroDivisionError("division by zero in Q(sqrt q)")
            root = math.isqrt(self.q)
            return QuadExt(1 / (self.a + self.b * root), Fraction(0), self.q)
        return QuadExt(self.a / nrm, -self.b / nrm, self.q)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = QuadExt(Fraction(1), Fraction(0), self.q)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        if self.a == 0 and self.b == 0:
            return True
        root = math.isqrt(self.q)
        return root * root == self.q and self.a + self.b * root == 0

    def is_rational(self) -> bool:
        if self.b == 0:
            return True
        root = math.isqrt(self.q)
        return root * root == self.q

    def to_rat(self) -> Fraction:
        if self.b == 0:
            return self.a
        root = math.isqrt(self.q)
        if root * root == self.q:
            return self.a + self.b * root
        raise InconsistencyError(f"{self} has a nonzero sqrt({self.q}) component")

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, QuadExt) or other.q == self.q else None
        if o is None or o is NotImplemented:
            return False
        return (self - o).is_zero()

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.q))

    def __str__(self):
        return f"{self.a} + {self.b}*sqrt({self.q})"

    def __repr__(self):
        return f"QuadExt({self})"


def format_quad(x: QuadExt) -> str:
    return str(x)


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------


def _obj_array(rows, shape=None) -> np.ndarray:
    arr = np.empty(shape if shape is not None else (len(rows), len(rows[0]) if rows else 0), dtype=object)
    if shape is None:
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                arr[i, j] = v
    return arr


def _maxabs(arr: np.ndarray) -> int:
    if arr.size == 0:
        return 0
    return int(np.abs(arr).max())


def _int_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product of two object arrays holding Python ints."""
    k = a.shape[1]
    if a.size == 0 or b.size == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64).astype(object)
    bound = _maxabs(a) * _maxabs(b) * k
    if bound < _FLOAT_EXACT:
        # every partial sum is an integer of magnitude < 2**53: float64 is exact
        prod = a.astype(np.float64) @ b.astype(np.float64)
        return np.rint(prod).astype(np.int64).astype(object)
    if bound < _INT64_EXACT:
        return (a.astype(np.int64) @ b.astype(np.int64)).astype(object)
    return a.dot(b)


class Mat:
    """Immutable dense exact rational matrix ``num / den``.

    ``num`` is an object array of Python ints, ``den`` a positive int, and the
    pair is kept in lowest terms so that equality is structural.
    """

    __slots__ = ("_num", "_den")

    def __init__(self, num: np.ndarray, den: int = 1):
        if num.ndim != 2:
            raise DimensionError("Mat needs a 2-d array")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if num.dtype != object:
            num = num.astype(object)
        if den < 0:
            num, den = -num, -den
        if den != 1 and num.size:
            g = math.gcd(den, *num.flat)
            if g > 1:
                num = num // g
                den //= g
        elif den != 1:
            den = 1
        if num.size and den == 1:
            pass
        num.setflags(write=False)
        self._num = num
        self._den = den

    # construction -------------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> "Mat":
        rows = [[Fraction(v) for v in row] for row in rows]
        if not rows:
            return cls(np.empty((0, 0), dtype=object))
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionError("ragged rows")
        den = 1
        for row in rows:
            for v in row:
                den = den * v.denominator // math.gcd(den, v.denominator)
        num = np.empty((len(rows), width), dtype=object)
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                num[i, j] = v.numerator * (den // v.denominator)
        return cls(num, den)

    @classmethod
    def from_int_array(cls, arr, den: int = 1) -> "Mat":
        arr = np.asarray(arr)
        if arr.dtype != object:
            arr = arr.astype(np.int64).astype(object)
        else:
            arr = arr.copy()
        return cls(arr, den)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Mat":
        return cls(np.zeros((rows, cols), dtype=np.int64).astype(object))

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls(np.eye(n, dtype=np.int64).astype(object))

    @classmethod
    def scalar(cls, n: int, value: Scalar) -> "Mat":
        return cls.identity(n) * value

    # accessors ----------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self._num.shape

    @property
    def rows(self) -> int:
        return self._num.shape[0]

    @property
    def cols(self) -> int:
        return self._num.shape[1]

    @property
    def numerator(self) -> np.ndarray:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return Fraction(self._num[i, j], self._den)

    @property
    def entries(self) -> list[list[Fraction]]:
        return [[Fraction(v, self._den) for v in row] for row in self._num]

    def row(self, i: int) -> list[Fraction]:
        return [Fraction(v, self._den) for v in self._num[i]]

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise DimensionError("trace of a non-square matrix")
        return Fraction(sum(self._num.diagonal()), self._den)

    def row_sums(self) -> list[Fraction]:
        return [Fraction(sum(row), self._den) for row in self._num]

    def col_sums(self) -> list[Fraction]:
        return [Fraction(sum(col), self._den) for col in self._num.T]

    def is_zero(self) -> bool:
        return not any(self._num.flat)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and bool(np.all(self._num == self._num.T))

    @property
    def T(self) -> "Mat":
        return Mat(self._num.T.copy(), self._den)

    # arithmetic ---------------------------------------------------------
    def __matmul__(self, other: "Mat") -> "Mat":
        return mat_mul(self, other)

    def _same_shape(self, other: "Mat"):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        den = self._den * other._den // math.gcd(self._den, other._den)
        return Mat(self._num * (den // self._den) + other._num * (den // other._den), den)

    def __sub__(self, other: "Mat") -> "Mat":
        return self + (-other)

    def __neg__(self) -> "Mat":
        return Mat(-self._num, self._den)

    def __mul__(self, c: Scalar) -> "Mat":
        if isinstance(c, Mat):
            raise TypeError("use @ for matrix products")
        c = Fraction(c)
        return Mat(self._num * c.numerator, self._den * c.denominator)

    __rmul__ = __mul__

    def __truediv__(self, c: Scalar) -> "Mat":
        c = Fraction(c)
        if c == 0:
            raise ZeroDivisionError("matrix divided by zero")
        return self * (1 / c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return (
            self.shape == other.shape
            and self._den == other._den
            and bool(np.all(self._num == other._num))
        )

    __hash__ = None

    def proportionality(self, other: "Mat") -> Fraction | None:
        """The scalar ``c`` with ``self == c * other``, or None if none exists.

        Both zero gives 0; ``other`` zero with ``self`` nonzero gives None.
        """
        self._same_shape(other)
        if other.is_zero():
            return Fraction(0) if self.is_zero() else None
        flat = other._num.ravel()
        k = int(np.flatnonzero(flat != 0)[0])
        c = Fraction(self._num.ravel()[k], self._den) / Fraction(flat[k], other._den)
        return c if self == other * c else None

    def __repr__(self):
        return f"Mat({self.rows}x{self.cols}, den={self._den})"


def mat_mul(a: Mat, b: Mat) -> Mat:
    """Exact product ``a @ b``."""
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return Mat(_int_matmul(a.numerator, b.numerator), a.denominator * b.denominator)


def _row_reduce(num: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Fraction-free Gauss-Jordan elimination on an integer object array.

    Pivot = first nonzero entry of the column at or below the current row.
    Rows are divided by their content after every step to curb growth.
    """
    m = num.copy()
    nrows, ncols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        col = m[r:, c]
        nz = np.flatnonzero(col != 0)
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        p = m[r, c]
        others = m[:, c].copy()
        others[r] = 0
        targets = np.flatnonzero(others != 0)
        if targets.size:
            m[targets] = m[targets] * p - np.outer(others[targets], m[r])
            for t in targets:
                g = math.gcd(*m[t])
                if g > 1:
                    m[t] = m[t] // g
        g = math.gcd(*m[r])
        if g > 1:
            m[r] = m[r] // g
        pivots.append(c)
        r += 1
    return m, pivots


def mat_rank(a: Mat) -> int:
    if a.rows == 0 or a.cols == 0:
        return 0
    return len(_row_reduce(a.numerator)[1])


def mat_nullspace(a: Mat) -> list[list[Fraction]]:
    """Exact basis of ``{v : a v = 0}``, one vector per free column."""
    ncols = a.cols
    if a.rows == 0:
        reduced, pivots = np.empty((0, ncols), dtype=object), []
    else:
        reduced, pivots = _row_reduce(a.numerator)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = Fraction(-reduced[i, f], reduced[i, pc])
        basis.append(v)
    return basis


def mat_vec(a: Mat, v: Sequence[Scalar]) -> list[Fraction]:
    if len(v) != a.cols:
        raise DimensionError("vector length mismatch")
    return [sum((Fraction(x) * y for x, y in zip(a.row(i), v)), Fraction(0)) for i in range(a.rows)]


def lagrange_projection(m: Mat, eigenvalues: Sequence[Scalar], target_index: int) -> Mat:
    """Spectral idempotent of ``m`` for ``eigenvalues[target_index]``.

    ``P = prod_{j != s} (m - mu_j I) / (mu_s - mu_j)``; requires the listed
    eigenvalues to be distinct and to annihilate ``m`` jointly.
    """
    mus = [Fraction(x) for x in eigenvalues]
    if len(set(mus)) != len(mus):
        raise ValueError("eigenvalues must be pairwise distinct")
    if not 0 <= target_index < len(mus):
        raise IndexError("target index out of range")
    if m.rows != m.cols:
        raise DimensionError("projection of a non-square matrix")
    n = m.rows
    target = mus[target_index]
    prod = Mat.identity(n)
    scale = Fraction(1)
    for j, mu in enumerate(mus):
        if j == target_index:
            continue
        prod = prod @ (m - Mat.scalar(n, mu))
        scale *= target - mu
    if not (prod @ (m - Mat.scalar(n, target))).is_zero():
        raise ValueError("eigenvalue list is not complete: prod (M - mu_j I) != 0")
    return prod / scale


# ---------------------------------------------------------------------------
# Polynomial interpolation over Q
# ---------------------------------------------------------------------------


def interpolating_polynomial(xs: Sequence[Scalar], ys: Sequence[Scalar]) -> list[Fraction]:
    """Coefficients (low to high degree) of the interpolant through the points."""
    xs = [Fraction(x) for x in xs]
    coef = [Fraction(y) for y in ys]
    if len(xs) != len(coef):
        raise DimensionError("xs and ys differ in length")
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    n = len(xs)
    # Newton divided differences, in place
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        # poly = poly * (x - xs[k]) + coef[k]
        shifted = [Fraction(0)] + poly[:-1]
        poly = [s - xs[k] * p for s, p in zip(shifted, poly)]
        poly[0] += coef[k]
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return poly


def poly_eval(coeffs: Sequence, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def lagrange_eval(xs: Sequence[Scalar], ys: Sequence[Scalar], x: Scalar) -> Fraction:
    """Value at ``x`` of the interpolant through ``(xs, ys)``."""
    x = Fraction(x)
    total = Fraction(0)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        term = Fraction(yi)
        for j, xj in enumerate(xs):
            if j != i:
                term *= (x - xj) / (Fraction(xi) - xj)
        total += term
    return total


def vectors_equal(u: Iterable, v: Iterable) -> bool:
    return list(u) == list(v)
