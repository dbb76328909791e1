from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgrass.errors import DimensionError
from qgrass.exact import QuadExt, interpolating_polynomial
from qgrass.kernels import (
    FORMS,
    ChiPair,
    GridFunction,
    anchor_values_from_main,
    extremal_closed_form,
    grid_D,
    grid_S,
    hyperop_apply,
    hyperop_kernel,
    index_set,
    kernel_inner_product,
    main_coefficient,
    mu_eigenvalue,
    n_max,
    phi32_truncated,
    qhahn_kernel,
    rho_s_grid,
    rho_s_recurrences,
    rho_s_weight,
    rho_weight,
    rodrigues_constant,
    rodrigues_eval,
    s_derivative_law,
    summation_by_parts_check,
    weight_sum_closed_alt,
    weight_sums,
)
from qgrass.laplacians import bc_coefficients, kernel_difference_apply
from qgrass.qcomb import QContext, q_binomial

K7 = QContext(2, 3)
SQRT2 = QuadExt.sqrt(2)


def kernel_params(max_q=5, max_n=6):
    @st.composite
    def build(draw):
        q = draw(st.integers(2, max_q))
        n = draw(st.integers(0, max_n))
        r1 = draw(st.integers(0, n))
        r2 = draw(st.integers(0, n))
        s = draw(st.integers(0, min(r1, r2, n - r1, n - r2)))
        return QContext(q, n), r1, r2, s

    return build()


def test_index_sets():
    assert list(index_set(K7, 1, 1)) == [0, 1]
    assert list(index_set(K7, 1, 2)) == [1, 2]
    assert list(index_set(QContext(2, 4), 2, 2)) == [0, 1, 2]
    assert n_max(QContext(2, 4), 2, 2) == 2
    with pytest.raises(DimensionError):
        index_set(K7, 4, 1)


def test_mu_examples():
    assert mu_eigenvalue(K7, 0) == 0
    assert mu_eigenvalue(K7, 1) == 7
    assert mu_eigenvalue(QContext(2, 4), 2) == 21


def test_kernel_examples():
    assert qhahn_kernel(K7, 1, 1, 0).values == {0: 1, 1: 1}
    assert qhahn_kernel(K7, 1, 1, 1).values == {0: 1, 1: Fraction(-1, 6)}
    assert qhahn_kernel(K7, 1, 2, 1).values == {1: Fraction(2, 9), 2: Fraction(-1, 6)}


def test_phi32_examples():
    assert phi32_truncated((1, 2, 3), (4, 5), Fraction(1, 2), 7, 0) == 1
    # two-term expansions at u = 1/2
    assert qhahn_kernel(K7, 1, 1, 1).at_u(Fraction(1, 2)) == Fraction(-1, 6)
    assert qhahn_kernel(K7, 1, 2, 1).at_u(Fraction(1, 2)) == Fraction(2, 9)


def test_main_coefficient_examples():
    assert main_coefficient(K7, 1, 1, 0) == 1
    assert main_coefficient(K7, 1, 1, 1) == Fraction(7, 3)
    assert main_coefficient(K7, 1, 2, 1) == Fraction(14, 9)
    # slope of the line through (1, 1) and (1/2, -1/6)
    assert interpolating_polynomial([1, Fraction(1, 2)], [1, Fraction(-1, 6)])[1] == Fraction(7, 3)


def test_extremal_examples():
    assert extremal_closed_form(K7, 1, 1, "r-to-s")[1] == Fraction(-1, 6)
    assert extremal_closed_form(K7, 2, 1, "ns-to-r")[1] == Fraction(-1, 6)
    assert extremal_closed_form(QContext(2, 5), 3, 2, "r-to-s")[0] == 1
    with pytest.raises(ValueError):
        extremal_closed_form(K7, 0, 1)


def test_rho_examples():
    assert rho_weight(K7, 1, 1, 0) == 7
    assert rho_weight(K7, 1, 1, 1) == 84
    assert rho_weight(K7, 1, 1, -1) == 0
    assert rho_s_weight(K7, 1, 1, 1, 0) == SQRT2 * Fraction(21, 2)
    assert rho_s_weight(K7, 1, 1, 1, 1).is_zero()
    for t in range(-1, 4):
        assert rho_s_weight(K7, 1, 2, 0, t) == QuadExt.rational(rho_weight(K7, 1, 2, t), 2)


def test_grid_operator_examples():
    const = GridFunction(2, 0, {t: 5 for t in range(-2, 3)})
    d = grid_D(const)
    assert all(d(t).is_zero() for t in range(-2, 2))
    ident = GridFunction.from_callable(3, 0, range(-2, 3), lambda u: u)
    d, s = grid_D(ident), grid_S(ident)
    half = (QuadExt.half_power(3, 1) + QuadExt.half_power(3, -1)) * Fraction(1, 2)
    for t in range(-2, 2):
        assert d(t) == QuadExt.rational(1, 3)
        assert s(t) == half * s.point(t)
    drho = grid_D(rho_s_grid(K7, 1, 1, 1))
    assert drho.offset == 0
    assert drho(1) == QuadExt.rational(42, 2)


def test_rodrigues_examples():
    assert rodrigues_constant(K7, 1, 1, 1) == QuadExt.rational(Fraction(-1, 3), 2)
    assert rodrigues_eval(K7, 1, 1, 0).values == {0: 1, 1: 1}
    assert rodrigues_eval(K7, 1, 1, 1)[1] == Fraction(-1, 6)
    assert rodrigues_eval(K7, 1, 2, 1).values == {1: Fraction(2, 9), 2: Fraction(-1, 6)}


def test_hyperop_examples():
    chi = ChiPair(K7, 1, 1)
    assert chi.reconstructs()
    # interior of the constant grid only
    res = hyperop_apply(chi, GridFunction(2, 0, {t: 1 for t in range(-3, 5)}))
    assert all(res(t).is_zero() for t in range(-1, 3))
    lam = qhahn_kernel(K7, 1, 1, 1)
    assert hyperop_kernel(lam).values == lam.scaled(-7).values


def test_weight_sum_examples():
    assert weight_sums(K7, 1, 1, 0) == (49, 49)
    assert weight_sums(K7, 1, 1, 1) == (Fraction(21, 2), Fraction(21, 2))


def test_inner_product_examples():
    lam0, lam1 = qhahn_kernel(K7, 1, 1, 0), qhahn_kernel(K7, 1, 1, 1)
    assert kernel_inner_product(K7, 1, 1, lam0, lam1) == 0
    ctx = QContext(3, 4)
    lam = qhahn_kernel(ctx, 1, 3, 0)
    assert kernel_inner_product(ctx, 1, 3, lam, lam) == q_binomial(4, 1, 3) * q_binomial(4, 3, 3)


def test_summation_by_parts_zero():
    g = GridFunction(2, Fraction(1, 2), {0: 3, 1: -1})
    lhs, rhs = summation_by_parts_check(GridFunction(2, 0, {}), g)
    assert lhs.is_zero() and rhs.is_zero()
    with pytest.raises(ValueError):
        summation_by_parts_check(g, g)


@settings(max_examples=60, deadline=None)
@given(kernel_params())
def test_forms_agree(params):
    ctx, r1, r2, s = params
    base = qhahn_kernel(ctx, r1, r2, s)
    for form in FORMS[1:]:
        assert qhahn_kernel(ctx, r1, r2, s, form).values == base.values
    assert rodrigues_eval(ctx, r1, r2, s).values == base.values
    assert base.degree() == s


@settings(max_examples=60, deadline=None)
@given(kernel_params())
def test_difference_and_hyperop_agree(params):
    ctx, r1, r2, s = params
    lam = qhahn_kernel(ctx, r1, r2, s)
    applied = kernel_difference_apply(bc_coefficients(ctx, r1, r2), lam)
    assert hyperop_kernel(lam).values == applied.values
    assert applied.values == lam.scaled(-mu_eigenvalue(ctx, s)).values


@settings(max_examples=60, deadline=None)
@given(kernel_params())
def test_main_coefficient_and_anchors(params):
    ctx, r1, r2, s = params
    lam = qhahn_kernel(ctx, r1, r2, s)
    poly = lam.polynomial()
    assert poly[-1] == main_coefficient(ctx, r1, r2, s)
    anchors = anchor_values_from_main(ctx, r1, r2, s)
    assert anchors["1"] == 1
    assert anchors["q^-r2"] == lam.at_u(ctx.qp(-r2))
    assert anchors["q^(r1-n)"] == lam.at_u(ctx.qp(r1 - ctx.n))
    assert anchors["q^(r1-r2)"] == lam.at_u(ctx.qp(r1 - r2))


@settings(max_examples=60, deadline=None)
@given(kernel_params())
def test_weights_and_orthogonality(params):
    ctx, r1, r2, s = params
    direct, closed = weight_sums(ctx, r1, r2, s)
    assert direct == closed == weight_sum_closed_alt(ctx, r1, r2, s)
    lam = qhahn_kernel(ctx, r1, r2, s)
    for s2 in range(s):
        other = qhahn_kernel(ctx, r1, r2, s2)
        assert kernel_inner_product(ctx, r1, r2, lam, other) == 0


@settings(max_examples=40, deadline=None)
@given(kernel_params(max_n=5))
def test_recurrences_and_s_derivative(params):
    ctx, r1, r2, s = params
    if s < n_max(ctx, r1, r2):
        for _, target, first, second in rho_s_recurrences(ctx, r1, r2, s):
            assert target == first == second
    interior, via_lead, closed = s_derivative_law(ctx, r1, r2, s)
    assert interior and all(v == via_lead for v in interior)
    assert via_lead == closed


@st.composite
def grid_pairs(draw):
    q = draw(st.integers(2, 6))

    def grid(offset):
        lo = draw(st.integers(-5, 5))
        vals = draw(st.lists(st.integers(-20, 20), min_size=0, max_size=6))
        return GridFunction(q, offset, {lo + i: v for i, v in enumerate(vals)})

    return grid(0), grid(Fraction(1, 2))


@settings(max_examples=100, deadline=None)
@given(grid_pairs())
def test_summation_by_parts_property(pair):
    f, g = pair
    lhs, rhs = summation_by_parts_check(f, g)
    assert lhs == rhs
