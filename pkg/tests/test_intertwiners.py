import random
from fractions import Fraction

import numpy as np
import pytest

from qgrass.errors import DimensionError
from qgrass.exact import Mat
from qgrass.geometry import grassmann_space, random_group_element, transvection_set
from qgrass.intertwiners import (
    VARIANTS,
    IntertwinerOp,
    adjoint_constant,
    canonical_operator,
    fixed_s_check,
    hs_norm,
    hs_norm_matrix,
    kernel_from_operator,
    lambda_oracle,
    lambda_oracle_kernel,
    m_constant,
    operator_from_kernel,
    product_constant,
    projection_P,
    radon_complement,
    radon_composition_constant,
    radon_decomposition,
    radon_subset,
    spherical_check,
    spherical_triples,
    variant_applies,
    verify_product,
)
from qgrass.kernels import constant_kernel, kernel_inner_product, n_max, qhahn_kernel
from qgrass.qcomb import QContext, q_binomial

K7 = QContext(2, 3)
F24 = QContext(2, 4)


def j_matrix(size):
    return Mat.from_int_array(np.ones((size, size), dtype=np.int64))


def test_operator_from_kernel_examples():
    assert operator_from_kernel(constant_kernel(QContext(2, 3), 0, 0)).matrix == Mat.identity(1)
    op = operator_from_kernel(qhahn_kernel(K7, 1, 1, 1))
    assert op.matrix == (Mat.identity(7) - j_matrix(7) / 7) * Fraction(7, 6)


def test_operator_commutes_with_group():
    rng = random.Random(7)
    lam = qhahn_kernel(F24, 1, 2, 1)
    op = operator_from_kernel(lam)
    trans = transvection_set(2, 4)
    for g in rng.sample(trans, 20):
        assert op.commutes_with(g)
    assert op.commutes_with(random_group_element(2, 4, rng))


def test_kernel_from_operator_examples():
    space = grassmann_space(2, 3, 1)
    ident = IntertwinerOp(K7, 1, 1, Mat.identity(7), space, space)
    assert kernel_from_operator(ident, normalize=False).values == {0: 1, 1: 0}
    proj = IntertwinerOp(K7, 1, 1, Mat.identity(7) - j_matrix(7) / 7, space, space)
    assert kernel_from_operator(proj).values == {0: 1, 1: Fraction(-1, 6)}


def test_kernel_from_operator_rejects_non_invariant():
    space = grassmann_space(2, 3, 1)
    rows = [[int(i == j == 0) for j in range(7)] for i in range(7)]
    op = IntertwinerOp(K7, 1, 1, Mat.from_rows(rows), space, space)
    with pytest.raises(ValueError):
        kernel_from_operator(op)


def test_projection_examples():
    x1 = grassmann_space(2, 3, 1)
    assert projection_P(x1, 0).matrix == j_matrix(7) / 7
    assert projection_P(x1, 1).matrix == Mat.identity(7) - j_matrix(7) / 7
    assert projection_P(grassmann_space(2, 4, 2), 2).trace() == 20


def test_oracle_examples():
    assert lambda_oracle_kernel(K7, 1, 2, 0).values == {1: 1, 2: 1}
    assert lambda_oracle_kernel(K7, 1, 2, 1).values == {1: Fraction(2, 9), 2: Fraction(-1, 6)}
    assert lambda_oracle_kernel(F24, 2, 2, 1).values == qhahn_kernel(F24, 2, 2, 1).values
    assert lambda_oracle(F24, 1, 3, 1).matrix == canonical_operator(F24, 1, 3, 1).matrix


def test_radon_examples():
    x1, x2 = grassmann_space(2, 3, 1), grassmann_space(2, 3, 2)
    assert radon_subset(x1, x1).matrix == Mat.identity(7)
    assert set(radon_subset(x1, x2).matrix.row_sums()) == {3}
    f = {r: grassmann_space(2, 4, r) for r in (1, 2, 3)}
    left = radon_subset(f[2], f[3]).matrix @ radon_subset(f[1], f[2]).matrix
    assert left == radon_subset(f[1], f[3]).matrix * radon_composition_constant(F24, 1, 2, 3)
    assert radon_complement(grassmann_space(2, 3, 0)).matrix == Mat.identity(1)
    assert set(radon_complement(x1).matrix.row_sums()) == {4}


def test_radon_complement_identity():
    left = radon_complement(grassmann_space(2, 3, 1)).matrix @ canonical_operator(K7, 1, 1, 1).matrix
    assert m_constant(K7, 1, 1) == -3
    assert left == canonical_operator(K7, 1, 2, 1).matrix * -3


def test_product_constants():
    assert product_constant(K7, 1, 1) == Fraction(7, 6)
    assert product_constant(F24, 2, 1) == Fraction(5, 2)
    assert all(product_constant(F24, r, 0) == q_binomial(4, r, 2) for r in range(5))
    assert verify_product(F24, 1, 2, 3, 1)["status"]
    with pytest.raises(ValueError):
        verify_product(F24, 0, 2, 3, 1)


def test_radon_decomposition_examples():
    assert radon_decomposition(K7, 1, 2) == [Fraction(3, 7), Fraction(18, 7)]
    for r in range(5):
        ws = radon_decomposition(F24, r, r)
        assert ws == [1 / product_constant(F24, r, s) for s in range(len(ws))]
    rad = radon_subset(grassmann_space(2, 4, 1), grassmann_space(2, 4, 3)).matrix
    total = Mat.zeros(*rad.shape)
    for s, w in enumerate(radon_decomposition(F24, 1, 3)):
        total = total + canonical_operator(F24, 1, 3, s).matrix * w
    assert total == rad
    with pytest.raises(DimensionError):
        radon_decomposition(F24, 3, 1)


def test_hs_norm_examples():
    assert hs_norm(F24, 2, 2, 1) == Fraction(175, 2)
    assert hs_norm(F24, 1, 3, 0) == q_binomial(4, 1, 2) * q_binomial(4, 3, 2)
    op = canonical_operator(F24, 2, 2, 1)
    assert hs_norm_matrix(op) == Fraction(175, 2)
    lam = qhahn_kernel(F24, 2, 2, 1)
    assert kernel_inner_product(F24, 2, 2, lam, lam) == Fraction(175, 2)


def test_adjoint_examples():
    assert adjoint_constant(F24, 2, 2, 1) == (1, 1, 1)
    poch, d_ratio, oracle = adjoint_constant(F24, 1, 2, 1)
    assert (poch, d_ratio) == (Fraction(2, 7), Fraction(7, 2))
    assert oracle == poch


def test_spherical_examples():
    space = grassmann_space(2, 3, 1)
    assert spherical_check(space, 1, 0, 1, 2) == (Fraction(1, 36), Fraction(1, 36))
    lhs, rhs = spherical_check(space, 1, 0, 0, 3)
    assert lhs == rhs == qhahn_kernel(K7, 1, 1, 1)[1]
    assert spherical_check(space, 0, 0, 1, 2) == (1, 1)
    assert len(spherical_triples(space)) == 5


def test_fixed_s_examples():
    res = fixed_s_check(K7, 1, 1, 2, 1, "b")
    assert res["status"] and res["constant"] == 3
    assert [t for t, _, _ in res["rows"]] == [1, 2]
    # s = 0: every kernel is 1 and the constant is a plain count
    res0 = fixed_s_check(F24, 1, 2, 3, 0, "b")
    assert res0["constant"] == q_binomial(3, 2, 2)
    _, _, oracle = adjoint_constant(F24, 1, 3, 1)
    assert fixed_s_check(F24, 1, 2, 3, 1, "a")["constant"] == oracle
    with pytest.raises(ValueError):
        fixed_s_check(K7, 1, 2, 1, 1, "b")


@pytest.mark.parametrize("q,n", [(2, 3), (2, 4), (3, 3)])
def test_fixed_s_all_variants(q, n):
    ctx = QContext(q, n)
    for r1 in range(n + 1):
        for r2 in range(n + 1):
            for r3 in range(n + 1):
                for s in range(n // 2 + 1):
                    for v in VARIANTS:
                        if variant_applies(ctx, r1, r2, r3, v):
                            assert fixed_s_check(ctx, r1, r2, r3, s, v)["status"]


@pytest.mark.parametrize("q,n", [(2, 3), (3, 3)])
def test_oracle_equals_closed_form(q, n):
    ctx = QContext(q, n)
    for r1 in range(n + 1):
        for r2 in range(n + 1):
            for s in range(n_max(ctx, r1, r2) + 1):
                assert lambda_oracle_kernel(ctx, r1, r2, s).values == qhahn_kernel(ctx, r1, r2, s).values
