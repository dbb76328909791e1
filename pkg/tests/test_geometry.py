import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgrass.errors import BudgetExceeded, DimensionError
from qgrass.geometry import (
    GroupElement,
    Subspace,
    act,
    brute_count,
    distance,
    distance_table,
    enumerate_subspaces,
    grassmann_space,
    is_transvection,
    permutation_of,
    random_group_element,
    sphere_neighbors,
    transvection_set,
)
from qgrass.qcomb import q_binomial


@pytest.mark.parametrize("p,n,r,size", [(2, 3, 1, 7), (2, 4, 2, 35), (3, 3, 0, 1), (3, 3, 1, 13), (5, 2, 1, 6)])
def test_enumeration_sizes(p, n, r, size):
    space = grassmann_space(p, n, r)
    assert len(space) == size == q_binomial(n, r, p)
    assert len({x.rows for x in space.points}) == size
    assert all(space.index(x) == i for i, x in enumerate(space.points))


def test_enumeration_order_is_stable():
    a = enumerate_subspaces(2, 4, 2)
    b = enumerate_subspaces(2, 4, 2)
    assert [x.rows for x in a.points] == [x.rows for x in b.points]
    assert a.points[0].rows == ((1, 0, 0, 0), (0, 1, 0, 0))


def test_non_prime_rejected():
    with pytest.raises(ValueError, match="q must be prime for geometric commands"):
        enumerate_subspaces(4, 3, 1)


def test_budget(monkeypatch):
    with pytest.raises(BudgetExceeded):
        enumerate_subspaces(2, 4, 2, limit=10)
    monkeypatch.setenv("QGRASS_BUDGET", "20")
    with pytest.raises(BudgetExceeded):
        grassmann_space(2, 4, 2)


def test_distance_examples():
    lines = grassmann_space(2, 3, 1).points
    planes = grassmann_space(2, 3, 2).points
    assert distance(lines[0], lines[0]) == (0, 0)
    assert distance(lines[0], lines[1]) == (1, 1)
    plane = next(y for y in planes if y.contains(lines[0]))
    assert distance(lines[0], plane) == (0, 1)


def test_ambient_mismatch():
    with pytest.raises(DimensionError):
        distance(grassmann_space(2, 3, 1).points[0], grassmann_space(2, 4, 1).points[0])


def test_neighbors():
    x1 = grassmann_space(2, 3, 1)
    assert all(len(sphere_neighbors(x1, i)) == 6 for i in range(7))
    x2 = grassmann_space(2, 4, 2)
    assert all(len(sphere_neighbors(x2, i)) == 18 for i in range(35))
    assert sphere_neighbors(grassmann_space(2, 3, 0), 0) == []


def test_transvection_counts():
    assert len(transvection_set(2, 3)) == 21
    assert len(transvection_set(2, 4)) == 105
    assert len(transvection_set(3, 3)) == 104


def test_transvections_closed_under_inverse():
    ts = transvection_set(2, 3)
    values = {g.matrix for g in ts}
    assert all(is_transvection(g) for g in ts)
    assert all(g.inverse().matrix in values for g in ts)


def test_action_examples():
    space = grassmann_space(2, 3, 1)
    ident = GroupElement.identity(2, 3)
    assert all(act(ident, x) == x for x in space.points)
    # 1 + e1 e3^T moves the line <e3> to <e1 + e3>
    g = GroupElement(2, ((1, 0, 1), (0, 1, 0), (0, 0, 1)))
    assert is_transvection(g)
    line = Subspace.from_vectors([(0, 0, 1)], 2, 3)
    assert act(g, line) == Subspace.from_vectors([(1, 0, 1)], 2, 3)


def test_singular_matrix_rejected():
    with pytest.raises(ValueError):
        GroupElement(2, ((1, 1), (1, 1)))


def test_brute_count_examples():
    space = grassmann_space(2, 3, 1)
    dist = distance_table(space, space)
    idx = range(len(space))
    assert brute_count(lambda a, b: dist[a, b] == 1, idx, idx) == 42
    assert brute_count(lambda a: False, idx) == 0
    assert brute_count(lambda a: True, []) == 0


def test_b_count_x2_level_two():
    space = grassmann_space(2, 4, 2)
    dist = distance_table(space, space)
    assert brute_count(lambda y: dist[y, 0] == 1, range(len(space))) == 18


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32))
def test_group_action_preserves_distance(seed):
    rng = random.Random(seed)
    p, n = rng.choice([(2, 3), (2, 4), (3, 3)])
    g = random_group_element(p, n, rng)
    r1, r2 = rng.randrange(n + 1), rng.randrange(n + 1)
    s1, s2 = grassmann_space(p, n, r1), grassmann_space(p, n, r2)
    x = s1.points[rng.randrange(len(s1))]
    y = s2.points[rng.randrange(len(s2))]
    assert act(g, x).dim == x.dim
    assert distance(act(g, x), act(g, y)) == distance(x, y)
    perm = permutation_of(g, s1)
    assert sorted(perm) == list(range(len(s1)))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32))
def test_group_multiplication_is_action(seed):
    rng = random.Random(seed)
    g, h = random_group_element(2, 4, rng), random_group_element(2, 4, rng)
    x = grassmann_space(2, 4, 2).points[rng.randrange(35)]
    assert act(g @ h, x) == act(g, act(h, x))
    assert act(g.inverse(), act(g, x)) == x


def test_distance_table_matches_pairwise():
    a, b = grassmann_space(2, 4, 1), grassmann_space(2, 4, 3)
    table = distance_table(a, b)
    for i, y in enumerate(b.points):
        for j, x in enumerate(a.points):
            assert table[i, j] == distance(x, y)[1]


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2**32))
def test_transvections_closed_under_conjugation(seed):
    rng = random.Random(seed)
    p, n = rng.choice([(2, 3), (3, 3), (2, 4)])
    values = {h.matrix for h in transvection_set(p, n)}
    g = random_group_element(p, n, rng)
    ginv = g.inverse()
    assert {(g @ h @ ginv).matrix for h in transvection_set(p, n)} == values
