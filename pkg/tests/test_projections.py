from itertools import combinations, product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from greenmorita.errors import NotIdempotent
from greenmorita.projections import (GE, ZERO, all_ge_values, canonical_key, conj, ge,
                                     ge_eq, ge_expansion, ge_leq_projection, ge_mul, ge_range,
                                     ge_star, proj_expr, projection_expansion, projection_rep,
                                     range_, regular_rep, source, supp_of_idempotent)
from greenmorita.semigroup import brandt, symmetric_inverse_monoid
from greenmorita.suite import raw_ge_pairs


def subsets(xs):
    xs = sorted(xs)
    for k in range(len(xs) + 1):
        for c in combinations(xs, k):
            yield frozenset(c)


def test_supports_of_i2(I2):
    assert supp_of_idempotent(I2, 0) == {0, 3, 4, 6}
    assert supp_of_idempotent(I2, 3) == {3, 6}
    assert supp_of_idempotent(I2, 6) == {6}
    with pytest.raises(NotIdempotent):
        supp_of_idempotent(I2, 1)


def test_proj_expr_matches_regular_rep(I3):
    idem = I3.idempotent_list
    eye = np.eye(I3.size, dtype=int)
    for e0 in idem:
        for sub in combinations(idem, 2):
            M = projection_rep(I3, supp_of_idempotent(I3, e0))
            for e in sub:
                M = M @ (eye - projection_rep(I3, supp_of_idempotent(I3, e)))
            assert (projection_rep(I3, proj_expr(I3, e0, sub)) == M).all()


def test_atom_of_unit_in_i2_is_zero_on_c2(I2):
    # 1 (1 - e1)(1 - e2) has support {1} only
    assert proj_expr(I2, 0, [3, 4]) == {0}


def test_conj_matches_regular_rep(I2):
    for g in range(I2.size):
        for P in subsets(I2.idempotent_list):
            R = regular_rep(I2, ge(I2, g))
            lhs = projection_rep(I2, conj(I2, g, P))
            rhs = R @ projection_rep(I2, P) @ R.T
            assert (lhs == rhs).all()


@pytest.mark.parametrize("S", [symmetric_inverse_monoid(2), brandt(2, [[0, 1], [1, 0]])])
def test_ge_eq_agrees_with_regular_rep(S):
    raw = list(raw_ge_pairs(S))
    reps = [regular_rep(S, x) for x in raw]
    for (x, rx), (y, ry) in product(zip(raw, reps), repeat=2):
        assert ge_eq(S, x, y) == bool((rx == ry).all())


def test_zero_is_zero_matrix(I2):
    assert not regular_rep(I2, ZERO).any()
    for x in raw_ge_pairs(I2):
        assert regular_rep(I2, x).any()
    assert ge(I2, 6, [3]) is ZERO


def test_all_ge_values_counts_distinct_regular_reps(I2):
    distinct = {regular_rep(I2, x).tobytes() for x in raw_ge_pairs(I2)}
    assert len(all_ge_values(I2)) == len(distinct) == 29


def test_ge_mul_is_regular_rep_homomorphism(I2):
    vals = all_ge_values(I2)
    for x, y in product(vals, repeat=2):
        assert (regular_rep(I2, ge_mul(I2, x, y)) == regular_rep(I2, x) @ regular_rep(I2, y)).all()


def test_ge_star_is_transpose(I2):
    for x in all_ge_values(I2):
        assert (regular_rep(I2, ge_star(I2, x)) == regular_rep(I2, x).T).all()
        assert ge_eq(I2, ge_star(I2, ge_star(I2, x)), x)


def test_associativity_exhaustive(I2):
    vals = all_ge_values(I2) + [ZERO]
    for x, y, z in product(vals, repeat=3):
        assert ge_eq(I2, ge_mul(I2, ge_mul(I2, x, y), z), ge_mul(I2, x, ge_mul(I2, y, z)))


def test_range_and_leq(I2):
    for x in all_ge_values(I2):
        xx = ge_mul(I2, x, ge_star(I2, x))
        assert xx.P == ge_range(I2, x)
        assert ge_leq_projection(I2, x, range_(I2, x.g))
        assert x.P <= source(I2, x.g)


def test_canonical_key_is_complete_invariant(I2):
    raw = list(raw_ge_pairs(I2))
    for x, y in product(raw, repeat=2):
        assert (canonical_key(I2, x) == canonical_key(I2, y)) == ge_eq(I2, x, y)


@pytest.mark.parametrize("n", [2, 3])
def test_projection_expansion(n):
    S = symmetric_inverse_monoid(n)
    for P in list(subsets(S.idempotent_list))[:80]:
        coef = projection_expansion(S, P)
        M = sum((c * projection_rep(S, supp_of_idempotent(S, y)) for y, c in coef.items()),
                np.zeros((S.size, S.size), dtype=int))
        assert (M == projection_rep(S, P)).all()


def test_ge_expansion(I2):
    for x in all_ge_values(I2):
        M = sum(c * regular_rep(I2, ge(I2, s)) for s, c in ge_expansion(I2, x).items())
        assert (M == regular_rep(I2, x)).all()


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 33), st.integers(0, 33), st.sets(st.integers(0, 7), min_size=1),
       st.sets(st.integers(0, 7), min_size=1))
def test_ge_mul_property_i3(g, h, p, q):
    S = symmetric_inverse_monoid(3)
    idem = S.idempotent_list
    x = ge(S, g, [idem[i] for i in p])
    y = ge(S, h, [idem[i] for i in q])
    assert (regular_rep(S, ge_mul(S, x, y)) == regular_rep(S, x) @ regular_rep(S, y)).all()
    assert (regular_rep(S, ge_star(S, x)) == regular_rep(S, x).T).all()


def test_ge_dataclass_ordering():
    a, b = GE(0, frozenset({1})), GE(1, frozenset({0}))
    assert a < b and a.key() == (0, (1,))
