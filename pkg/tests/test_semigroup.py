from itertools import product
from math import comb, factorial

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from greenmorita.errors import (BadParams, NoInverse, NonUniqueInverse, NotAssociative,
                                NotIdempotent)
from greenmorita.semigroup import (brandt, builtin, chain, cyclic_group, idempotents,
                                   is_inverse_by_idempotents, natural_leq, partial_injections,
                                   pinj_maps, semilattice, sub_closure, symmetric_inverse_monoid,
                                   validate, whole)


def brute_partial_injections(n):
    """Enumerate partial maps {0..n-1} -> {0..n-1} and keep the injective ones."""
    out = []
    for images in product(range(-1, n), repeat=n):
        defined = [y for y in images if y >= 0]
        if len(defined) == len(set(defined)):
            out.append(images)
    return out


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_partial_injection_count_matches_formula_and_brute_force(n):
    expected = sum(comb(n, k) ** 2 * factorial(k) for k in range(n + 1))
    assert len(partial_injections(n)) == expected
    assert sorted(partial_injections(n)) == sorted(brute_partial_injections(n))


@pytest.mark.parametrize("n, size, idem", [(1, 2, 2), (2, 7, 4), (3, 34, 8)])
def test_symmetric_inverse_monoid_sizes(n, size, idem):
    S = symmetric_inverse_monoid(n)
    assert S.size == size
    assert len(idempotents(S)) == idem == 2 ** n


def test_pinj_composition_is_function_composition(I2):
    maps = pinj_maps(I2)
    for a, b in product(range(I2.size), repeat=2):
        ab = maps[I2.mul(a, b)]
        for x in range(2):
            y = maps[b][x]
            z = -1 if y < 0 else maps[a][y]
            assert ab[x] == z


def test_i2_layout(I2):
    assert list(idempotents(I2)) == [0, 3, 4, 6]
    assert I2.inv(1) == 1 and I2.mul(1, 1) == 0
    assert I2.inv(2) == 5


def test_rejects_nonassociative_with_witness():
    with pytest.raises(NotAssociative) as info:
        validate([[0, 1], [0, 0]])
    a, b, c = info.value.witness
    m = np.array([[0, 1], [0, 0]])
    assert m[m[a, b], c] != m[a, m[b, c]]


def test_rejects_missing_inverse():
    with pytest.raises(NoInverse):
        validate([[0, 0, 0], [0, 0, 0], [0, 0, 0]])


def test_rejects_non_unique_inverse():
    # left-zero band: every element is an inverse of every other
    with pytest.raises(NonUniqueInverse):
        validate([[0, 0], [1, 1]])


def test_bad_shapes():
    with pytest.raises(BadParams):
        validate([[0, 1]])
    with pytest.raises(BadParams):
        validate([[0, 5], [1, 0]])


def test_is_inverse_by_idempotents_agrees(I2):
    assert is_inverse_by_idempotents(I2.mult)
    assert not is_inverse_by_idempotents([[0, 0], [1, 1]])


def test_natural_leq_is_partial_order(I3):
    idem = idempotents(I3)
    for e in idem:
        assert natural_leq(I3, e, e)
        for f in idem:
            if natural_leq(I3, e, f) and natural_leq(I3, f, e):
                assert e == f
            for g in idem:
                if natural_leq(I3, e, f) and natural_leq(I3, f, g):
                    assert natural_leq(I3, e, g)


def test_natural_leq_requires_idempotents(I2):
    with pytest.raises(NotIdempotent):
        natural_leq(I2, 1, 0)


def test_sub_closure_closed(I3):
    H = sub_closure(I3, [1, 5])
    for a in H.members:
        assert I3.inv(a) in H
        for b in H.members:
            assert I3.mul(a, b) in H


def test_sub_closure_fix_sets(I2):
    assert sub_closure(I2, [0, 3, 4, 6]).members == (0, 3, 4, 6)
    assert sub_closure(I2, [1]).members == (0, 1)
    assert whole(I2).members == tuple(range(7))


def test_families():
    assert cyclic_group(5).size == 5
    assert chain(4).size == 4
    assert brandt(2, [[0, 1], [1, 0]]).size == 2 * 2 * 2 + 1
    S = semilattice([[0, 0], [0, 1]])
    assert len(idempotents(S)) == 2
    with pytest.raises(BadParams):
        builtin("nonsense")
    with pytest.raises(BadParams):
        semilattice([[0, 1], [1, 0]])
    assert builtin("symmetric_inverse_monoid", 2).size == 7


def _brute_inverse_semigroup_axioms(S):
    n = S.size
    for g in range(n):
        s = S.inv(g)
        assert S.mul(S.mul(g, s), g) == g
        assert S.mul(S.mul(s, g), s) == s
        assert S.inv(s) == g
    idem = idempotents(S)
    for e, f in product(idem, repeat=2):
        assert S.mul(e, f) == S.mul(f, e)


@pytest.mark.parametrize("S", [symmetric_inverse_monoid(3), brandt(2, [[0, 1], [1, 0]]),
                               chain(5), cyclic_group(4)])
def test_axioms_on_families(S):
    _brute_inverse_semigroup_axioms(S)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 33), min_size=1, max_size=3))
def test_sub_closure_is_smallest(gens):
    S = symmetric_inverse_monoid(3)
    H = sub_closure(S, gens)
    # every member is a word in the generators and their inverses
    words = set(gens) | {S.inv(g) for g in gens}
    frontier = set(words)
    while frontier:
        new = {S.mul(a, b) for a in words for b in frontier} | \
              {S.mul(b, a) for a in words for b in frontier}
        frontier = new - words
        words |= new
    assert set(H.members) == words


@settings(max_examples=30, deadline=None)
@given(st.permutations(range(7)))
def test_validate_invariant_under_relabelling(perm):
    S = symmetric_inverse_monoid(2)
    inv = np.argsort(perm)
    table = [[perm[S.mul(inv[a], inv[b])] for b in range(7)] for a in range(7)]
    T = validate(table)
    assert len(idempotents(T)) == 4
    for g in range(7):
        assert T.inv(perm[g]) == perm[S.inv(g)]
