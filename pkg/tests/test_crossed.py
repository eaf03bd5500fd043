import numpy as np
import pytest

from greenmorita import algebra as alg_mod
from greenmorita import fixtures
from greenmorita.cosets import build_groupoid, coset_space
from greenmorita.crossed import (CrossedProduct, StandardSpan, build_acp, carrier_projection,
                                 crosscheck_thm72, groupoid_cp, independence_check,
                                 members_as_ge, pinj_action, sieben_quotient,
                                 sieben_relations, trivial_action, validate_g_algebra)
from greenmorita.errors import (CentralityAxiomFails, IndexNotClosed, NotHomomorphism,
                                NotStarEndo)
from greenmorita.projections import ge
from greenmorita.semigroup import chain, cyclic_group
from greenmorita.suite import lemma_extension, raw_ge_pairs

from conftest import imprimitivity

ALL = list(fixtures.FIXTURES)


def test_pinj_action_is_partial_permutation(I2):
    act = pinj_action(I2)
    assert np.array_equal(act[1], [[0, 1], [1, 0]])
    assert np.array_equal(act[3], np.diag([0, 1]))
    assert not act[6].any()


def test_rejects_non_multiplicative():
    G = cyclic_group(1)
    with pytest.raises(NotStarEndo):
        validate_g_algebra(G, alg_mod.commutative_algebra(2), {0: np.array([[1, 1], [0, 0]])})


def test_rejects_non_homomorphism():
    G = cyclic_group(2)
    with pytest.raises(NotHomomorphism):
        validate_g_algebra(G, alg_mod.commutative_algebra(1), {0: np.eye(1), 1: np.zeros((1, 1))})


def test_rejects_non_central_idempotent():
    # on M2 + M2, (a, b) -> (a, a) is an idempotent *-endomorphism with non-central image
    G = chain(2)
    alg = alg_mod.block_diagonal_algebra((2, 2))
    dup = np.zeros((8, 8))
    for i in range(4):
        dup[i, i] = dup[i + 4, i] = 1
    with pytest.raises(CentralityAxiomFails):
        validate_g_algebra(G, alg, {0: dup, 1: np.eye(8)})


def test_unit_atom_of_fix1_acts_by_zero(fix1):
    ga = fix1.ga.restrict(fix1.Hp)
    assert not np.abs(ga.ext(ge(fix1.G, 0, [0]))).any()


def test_proj_refuses_to_split_atoms(fix2):
    ga = fix2.ga.restrict(fix2.Hp)
    with pytest.raises(ValueError):
        ga.proj(frozenset({0}))


@pytest.mark.parametrize("name", ALL)
def test_extension_well_defined(name):
    """Constant on equal values, equal to the Mobius route, multiplicative."""
    rep = lemma_extension(fixtures.get(name).ga)
    assert rep["class_residual"] < 1e-10
    assert rep["mobius_residual"] < 1e-10
    assert rep["hom_residual"] < 1e-10


def test_extension_on_raw_pairs_matches_regular_model(fix1):
    # on C^2 = span of the two points, alpha_{g p} is the compression of the partial map
    ga, G = fix1.ga, fix1.G
    for x in raw_ge_pairs(G):
        M = ga.ext(x)
        assert set(np.unique(M.real)) <= {0.0, 1.0}


@pytest.mark.parametrize("name", ALL)
def test_crossed_products_associative(name):
    imp = imprimitivity(name)
    for cp in (imp.B, imp.E, imp.EC):
        assert cp.algebra.associativity_residual() < 1e-10
        assert cp.algebra.involution_residual() < 1e-10


def test_mul_matches_structure_constants(fix2):
    imp = imprimitivity("FIX2")
    cp = imp.E
    rng = np.random.default_rng(3)
    for _ in range(5):
        x, y = cp.random(rng), cp.random(rng)
        assert np.allclose(cp.coords(cp.mul(x, y)),
                           cp.algebra.mul(cp.coords(x), cp.coords(y)))
        assert np.allclose(cp.coords(cp.star(x)), cp.algebra.star(cp.coords(x)))


def test_b0_dimensions(fix1, fix2):
    assert imprimitivity("FIX1").B.dim == 2
    assert imprimitivity("FIX2").B.dim == 4


@pytest.mark.parametrize("name", ALL)
def test_independence(name):
    imp = imprimitivity(name)
    for span in (imp.X, imp.B, imp.E):
        assert independence_check(span)


def test_independence_detects_duplicates():
    imp = imprimitivity("FIX1")
    fam = imp.B.basis_family()
    assert independence_check(imp.B, fam)
    assert not independence_check(imp.B, fam + fam[:1])
    assert independence_check(imp.B, fam[:1])


def test_acp_requires_closed_index(fix2):
    G = fix2.G
    with pytest.raises(IndexNotClosed):
        CrossedProduct(fix2.ga, [ge(G, 2)])


def test_fix2_sieben_and_groupoid(fix2):
    ga = fix2.ga.restrict(fix2.Hp)
    acp = build_acp(ga, members_as_ge(fix2.G, fix2.Hp.members))
    assert acp.dim == 4
    sq = sieben_quotient(acp, generators=fix2.Hp.idempotents())
    assert sq.algebra.dim == 4
    gcp = groupoid_cp(ga, build_groupoid(fix2.G, fix2.Hp))
    assert gcp.dim == 4
    assert alg_mod.blocks(gcp.algebra).blocks == (2,)


def test_fix1_groupoid_blocks(fix1):
    gcp = groupoid_cp(fix1.ga.restrict(fix1.Hp), build_groupoid(fix1.G, fix1.Hp))
    assert gcp.dim == 2
    assert alg_mod.blocks(gcp.algebra).blocks == (1, 1)


@pytest.mark.parametrize("name", ALL)
def test_crosscheck(name):
    fx = fixtures.get(name)
    rep = crosscheck_thm72(fx.ga, fx.Hp)
    assert rep["ok"]
    assert rep["sieben_radical_dim"] == 0 and rep["groupoid_radical_dim"] == 0
    assert rep["sieben_blocks"]["blocks"] == rep["groupoid_blocks"]["blocks"]


def test_sieben_relations_vanish_in_quotient(fix1):
    imp = imprimitivity("FIX1")
    sq = imp.E_sieben
    R = sieben_relations(imp.E, list(fix1.G.idempotent_list))
    assert np.abs(sq.Q.conj().T @ R).max() < 1e-10


def test_group_case_needs_no_quotient():
    fx = fixtures.get("Z3")
    cp = build_acp(fx.ga, members_as_ge(fx.G, range(3)))
    assert sieben_quotient(cp).algebra.dim == cp.dim == 9


def test_carrier_projection(fix1, fix2):
    assert alg_mod.rank(carrier_projection(fix1.ga, fix1.Hp)) == 2
    assert alg_mod.rank(carrier_projection(fix2.ga, fix2.Hp)) == 2


def test_standard_span_coordinates(fix1):
    cs = coset_space(fix1.G, fix1.Hp)
    X = StandardSpan(fix1.ga, cs.gh)
    rng = np.random.default_rng(0)
    x = X.random(rng)
    assert np.allclose(X.coords(X.element(X.coords(x))), X.coords(x))
    assert X.dim == len(X.basis_family())


def test_trivial_action_members():
    G = cyclic_group(2)
    act = trivial_action(G, 2, members=[0])
    assert list(act) == [0]
