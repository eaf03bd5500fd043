import pytest

from greenmorita import fixtures
from greenmorita.cosets import (AtomSet, build_GH, build_groupoid, coset_space, gh_pairs,
                                quotient, unit_atoms)
from greenmorita.errors import RangeNotAtom
from greenmorita.projections import GE, ge, ge_mul, regular_rep, source


def oracle_gh(G, atoms):
    """Distinct regular representations of ``g * atom`` with ``atom <= g* g``."""
    seen = {}
    for g in range(G.size):
        for P in atoms.supports:
            if P <= source(G, g):
                seen.setdefault(regular_rep(G, GE(g, P)).tobytes(), GE(g, P))
    return seen


def oracle_classes(G, gh, H):
    mats = [regular_rep(G, x) for x in gh]
    hm = [regular_rep(G, t) for t in H.elements]
    n = len(gh)
    rel = [[any((mats[i] @ t == mats[j]).all() for t in hm) for j in range(n)] for i in range(n)]
    return sorted({frozenset(j for j in range(n) if rel[i][j]) for i in range(n)}, key=min)


def test_atoms_fix1(fix1):
    atoms = unit_atoms(fix1.G, fix1.Hp)
    assert sorted(atoms.supports, key=min) == [{0}, {3}, {4}, {6}]
    assert atoms.union() == {0, 3, 4, 6}


def test_atoms_fix2(fix2):
    atoms = unit_atoms(fix2.G, fix2.Hp)
    assert atoms.supports == (frozenset({0, 3, 4, 6}),)


def test_groupoid_fix1_is_units(fix1):
    H = build_groupoid(fix1.G, fix1.Hp)
    assert len(H) == 4
    assert sorted(H.units) == list(range(4))
    assert H.source == H.range


def test_groupoid_fix2_is_z2(fix2):
    H = build_groupoid(fix2.G, fix2.Hp)
    assert len(H) == 2
    sigma = next(i for i, x in enumerate(H.elements) if x.g == 1)
    unit = H.units[0]
    assert H.compose(sigma, sigma) == unit
    assert H.inverse(sigma) == sigma


def test_groupoid_rejects_non_atom_range(fix2):
    G = fix2.G
    bad = AtomSet((0, 3, 4), (frozenset({0}), frozenset({3}), frozenset({4, 6})))
    with pytest.raises(RangeNotAtom):
        build_groupoid(G, fix2.Hp, bad)


@pytest.mark.parametrize("name, size, pairs, classes",
                         [("FIX1", 7, 17, 7), ("FIX2", 2, 2, 1), ("FIX3", 7, 17, 4),
                          ("TRIVIAL", 1, 1, 1), ("Z3", 3, 3, 3)])
def test_gh_and_classes_against_oracle(name, size, pairs, classes):
    fx = fixtures.get(name)
    cs = coset_space(fx.G, fx.Hp)
    assert cs.gh_size == size == len(oracle_gh(fx.G, cs.atoms))
    assert cs.raw_pairs == pairs == len(gh_pairs(fx.G, cs.atoms))
    assert cs.n_classes == classes
    assert [frozenset(c) for c in cs.classes] == oracle_classes(fx.G, list(cs.gh), cs.H)


def test_fix1_pair_count_formula(fix1):
    # sum over g of #{f <= g* g}
    G = fix1.G
    assert sum(len(source(G, g)) for g in range(G.size)) == 17


def test_build_gh_matches_quotient_input(fix2):
    assert len(build_GH(fix2.G, fix2.Hp)) == 2


def test_act_examples(fix1, fix2):
    cs2 = coset_space(fix2.G, fix2.Hp)
    assert cs2.act(1, 0) == 0
    cs1 = coset_space(fix1.G, fix1.Hp)
    k = cs1.find(ge(fix1.G, 0, [4]))
    assert cs1.act(3, cs1.class_of[k]) is None


@pytest.mark.parametrize("name", ["FIX1", "FIX2", "FIX3", "Z3"])
def test_act_is_partial_action(name):
    fx = fixtures.get(name)
    G = fx.G
    cs = coset_space(G, fx.Hp)
    for g in range(G.size):
        for c in range(cs.n_classes):
            assert cs.act(g, c) == cs.act_by_product(g, c)
            # well defined on the class: every member gives the same class
            for i in cs.classes[c]:
                j = cs.left(g, i)
                d = cs.act(g, c)
                assert (j is None) == (d is None)
                if j is not None:
                    assert cs.class_of[j] == d
            for h in range(G.size):
                inner = cs.act(h, c)
                composed = None if inner is None else cs.act(g, inner)
                direct = cs.act(G.mul(g, h), c)
                if composed is not None:
                    assert composed == direct


def test_quotient_relation_is_checked(fix1):
    G = fix1.G
    atoms = unit_atoms(G, fix1.Hp)
    H = build_groupoid(G, fix1.Hp, atoms)
    cs = quotient(G, build_GH(G, fix1.Hp, atoms), H)
    assert cs.n_classes == 7


def test_json_and_dot(fix2):
    cs = coset_space(fix2.G, fix2.Hp)
    js = cs.to_json()
    assert js["gh_size"] == 2 and js["classes"] == [[0, 1]]
    assert js["groupoid"]["source"] == [0, 0]
    assert cs.to_dot().startswith("digraph")


def test_left_criterion_matches_product(fix1):
    G = fix1.G
    cs = coset_space(G, fix1.Hp)
    for s in range(G.size):
        for i in range(cs.gh_size):
            prod = cs.find(ge_mul(G, ge(G, s), cs.gh[i]))
            assert cs.left(s, i) == prod
