"""Named test instances used by the CLI, the suite and the tests."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import algebra as alg_mod
from .crossed import GAlgebra, pinj_action, trivial_action, validate_g_algebra
from .semigroup import (FiniteInverseSemigroup, SubInverseSemigroup, cyclic_group,
                        sub_closure, symmetric_inverse_monoid, whole)

# indices in symmetric_inverse_monoid(2)
I2_ID, I2_SIGMA = 0, 1
I2_IDEMPOTENTS = (0, 3, 4, 6)


@dataclass(eq=False)
class Fixture:
    """A G-algebra ``ga`` and a sub-inverse-semigroup ``Hp``."""

    name: str
    ga: GAlgebra
    Hp: SubInverseSemigroup
    note: str = ""

    @property
    def G(self) -> FiniteInverseSemigroup:
        return self.ga.G


@dataclass(eq=False)
class InductionFixture:
    """An H'-algebra ``D`` (acting semigroup ``Hp``) for the induction pipeline."""

    name: str
    D: GAlgebra
    Hp: SubInverseSemigroup
    expected_blocks: tuple | None = None
    note: str = field(default="")

    @property
    def G(self) -> FiniteInverseSemigroup:
        return self.D.G


def _i2_c2():
    G = symmetric_inverse_monoid(2)
    return G, validate_g_algebra(G, alg_mod.commutative_algebra(2), pinj_action(G), name="C^2")


def fix1() -> Fixture:
    G, ga = _i2_c2()
    return Fixture("FIX1", ga, sub_closure(G, I2_IDEMPOTENTS), "I2, H' = idempotents, A = C^2")


def fix2() -> Fixture:
    G, ga = _i2_c2()
    return Fixture("FIX2", ga, sub_closure(G, [I2_SIGMA]), "I2, H' = {1, sigma}, A = C^2")


def fix3() -> Fixture:
    G, ga = _i2_c2()
    return Fixture("FIX3", ga, whole(G), "I2, H' = G, A = C^2")


def fix_trivial() -> Fixture:
    G = cyclic_group(1)
    ga = validate_g_algebra(G, alg_mod.commutative_algebra(1), trivial_action(G, 1), name="C")
    return Fixture("TRIVIAL", ga, whole(G), "trivial group, A = C")


def fix_z3() -> Fixture:
    """``Z3`` acting on ``C^3`` by rotation, ``H'`` trivial."""
    G = cyclic_group(3)
    action = {g: np.roll(np.eye(3), g, axis=0) for g in range(3)}
    ga = validate_g_algebra(G, alg_mod.commutative_algebra(3), action, name="C^3")
    return Fixture("Z3", ga, sub_closure(G, [0]), "Z3 rotating C^3, H' = {0}")


FIXTURES = {
    "FIX1": fix1,
    "FIX2": fix2,
    "FIX3": fix3,
    "TRIVIAL": fix_trivial,
    "Z3": fix_z3,
}


def ind_trivial_z2() -> InductionFixture:
    """``D = C`` with trivial action of ``H' = {1, sigma}``."""
    G = symmetric_inverse_monoid(2)
    Hp = sub_closure(G, [I2_SIGMA])
    D = validate_g_algebra(G, alg_mod.commutative_algebra(1), trivial_action(G, 1, Hp.members),
                           acting=Hp, name="C")
    return InductionFixture("IND_C_Z2", D, Hp, expected_blocks=(1, 1))


def ind_swap_z2() -> InductionFixture:
    """``D = C^2`` with ``sigma`` swapping coordinates."""
    G = symmetric_inverse_monoid(2)
    Hp = sub_closure(G, [I2_SIGMA])
    swap = np.array([[0, 1], [1, 0]])
    D = validate_g_algebra(G, alg_mod.commutative_algebra(2), {I2_ID: np.eye(2), I2_SIGMA: swap},
                           acting=Hp, name="C^2 swap")
    return InductionFixture("IND_C2_SWAP", D, Hp, expected_blocks=(2,))


def ind_self() -> InductionFixture:
    """``H' = G``: induction is the identity up to the carrier."""
    G, ga = _i2_c2()
    return InductionFixture("IND_SELF", ga, whole(G))


def ind_idempotents() -> InductionFixture:
    """``H'`` = idempotents of I2 with ``D = C^2`` restricted; ``G_H`` is larger than ``H``."""
    G, ga = _i2_c2()
    Hp = sub_closure(G, I2_IDEMPOTENTS)
    return InductionFixture("IND_IDEMPOTENTS", ga.restrict(Hp), Hp)


INDUCTION_FIXTURES = {
    "IND_C_Z2": ind_trivial_z2,
    "IND_C2_SWAP": ind_swap_z2,
    "IND_SELF": ind_self,
    "IND_IDEMPOTENTS": ind_idempotents,
}


def get(name: str):
    if name in FIXTURES:
        return FIXTURES[name]()
    if name in INDUCTION_FIXTURES:
        return INDUCTION_FIXTURES[name]()
    raise KeyError(f"unknown fixture {name!r}; known: "
                   f"{sorted(FIXTURES) + sorted(INDUCTION_FIXTURES)}")
