"""Shared catalog fixtures: groups, linear actions, and models."""

from fractions import Fraction

import pytest

from stringyk.characters import MatrixRep
from stringyk.cyclotomic import Cyclo, root_of_unity
from stringyk.groups import (cyclic_group, dihedral_group, klein_four_group,
                             quaternion_group, symmetric_group)
from stringyk.stringy_classes import LinearGAction

ZERO, ONE = Cyclo.zero(), Cyclo.one()
MINUS_ONE = Cyclo.from_rational(-1)


def sl2_cyclic_action(n: int) -> LinearGAction:
    """Z/n in SL(2): generator acts by diag(zeta_n, zeta_n^-1)."""
    G = cyclic_group(n)
    z = root_of_unity(1, n)
    rep = MatrixRep.from_generators(G, [1], [[[z, ZERO], [ZERO, z.conjugate()]]])
    return LinearGAction(G, rep, name=f"z{n}_sl2")


def klein_action() -> LinearGAction:
    G = klein_four_group()
    rep = MatrixRep.from_generators(
        G, [1, 2],
        [[[MINUS_ONE, ZERO], [ZERO, ONE]], [[ONE, ZERO], [ZERO, MINUS_ONE]]])
    return LinearGAction(G, rep, name="klein4_c2")


def s3_standard_action() -> LinearGAction:
    G = symmetric_group(3)
    t = next(g for g in G.elements() if G.element_order(g) == 2)
    c = next(g for g in G.elements() if G.element_order(g) == 3)
    w = root_of_unity(1, 3)
    rep = MatrixRep.from_generators(
        G, [t, c], [[[ZERO, ONE], [ONE, ZERO]], [[w, ZERO], [ZERO, w * w]]])
    return LinearGAction(G, rep, name="s3_std")


def z4_c2_action() -> LinearGAction:
    G = cyclic_group(4)
    i = root_of_unity(1, 4)
    rep = MatrixRep.from_generators(G, [1], [[[i, ZERO], [ZERO, MINUS_ONE]]])
    return LinearGAction(G, rep, name="z4_c2")


def catalog_linear_actions() -> list[LinearGAction]:
    return [sl2_cyclic_action(n) for n in (2, 3, 4, 5, 6)] + \
        [klein_action(), s3_standard_action(), z4_c2_action()]


def catalog_groups():
    return [cyclic_group(2), cyclic_group(3), cyclic_group(4), cyclic_group(6),
            klein_four_group(), symmetric_group(3), dihedral_group(4),
            quaternion_group(), symmetric_group(4)]


@pytest.fixture(scope="session")
def linear_actions():
    return catalog_linear_actions()


@pytest.fixture(scope="session")
def z3_sl2():
    return sl2_cyclic_action(3)


@pytest.fixture(scope="session")
def klein_c2():
    return klein_action()


@pytest.fixture(scope="session")
def s3_std():
    return s3_standard_action()


@pytest.fixture(scope="session")
def groups_catalog():
    return catalog_groups()
