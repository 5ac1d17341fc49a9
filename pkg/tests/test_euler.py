from fractions import Fraction

import pytest

from stringyk.backends import gset_model, linear_model, point_gset
from stringyk.euler import (dhvw_coefficient, stringy_euler,
                            sym_euler_matches_dhvw, sym_orbifold_euler)
from stringyk.groups import cyclic_group, symmetric_group
from stringyk.modelio import load_model


def test_sym_orbifold_euler_examples():
    assert sym_orbifold_euler(7, 1) == 7
    assert sym_orbifold_euler(2, 2) == 5          # (4 + 3*2)/2
    assert sym_orbifold_euler(24, 2) == 324       # (576 + 72)/2
    assert sym_orbifold_euler(24, 0) == 1


def test_dhvw_examples():
    assert dhvw_coefficient(2, 0) == 1
    assert dhvw_coefficient(2, 2) == 5
    assert dhvw_coefficient(0, 3) == 0
    assert dhvw_coefficient(-1, 1) == -1
    assert dhvw_coefficient(24, 1) == 24


def test_generating_function_identity():
    for chi in (-2, -1, 0, 1, 2, 24):
        for n in range(0, 7):
            assert sym_euler_matches_dhvw(chi, n), (chi, n)


def test_bounds():
    with pytest.raises(ValueError):
        sym_orbifold_euler(2, 9)
    with pytest.raises(ValueError):
        dhvw_coefficient(2, 9)


def test_stringy_euler_point_quotients(groups_catalog):
    for G in groups_catalog:
        report = stringy_euler(point_gset(G))
        assert report.total == len(G.conjugacy_classes())


def test_stringy_euler_free_action():
    z2 = cyclic_group(2)
    assert stringy_euler(gset_model(z2, [(0, 1), (1, 0)])).total == 1


def test_stringy_euler_table_models():
    assert stringy_euler(load_model("sym2_p1.toml")).total == 5
    assert stringy_euler(load_model("p1_z2.toml")).total == 4


def test_stringy_euler_gset_counts_fixed_points():
    # equals (1/|G|) sum over commuting pairs of |X^<a,b>|
    s3 = symmetric_group(3)
    perms = s3.permutations
    model = gset_model(s3, perms)  # natural action on 3 points
    report = stringy_euler(model)
    total = Fraction(0)
    for a, b in s3.commuting_pairs():
        fixed = sum(1 for p in range(3)
                    if perms[a][p] == p and perms[b][p] == p)
        total += fixed
    assert report.total == total / 6


def test_nonproper_model_rejected(z3_sl2):
    with pytest.raises(ValueError):
        stringy_euler(linear_model(z3_sl2))
