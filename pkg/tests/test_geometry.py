from fractions import Fraction

import pytest

from stringyk.backends import (build_table_model, gset_model, linear_model,
                               point_gset, regular_gset)
from stringyk.geometry import (Combo, GradedAlgebra, UncertifiedClassError,
                               log_todd_coefficients)
from stringyk.groups import cyclic_group, symmetric_group
from stringyk.modelio import load_model


@pytest.fixture(scope="module")
def sym2():
    return load_model("sym2_p1.toml")


@pytest.fixture(scope="module")
def p1z2():
    return load_model("p1_z2.toml")


def test_log_todd_series():
    # log phi(t) = t/2 - t^2/24... wait: phi = 1 + t/2 + t^2/12 + ...
    L = log_todd_coefficients(4)
    assert L[0] == Fraction(1, 2)
    assert L[1] == Fraction(1, 12) - Fraction(1, 8)  # log(1+u) second order


def test_graded_algebra_validation():
    with pytest.raises(ValueError):
        # product not degree-additive
        GradedAlgebra(["1", "x"], [0, 1],
                      [[(1, 0), (0, 1)], [(0, 1), (0, 1)]], [1, 0])
    with pytest.raises(ValueError):
        # integration below top degree
        GradedAlgebra(["1", "x"], [0, 1],
                      [[(1, 0), (0, 1)], [(0, 1), (0, 0)]], [1, 0],
                      integration=[1, 0])


def test_series_helpers(sym2):
    alg = sym2.loci[sym2.locus_key([1])]  # Q[h]/h^2
    one_plus_h = (Fraction(1), Fraction(1))
    inv = alg.series_inverse(one_plus_h)
    assert inv == (Fraction(1), Fraction(-1))
    sqrt = alg.series_pow(one_plus_h, Fraction(1, 2))
    assert sqrt == (Fraction(1), Fraction(1, 2))
    assert alg.mul(sqrt, sqrt) == one_plus_h
    assert alg.series_pow(one_plus_h, -2) == \
        alg.series_inverse(alg.mul(one_plus_h, one_plus_h))


def test_total_chern_examples(sym2):
    keyD = sym2.locus_key([1])
    # zero class: c = 1, c_top = 1
    assert sym2.combo_total_chern(Combo(), keyD) == sym2.loci[keyD].unit
    assert sym2.combo_c_top(Combo(), keyD) == sym2.loci[keyD].unit
    # line bundle O(2): c = 1 + 2h, c_top = 2h
    c = sym2.combo_total_chern(Combo({"Ndiag": Fraction(1)}), keyD)
    assert c == (Fraction(1), Fraction(2))
    ctop = sym2.combo_c_top(Combo({"Ndiag": Fraction(1)}), keyD)
    assert ctop == (Fraction(0), Fraction(2))


def test_chern_series_division_recovers_quotient(sym2):
    # c((A + B) - A) = c(B)
    keyD = sym2.locus_key([1])
    both = Combo({"Tdiag": Fraction(1), "Ndiag": Fraction(1)})
    diff = both - Combo({"Tdiag": Fraction(1)})
    assert sym2.combo_total_chern(diff, keyD) == \
        sym2.combo_total_chern(Combo({"Ndiag": Fraction(1)}), keyD)


def test_todd_examples(sym2):
    keyD = sym2.locus_key([1])
    assert sym2.combo_todd(Combo(), keyD) == sym2.loci[keyD].unit
    # td(O(2)) = 1 + h (truncated at h^2 = 0)
    td = sym2.combo_todd(Combo({"Ndiag": Fraction(1)}), keyD)
    assert td == (Fraction(1), Fraction(1))
    # td((1/2) O(2)) = sqrt(1 + h) = 1 + h/2
    half = sym2.combo_todd(Combo({"Ndiag": Fraction(1, 2)}), keyD)
    assert half == (Fraction(1), Fraction(1, 2))


def test_chern_character(sym2):
    keyX = sym2.locus_key([])
    ch = sym2.combo_chern_character(Combo({"TX": Fraction(1)}), keyX)
    # Ch(TX) = 2 + c1 + (c1^2 - 2 c2)/2 = 2 + 2h1 + 2h2 + (8 - 8)/2 h12
    assert ch == (Fraction(2), Fraction(2), Fraction(2), Fraction(0))


def test_useful_mix_identity_on_all_atoms(sym2, p1z2):
    # td(E) * Ch(lambda_-1(E^*)) = c_top(E) for every registered bundle
    for model in (sym2, p1z2):
        for name, atom in model.atoms.items():
            key = atom.home_key
            alg = model.loci[key]
            combo = Combo({name: Fraction(1)})
            td = model.combo_todd(combo, key)
            lam = model.combo_k_euler_class(combo, key)
            assert alg.mul(td, lam) == model.combo_c_top(combo, key), name


def test_c_top_requires_certificate(sym2):
    fractional = Combo({"Ndiag": Fraction(1, 2)})
    with pytest.raises(UncertifiedClassError):
        sym2.combo_c_top(fractional, sym2.locus_key([1]))
    negative = Combo({"Ndiag": Fraction(-1)})
    with pytest.raises(UncertifiedClassError):
        sym2.combo_c_top(negative, sym2.locus_key([1]))


def test_euler_characteristics(p1z2):
    keyX = p1z2.locus_key([])
    alg = p1z2.loci[keyX]
    assert p1z2.euler_characteristic(keyX, alg.unit) == 1  # chi(P1, O)
    for k in range(-2, 4):
        v = (Fraction(1), Fraction(k))  # Ch(O(k)) = 1 + k h
        assert p1z2.euler_characteristic(keyX, v) == k + 1
    assert p1z2.topological_euler(keyX) == 2
    assert p1z2.topological_euler(p1z2.locus_key([1])) == 2  # two points


def test_grr_pushforward_examples(sym2, p1z2):
    # identity pushforward
    keyX = sym2.locus_key([])
    assert sym2.grr_pushforward(keyX, keyX, sym2.loci[keyX].unit) == \
        sym2.loci[keyX].unit
    # point -> P1: rank-0 image with degree-1 coefficient 1
    ptkey = p1z2.locus_key([1])
    img = p1z2.grr_pushforward(p1z2.locus_key([]), ptkey,
                               (Fraction(1), Fraction(0)))
    assert img == (Fraction(0), Fraction(1))
    # diagonal -> X on the symmetric square: Ch(O_Delta) = h1 + h2 - h12
    keyD = sym2.locus_key([1])
    img2 = sym2.grr_pushforward(keyX, keyD, sym2.loci[keyD].unit)
    assert img2 == (Fraction(0), Fraction(1), Fraction(1), Fraction(-1))


def test_obstruction_combos(sym2):
    assert sym2.obstruction_combo(1, 1).is_zero()
    assert sym2.obstruction_combo(0, 1).is_zero()
    assert sym2.obstruction_combo(0, 0).is_zero()
    keyD = sym2.locus_key([1])
    assert sym2.obstruction_c_top(1, 1) == sym2.loci[keyD].unit


def test_gset_backend_examples():
    z2 = cyclic_group(2)
    # two swapped points: untwisted sector rank 2, twisted sector rank 0
    m = gset_model(z2, [(0, 1), (1, 0)])
    assert m.loci[m.locus_key([])].rank == 2
    assert m.loci[m.locus_key([1])].rank == 0
    assert m.age(1) == 0
    with pytest.raises(ValueError):
        gset_model(z2, [(1, 0), (0, 1)])  # identity not acting trivially


def test_linear_backend_examples(z3_sl2):
    m = linear_model(z3_sl2)
    assert all(m.loci[m.locus_key([g])].rank == 1 for g in range(3))
    assert m.age(1) == 1
    # pushforward across positive codimension vanishes
    keyX, keyF = m.locus_key([]), m.locus_key([1])
    assert m.pushforward(keyX, keyF, (Fraction(1),)) == (Fraction(0),)
    # obstruction of (g, g, g): rank 1, so c_top vanishes in degree 0
    assert m.obstruction_c_top(1, 1) == (Fraction(0),)
    assert m.obstruction_c_top(1, 2) == (Fraction(1),)


def test_table_validation_catches_broken_projection_formula(sym2):
    import copy
    from stringyk.modelio import _load_toml
    data = dict(_load_toml("sym2_p1.toml"))
    spec = copy.deepcopy(data)
    spec.update(spec.get("model", {}))
    spec["map"][0]["pushforward"][1] = ["7", "0"]
    from stringyk.groups import group_by_name
    with pytest.raises(ValueError, match="projection formula"):
        build_table_model(group_by_name("z2"), spec)


def test_table_validation_catches_bad_eigen_data():
    import copy
    from stringyk.groups import group_by_name
    from stringyk.modelio import _load_toml
    data = dict(_load_toml("sym2_p1.toml"))
    spec = copy.deepcopy(data)
    spec.update(spec.get("model", {}))
    spec["eigen"][0]["pieces"] = {"0": {"Tdiag": 1}}  # rank deficit
    with pytest.raises(ValueError, match="eigen"):
        build_table_model(group_by_name("z2"), spec)


def test_point_and_regular_gsets():
    s3 = symmetric_group(3)
    pt = point_gset(s3)
    assert all(pt.loci[key].rank == 1 for key in pt.loci)
    reg = regular_gset(s3)
    assert reg.loci[reg.locus_key([])].rank == 6
    assert reg.loci[reg.locus_key([1])].rank == 0


def test_whitney_multiplicativity(sym2):
    # c and td are multiplicative over direct sums of honest descriptors
    keyD = sym2.locus_key([1])
    alg = sym2.loci[keyD]
    pairs = [("Tdiag", "Ndiag"), ("Ndiag", "Ndiag")]
    for a, b in pairs:
        ca = sym2.combo_total_chern(Combo({a: Fraction(1)}), keyD)
        cb = sym2.combo_total_chern(Combo({b: Fraction(1)}), keyD)
        both = Combo({a: Fraction(1)}) + Combo({b: Fraction(1)})
        assert sym2.combo_total_chern(both, keyD) == alg.mul(ca, cb)
        ta = sym2.combo_todd(Combo({a: Fraction(1)}), keyD)
        tb = sym2.combo_todd(Combo({b: Fraction(1)}), keyD)
        assert sym2.combo_todd(both, keyD) == alg.mul(ta, tb)


def _p4_model():
    """A synthetic trivial-group model of P^4: exercises the series
    machinery at degree 4 (the 1/720 Todd coefficients and beyond)."""
    from stringyk.geometry import Atom, GeometricModel
    from stringyk.groups import cyclic_group
    G = cyclic_group(1)
    model = GeometricModel(G, name="p4", proper=True, dim_x=4)
    n = 5
    labels = [f"h{i}" if i else "1" for i in range(n)]
    struct = [[tuple(Fraction(1) if k == i + j else Fraction(0)
                     for k in range(n)) for j in range(n)] for i in range(n)]
    alg = GradedAlgebra(labels, list(range(n)), struct,
                        [1, 0, 0, 0, 0], integration=[0, 0, 0, 0, 1],
                        components=["X"] * n, component_dims={"X": 4})
    key = model.locus_key([])
    model.loci[key] = alg
    # c(TP^4) = (1 + h)^5 truncated
    tangent = Atom("TP4", 4, key,
                   (Fraction(1), Fraction(5), Fraction(10), Fraction(10),
                    Fraction(5)))
    model.atoms["TP4"] = tangent
    model.tangent_combo[key] = Combo({"TP4": Fraction(1)})
    for k in range(-2, 6):
        name = f"O({k})"
        model.atoms[name] = Atom(name, 1, key,
                                 (Fraction(1), Fraction(k), Fraction(0),
                                  Fraction(0), Fraction(0)))
    # a rank-2 split bundle O(1) + O(2)
    model.atoms["E12"] = Atom("E12", 2, key,
                              (Fraction(1), Fraction(3), Fraction(2),
                               Fraction(0), Fraction(0)))
    model.validate()
    return model, key


def test_degree_four_riemann_roch():
    from math import comb
    model, key = _p4_model()
    alg = model.loci[key]
    # chi(P^4, O(k)) = binomial(k + 4, 4), including negative k
    for k in range(-2, 6):
        ch = model.combo_chern_character(Combo({f"O({k})": Fraction(1)}), key)
        got = model.euler_characteristic(key, ch)
        want = comb(k + 4, 4) if k >= 0 else 0 if -4 <= k < 0 else comb(-k - 1, 4)
        assert got == want, (k, got, want)
    assert model.topological_euler(key) == 5


def test_degree_four_useful_mix():
    model, key = _p4_model()
    alg = model.loci[key]
    for name in ("TP4", "E12", "O(3)"):
        combo = Combo({name: Fraction(1)})
        lhs = alg.mul(model.combo_todd(combo, key),
                      model.combo_k_euler_class(combo, key))
        assert lhs == model.combo_c_top(combo, key), name


def test_degree_four_fractional_todd_consistency():
    model, key = _p4_model()
    alg = model.loci[key]
    combo = Combo({"E12": Fraction(1)})
    half = model.combo_todd(Combo({"E12": Fraction(1, 2)}), key)
    assert alg.mul(half, half) == model.combo_todd(combo, key)
    third = model.combo_todd(Combo({"TP4": Fraction(1, 3)}), key)
    assert alg.mul(alg.mul(third, third), third) == \
        model.combo_todd(Combo({"TP4": Fraction(1)}), key)


def test_obstruction_certificate_registry():
    """A model whose eigen atoms cannot cancel symbolically must refuse
    c_top until an explicit certificate is registered."""
    import copy
    from stringyk.groups import group_by_name
    from stringyk.modelio import _load_toml
    spec = copy.deepcopy(dict(_load_toml("sym2_p1.toml")))
    spec.update(spec.get("model", {}))
    # declare the diagonal tangent under a second name with identical data:
    # validation passes (ranks and Chern classes agree) but the symbolic
    # reduction of R(sigma, sigma) can no longer cancel
    spec["atom"].append({"name": "Tdiag2", "rank": 1, "locus": [1],
                         "chern": ["1", "2"]})
    spec["tangent"] = [e if e["locus"] != [1] else
                       {"locus": [1], "combo": {"Tdiag2": 1}}
                       for e in spec["tangent"]]
    model = build_table_model(group_by_name("z2"), spec)
    with pytest.raises(UncertifiedClassError):
        model.obstruction_c_top(1, 1)
    # registering the (true) zero certificates unblocks the products
    spec["obstruction_certificate"] = [
        {"m1": 1, "m2": 1, "combo": {}},
        {"m1": 0, "m2": 1, "combo": {}},
        {"m1": 1, "m2": 0, "combo": {}},
    ]
    fixed = build_table_model(group_by_name("z2"), spec)
    keyD = fixed.locus_key([1])
    assert fixed.obstruction_c_top(1, 1) == fixed.loci[keyD].unit
    from stringyk.rings import build_stringy_chow
    ring = build_stringy_chow(fixed)
    assert ring.check_axioms().passed
