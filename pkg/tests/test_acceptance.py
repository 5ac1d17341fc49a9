"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest -s tests/test_acceptance.py` to see the per-criterion
lines; everything is exact rational/cyclotomic arithmetic with zero
tolerance throughout.
"""

import time
from fractions import Fraction

import pytest

from stringyk.backends import gset_model, linear_model, point_gset
from stringyk.characters import (ClassFunction, cyclic_decompose, group_view,
                                 irreducible_table,
                                 nonneg_integer_multiplicities)
from stringyk.euler import (dhvw_coefficient, stringy_euler,
                            sym_orbifold_euler)
from stringyk.frobenius import check_axioms
from stringyk.groups import (Subgroup, TwoCocycle, cyclic_group,
                             dihedral_group, klein_four_group,
                             quaternion_group, symmetric_group)
from stringyk.modelio import load_model
from stringyk.rings import (apply_twist, build_stringy_chow, build_stringy_k,
                            untwisted_sector_matches_model,
                            verify_stringy_chern)
from stringyk.stringy_classes import (MonodromyDatum, age,
                                      chen_hu_obstruction,
                                      eichler_matches_induced,
                                      four_point_identity, genus_one_identity,
                                      obstruction_class)
from stringyk.torsion import (coboundary_twist_isomorphism,
                              sign_cocycle_report, symmetric_sign_cocycle,
                              twist, twisted_group_ring)

from conftest import catalog_groups, catalog_linear_actions


def _report(criterion: int, ok: bool, detail: str) -> None:
    status = "PASS" if ok else "FAIL"
    print(f"[criterion {criterion}] {status} - {detail}")
    assert ok, f"criterion {criterion} failed: {detail}"


def test_criterion_1_eichler_identity():
    """Fixed-point and induced-character sides of the cover identity agree."""
    start = time.time()
    cases = 0
    failures = []
    for G in catalog_groups():
        if G.order > 12:
            continue  # S4 handled in restricted form below
        for m1 in G.elements():
            for m2 in G.elements():
                for m3 in G.elements():
                    m4 = G.inv[G.product((m1, m2, m3))]
                    datum = MonodromyDatum(G, 0, (m1, m2, m3, m4))
                    if not eichler_matches_induced(datum):
                        failures.append((G.name, 0, (m1, m2, m3, m4)))
                    cases += 1
        for m1 in G.elements():
            for m2 in G.elements():
                for sub in (None, G.whole_subgroup()):
                    try:
                        datum = MonodromyDatum(G, 1, (m1, m2), subgroup=sub)
                    except ValueError:
                        continue
                    if not eichler_matches_induced(datum):
                        failures.append((G.name, 1, (m1, m2)))
                    cases += 1
    # S4 restricted: genus 0 with up to 3 branch points
    s4 = symmetric_group(4)
    for m1 in s4.elements():
        for m2 in s4.elements():
            m3 = s4.inv[s4.table[m1][m2]]
            datum = MonodromyDatum(s4, 0, (m1, m2, m3))
            if not eichler_matches_induced(datum):
                failures.append(("S4", 0, (m1, m2, m3)))
            cases += 1
    elapsed = time.time() - start
    ok = not failures and cases >= 500 and elapsed < 60
    _report(1, ok, f"Eichler identity on {cases} covers, exact, "
                   f"{elapsed:.1f}s (failures: {failures[:3]})")


def test_criterion_2_obstruction_honesty():
    """R has nonnegative integer content and rank = sum of ages - codim."""
    bad = []
    checked = 0
    for action in catalog_linear_actions():
        G = action.group
        for m1 in G.elements():
            for m2 in G.elements():
                m3 = G.inv[G.table[m1][m2]]
                R = obstruction_class(action, (m1, m2, m3))
                rank = R.rank()
                expected = sum((age(action, m) for m in (m1, m2, m3)),
                               Fraction(0)) - \
                    (action.dim - len(action.fixed_subspace((m1, m2, m3))))
                if rank != expected or rank.denominator != 1 or rank < 0:
                    bad.append((action.name, (m1, m2, m3), "rank"))
                Hp = Subgroup(G, R.members)
                Hpg, pmem = group_view(Hp)
                pos = {g: i for i, g in enumerate(pmem)}
                for mi in {m1, m2, m3} - {0}:
                    Hi = G.subgroup_generated([mi])
                    Hig, mem = group_view(Hi)
                    chi = ClassFunction.from_function(
                        Hig, lambda h: R.char(pos[mem[h]]))
                    mults = cyclic_decompose(chi, mem.index(mi))
                    if any(x.denominator != 1 or x < 0 for x in mults):
                        bad.append((action.name, (m1, m2, m3), "mults"))
                if Hpg.is_abelian():
                    _, char = chen_hu_obstruction(action, (m1, m2, m3))
                    if char != R.char:
                        bad.append((action.name, (m1, m2, m3), "chen-hu"))
                else:
                    # the only non-abelian <m> in the catalog is all of S3;
                    # its verified table transfers along the identity
                    # re-indexing of the whole-group view
                    assert Hp.is_whole() and Hpg.table == G.table
                    table = [ClassFunction(Hpg, t.values)
                             for t in irreducible_table(G)]
                    okm, _ = nonneg_integer_multiplicities(R.char, table)
                    if not okm:
                        bad.append((action.name, (m1, m2, m3), "table"))
                checked += 1
    _report(2, not bad, f"obstruction honesty on {checked} triples across "
                        f"{len(catalog_linear_actions())} linear actions "
                        f"(failures: {bad[:3]})")


def test_criterion_3_structural_identities():
    """Four-point and genus-one identities hold exactly for all tuples."""
    start = time.time()
    bad = []
    four = pairs = 0
    for action in catalog_linear_actions():
        G = action.group
        for m1 in G.elements():
            for m2 in G.elements():
                for m3 in G.elements():
                    m4 = G.inv[G.product((m1, m2, m3))]
                    rep = four_point_identity(action, (m1, m2, m3, m4))
                    if not rep:
                        bad.append((action.name, "4pt", (m1, m2, m3, m4),
                                    rep.differences[:1]))
                    four += 1
        for a in G.elements():
            for b in G.elements():
                rep = genus_one_identity(action, a, b)
                if not rep:
                    bad.append((action.name, "g1", (a, b),
                                rep.differences[:1]))
                pairs += 1
    _report(3, not bad,
            f"four-point identity on {four} tuples and genus-one identity "
            f"on {pairs} pairs, exact, {time.time() - start:.1f}s "
            f"(failures: {bad[:2]})")


def test_criterion_4_axiom_suite():
    """All twelve axioms pass on every built ring."""
    bad = []
    # gset models: one-point quotients for the whole catalog
    for G in catalog_groups():
        ring = build_stringy_chow(point_gset(G))
        rep = check_axioms(ring.algebra)
        if not rep.passed:
            bad.append((f"pt/{G.name}", rep.failures()[:1]))
        if ring.algebra.trace != ring.algebra.canonical_trace():
            bad.append((f"pt/{G.name}", "trace != canonical"))
    # a free gset
    z2 = cyclic_group(2)
    free = build_stringy_chow(gset_model(z2, [(0, 1), (1, 0)]))
    if not check_axioms(free.algebra).passed:
        bad.append(("free z2 set", "axioms"))
    # linear models: metric axioms must be reported not-applicable
    for action in catalog_linear_actions():
        for builder in (build_stringy_chow, build_stringy_k):
            ring = builder(linear_model(action))
            rep = check_axioms(ring.algebra)
            if not rep.passed:
                bad.append((action.name, builder.__name__, rep.failures()[:1]))
            na = {e["axiom"] for e in rep.entries
                  if e["status"] == "not_applicable"}
            if "pairing_invariance" not in na or "trace_axiom" not in na:
                bad.append((action.name, "metric axioms not marked n/a"))
    # table models, both sides
    for name in ("sym2_p1.toml", "p1_z2.toml"):
        model = load_model(name)
        for builder in (build_stringy_chow, build_stringy_k):
            ring = builder(model)
            rep = check_axioms(ring.algebra)
            if not rep.passed:
                bad.append((name, builder.__name__, rep.failures()[:1]))
            if ring.algebra.trace != ring.algebra.canonical_trace():
                bad.append((name, builder.__name__, "trace != canonical"))
    _report(4, not bad, f"axiom suite over gset, linear, and table rings "
                        f"(failures: {bad[:2]})")


def test_criterion_5_allometric_chern_character():
    """CCh is a unital equivariant ring isomorphism preserving traces and
    strictly failing to preserve the pairing."""
    start = time.time()
    bad = []
    for name in ("sym2_p1.toml", "p1_z2.toml"):
        model = load_model(name)
        chow = build_stringy_chow(model)
        kk = build_stringy_k(model)
        rep = verify_stringy_chern(kk, chow)
        if not (rep["homomorphism"] and rep["unit"] and rep["equivariance"]
                and rep["trace_preserved"]):
            bad.append((name, {k: rep[k] for k in
                               ("homomorphism", "unit", "equivariance",
                                "trace_preserved")}))
        if rep["metric_violations"] == 0:
            bad.append((name, "pairing unexpectedly preserved"))
    elapsed = time.time() - start
    _report(5, not bad and elapsed < 30,
            f"stringy Chern character allometric on both table models, "
            f"{elapsed:.1f}s (failures: {bad[:2]})")


def test_criterion_6_euler():
    bad = []
    for chi in (-2, -1, 0, 1, 2, 24):
        for n in range(0, 7):
            if sym_orbifold_euler(chi, n) != dhvw_coefficient(chi, n):
                bad.append(("dhvw", chi, n))
    for G in catalog_groups():
        if stringy_euler(point_gset(G)).total != len(G.conjugacy_classes()):
            bad.append(("pt", G.name))
    if sym_orbifold_euler(24, 2) != 324:
        bad.append(("sym2 chi=24", sym_orbifold_euler(24, 2)))
    _report(6, not bad, "symmetric-product Euler characteristics match the "
                        f"generating function (failures: {bad[:3]})")


def test_criterion_7_discrete_torsion():
    bad = []
    # sign cocycle up to n = 6, epsilon integral everywhere
    for n in range(1, 7):
        rep = sign_cocycle_report(n)
        if not (rep["epsilon_integral"] and rep["cocycle_identity"]):
            bad.append(("sign cocycle", n))
    # twisted catalog rings re-pass the axiom suite
    for name in ("sym2_p1.toml", "p1_z2.toml"):
        model = load_model(name)
        sign2 = TwoCocycle(model.group, [[1, 1], [1, -1]])
        for builder in (build_stringy_chow, build_stringy_k):
            twisted = apply_twist(builder(model), sign2)
            if not check_axioms(twisted.algebra).passed:
                bad.append((name, "twisted axioms"))
    for n in (2, 3, 4):
        G, alpha = symmetric_sign_cocycle(n)
        ring = twisted_group_ring(G, alpha)
        if not check_axioms(ring.algebra if hasattr(ring, "algebra")
                            else ring).passed:
            bad.append((f"Q^a[S{n}]", "axioms"))
    # group rings and a stringy ring twisted by rational coboundaries
    from stringyk.frobenius import group_ring
    for G in (cyclic_group(2), cyclic_group(4)):
        A = group_ring(G)
        beta = [Fraction(1)] + [Fraction(k + 2) for k in range(G.order - 1)]
        iso = coboundary_twist_isomorphism(A, beta)
        if not iso.verified:
            bad.append((G.name, "coboundary isomorphism", iso.checks))
        if not check_axioms(iso.twisted).passed:
            bad.append((G.name, "twisted coboundary axioms"))
    sym2 = build_stringy_chow(load_model("sym2_p1.toml"))
    iso = coboundary_twist_isomorphism(sym2.algebra, [Fraction(1), Fraction(3)])
    if not iso.verified or not check_axioms(iso.twisted).passed:
        bad.append(("sym2_p1", "coboundary isomorphism", iso.checks))
    # the symmetric-square twist flips exactly the (sigma, sigma) signs
    model = load_model("sym2_p1.toml")
    sign2 = TwoCocycle(model.group, [[1, 1], [1, -1]])
    chow = build_stringy_chow(model)
    twisted = apply_twist(chow, sign2)
    for m1 in model.group.elements():
        for m2 in model.group.elements():
            orig = chow.algebra.product[(m1, m2)]
            new = twisted.algebra.product[(m1, m2)]
            expected = [[[-x for x in vec] for vec in row] for row in orig] \
                if (m1, m2) == (1, 1) else orig
            if new != expected:
                bad.append(("sym2 sign pattern", (m1, m2)))
    _report(7, not bad, "discrete torsion: sign cocycles, twisted rings, "
                        f"coboundary isomorphisms (failures: {bad[:3]})")


def test_criterion_8_classical_sanity():
    bad = []
    model = load_model("p1_z2.toml")
    keyX = model.locus_key([])
    for k in range(-2, 4):
        chern = (Fraction(1), Fraction(k))
        if model.euler_characteristic(keyX, chern) != k + 1:
            bad.append(("HRR", k))
    # UsefulMix on every registered bundle of both table models
    from stringyk.geometry import Combo
    for name in ("sym2_p1.toml", "p1_z2.toml"):
        m = load_model(name)
        for atom_name, atom in m.atoms.items():
            key = atom.home_key
            alg = m.loci[key]
            combo = Combo({atom_name: Fraction(1)})
            lhs = alg.mul(m.combo_todd(combo, key),
                          m.combo_k_euler_class(combo, key))
            if lhs != m.combo_c_top(combo, key):
                bad.append(("UsefulMix", name, atom_name))
        chow = build_stringy_chow(m)
        kk = build_stringy_k(m)
        if not untwisted_sector_matches_model(chow) or \
                not untwisted_sector_matches_model(kk):
            bad.append(("untwisted sector", name))
    _report(8, not bad, "Riemann-Roch values, the c_top = td * Euler-class "
                        f"identity, ordinary untwisted sectors "
                        f"(failures: {bad[:3]})")
