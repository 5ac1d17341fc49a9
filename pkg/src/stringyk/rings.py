"""Assembly of the stringy Chow/cohomology ring and stringy K-theory from a
geometric model, the deformed Chern character between them, invariants, and
grading checks.

The two rings are built by independent pipelines: the Chow side multiplies
by the top Chern class of the obstruction class and pushes forward
linearly, while the K side (in Chern coordinates) multiplies by the
K-theoretic Euler class c_top * td^{-1} and pushes forward through
Grothendieck-Riemann-Roch.  The Chern character verification between them
is therefore a genuine cross-check, not a tautology.
"""

from __future__ import annotations

from fractions import Fraction

from stringyk import linalg
from stringyk.frobenius import (AxiomReport, PreGFrobeniusAlgebra, check_axioms,
                                first_associativity_failure,
                                invariants_algebra)
from stringyk.geometry import GeometricModel
from stringyk.groups import TwoCocycle
from stringyk.torsion import twist as torsion_twist


class StringyRing:
    """A stringy Chow ring or stringy K-theory over a geometric model."""

    def __init__(self, model: GeometricModel, kind: str,
                 algebra: PreGFrobeniusAlgebra, grading: dict):
        assert kind in ("chow", "k")
        self.model = model
        self.kind = kind
        self.algebra = algebra
        self.grading = grading

    @property
    def group(self):
        return self.model.group

    def sector_labels(self, m: int):
        return self.algebra.sectors[m]

    def check_axioms(self) -> AxiomReport:
        return check_axioms(self.algebra)

    def take_invariants(self):
        return invariants_algebra(self.algebra)


def _build_ring(model: GeometricModel, kind: str) -> StringyRing:
    G = model.group
    sectors = [model.sector_algebra(m).labels for m in G.elements()]
    action = {}
    for g in G.elements():
        mats = {}
        for m in G.elements():
            key = model.sector_key(m)
            if g == 0:
                mats[m] = linalg.identity_matrix(model.loci[key].rank)
            else:
                mats[m] = [list(row) for row in model.rho[(g, key)]]
        action[g] = mats

    product = {}
    for m1 in G.elements():
        for m2 in G.elements():
            key = model.locus_key([m1, m2])
            alg = model.loci[key]
            m3 = G.inv[G.table[m1][m2]]
            key3 = model.sector_key(m3)
            if kind == "chow":
                euler = model.obstruction_c_top(m1, m2)
            else:
                euler = model.obstruction_k_euler(m1, m2)
            k1, k2 = model.sector_key(m1), model.sector_key(m2)
            a1, a2 = model.loci[k1], model.loci[k2]
            tensor = []
            for i in range(a1.rank):
                vi = model.pullback(k1, key, a1.basis_vector(i))
                row = []
                for j in range(a2.rank):
                    vj = model.pullback(k2, key, a2.basis_vector(j))
                    x = alg.mul(alg.mul(vi, vj), euler)
                    if kind == "chow":
                        pushed = model.pushforward(key3, key, x)
                    else:
                        pushed = model.grr_pushforward(key3, key, x)
                    row.append(list(model.sigma_apply(m3, pushed)))
                tensor.append(row)
            product[(m1, m2)] = tensor

    unit = list(model.loci[model.locus_key([])].unit)

    pairing = None
    trace = None
    if model.proper:
        pairing = {}
        for m in G.elements():
            key = model.sector_key(m)
            alg = model.loci[key]
            minv = G.inv[m]
            mat = []
            for i in range(alg.rank):
                row = []
                for j in range(alg.rank):
                    w = model.sigma_apply(minv, alg.basis_vector(j))
                    x = alg.mul(alg.basis_vector(i), w)
                    if kind == "chow":
                        row.append(alg.integrate(x))
                    else:
                        row.append(model.euler_characteristic(key, x))
                mat.append(row)
            pairing[m] = mat
        trace = {}
        for a in G.elements():
            for b in G.elements():
                m = G.commutator(a, b)
                keyH = model.locus_key([a, b])
                algH = model.loci[keyH]
                combo = model.trace_class_combo(a, b)
                keym = model.sector_key(m)
                vec = []
                if kind == "chow":
                    ctop = model.combo_c_top(combo, keyH,
                                             context=f"(trace class for ({a},{b}))")
                    for i in range(model.loci[keym].rank):
                        v = model.pullback(keym, keyH,
                                           model.loci[keym].basis_vector(i))
                        vec.append(algH.integrate(algH.mul(v, ctop)))
                else:
                    keul = model.combo_k_euler_class(
                        combo, keyH, context=f"(trace class for ({a},{b}))")
                    for i in range(model.loci[keym].rank):
                        v = model.pullback(keym, keyH,
                                           model.loci[keym].basis_vector(i))
                        vec.append(model.euler_characteristic(
                            keyH, algH.mul(v, keul)))
                trace[(a, b)] = vec

    grading = {}
    for m in G.elements():
        key = model.sector_key(m)
        alg = model.loci[key]
        a_m = model.age(m)
        degs = []
        for i in range(alg.rank):
            d = a_m + alg.degrees[i]
            if model.grading_mode == "topological":
                d = 2 * d
            degs.append(d)
        grading[m] = tuple(degs)

    algebra = PreGFrobeniusAlgebra(
        G, sectors, action, product, unit, pairing, trace,
        grading=grading, name=f"{model.name}:{kind}")
    witness = first_associativity_failure(algebra)
    if witness is not None:
        raise AssertionError(
            f"stringy {kind} product is not associative: {witness}")
    return StringyRing(model, kind, algebra, grading)


def build_stringy_chow(model: GeometricModel) -> StringyRing:
    return _build_ring(model, "chow")


def build_stringy_k(model: GeometricModel) -> StringyRing:
    return _build_ring(model, "k")


def untwisted_sector_matches_model(ring: StringyRing) -> bool:
    """The identity sector of the built ring is the model's ordinary ring."""
    alg = ring.model.loci[ring.model.locus_key([])]
    tensor = ring.algebra.product[(0, 0)]
    for i in range(alg.rank):
        for j in range(alg.rank):
            if tuple(tensor[i][j]) != alg.mul(alg.basis_vector(i),
                                              alg.basis_vector(j)):
                return False
    return True


class CChMap:
    """The per-sector deformation of the Chern character: multiplication by
    td^{-1} of the fractional eigenbundle class."""

    def __init__(self, model: GeometricModel):
        self.model = model
        self.matrices = {}
        for m in model.group.elements():
            key = model.sector_key(m)
            alg = model.loci[key]
            factor = alg.series_inverse(model.combo_todd(model.s_combo(m), key))
            cols = [alg.mul(factor, alg.basis_vector(i)) for i in range(alg.rank)]
            self.matrices[m] = [[cols[j][i] for j in range(alg.rank)]
                                for i in range(alg.rank)]

    def apply(self, m: int, v) -> list:
        return linalg.mat_vec(self.matrices[m], list(v))


def verify_stringy_chern(kring: StringyRing, chow: StringyRing) -> dict:
    """Check that CCh is a unital, equivariant ring map preserving traces,
    and record where it fails to preserve the pairing (strict allometry)."""
    model = kring.model
    G = model.group
    cch = CChMap(model)
    report: dict = {"homomorphism": True, "unit": True, "equivariance": True,
                    "trace_preserved": None, "metric_violations": 0,
                    "witnesses": {}}

    if cch.apply(0, kring.algebra.unit) != chow.algebra.unit:
        report["unit"] = False

    for m1 in G.elements():
        for m2 in G.elements():
            m12 = G.table[m1][m2]
            for i in range(kring.algebra.dim(m1)):
                ei = [Fraction(0)] * kring.algebra.dim(m1)
                ei[i] = Fraction(1)
                for j in range(kring.algebra.dim(m2)):
                    ej = [Fraction(0)] * kring.algebra.dim(m2)
                    ej[j] = Fraction(1)
                    lhs = cch.apply(m12, kring.algebra.mul_basis(m1, i, m2, j))
                    rhs = chow.algebra.mul(m1, cch.apply(m1, ei),
                                           m2, cch.apply(m2, ej))
                    if lhs != rhs:
                        report["homomorphism"] = False
                        report["witnesses"].setdefault("homomorphism", []).append(
                            {"sectors": (m1, m2), "basis": (i, j),
                             "lhs": [str(x) for x in lhs],
                             "rhs": [str(x) for x in rhs]})

    for g in G.elements():
        for m in G.elements():
            cm = G.conjugate(m, g)
            lhs = linalg.mat_mul(cch.matrices[cm], kring.algebra.action[g][m])
            rhs = linalg.mat_mul(chow.algebra.action[g][m], cch.matrices[m])
            if lhs != rhs:
                report["equivariance"] = False
                report["witnesses"].setdefault("equivariance", []).append(
                    {"gamma": g, "sector": m})

    if kring.algebra.proper and chow.algebra.proper:
        ok = True
        for a in G.elements():
            for b in G.elements():
                m = G.commutator(a, b)
                for i in range(kring.algebra.dim(m)):
                    v = [Fraction(0)] * kring.algebra.dim(m)
                    v[i] = Fraction(1)
                    if kring.algebra.tau(a, b, v) != \
                            chow.algebra.tau(a, b, cch.apply(m, v)):
                        ok = False
                        report["witnesses"].setdefault("trace", []).append(
                            {"pair": (a, b), "basis": i})
        report["trace_preserved"] = ok
        violations = 0
        first = None
        for m in G.elements():
            minv = G.inv[m]
            for i in range(kring.algebra.dim(m)):
                v = [Fraction(0)] * kring.algebra.dim(m)
                v[i] = Fraction(1)
                for j in range(kring.algebra.dim(minv)):
                    w = [Fraction(0)] * kring.algebra.dim(minv)
                    w[j] = Fraction(1)
                    ek = kring.algebra.eta(m, v, w)
                    ea = chow.algebra.eta(m, cch.apply(m, v),
                                          cch.apply(minv, w))
                    if ek != ea:
                        violations += 1
                        if first is None:
                            first = {"sector": m, "basis": (i, j),
                                     "eta_k": str(ek), "eta_a": str(ea)}
        report["metric_violations"] = violations
        if first is not None:
            report["witnesses"]["metric"] = first
    report["allometric"] = (report["homomorphism"] and report["unit"]
                            and report["equivariance"]
                            and report["trace_preserved"] in (True, None))
    return report


def grading_report(ring: StringyRing) -> dict:
    """Grading checks: unit in degree 0, additivity under the product,
    pairing concentrated in complementary degree, trace in degree 0."""
    model = ring.model
    G = model.group
    A = ring.algebra
    out: dict = {"unit_degree_zero": True, "product_additive": True,
                 "pairing_degree": None, "trace_degree": None,
                 "witnesses": {}}
    for i, c in enumerate(A.unit):
        if c and ring.grading[0][i] != 0:
            out["unit_degree_zero"] = False
    for m1 in G.elements():
        for m2 in G.elements():
            m12 = G.table[m1][m2]
            tensor = A.product[(m1, m2)]
            for i in range(A.dim(m1)):
                for j in range(A.dim(m2)):
                    want = ring.grading[m1][i] + ring.grading[m2][j]
                    for k, c in enumerate(tensor[i][j]):
                        if c and ring.grading[m12][k] != want:
                            out["product_additive"] = False
                            out["witnesses"].setdefault("product", []).append(
                                {"sectors": (m1, m2), "basis": (i, j, k)})
    if A.pairing is not None:
        ok = True
        total = Fraction(model.dim_x)
        if model.grading_mode == "topological":
            total = 2 * total
        for m in G.elements():
            minv = G.inv[m]
            for i in range(A.dim(m)):
                for j in range(A.dim(minv)):
                    if A.pairing[m][i][j] and \
                            ring.grading[m][i] + ring.grading[minv][j] != total:
                        ok = False
                        out["witnesses"].setdefault("pairing", []).append(
                            {"sector": m, "basis": (i, j)})
        out["pairing_degree"] = ok
    if A.trace is not None:
        ok = True
        for a in G.elements():
            for b in G.elements():
                m = G.commutator(a, b)
                for i, c in enumerate(A.trace[(a, b)]):
                    if c and ring.grading[m][i] != 0:
                        ok = False
                        out["witnesses"].setdefault("trace", []).append(
                            {"pair": (a, b), "basis": i})
        out["trace_degree"] = ok
    out["passed"] = (out["unit_degree_zero"] and out["product_additive"]
                     and out["pairing_degree"] in (True, None)
                     and out["trace_degree"] in (True, None))
    return out


def apply_twist(ring: StringyRing, alpha: TwoCocycle) -> StringyRing:
    twisted = torsion_twist(ring.algebra, alpha)
    return StringyRing(ring.model, ring.kind, twisted, ring.grading)
