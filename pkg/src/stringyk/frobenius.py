"""Data model and exhaustive axiom checker for pre-G-Frobenius algebras.

An algebra is stored concretely: one rational vector space per group
element (the sectors), dense rational structure-constant tensors for the
product, matrices for the G-action, and optional pairing and trace data.
Axioms are checked on basis vectors, which suffices by bilinearity;
failures carry an explicit witness.  Algebras without pairing/trace data
are "non-proper": the metric axioms are reported not-applicable rather
than silently passed.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional, Sequence

from stringyk import linalg
from stringyk.groups import FiniteGroup

Vector = list[Fraction]
Matrix = list[list[Fraction]]

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not_applicable"


class AxiomReport:
    """Outcome of the axiom suite: one entry per axiom, witnesses on failure."""

    def __init__(self) -> None:
        self.entries: list[dict] = []

    def add(self, axiom: str, status: str, witness=None) -> None:
        entry = {"axiom": axiom, "status": status}
        if witness is not None:
            entry["witness"] = witness
        self.entries.append(entry)

    @property
    def passed(self) -> bool:
        return all(e["status"] in (PASS, NOT_APPLICABLE) for e in self.entries)

    def failures(self) -> list[dict]:
        return [e for e in self.entries if e["status"] == FAIL]

    def to_json(self) -> str:
        return json.dumps(self.entries, indent=2, default=str)

    def __repr__(self) -> str:
        n_fail = len(self.failures())
        return f"AxiomReport({'all pass' if not n_fail else f'{n_fail} failures'})"


class PreGFrobeniusAlgebra:
    """A G-graded G-module with product, unit, and optional metric data.

    sectors[m]   basis labels of the m-sector
    action[g]    matrices rho(g): sector(m) -> sector(g m g^-1), one per m
    product      tensors [(m1, m2)][i][j] -> vector in sector(m1 m2)
    unit         vector in sector(identity)
    pairing      matrices [m][i][j] = eta(e_i in sector m, e_j in sector m^-1)
    trace        functionals [(a, b)] on sector([a, b])
    grading      optional rational degree per basis vector
    """

    def __init__(self, group: FiniteGroup,
                 sectors: Sequence[Sequence[str]],
                 action: dict,
                 product: dict,
                 unit: Vector,
                 pairing: Optional[dict] = None,
                 trace: Optional[dict] = None,
                 grading: Optional[dict] = None,
                 name: str = ""):
        self.group = group
        self.sectors = [tuple(labels) for labels in sectors]
        if len(self.sectors) != group.order:
            raise ValueError("one sector per group element required")
        self.action = action
        self.product = product
        self.unit = [Fraction(x) for x in unit]
        self.pairing = pairing
        self.trace = trace
        self.grading = grading
        self.name = name
        self._validate_shapes()

    @property
    def proper(self) -> bool:
        return self.pairing is not None and self.trace is not None

    def dim(self, m: int) -> int:
        return len(self.sectors[m])

    def total_dim(self) -> int:
        return sum(self.dim(m) for m in self.group.elements())

    def _validate_shapes(self) -> None:
        G = self.group
        for g in G.elements():
            mats = self.action.get(g)
            if mats is None:
                raise ValueError(f"missing action of element {g}")
            for m in G.elements():
                tgt = G.conjugate(m, g)
                mat = mats[m]
                if len(mat) != self.dim(tgt) or any(len(r) != self.dim(m) for r in mat):
                    raise ValueError(
                        f"action of {g} on sector {m} has wrong shape")
        for m1 in G.elements():
            for m2 in G.elements():
                tensor = self.product.get((m1, m2))
                if tensor is None:
                    raise ValueError(f"missing product tensor ({m1},{m2})")
                m12 = G.table[m1][m2]
                if len(tensor) != self.dim(m1):
                    raise ValueError(f"product tensor ({m1},{m2}) wrong rows")
                for row in tensor:
                    if len(row) != self.dim(m2) or any(
                            len(v) != self.dim(m12) for v in row):
                        raise ValueError(
                            f"product tensor ({m1},{m2}) wrong shape")
        if len(self.unit) != self.dim(0):
            raise ValueError("unit has wrong dimension")
        if self.pairing is not None:
            for m in G.elements():
                mat = self.pairing.get(m)
                if mat is None or len(mat) != self.dim(m) or any(
                        len(r) != self.dim(G.inv[m]) for r in mat):
                    raise ValueError(f"pairing on sector {m} has wrong shape")
        if self.trace is not None:
            for a in G.elements():
                for b in G.elements():
                    vec = self.trace.get((a, b))
                    mm = G.commutator(a, b)
                    if vec is None or len(vec) != self.dim(mm):
                        raise ValueError(f"trace component ({a},{b}) wrong shape")

    # -- linear helpers ----------------------------------------------------------

    def act(self, g: int, m: int, v: Vector) -> Vector:
        """rho(g) applied to v in sector m (lands in sector g m g^-1)."""
        return linalg.mat_vec(self.action[g][m], v) if v else []

    def mul_basis(self, m1: int, i: int, m2: int, j: int) -> Vector:
        return self.product[(m1, m2)][i][j]

    def mul(self, m1: int, v: Vector, m2: int, w: Vector) -> Vector:
        out = [Fraction(0)] * self.dim(self.group.table[m1][m2])
        tensor = self.product[(m1, m2)]
        for i, vi in enumerate(v):
            if vi:
                for j, wj in enumerate(w):
                    if wj:
                        for k, c in enumerate(tensor[i][j]):
                            out[k] += vi * wj * c
        return out

    def eta(self, m: int, v: Vector, w: Vector) -> Fraction:
        """Pairing of v in sector m with w in sector m^-1."""
        assert self.pairing is not None
        mat = self.pairing[m]
        acc = Fraction(0)
        for i, vi in enumerate(v):
            if vi:
                for j, wj in enumerate(w):
                    if wj:
                        acc += vi * wj * mat[i][j]
        return acc

    def tau(self, a: int, b: int, v: Vector) -> Fraction:
        assert self.trace is not None
        vec = self.trace[(a, b)]
        return sum((x * y for x, y in zip(vec, v)), Fraction(0))

    # -- derived structures -------------------------------------------------------

    def left_mul_then_act_trace(self, a: int, b: int, m: int, v: Vector) -> Fraction:
        """tr over sector a of (L_v compose rho(b)); v must lie in sector m=[a,b]."""
        G = self.group
        bab = G.conjugate(a, b)
        acc = Fraction(0)
        for j in range(self.dim(a)):
            basis = [Fraction(0)] * self.dim(a)
            basis[j] = Fraction(1)
            moved = self.act(b, a, basis)          # in sector bab
            out = self.mul(m, v, bab, moved)       # in sector m * bab = a
            acc += out[j]
        return acc

    def canonical_trace(self) -> dict:
        """tau_{a,b}(v) = tr_{sector a}(L_v o rho(b)) as explicit functionals."""
        G = self.group
        out = {}
        for a in G.elements():
            for b in G.elements():
                m = G.commutator(a, b)
                vec = []
                for i in range(self.dim(m)):
                    v = [Fraction(0)] * self.dim(m)
                    v[i] = Fraction(1)
                    vec.append(self.left_mul_then_act_trace(a, b, m, v))
                out[(a, b)] = vec
        return out

    def with_canonical_trace(self) -> "PreGFrobeniusAlgebra":
        return PreGFrobeniusAlgebra(self.group, self.sectors, self.action,
                                    self.product, self.unit, self.pairing,
                                    self.canonical_trace(), self.grading,
                                    name=self.name)

    def characteristic(self) -> Fraction:
        """(1/|G|) sum_{a,b} tau_{a,b}(1); only commuting pairs contribute."""
        if self.trace is None:
            raise ValueError("characteristic needs a trace")
        G = self.group
        acc = Fraction(0)
        for a, b in G.commuting_pairs():
            acc += self.tau(a, b, self.unit)
        return acc / G.order


# -- axiom checking ---------------------------------------------------------------


def first_associativity_failure(A: PreGFrobeniusAlgebra):
    """A witness triple where the product fails to associate, or None."""
    G = A.group
    for m1 in G.elements():
        for i in range(A.dim(m1)):
            for m2 in G.elements():
                m12 = G.table[m1][m2]
                for j in range(A.dim(m2)):
                    vw = A.mul_basis(m1, i, m2, j)
                    for m3 in G.elements():
                        m23 = G.table[m2][m3]
                        for k in range(A.dim(m3)):
                            u = [Fraction(0)] * A.dim(m3)
                            u[k] = Fraction(1)
                            v = [Fraction(0)] * A.dim(m1)
                            v[i] = Fraction(1)
                            lhs = A.mul(m12, vw, m3, u)
                            rhs = A.mul(m1, v, m23, A.mul_basis(m2, j, m3, k))
                            if lhs != rhs:
                                return {"sectors": (m1, m2, m3),
                                        "basis": (i, j, k),
                                        "lhs": [str(x) for x in lhs],
                                        "rhs": [str(x) for x in rhs]}
    return None


def check_axioms(A: PreGFrobeniusAlgebra) -> AxiomReport:
    """Run all twelve axioms on basis vectors (sufficient by bilinearity)."""
    G = A.group
    report = AxiomReport()

    def basis(m: int):
        for i in range(A.dim(m)):
            v = [Fraction(0)] * A.dim(m)
            v[i] = Fraction(1)
            yield i, v

    # 1: G-graded G-module
    witness = None
    for g in G.elements():
        for h in G.elements():
            gh = G.table[g][h]
            for m in G.elements():
                hm = G.conjugate(m, h)
                lhs = linalg.mat_mul(A.action[g][hm], A.action[h][m])
                if lhs != A.action[gh][m]:
                    witness = {"pair": (g, h), "sector": m}
                    break
            if witness:
                break
        if witness:
            break
    if witness is None:
        ident_ok = all(A.action[0][m] == linalg.identity_matrix(A.dim(m))
                       for m in G.elements() if A.dim(m))
        if not ident_ok:
            witness = {"element": 0}
    report.add("g_graded_module", FAIL if witness else PASS, witness)

    # 2: self-invariance rho(m)|_{sector m} = id
    witness = None
    for m in G.elements():
        if A.dim(m) and A.action[m][m] != linalg.identity_matrix(A.dim(m)):
            witness = {"sector": m}
            break
    report.add("self_invariance", FAIL if witness else PASS, witness)

    # 3: graded pairing support (structural with this storage)
    if A.pairing is None:
        report.add("pairing_support", NOT_APPLICABLE)
    else:
        report.add("pairing_support", PASS,
                   {"note": "pairing stored per (m, m^-1) pair"})

    # 4: G-graded multiplication (structural: tensors land in sector m1 m2)
    report.add("graded_multiplication", PASS,
               {"note": "product tensors are stored per (m1, m2)"})

    # 5: associativity on all basis triples
    witness = first_associativity_failure(A)
    report.add("associativity", FAIL if witness else PASS, witness)

    # 6: braided commutativity
    witness = None
    for m1 in G.elements():
        for m2 in G.elements():
            m1m2 = G.conjugate(m2, m1)
            for i, v in basis(m1):
                for j, w in basis(m2):
                    lhs = A.mul_basis(m1, i, m2, j)
                    moved = A.act(m1, m2, w)
                    rhs = A.mul(m1m2, moved, m1, v)
                    if lhs != rhs:
                        witness = {"sectors": (m1, m2), "basis": (i, j)}
                        break
                if witness:
                    break
            if witness:
                break
        if witness:
            break
    report.add("braided_commutativity", FAIL if witness else PASS, witness)

    # 7: G-equivariance of the multiplication
    witness = None
    for g in G.elements():
        for m1 in G.elements():
            for m2 in G.elements():
                m12 = G.table[m1][m2]
                cm1, cm2 = G.conjugate(m1, g), G.conjugate(m2, g)
                for i, v in basis(m1):
                    gv = A.act(g, m1, v)
                    for j, w in basis(m2):
                        gw = A.act(g, m2, w)
                        lhs = A.mul(cm1, gv, cm2, gw)
                        rhs = A.act(g, m12, A.mul_basis(m1, i, m2, j))
                        if lhs != rhs:
                            witness = {"gamma": g, "sectors": (m1, m2),
                                       "basis": (i, j)}
                            break
                    if witness:
                        break
                if witness:
                    break
            if witness:
                break
        if witness:
            break
    report.add("action_equivariance", FAIL if witness else PASS, witness)

    # 8: G-invariance of the pairing
    if A.pairing is None:
        report.add("pairing_invariance", NOT_APPLICABLE)
    else:
        witness = None
        for g in G.elements():
            for m in G.elements():
                minv = G.inv[m]
                cm = G.conjugate(m, g)
                for i, v in basis(m):
                    gv = A.act(g, m, v)
                    for j, w in basis(minv):
                        gw = A.act(g, minv, w)
                        if A.eta(cm, gv, gw) != A.eta(m, v, w):
                            witness = {"gamma": g, "sector": m, "basis": (i, j)}
                            break
                    if witness:
                        break
                if witness:
                    break
            if witness:
                break
        report.add("pairing_invariance", FAIL if witness else PASS, witness)

    # 9: multiplicative invariance of the pairing
    if A.pairing is None:
        report.add("pairing_multiplicative", NOT_APPLICABLE)
    else:
        witness = None
        for m1 in G.elements():
            for m2 in G.elements():
                m12 = G.table[m1][m2]
                m3 = G.inv[m12]
                m23 = G.table[m2][m3]
                for i, v in basis(m1):
                    for j, w in basis(m2):
                        vw = A.mul_basis(m1, i, m2, j)
                        for k, u in basis(m3):
                            wu = A.mul_basis(m2, j, m3, k)
                            if A.eta(m12, vw, u) != A.eta(m1, v, wu):
                                witness = {"sectors": (m1, m2, m3),
                                           "basis": (i, j, k)}
                                break
                        if witness:
                            break
                    if witness:
                        break
                if witness:
                    break
            if witness:
                break
        report.add("pairing_multiplicative", FAIL if witness else PASS, witness)

    # 10: G-invariant identity
    witness = None
    for m in G.elements():
        for i, v in basis(m):
            if A.mul(0, A.unit, m, v) != v or A.mul(m, v, 0, A.unit) != v:
                witness = {"sector": m, "basis": i}
                break
        if witness:
            break
    if witness is None:
        for g in G.elements():
            if A.act(g, 0, A.unit) != A.unit:
                witness = {"gamma": g}
                break
    report.add("unit", FAIL if witness else PASS, witness)

    # 11: trace support and equivariance
    if A.trace is None:
        report.add("trace_equivariance", NOT_APPLICABLE)
        report.add("trace_axiom", NOT_APPLICABLE)
        return report
    witness = None
    for g in G.elements():
        for a in G.elements():
            for b in G.elements():
                m = G.commutator(a, b)
                ca, cb = G.conjugate(a, g), G.conjugate(b, g)
                cm = G.commutator(ca, cb)
                assert cm == G.conjugate(m, g)
                for i, v in basis(m):
                    gv = A.act(g, m, v)
                    if A.tau(ca, cb, gv) != A.tau(a, b, v):
                        witness = {"gamma": g, "pair": (a, b), "basis": i}
                        break
                if witness:
                    break
            if witness:
                break
        if witness:
            break
    report.add("trace_equivariance", FAIL if witness else PASS, witness)

    # 12: trace axiom tau_{a,b} = tau_{a b a^-1, a^-1}
    witness = None
    for a in G.elements():
        for b in G.elements():
            ta, tb = G.conjugate(b, a), G.inv[a]
            if A.trace[(a, b)] != A.trace[(ta, tb)]:
                witness = {"pair": (a, b), "maps_to": (ta, tb),
                           "lhs": [str(x) for x in A.trace[(a, b)]],
                           "rhs": [str(x) for x in A.trace[(ta, tb)]]}
                break
        if witness:
            break
    report.add("trace_axiom", FAIL if witness else PASS, witness)
    return report


def familiar_trace_axiom(A: PreGFrobeniusAlgebra) -> tuple[bool, Optional[dict]]:
    """tr_{sector a}(L_v o rho(b)) == tr_{sector b}(rho(a^-1) o L_v)."""
    G = A.group
    for a in G.elements():
        for b in G.elements():
            m = G.commutator(a, b)
            for i in range(A.dim(m)):
                v = [Fraction(0)] * A.dim(m)
                v[i] = Fraction(1)
                lhs = A.left_mul_then_act_trace(a, b, m, v)
                # rhs: trace over sector b of rho(a^-1) o L_v
                acc = Fraction(0)
                mb = G.table[m][b]
                for j in range(A.dim(b)):
                    basisv = [Fraction(0)] * A.dim(b)
                    basisv[j] = Fraction(1)
                    prod = A.mul(m, v, b, basisv)          # sector m b
                    out = A.act(G.inv[a], mb, prod)        # sector a^-1 (m b) a = b
                    acc += out[j]
                if lhs != acc:
                    return False, {"pair": (a, b), "basis": i,
                                   "lhs": str(lhs), "rhs": str(acc)}
    return True, None


# -- invariants -----------------------------------------------------------------


class InvariantAlgebra:
    """The pre-Frobenius algebra of G-invariants of a pre-G-Frobenius algebra."""

    def __init__(self, labels: list[str], basis: list[Vector],
                 product: list[list[Vector]], unit: Vector,
                 pairing: Optional[Matrix], trace: Optional[Vector],
                 sector_tags: list[str]):
        self.labels = labels
        self.basis = basis
        self.product = product
        self.unit = unit
        self.pairing = pairing
        self.trace = trace
        self.sector_tags = sector_tags

    @property
    def dim(self) -> int:
        return len(self.basis)

    def mul(self, v: Vector, w: Vector) -> Vector:
        out = [Fraction(0)] * self.dim
        for i, vi in enumerate(v):
            if vi:
                for j, wj in enumerate(w):
                    if wj:
                        for k, c in enumerate(self.product[i][j]):
                            out[k] += vi * wj * c
        return out

    def canonical_trace_vector(self) -> Vector:
        out = []
        for i in range(self.dim):
            acc = Fraction(0)
            for j in range(self.dim):
                v = [Fraction(0)] * self.dim
                v[j] = Fraction(1)
                prod_i = self.mul([Fraction(1) if k == i else Fraction(0)
                                   for k in range(self.dim)], v)
                acc += prod_i[j]
            out.append(acc)
        return out


def invariants_algebra(A: PreGFrobeniusAlgebra) -> InvariantAlgebra:
    """G-coinvariants with induced product, scaled pairing, and the
    characteristic element as trace."""
    G = A.group
    offsets = []
    total = 0
    for m in G.elements():
        offsets.append(total)
        total += A.dim(m)

    def embed(m: int, v: Vector) -> Vector:
        out = [Fraction(0)] * total
        for i, x in enumerate(v):
            out[offsets[m] + i] = x
        return out

    def split(v: Vector) -> dict[int, Vector]:
        return {m: v[offsets[m]:offsets[m] + A.dim(m)] for m in G.elements()}

    def project(v: Vector) -> Vector:
        acc = [Fraction(0)] * total
        parts = split(v)
        for g in G.elements():
            for m in G.elements():
                if not A.dim(m):
                    continue
                moved = A.act(g, m, parts[m])
                tgt = G.conjugate(m, g)
                for i, x in enumerate(moved):
                    acc[offsets[tgt] + i] += x
        return [x / G.order for x in acc]

    candidates = []
    cand_tags = []
    for m in G.elements():
        for i in range(A.dim(m)):
            v = [Fraction(0)] * A.dim(m)
            v[i] = Fraction(1)
            candidates.append(project(embed(m, v)))
            cand_tags.append((m, i))
    basis = []
    tags = []
    echelon: list[Vector] = []
    for vec, tag in zip(candidates, cand_tags):
        red = list(vec)
        for row in echelon:
            lead = next(i for i, x in enumerate(row) if x)
            if red[lead]:
                f = red[lead]
                red = [x - f * y for x, y in zip(red, row)]
        if any(red):
            lead = next(i for i, x in enumerate(red) if x)
            echelon.append([x / red[lead] for x in red])
            basis.append(vec)
            tags.append(tag)

    def coords(v: Vector) -> Vector:
        c = linalg.coordinates_in_span(basis, v)
        if c is None:
            raise AssertionError("invariant product left the invariant subspace")
        return c

    def full_mul(v: Vector, w: Vector) -> Vector:
        out = [Fraction(0)] * total
        pv, pw = split(v), split(w)
        for m1 in G.elements():
            if not any(pv[m1]):
                continue
            for m2 in G.elements():
                if not any(pw[m2]):
                    continue
                prod = A.mul(m1, pv[m1], m2, pw[m2])
                m12 = G.table[m1][m2]
                for i, x in enumerate(prod):
                    out[offsets[m12] + i] += x
        return out

    product = [[coords(full_mul(u, v)) for v in basis] for u in basis]
    unit = coords(embed(0, A.unit))

    pairing = None
    trace = None
    if A.pairing is not None:
        pairing = []
        for u in basis:
            row = []
            pu = split(u)
            for v in basis:
                pv = split(v)
                acc = Fraction(0)
                for m in G.elements():
                    if any(pu[m]):
                        acc += A.eta(m, pu[m], pv[G.inv[m]])
                row.append(acc / G.order)
            pairing.append(row)
    if A.trace is not None:
        trace = []
        for u in basis:
            pu = split(u)
            acc = Fraction(0)
            for a in G.elements():
                for b in G.elements():
                    m = G.commutator(a, b)
                    if any(pu[m]):
                        acc += A.tau(a, b, pu[m])
            trace.append(acc / G.order)

    G_classes = A.group.conjugacy_classes()
    labels = []
    sector_tags = []
    for (m, i) in tags:
        cls = A.group.class_of(m)
        rep = G_classes[cls][0]
        labels.append(f"[{A.group.element_names[rep]}]:{A.sectors[m][i]}")
        sector_tags.append(f"[{A.group.element_names[rep]}]")
    return InvariantAlgebra(labels, basis, product, unit, pairing, trace,
                            sector_tags)


def gfa_tensor(A: PreGFrobeniusAlgebra,
               B: PreGFrobeniusAlgebra) -> PreGFrobeniusAlgebra:
    """Sectorwise tensor product with diagonal action, product, and metric."""
    if A.group is not B.group:
        raise ValueError("tensor product needs a common group")
    G = A.group
    sectors = [tuple(f"{x}*{y}" for x in A.sectors[m] for y in B.sectors[m])
               for m in G.elements()]

    def tensor_matrix(MA: Matrix, MB: Matrix) -> Matrix:
        rows = []
        for ra in MA:
            for rb in MB:
                rows.append([xa * xb for xa in ra for xb in rb])
        return rows

    action = {}
    for g in G.elements():
        action[g] = {m: tensor_matrix(A.action[g][m], B.action[g][m])
                     for m in G.elements()}
    product = {}
    for m1 in G.elements():
        for m2 in G.elements():
            dA1, dB1 = A.dim(m1), B.dim(m1)
            dA2, dB2 = A.dim(m2), B.dim(m2)
            tensor = []
            for i in range(dA1 * dB1):
                ia, ib = divmod(i, dB1)
                row = []
                for j in range(dA2 * dB2):
                    ja, jb = divmod(j, dB2)
                    va = A.mul_basis(m1, ia, m2, ja)
                    vb = B.mul_basis(m1, ib, m2, jb)
                    row.append([xa * xb for xa in va for xb in vb])
                tensor.append(row)
            product[(m1, m2)] = tensor
    unit = [xa * xb for xa in A.unit for xb in B.unit]
    pairing = None
    if A.pairing is not None and B.pairing is not None:
        pairing = {}
        for m in G.elements():
            pairing[m] = tensor_matrix(A.pairing[m], B.pairing[m])
    trace = None
    if A.trace is not None and B.trace is not None:
        trace = {}
        for a in G.elements():
            for b in G.elements():
                trace[(a, b)] = [xa * xb for xa in A.trace[(a, b)]
                                 for xb in B.trace[(a, b)]]
    return PreGFrobeniusAlgebra(G, sectors, action, product, unit, pairing,
                                trace, name=f"{A.name}(x){B.name}")


def group_ring(G: FiniteGroup) -> PreGFrobeniusAlgebra:
    """Q[G] graded by G with the conjugation action and canonical trace."""
    sectors = [(f"e_{G.element_names[m]}",) for m in G.elements()]
    action = {g: {m: [[Fraction(1)]] for m in G.elements()} for g in G.elements()}
    product = {}
    for m1 in G.elements():
        for m2 in G.elements():
            product[(m1, m2)] = [[[Fraction(1)]]]
    unit = [Fraction(1)]
    pairing = {m: [[Fraction(1)]] for m in G.elements()}
    A = PreGFrobeniusAlgebra(G, sectors, action, product, unit, pairing,
                             trace=None, name=f"Q[{G.name}]")
    return A.with_canonical_trace()
