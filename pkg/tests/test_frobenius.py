from fractions import Fraction

import pytest

from stringyk.frobenius import (PreGFrobeniusAlgebra, check_axioms,
                                familiar_trace_axiom, gfa_tensor, group_ring,
                                invariants_algebra)
from stringyk.groups import (cyclic_group, klein_four_group,
                             quaternion_group, symmetric_group)


def test_group_ring_passes_all_axioms():
    for G in (cyclic_group(1), cyclic_group(2), symmetric_group(3),
              quaternion_group()):
        A = group_ring(G)
        report = check_axioms(A)
        assert report.passed, report.failures()
        assert len(report.entries) == 12


def test_axiom_report_serializes():
    A = group_ring(cyclic_group(2))
    report = check_axioms(A)
    text = report.to_json()
    assert '"axiom"' in text and '"status"' in text


def test_perturbed_algebra_fails_with_witness():
    G = cyclic_group(2)
    A = group_ring(G)
    product = {k: [[list(v) for v in row] for row in t]
               for k, t in A.product.items()}
    product[(1, 1)][0][0][0] += 1
    bad = PreGFrobeniusAlgebra(G, A.sectors, A.action, product, A.unit,
                               A.pairing, A.trace)
    report = check_axioms(bad)
    assert not report.passed
    assert all("witness" in e for e in report.failures())


def test_broken_action_detected():
    G = cyclic_group(4)
    A = group_ring(G)
    action = {g: dict(m) for g, m in ((g, A.action[g]) for g in G.elements())}
    action[1] = dict(action[1])
    action[1][1] = [[Fraction(-1)]]  # breaks self-invariance
    bad = PreGFrobeniusAlgebra(G, A.sectors, action, A.product, A.unit,
                               A.pairing, A.trace)
    report = check_axioms(bad)
    failed = {e["axiom"] for e in report.failures()}
    assert "self_invariance" in failed


def test_shape_validation():
    G = cyclic_group(2)
    A = group_ring(G)
    with pytest.raises(ValueError):
        PreGFrobeniusAlgebra(G, A.sectors, A.action, A.product,
                             [Fraction(1), Fraction(0)],  # wrong unit dim
                             A.pairing, A.trace)


def test_canonical_trace_examples():
    # trivial group: tau(1) = 1
    t = group_ring(cyclic_group(1))
    assert t.trace[(0, 0)] == [Fraction(1)]
    # Q[Z/2] with conjugation: tau_{a,b}(1) = 1 for all pairs
    A = group_ring(cyclic_group(2))
    for a in (0, 1):
        for b in (0, 1):
            assert A.trace[(a, b)] == [Fraction(1)]


def test_familiar_trace_axiom():
    for G in (cyclic_group(1), symmetric_group(3), quaternion_group()):
        ok, witness = familiar_trace_axiom(group_ring(G))
        assert ok, witness


def test_characteristic_examples():
    assert group_ring(cyclic_group(1)).characteristic() == 1
    assert group_ring(symmetric_group(3)).characteristic() == 3


def test_invariants_of_group_ring_is_class_algebra():
    s3 = symmetric_group(3)
    inv = invariants_algebra(group_ring(s3))
    assert inv.dim == 3  # class sums
    # induced trace equals the canonical trace of the invariant algebra
    assert inv.trace == inv.canonical_trace_vector()


def test_invariants_trivial_group_is_identity():
    t = group_ring(cyclic_group(1))
    inv = invariants_algebra(t)
    assert inv.dim == 1
    assert inv.unit == [Fraction(1)]


def test_invariants_product_closes():
    A = group_ring(quaternion_group())
    inv = invariants_algebra(A)
    assert inv.dim == 5
    v = [Fraction(1)] * inv.dim
    assert len(inv.mul(v, v)) == inv.dim


def test_tensor_product():
    G = symmetric_group(3)
    A = group_ring(G)
    T = gfa_tensor(A, A)
    assert all(T.dim(m) == A.dim(m) * A.dim(m) for m in G.elements())
    assert check_axioms(T).passed
    with pytest.raises(ValueError):
        gfa_tensor(A, group_ring(cyclic_group(2)))


def test_tensor_with_trivial_rank_one_is_isomorphic():
    G = cyclic_group(3)
    A = group_ring(G)
    T = gfa_tensor(A, A)  # Q[G] (x) Q[G] has the same structure constants
    for m1 in G.elements():
        for m2 in G.elements():
            assert T.product[(m1, m2)][0][0] == A.product[(m1, m2)][0][0]


def test_characteristic_element_g_invariant():
    # bold tau o rho(gamma) = bold tau, via the trace equivariance axiom
    for G in (symmetric_group(3), klein_four_group()):
        A = group_ring(G)
        for gamma in G.elements():
            for m in G.elements():
                total = [Fraction(0)] * A.dim(m)
                total_conj = [Fraction(0)] * A.dim(G.conjugate(m, gamma))
                for a in G.elements():
                    for b in G.elements():
                        if G.commutator(a, b) == m:
                            for i, x in enumerate(A.trace[(a, b)]):
                                total[i] += x
                        if G.commutator(a, b) == G.conjugate(m, gamma):
                            for i, x in enumerate(A.trace[(a, b)]):
                                total_conj[i] += x
                moved = A.act(gamma, m, total) if A.dim(m) else []
                # characteristic element evaluated against rho(gamma) v
                lhs = total_conj
                mat = A.action[gamma][m]
                applied = [sum(lhs[i] * mat[i][j] for i in range(len(lhs)))
                           for j in range(A.dim(m))]
                assert applied == total
