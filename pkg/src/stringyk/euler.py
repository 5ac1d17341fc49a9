"""Stringy Euler characteristics and the symmetric-product cross-check.

The stringy Euler characteristic of a proper model is
(1/|G|) * sum over commuting pairs (a, b) of chi(X^<a,b>).  For symmetric
products Y^n/S_n it has an independent oracle: the coefficient of q^n in
the product expansion prod_k (1 - q^k)^(-chi(Y)).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations as iter_permutations
from math import factorial
from typing import Iterator

from stringyk.geometry import GeometricModel


class EulerReport:
    """Per-commuting-pair Euler numbers and their normalized total."""

    def __init__(self, group_order: int,
                 pair_values: dict[tuple[int, int], Fraction]):
        self.pair_values = pair_values
        self.total = sum(pair_values.values(), Fraction(0)) / group_order

    def __repr__(self) -> str:
        return f"EulerReport(total={self.total}, pairs={len(self.pair_values)})"


def stringy_euler(model: GeometricModel) -> EulerReport:
    """(1/|G|) sum over ab = ba of chi(X^<a,b>), exactly."""
    if not model.proper:
        raise ValueError("stringy Euler characteristic needs a proper model")
    G = model.group
    values: dict[tuple[int, int], Fraction] = {}
    chi_cache: dict[tuple[int, ...], Fraction] = {}
    for a, b in G.commuting_pairs():
        key = model.locus_key([a, b])
        chi = chi_cache.get(key)
        if chi is None:
            chi = model.topological_euler(key)
            chi_cache[key] = chi
        values[(a, b)] = chi
    return EulerReport(G.order, values)


def _orbit_count(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    """Number of orbits of <a, b> acting on the points (union-find)."""
    n = len(a)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        for img in (a[i], b[i]):
            ri, rj = find(i), find(img)
            if ri != rj:
                parent[ri] = rj
    return sum(1 for i in range(n) if find(i) == i)


def _partitions(n: int, largest: int = 0) -> Iterator[tuple[int, ...]]:
    if largest == 0:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def _partition_permutation(part: tuple[int, ...]) -> tuple[int, ...]:
    """A permutation with the given cycle type."""
    perm = []
    start = 0
    for k in part:
        perm.extend([start + (i + 1) % k for i in range(k)])
        start += k
    return tuple(perm)


def _class_size(part: tuple[int, ...], n: int) -> int:
    """n! / prod(k^{m_k} m_k!) for cycle type with m_k cycles of length k."""
    counts: dict[int, int] = {}
    for k in part:
        counts[k] = counts.get(k, 0) + 1
    denom = 1
    for k, m in counts.items():
        denom *= (k ** m) * factorial(m)
    return factorial(n) // denom


def sym_orbifold_euler(chi: int, n: int) -> Fraction:
    """Stringy Euler characteristic of Y^n/S_n given chi(Y) = chi.

    chi(fixed locus of <a, b>) = chi ** (number of orbits of <a, b>).
    Commuting pairs are enumerated directly, factored through conjugacy
    classes of the first element (S_n for n up to 8 is too large for the
    Cayley-table machinery, and does not need it).
    """
    if n > 8:
        raise ValueError("symmetric products supported up to n = 8")
    if n == 0:
        return Fraction(1)
    total = Fraction(0)
    all_perms = list(iter_permutations(range(n)))
    for part in _partitions(n):
        a = _partition_permutation(part)
        size = _class_size(part, n)
        subtotal = Fraction(0)
        for b in all_perms:
            if all(a[b[i]] == b[a[i]] for i in range(n)):
                subtotal += Fraction(chi) ** _orbit_count(a, b)
        total += size * subtotal
    return total / factorial(n)


def dhvw_coefficient(chi: int, n: int) -> Fraction:
    """Coefficient of q^n in prod_{k>=1} (1 - q^k)^(-chi), exactly."""
    if n > 8:
        raise ValueError("series expansion supported up to n = 8")
    if n == 0:
        return Fraction(1)
    series = [Fraction(0)] * (n + 1)
    series[0] = Fraction(1)

    def mul_geometric(s, k, power):
        """Multiply s by (1 - q^k)^power for integer power, truncated."""
        out = list(s)
        if power >= 0:
            # (1 - q^k)^power: binomial with alternating signs
            for _ in range(power):
                nxt = list(out)
                for d in range(k, n + 1):
                    nxt[d] -= out[d - k]
                out = nxt
        else:
            # divide by (1 - q^k): multiply by geometric series
            for _ in range(-power):
                nxt = list(out)
                for d in range(k, n + 1):
                    nxt[d] += nxt[d - k]
                out = nxt
        return out

    for k in range(1, n + 1):
        series = mul_geometric(series, k, -chi)
    return series[n]


def sym_euler_matches_dhvw(chi: int, n: int) -> bool:
    return sym_orbifold_euler(chi, n) == dhvw_coefficient(chi, n)
