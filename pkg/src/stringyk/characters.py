"""Characters and virtual representations with exact cyclotomic values.

Class functions store one value per conjugacy class; evaluation at an
arbitrary element routes through the class map.  Rational multiplicities
are a property of virtual characters, not a separate type.

Irreducible character tables are auto-generated for abelian groups (via a
direct-sum decomposition into cyclic factors) and constructed intrinsically
for S3, S4, D4, and Q8 (one-dimensionals lifted from the abelianization,
the rest recovered from permutation and regular characters); each shipped
table is verified orthonormal and complete at build time.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from stringyk import linalg
from stringyk.cyclotomic import Cyclo, root_of_unity
from stringyk.groups import FiniteGroup, Subgroup

# Cache values hold a strong reference to the parent group, so its id()
# cannot be reused while the entry is alive; the identity check guards the
# lookup anyway.
_group_views: dict[tuple, tuple] = {}


def group_view(H: Subgroup) -> tuple[FiniteGroup, tuple[int, ...]]:
    """Subgroup re-indexed as a standalone group, cached per subgroup."""
    key = (id(H.parent), H.members)
    got = _group_views.get(key)
    if got is not None and got[0] is H.parent:
        return got[1], got[2]
    view, members = H.as_group()
    _group_views[key] = (H.parent, view, members)
    return view, members


class ClassFunction:
    """A class function on a finite group with Cyclo values."""

    def __init__(self, group: FiniteGroup, values: Sequence[Cyclo]):
        self.group = group
        classes = group.conjugacy_classes()
        if len(values) != len(classes):
            raise ValueError("one value per conjugacy class required")
        self.values = tuple(v if isinstance(v, Cyclo) else Cyclo.from_rational(v)
                            for v in values)

    @staticmethod
    def from_function(group: FiniteGroup, fn) -> "ClassFunction":
        return ClassFunction(group, [fn(rep) for rep in group.class_representatives()])

    @staticmethod
    def zero(group: FiniteGroup) -> "ClassFunction":
        return ClassFunction(group, [Cyclo.zero()] * len(group.conjugacy_classes()))

    @staticmethod
    def trivial(group: FiniteGroup) -> "ClassFunction":
        return ClassFunction(group, [Cyclo.one()] * len(group.conjugacy_classes()))

    @staticmethod
    def regular(group: FiniteGroup) -> "ClassFunction":
        vals = [Cyclo.from_rational(group.order if rep == 0 else 0)
                for rep in group.class_representatives()]
        return ClassFunction(group, vals)

    @staticmethod
    def permutation(group: FiniteGroup) -> "ClassFunction":
        """Fixed-point character of the group's permutation realization."""
        if group.permutations is None:
            raise ValueError("group has no permutation realization")
        perms = group.permutations
        return ClassFunction.from_function(
            group, lambda g: sum(1 for i, x in enumerate(perms[g]) if x == i))

    def __call__(self, g: int) -> Cyclo:
        return self.values[self.group.class_of(g)]

    def _check(self, other: "ClassFunction") -> None:
        if other.group is not self.group:
            raise ValueError("class functions live on different groups")

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        self._check(other)
        return ClassFunction(self.group,
                             [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        self._check(other)
        return ClassFunction(self.group,
                             [a - b for a, b in zip(self.values, other.values)])

    def __neg__(self) -> "ClassFunction":
        return ClassFunction(self.group, [-a for a in self.values])

    def tensor(self, other: "ClassFunction") -> "ClassFunction":
        self._check(other)
        return ClassFunction(self.group,
                             [a * b for a, b in zip(self.values, other.values)])

    __mul__ = tensor

    def scale(self, q) -> "ClassFunction":
        q = Fraction(q) if not isinstance(q, (Cyclo,)) else q
        return ClassFunction(self.group, [v * q for v in self.values])

    def dual(self) -> "ClassFunction":
        return ClassFunction(self.group, [v.conjugate() for v in self.values])

    def restrict(self, H: Subgroup) -> "ClassFunction":
        if H.parent is not self.group:
            raise ValueError("subgroup of a different group")
        Hgrp, members = group_view(H)
        return ClassFunction.from_function(Hgrp, lambda h: self(members[h]))

    def rank(self) -> Fraction:
        """Virtual rank: the value at the identity, which must be rational."""
        return self.values[self.group.class_of(0)].rational_value()

    def inner(self, other: "ClassFunction") -> Cyclo:
        """<self, other> = (1/|G|) sum_g self(g) conj(other(g))."""
        self._check(other)
        acc = Cyclo.zero()
        for cls, a, b in zip(self.group.conjugacy_classes(), self.values,
                             other.values):
            acc = acc + a * b.conjugate() * len(cls)
        return acc * Fraction(1, self.group.order)

    def __eq__(self, other) -> bool:
        return (isinstance(other, ClassFunction) and other.group is self.group
                and all(a == b for a, b in zip(self.values, other.values)))

    def __bool__(self) -> bool:
        return any(self.values)

    def __repr__(self) -> str:
        vals = ", ".join(str(v) for v in self.values)
        return f"ClassFunction[{vals}]"


# A virtual character is a class function whose irreducible multiplicities
# happen to be rational; no separate runtime type is needed.
VirtualCharacter = ClassFunction


class MatrixRep:
    """A matrix representation with Cyclo entries, one matrix per element."""

    def __init__(self, group: FiniteGroup, matrices: Sequence, check: bool = True):
        self.group = group
        self.matrices = [ [ [entry if isinstance(entry, Cyclo) else Cyclo.from_rational(entry)
                             for entry in row] for row in m] for m in matrices]
        if len(self.matrices) != group.order:
            raise ValueError("need one matrix per group element")
        self.dim = len(self.matrices[0]) if self.matrices else 0
        for m in self.matrices:
            if len(m) != self.dim or any(len(row) != self.dim for row in m):
                raise ValueError("non-square or ragged matrix in representation")
        if check:
            self.check_homomorphism()

    @property
    def matrix(self):
        return self.matrices.__getitem__

    def __call__(self, g: int):
        return self.matrices[g]

    def check_homomorphism(self) -> None:
        G = self.group
        ident = linalg.identity_matrix(self.dim, Cyclo.one(), Cyclo.zero())
        if self.matrices[0] != ident:
            raise ValueError("identity element is not mapped to the identity matrix")
        for g in G.elements():
            for h in G.elements():
                prod = linalg.mat_mul(self.matrices[g], self.matrices[h])
                if prod != self.matrices[G.table[g][h]]:
                    raise ValueError(f"not a homomorphism at pair ({g},{h})")

    @staticmethod
    def from_generators(group: FiniteGroup, generators: Sequence[int],
                        images: Sequence, check: bool = True) -> "MatrixRep":
        """Extend generator images along the Cayley graph."""
        if len(generators) != len(images):
            raise ValueError("generator/image count mismatch")
        dim = len(images[0])
        ident = linalg.identity_matrix(dim, Cyclo.one(), Cyclo.zero())
        mats: dict[int, list] = {0: ident}
        coerced = [[[e if isinstance(e, Cyclo) else Cyclo.from_rational(e)
                     for e in row] for row in img] for img in images]
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for g, img in zip(generators, coerced):
                    y = group.table[x][g]
                    m = linalg.mat_mul(mats[x], img)
                    if y in mats:
                        if mats[y] != m:
                            raise ValueError("generator images are inconsistent")
                    else:
                        mats[y] = m
                        nxt.append(y)
            frontier = nxt
        if len(mats) != group.order:
            raise ValueError("generators do not generate the group")
        return MatrixRep(group, [mats[g] for g in group.elements()], check=check)

    @staticmethod
    def trivial(group: FiniteGroup, dim: int = 1) -> "MatrixRep":
        ident = linalg.identity_matrix(dim, Cyclo.one(), Cyclo.zero())
        return MatrixRep(group, [ident] * group.order, check=False)

    @staticmethod
    def regular(group: FiniteGroup) -> "MatrixRep":
        n = group.order
        zero, one = Cyclo.zero(), Cyclo.one()
        mats = []
        for g in group.elements():
            m = [[zero] * n for _ in range(n)]
            for h in group.elements():
                m[group.table[g][h]][h] = one
            mats.append(m)
        return MatrixRep(group, mats, check=False)

    @staticmethod
    def permutation(group: FiniteGroup) -> "MatrixRep":
        if group.permutations is None:
            raise ValueError("group has no permutation realization")
        npts = len(group.permutations[0])
        zero, one = Cyclo.zero(), Cyclo.one()
        mats = []
        for g in group.elements():
            p = group.permutations[g]
            m = [[zero] * npts for _ in range(npts)]
            for i in range(npts):
                m[p[i]][i] = one
            mats.append(m)
        return MatrixRep(group, mats, check=False)


def character_of(rep: MatrixRep) -> ClassFunction:
    return ClassFunction.from_function(
        rep.group, lambda g: linalg.mat_trace(rep.matrices[g]))


def induce(H: Subgroup, chi: ClassFunction, G: FiniteGroup) -> ClassFunction:
    """Induced character: chi_ind(g) = (|G|/|H|) sum_{s in H & [[g]]} chi(s)/|[[g]]|."""
    if H.parent is not G:
        raise ValueError("subgroup of a different group")
    Hgrp, members = group_view(H)
    if chi.group is not Hgrp:
        raise ValueError("character does not live on the given subgroup")
    pos = {g: i for i, g in enumerate(members)}
    scale = Fraction(G.order, H.order)
    values = []
    for cls in G.conjugacy_classes():
        acc = Cyclo.zero()
        for s in cls:
            if s in pos:
                acc = acc + chi(pos[s])
        values.append(acc * (scale / len(cls)))
    return ClassFunction(G, values)


def cyclic_decompose(chi: ClassFunction, generator: int) -> list[Fraction]:
    """Fourier multiplicities of chi on a cyclic group with a chosen generator.

    m_k = (1/r) sum_j chi(g^j) zeta_r^(-k j); each must come out rational.
    """
    G = chi.group
    r = G.element_order(generator)
    if r != G.order:
        raise ValueError("element does not generate the group")
    out = []
    for k in range(r):
        acc = Cyclo.zero()
        power = 0
        for j in range(r):
            acc = acc + chi(power) * root_of_unity((-k * j) % r, r)
            power = G.table[power][generator]
        val = (acc * Fraction(1, r)).try_rational()
        if val is None:
            raise ValueError("multiplicity is not rational; not a virtual character")
        out.append(val)
    return out


def cyclic_character(G: FiniteGroup, generator: int, k: int) -> ClassFunction:
    """The character of the cyclic group sending generator -> zeta_r^k."""
    r = G.element_order(generator)
    if r != G.order:
        raise ValueError("element does not generate the group")
    logs = {}
    power = 0
    for j in range(r):
        logs[power] = j
        power = G.table[power][generator]
    return ClassFunction.from_function(
        G, lambda g: root_of_unity(k * logs[g], r))


def nonneg_integer_multiplicities(
        chi: ClassFunction,
        table: Sequence[ClassFunction]) -> tuple[bool, list[Fraction]]:
    """Decompose against a complete irreducible table.

    Returns (all multiplicities are nonnegative integers, the multiplicities).
    Rejects tables with sum of squared degrees != |G|.
    """
    G = chi.group
    total = sum(int(t.rank()) ** 2 for t in table)
    if total != G.order:
        raise ValueError("irreducible table is incomplete "
                         f"(sum of squared degrees {total} != {G.order})")
    mults = []
    ok = True
    for t in table:
        m = chi.inner(t).try_rational()
        if m is None:
            ok = False
            mults.append(Fraction(0))
            continue
        mults.append(m)
        if m.denominator != 1 or m < 0:
            ok = False
    return ok, mults


# -- irreducible tables ---------------------------------------------------------


def abelian_cyclic_decomposition(G: FiniteGroup) -> list[tuple[int, int]]:
    """Generators (element, order) realizing G as a direct sum of cyclic groups."""
    if not G.is_abelian():
        raise ValueError("group is not abelian")
    if G.order == 1:
        return []
    g = max(G.elements(), key=G.element_order)
    r = G.element_order(g)
    cyc = set(G.subgroup_generated([g]).members)
    if r == G.order:
        return [(g, r)]
    target = G.order // r
    complement = None
    elems = [x for x in G.elements() if x != 0]
    from itertools import combinations
    for size in range(1, 4):
        for combo in combinations(elems, size):
            K = G.subgroup_generated(combo)
            if K.order == target and all(x == 0 or x not in cyc for x in K.members):
                complement = K
                break
        if complement is not None:
            break
    if complement is None:
        raise ValueError("no direct complement found (group too large?)")
    Kgrp, members = group_view(complement)
    inner = abelian_cyclic_decomposition(Kgrp)
    return [(g, r)] + [(members[h], order) for h, order in inner]


def abelian_irreducibles(G: FiniteGroup) -> list[ClassFunction]:
    """All 1-dimensional characters, ordered lexicographically by exponents."""
    decomp = abelian_cyclic_decomposition(G)
    # Factor every element over the generators (orders are small).
    from itertools import product as iproduct
    ranges = [range(r) for (_, r) in decomp]
    factor: dict[int, tuple[int, ...]] = {}
    for exps in iproduct(*ranges):
        elem = G.product([G.power(g, e) for (g, _), e in zip(decomp, exps)])
        if elem in factor:
            raise AssertionError("decomposition is not a direct sum")
        factor[elem] = exps
    if len(factor) != G.order:
        raise AssertionError("decomposition does not cover the group")
    chars = []
    for ks in iproduct(*ranges):
        def value(g: int, ks=ks) -> Cyclo:
            exps = factor[g]
            acc = Cyclo.one()
            for (_, r), k, e in zip(decomp, ks, exps):
                acc = acc * root_of_unity(k * e, r)
            return acc
        chars.append(ClassFunction.from_function(G, value))
    return chars


def _one_dimensionals(G: FiniteGroup) -> list[ClassFunction]:
    """Lifts of the characters of the abelianization."""
    derived = G.derived_subgroup()
    quot, proj = G.quotient(derived)
    return [ClassFunction.from_function(G, lambda g, c=c: c(proj[g]))
            for c in abelian_irreducibles(quot)]


def _verify_table(G: FiniteGroup, table: list[ClassFunction]) -> list[ClassFunction]:
    assert sum(int(t.rank()) ** 2 for t in table) == G.order
    for i, a in enumerate(table):
        for j, b in enumerate(table):
            want = 1 if i == j else 0
            assert a.inner(b) == want, f"table not orthonormal at ({i},{j})"
    return table


_table_cache: dict[int, tuple] = {}


def irreducible_table(G: FiniteGroup) -> list[ClassFunction]:
    """The full irreducible character table, where available.

    Abelian groups are handled generically; S3, S4, D4, Q8 are built from
    their abelianizations plus permutation/regular characters.  Anything
    else raises ValueError (no general character-table algorithm here).
    """
    got = _table_cache.get(id(G))
    if got is not None and got[0] is G:
        return got[1]
    if G.is_abelian():
        table = _verify_table(G, abelian_irreducibles(G))
        _table_cache[id(G)] = (G, table)
        return table
    name = (G.name or "").lower()
    ones = _one_dimensionals(G)
    reg = ClassFunction.regular(G)
    if name in ("d4", "q8") and G.order == 8:
        rest = reg
        for c in ones:
            rest = rest - c
        two = rest.scale(Fraction(1, 2))
        table = _verify_table(G, ones + [two])
    elif name == "s3" and G.order == 6:
        rest = reg
        for c in ones:
            rest = rest - c
        table = _verify_table(G, ones + [rest.scale(Fraction(1, 2))])
    elif name == "s4" and G.order == 24:
        triv = ClassFunction.trivial(G)
        sign = next(c for c in ones if c != triv)
        std = ClassFunction.permutation(G) - triv
        assert std.inner(std) == 1
        stdsign = std.tensor(sign)
        rest = reg - triv - sign - std.scale(3) - stdsign.scale(3)
        two = rest.scale(Fraction(1, 2))
        table = _verify_table(G, [triv, sign, std, stdsign, two])
    else:
        raise ValueError(f"no irreducible table available for {G!r}")
    _table_cache[id(G)] = (G, table)
    return table


def has_irreducible_table(G: FiniteGroup) -> bool:
    try:
        irreducible_table(G)
        return True
    except ValueError:
        return False
