"""Finite group arithmetic on explicit element tables.

Elements are indices 0..order-1 with the identity normalized to index 0.
Groups are ingested either as Cayley tables or as permutation generators
on at most 32 points; permutation input is closed into a full element list
with lexicographic indexing (which automatically puts the identity first).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

MAX_ORDER = 256
MAX_POINTS = 32


class FiniteGroup:
    """A finite group given by its multiplication table, identity at 0."""

    def __init__(self, table: Sequence[Sequence[int]], name: str = "",
                 element_names: Optional[Sequence[str]] = None,
                 permutations: Optional[Sequence[tuple[int, ...]]] = None,
                 check: bool = True):
        self.order = len(table)
        self.table = tuple(tuple(row) for row in table)
        self.name = name
        self.permutations = tuple(permutations) if permutations is not None else None
        if element_names is not None:
            self.element_names = tuple(element_names)
        elif self.permutations is not None:
            self.element_names = tuple(_cycle_notation(p) for p in self.permutations)
        else:
            self.element_names = tuple(f"g{i}" for i in range(self.order))
        if check:
            self._validate()
        self.inv = tuple(self._find_inverse(g) for g in range(self.order))
        self._classes: Optional[tuple[tuple[int, ...], ...]] = None
        self._class_of: Optional[tuple[int, ...]] = None

    def _validate(self) -> None:
        n = self.order
        if n == 0:
            raise ValueError("empty group table")
        if n > MAX_ORDER:
            raise ValueError(f"group order {n} exceeds supported bound {MAX_ORDER}")
        for row in self.table:
            if len(row) != n or any(not (0 <= x < n) for x in row):
                raise ValueError("malformed Cayley table")
        for g in range(n):
            if self.table[0][g] != g or self.table[g][0] != g:
                raise ValueError("index 0 is not a two-sided identity")
        for a in range(n):
            for b in range(n):
                ab = self.table[a][b]
                for c in range(n):
                    if self.table[ab][c] != self.table[a][self.table[b][c]]:
                        raise ValueError(
                            f"multiplication not associative at ({a},{b},{c})")
        for g in range(n):
            self._find_inverse(g)

    def _find_inverse(self, g: int) -> int:
        for h in range(self.order):
            if self.table[g][h] == 0:
                if self.table[h][g] != 0:
                    raise ValueError(f"one-sided inverse for element {g}")
                return h
        raise ValueError(f"element {g} has no inverse")

    # -- construction --------------------------------------------------------

    @staticmethod
    def from_cayley(table: Sequence[Sequence[int]], name: str = "",
                    element_names: Optional[Sequence[str]] = None) -> "FiniteGroup":
        """Build from a Cayley table, renumbering so the identity is 0."""
        n = len(table)
        identity = None
        for e in range(n):
            if all(table[e][g] == g and table[g][e] == g for g in range(n)):
                identity = e
                break
        if identity is None:
            raise ValueError("table has no two-sided identity")
        if identity != 0:
            perm = [identity] + [g for g in range(n) if g != identity]
            inv_perm = {old: new for new, old in enumerate(perm)}
            table = [[inv_perm[table[perm[a]][perm[b]]] for b in range(n)]
                     for a in range(n)]
            if element_names is not None:
                element_names = [element_names[p] for p in perm]
        return FiniteGroup(table, name=name, element_names=element_names)

    @staticmethod
    def from_permutations(generators: Sequence[Sequence[int]],
                          name: str = "") -> "FiniteGroup":
        """Close permutation generators on 0..n-1 into a full group."""
        if not generators:
            raise ValueError("need at least one permutation generator")
        npts = len(generators[0])
        if npts > MAX_POINTS:
            raise ValueError(f"permutation degree {npts} exceeds {MAX_POINTS}")
        gens = []
        for g in generators:
            p = tuple(g)
            if sorted(p) != list(range(npts)):
                raise ValueError(f"not a permutation of 0..{npts - 1}: {g}")
            gens.append(p)
        identity = tuple(range(npts))
        elements = {identity}
        frontier = [identity]
        while frontier:
            nxt = []
            for p in frontier:
                for g in gens:
                    q = tuple(g[p[i]] for i in range(npts))
                    if q not in elements:
                        elements.add(q)
                        nxt.append(q)
            frontier = nxt
            if len(elements) > MAX_ORDER:
                raise ValueError(f"closure exceeds order bound {MAX_ORDER}")
        perms = sorted(elements)
        index = {p: i for i, p in enumerate(perms)}
        table = [[index[tuple(p[q[i]] for i in range(npts))] for q in perms]
                 for p in perms]
        return FiniteGroup(table, name=name, permutations=perms, check=False)

    # -- elementary operations -------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        return self.inv[a]

    def conjugate(self, g: int, h: int) -> int:
        """h g h^-1."""
        return self.table[self.table[h][g]][self.inv[h]]

    def commutator(self, a: int, b: int) -> int:
        """a b a^-1 b^-1."""
        return self.table[self.table[self.table[a][b]][self.inv[a]]][self.inv[b]]

    def power(self, g: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv[g], -k)
        out = 0
        while k:
            if k & 1:
                out = self.table[out][g]
            g = self.table[g][g]
            k >>= 1
        return out

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.table[x][g]
            k += 1
        return k

    def elements(self) -> range:
        return range(self.order)

    def product(self, items: Iterable[int]) -> int:
        out = 0
        for x in items:
            out = self.table[out][x]
        return out

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a]
                   for a in range(self.order) for b in range(self.order))

    def __repr__(self) -> str:
        label = self.name or "FiniteGroup"
        return f"<{label} of order {self.order}>"

    # -- structure ---------------------------------------------------------------

    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        """Classes as sorted member tuples, ordered by minimal representative."""
        if self._classes is None:
            seen = [False] * self.order
            classes = []
            for g in range(self.order):
                if seen[g]:
                    continue
                cls = sorted({self.conjugate(g, h) for h in range(self.order)})
                for x in cls:
                    seen[x] = True
                classes.append(tuple(cls))
            classes.sort(key=lambda c: c[0])
            self._classes = tuple(classes)
            class_of = [0] * self.order
            for i, cls in enumerate(self._classes):
                for x in cls:
                    class_of[x] = i
            self._class_of = tuple(class_of)
        return self._classes

    def class_of(self, g: int) -> int:
        self.conjugacy_classes()
        assert self._class_of is not None
        return self._class_of[g]

    def class_representatives(self) -> tuple[int, ...]:
        return tuple(c[0] for c in self.conjugacy_classes())

    def centralizer(self, elems: Iterable[int]) -> "Subgroup":
        elems = tuple(elems)
        members = [h for h in range(self.order)
                   if all(self.table[h][g] == self.table[g][h] for g in elems)]
        return Subgroup(self, members)

    def subgroup_generated(self, gens: Iterable[int]) -> "Subgroup":
        members = {0}
        frontier = [0]
        gens = tuple(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in members:
                        members.add(y)
                        nxt.append(y)
            frontier = nxt
        return Subgroup(self, sorted(members))

    def whole_subgroup(self) -> "Subgroup":
        return Subgroup(self, range(self.order))

    def commuting_pairs(self) -> Iterator[tuple[int, int]]:
        """All (a, b) with ab = ba, in lexicographic order."""
        for a in range(self.order):
            row, col = self.table[a], [self.table[b][a] for b in range(self.order)]
            for b in range(self.order):
                if row[b] == col[b]:
                    yield (a, b)

    def derived_subgroup(self) -> "Subgroup":
        gens = {self.commutator(a, b)
                for a in range(self.order) for b in range(self.order)}
        return self.subgroup_generated(gens)

    def quotient(self, normal: "Subgroup") -> tuple["FiniteGroup", tuple[int, ...]]:
        """Quotient by a normal subgroup; returns (G/N, projection map)."""
        members = set(normal.members)
        for n in normal.members:
            for g in range(self.order):
                if self.conjugate(n, g) not in members:
                    raise ValueError("subgroup is not normal")
        coset_of: dict[int, int] = {}
        cosets: list[tuple[int, ...]] = []
        for g in range(self.order):
            if g in coset_of:
                continue
            coset = tuple(sorted(self.table[g][n] for n in normal.members))
            idx = len(cosets)
            cosets.append(coset)
            for x in coset:
                coset_of[x] = idx
        reps = [c[0] for c in cosets]
        table = [[coset_of[self.table[a][b]] for b in reps] for a in reps]
        quot = FiniteGroup.from_cayley(table, name=f"{self.name}/N" if self.name else "")
        # from_cayley may renumber; track it through the identity coset position
        ident = coset_of[0]
        if ident != 0:
            perm = [ident] + [i for i in range(len(cosets)) if i != ident]
            relabel = {old: new for new, old in enumerate(perm)}
            projection = tuple(relabel[coset_of[g]] for g in range(self.order))
        else:
            projection = tuple(coset_of[g] for g in range(self.order))
        return quot, projection


class Subgroup:
    """A subgroup of a parent group, stored as a sorted member index set."""

    def __init__(self, parent: FiniteGroup, members: Iterable[int]):
        self.parent = parent
        self.members = tuple(sorted(set(members)))
        if not self.members or self.members[0] != 0:
            raise ValueError("subgroup must contain the identity")
        mset = set(self.members)
        for a in self.members:
            if parent.inv[a] not in mset:
                raise ValueError("subgroup not closed under inversion")
            for b in self.members:
                if parent.table[a][b] not in mset:
                    raise ValueError("subgroup not closed under multiplication")

    @property
    def order(self) -> int:
        return len(self.members)

    def index(self) -> int:
        return self.parent.order // self.order

    def __contains__(self, g: int) -> bool:
        return g in set(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subgroup) and other.parent is self.parent
                and other.members == self.members)

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members))

    def __repr__(self) -> str:
        return f"<Subgroup of order {self.order} in {self.parent!r}>"

    def as_group(self) -> tuple[FiniteGroup, tuple[int, ...]]:
        """Re-index as a standalone group; returns (H, member list)."""
        pos = {g: i for i, g in enumerate(self.members)}
        table = [[pos[self.parent.table[a][b]] for b in self.members]
                 for a in self.members]
        return FiniteGroup(table, name=f"sub{self.order}", check=False), self.members

    def is_whole(self) -> bool:
        return self.order == self.parent.order

    def left_cosets(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        cosets = []
        for g in range(self.parent.order):
            if g in seen:
                continue
            coset = tuple(sorted(self.parent.table[g][h] for h in self.members))
            seen.update(coset)
            cosets.append(coset)
        return cosets


def _cycle_notation(perm: tuple[int, ...]) -> str:
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        x = perm[start]
        while x != start:
            cyc.append(x)
            seen[x] = True
            x = perm[x]
        cycles.append("(" + " ".join(str(c + 1) for c in cyc) + ")")
    return "".join(cycles) if cycles else "e"


# -- 2-cocycles -----------------------------------------------------------------


class TwoCocycle:
    """A Q*-valued function on G x G, with the 2-cocycle identity checkable."""

    def __init__(self, group: FiniteGroup, values: Sequence[Sequence[Fraction]]):
        self.group = group
        n = group.order
        if len(values) != n or any(len(row) != n for row in values):
            raise ValueError("cocycle table must be |G| x |G|")
        self.values = tuple(tuple(Fraction(v) for v in row) for row in values)
        if any(v == 0 for row in self.values for v in row):
            raise ValueError("cocycle values must be nonzero")

    def __call__(self, a: int, b: int) -> Fraction:
        return self.values[a][b]

    def is_cocycle(self) -> bool:
        """alpha(a,b) alpha(ab,c) == alpha(a,bc) alpha(b,c) for all triples."""
        G, al = self.group, self.values
        for a in range(G.order):
            for b in range(G.order):
                ab = G.table[a][b]
                for c in range(G.order):
                    if al[a][b] * al[ab][c] != al[a][G.table[b][c]] * al[b][c]:
                        return False
        return True

    def first_cocycle_violation(self) -> Optional[tuple[int, int, int]]:
        G, al = self.group, self.values
        for a in range(G.order):
            for b in range(G.order):
                ab = G.table[a][b]
                for c in range(G.order):
                    if al[a][b] * al[ab][c] != al[a][G.table[b][c]] * al[b][c]:
                        return (a, b, c)
        return None

    def epsilon(self, gamma: int, m: int) -> Fraction:
        """epsilon(gamma, m) = alpha(gamma, m) / alpha(gamma m gamma^-1, gamma)."""
        G = self.group
        return self.values[gamma][m] / self.values[G.conjugate(m, gamma)][gamma]

    def inverse_cocycle(self) -> "TwoCocycle":
        return TwoCocycle(self.group, [[1 / v for v in row] for row in self.values])

    def multiply(self, other: "TwoCocycle") -> "TwoCocycle":
        if other.group is not self.group:
            raise ValueError("cocycles live on different groups")
        return TwoCocycle(self.group,
                          [[x * y for x, y in zip(r1, r2)]
                           for r1, r2 in zip(self.values, other.values)])

    @staticmethod
    def trivial(group: FiniteGroup) -> "TwoCocycle":
        one = Fraction(1)
        return TwoCocycle(group, [[one] * group.order] * group.order)

    @staticmethod
    def from_coboundary(group: FiniteGroup, beta: Sequence[Fraction]) -> "TwoCocycle":
        """alpha(a,b) = beta(a) beta(b) / beta(ab)."""
        beta = [Fraction(b) for b in beta]
        if len(beta) != group.order or any(b == 0 for b in beta):
            raise ValueError("beta must be a nonzero function on G")
        vals = [[beta[a] * beta[b] / beta[group.table[a][b]]
                 for b in range(group.order)] for a in range(group.order)]
        return TwoCocycle(group, vals)


def is_coboundary(alpha: TwoCocycle) -> Optional[list[Fraction]]:
    """A witness beta with alpha(a,b) = beta(a)beta(b)/beta(ab), if one exists
    with values in the multiplicative subgroup generated by the values of alpha.

    The sign part is solved by GF(2) elimination.  For each prime appearing in
    the values, the exponent system e(a)+e(b)-e(ab) = v_p(a,b) has at most one
    rational solution (the only group homomorphism G -> Z is zero), which is
    accepted only if integral.
    """
    G = alpha.group
    n = G.order
    primes: set[int] = set()
    for row in alpha.values:
        for v in row:
            primes.update(_prime_factors(v.numerator))
            primes.update(_prime_factors(v.denominator))
    exponents: dict[int, list[Fraction]] = {}
    for p in sorted(primes):
        target = [[Fraction(_padic(v, p)) for v in row] for row in alpha.values]
        sol = _solve_additive(G, target)
        if sol is None or any(x.denominator != 1 for x in sol):
            return None
        exponents[p] = sol
    sign_target = [[0 if v > 0 else 1 for v in row] for row in alpha.values]
    sign_sol = _solve_additive_gf2(G, sign_target)
    if sign_sol is None:
        return None
    beta = []
    for g in range(n):
        val = Fraction(-1 if sign_sol[g] else 1)
        for p, sol in exponents.items():
            val *= Fraction(p) ** int(sol[g])
        beta.append(val)
    check = TwoCocycle.from_coboundary(G, beta)
    if check.values != alpha.values:
        return None
    return beta


def _prime_factors(m: int) -> set[int]:
    m = abs(m)
    out = set()
    d = 2
    while d * d <= m:
        while m % d == 0:
            out.add(d)
            m //= d
        d += 1
    if m > 1:
        out.add(m)
    return out


def _padic(q: Fraction, p: int) -> int:
    v = 0
    num, den = q.numerator, q.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _solve_additive(G: FiniteGroup, target: list[list[Fraction]]):
    """Solve e(a) + e(b) - e(ab) = target(a,b) over Q by elimination."""
    n = G.order
    rows = []
    for a in range(n):
        for b in range(n):
            row = [Fraction(0)] * (n + 1)
            row[a] += 1
            row[b] += 1
            row[G.table[a][b]] -= 1
            row[n] = target[a][b]
            rows.append(row)
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    sol = [Fraction(0)] * n
    seen_cols = set()
    for i in range(r):
        col = next(c for c in range(n) if rows[i][c])
        sol[col] = rows[i][n]
        seen_cols.add(col)
    for i in range(r, len(rows)):
        if rows[i][n]:
            return None
    return sol


def _solve_additive_gf2(G: FiniteGroup, target: list[list[int]]):
    """Solve s(a) xor s(b) xor s(ab) = target(a,b) over GF(2)."""
    n = G.order
    rows = []
    for a in range(n):
        for b in range(n):
            mask = (1 << a) ^ (1 << b) ^ (1 << G.table[a][b])
            rows.append((mask, target[a][b] & 1))
    basis: list[tuple[int, int]] = []
    for mask, rhs in rows:
        for bmask, brhs in basis:
            low = bmask & -bmask
            if mask & low:
                mask ^= bmask
                rhs ^= brhs
        if mask:
            basis.append((mask, rhs))
        elif rhs:
            return None
    sol = [0] * n
    for bmask, brhs in sorted(basis, key=lambda t: -(t[0] & -t[0])):
        low_bit = (bmask & -bmask).bit_length() - 1
        acc = brhs
        for j in range(n):
            if j != low_bit and (bmask >> j) & 1:
                acc ^= sol[j]
        sol[low_bit] = acc
    return sol


# -- standard groups ------------------------------------------------------------


def cyclic_group(n: int) -> FiniteGroup:
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    names = ["e"] + [f"w^{k}" if k > 1 else "w" for k in range(1, n)]
    return FiniteGroup(table, name=f"Z{n}", element_names=names, check=False)


def symmetric_group(n: int) -> FiniteGroup:
    gens: list[list[int]] = []
    if n >= 2:
        gens.append([1, 0] + list(range(2, n)))
    if n >= 3:
        gens.append(list(range(1, n)) + [0])
    if not gens:
        gens = [[0]]
    G = FiniteGroup.from_permutations(gens, name=f"S{n}")
    return G

def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon, as permutations of the vertices."""
    rot = [(i + 1) % n for i in range(n)]
    ref = [(n - i) % n for i in range(n)]
    return FiniteGroup.from_permutations([rot, ref], name=f"D{n}")


def klein_four_group() -> FiniteGroup:
    a = [1, 0, 3, 2]
    b = [2, 3, 0, 1]
    G = FiniteGroup.from_permutations([a, b], name="V4")
    return G


def quaternion_group() -> FiniteGroup:
    """Q8 as the subgroup {+-1, +-i, +-j, +-k} permuting itself by left action."""
    # Elements in order 1, -1, i, -i, j, -j, k, -k; left multiplication tables.
    mul = {
        ("1", x): x for x in ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    }
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]

    def neg(x: str) -> str:
        return x[1:] if x.startswith("-") else "-" + x

    base = {("i", "j"): "k", ("j", "k"): "i", ("k", "i"): "j"}
    for (x, y), z in list(base.items()):
        base[(y, x)] = neg(z)
    def q_mul(x: str, y: str) -> str:
        sign = 1
        if x.startswith("-"):
            sign, x = -sign, x[1:]
        if y.startswith("-"):
            sign, y = -sign, y[1:]
        if x == "1":
            out = y
        elif y == "1":
            out = x
        elif x == y:
            out, sign = "1", -sign
        else:
            out = base[(x, y)]
            if out.startswith("-"):
                sign, out = -sign, out[1:]
        return out if sign > 0 else neg(out)

    index = {nm: i for i, nm in enumerate(names)}
    table = [[index[q_mul(x, y)] for y in names] for x in names]
    return FiniteGroup(table, name="Q8", element_names=names, check=False)


def direct_product(G: FiniteGroup, H: FiniteGroup, name: str = "") -> FiniteGroup:
    n, m = G.order, H.order
    table = [[(G.table[a // m][b // m]) * m + H.table[a % m][b % m]
              for b in range(n * m)] for a in range(n * m)]
    names = [f"({G.element_names[a // m]},{H.element_names[a % m]})"
             for a in range(n * m)]
    return FiniteGroup(table, name=name or f"{G.name}x{H.name}",
                       element_names=names, check=False)


GROUP_CATALOG = {
    "z1": lambda: cyclic_group(1),
    "z2": lambda: cyclic_group(2),
    "z3": lambda: cyclic_group(3),
    "z4": lambda: cyclic_group(4),
    "z5": lambda: cyclic_group(5),
    "z6": lambda: cyclic_group(6),
    "klein4": klein_four_group,
    "v4": klein_four_group,
    "s3": lambda: symmetric_group(3),
    "s4": lambda: symmetric_group(4),
    "d4": lambda: dihedral_group(4),
    "q8": quaternion_group,
}


def group_by_name(name: str) -> FiniteGroup:
    key = name.lower()
    if key not in GROUP_CATALOG:
        raise ValueError(f"unknown group name {name!r}; "
                         f"known: {', '.join(sorted(GROUP_CATALOG))}")
    return GROUP_CATALOG[key]()


def group_from_dict(data: dict, name: str = "") -> FiniteGroup:
    """Shared TOML schema: either 'cayley' or 'permutation_generators'."""
    if "cayley" in data and "permutation_generators" in data:
        raise ValueError("give either 'cayley' or 'permutation_generators', not both")
    if "cayley" in data:
        return FiniteGroup.from_cayley(data["cayley"], name=name or data.get("name", ""))
    if "permutation_generators" in data:
        return FiniteGroup.from_permutations(data["permutation_generators"],
                                             name=name or data.get("name", ""))
    if "name" in data:
        return group_by_name(data["name"])
    raise ValueError("group section needs 'cayley', 'permutation_generators', or 'name'")
