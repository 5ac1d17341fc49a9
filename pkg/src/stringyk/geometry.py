"""Geometric backends: per-fixed-locus graded algebras, bundle data in exact
Chern coordinates, and the Chern/Todd/Riemann-Roch series machinery.

A GeometricModel indexes fixed loci by the subgroups that cut them out
(X^{m1} ∩ X^{m2} = X^{<m1,m2>}), and carries, for every nested pair of
loci, a unital pullback ring map and a linear pushforward satisfying the
projection formula.  Bundle data is expressed over a model-wide vocabulary
of named honest "atoms"; virtual classes are rational combinations of
atoms, and taking a top Chern class (or the K-theoretic Euler class)
requires the combination to reduce to a nonnegative integer one -- the
honesty certificate.  Linear models over affine space, where every Chern
class is trivial, instead certify through exact integral ranks.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from stringyk import linalg
from stringyk.groups import FiniteGroup
from stringyk.stringy_classes import LinearGAction

Vec = tuple[Fraction, ...]


class UncertifiedClassError(ValueError):
    """Raised when a top Chern class is requested of a class with no
    honesty certificate."""


class GradedAlgebra:
    """A finite graded commutative algebra with optional integration."""

    def __init__(self, labels: Sequence[str], degrees: Sequence,
                 struct: Sequence, unit: Sequence,
                 integration: Optional[Sequence] = None,
                 components: Optional[Sequence[str]] = None,
                 component_dims: Optional[dict] = None,
                 check: bool = True):
        self.labels = tuple(labels)
        self.rank = len(self.labels)
        self.degrees = tuple(Fraction(d) for d in degrees)
        self.struct = [[tuple(Fraction(x) for x in vec) for vec in row]
                       for row in struct]
        self.unit = tuple(Fraction(x) for x in unit)
        self.integration = (tuple(Fraction(x) for x in integration)
                            if integration is not None else None)
        self.components = (tuple(components) if components is not None
                           else ("U",) * self.rank)
        if component_dims is None:
            component_dims = {}
            for comp, deg in zip(self.components, self.degrees):
                cur = component_dims.get(comp, Fraction(0))
                component_dims[comp] = max(cur, deg)
        self.component_dims = {c: Fraction(d) for c, d in component_dims.items()}
        self.top_degree = max(self.degrees) if self.degrees else Fraction(0)
        if check:
            self._validate()

    def _validate(self) -> None:
        n = self.rank
        if len(self.struct) != n or any(len(row) != n for row in self.struct):
            raise ValueError("structure tensor has wrong shape")
        for row in self.struct:
            for vec in row:
                if len(vec) != n:
                    raise ValueError("structure tensor has wrong shape")
        for i in range(n):
            for j in range(n):
                if self.struct[i][j] != self.struct[j][i]:
                    raise ValueError(f"product not commutative at ({i},{j})")
                # graded: nonzero coefficients only in degree d_i + d_j
                for k, c in enumerate(self.struct[i][j]):
                    if c and self.degrees[k] != self.degrees[i] + self.degrees[j]:
                        raise ValueError(
                            f"product of {self.labels[i]},{self.labels[j]} "
                            "is not degree-additive")
        basis = [self.basis_vector(i) for i in range(n)]
        for i in range(n):
            if self.mul(self.unit, basis[i]) != basis[i]:
                raise ValueError("unit is not a left identity")
        for i in range(n):
            for j in range(n):
                ij = self.mul(basis[i], basis[j])
                for k in range(n):
                    if self.mul(ij, basis[k]) != self.mul(basis[i],
                                                          self.mul(basis[j], basis[k])):
                        raise ValueError(
                            f"product not associative at ({i},{j},{k})")
        if self.integration is not None:
            for i in range(n):
                top = self.component_dims[self.components[i]]
                if self.integration[i] and self.degrees[i] != top:
                    raise ValueError(
                        f"integration hits {self.labels[i]} below top degree")

    def basis_vector(self, i: int) -> Vec:
        return tuple(Fraction(1) if j == i else Fraction(0)
                     for j in range(self.rank))

    def zero(self) -> Vec:
        return (Fraction(0),) * self.rank

    def mul(self, x: Sequence, y: Sequence) -> Vec:
        out = [Fraction(0)] * self.rank
        for i, xi in enumerate(x):
            if xi:
                row = self.struct[i]
                for j, yj in enumerate(y):
                    if yj:
                        for k, c in enumerate(row[j]):
                            if c:
                                out[k] += xi * yj * c
        return tuple(out)

    def add(self, x: Sequence, y: Sequence) -> Vec:
        return tuple(a + b for a, b in zip(x, y))

    def scale(self, q, x: Sequence) -> Vec:
        q = Fraction(q)
        return tuple(q * a for a in x)

    def degree_part(self, x: Sequence, d) -> Vec:
        d = Fraction(d)
        return tuple(a if self.degrees[i] == d else Fraction(0)
                     for i, a in enumerate(x))

    def positive_part(self, x: Sequence) -> Vec:
        return tuple(a if self.degrees[i] > 0 else Fraction(0)
                     for i, a in enumerate(x))

    def unit_coefficient(self, x: Sequence) -> Fraction:
        # coefficient along the first basis direction the unit touches
        for i, u in enumerate(self.unit):
            if u:
                return x[i] / u
        return Fraction(0)

    def integrate(self, x: Sequence) -> Fraction:
        if self.integration is None:
            raise ValueError("algebra has no integration functional")
        return sum((a * b for a, b in zip(x, self.integration)), Fraction(0))

    def series_inverse(self, x: Sequence) -> Vec:
        """Inverse of a series whose constant term is a nonzero unit multiple."""
        pos = self.positive_part(x)
        head = tuple(a - b for a, b in zip(x, pos))
        c0 = None
        for i in range(self.rank):
            if self.unit[i]:
                c0 = head[i] / self.unit[i]
                break
        if not c0:
            raise ZeroDivisionError("series has no invertible constant term")
        if any(a - c0 * u for a, u in zip(head, self.unit)):
            raise ValueError("constant term is not a multiple of the unit")
        n = self.scale(1 / c0, pos)
        out = self.unit
        power = self.unit
        sign = 1
        for _ in range(self.rank + 1):
            power = self.mul(power, n)
            sign = -sign
            if not any(power):
                break
            out = tuple(o + sign * p for o, p in zip(out, power))
        return self.scale(1 / c0, out)

    def series_log(self, x: Sequence) -> Vec:
        """log of a series with constant term exactly 1 (the unit)."""
        n = self.positive_part(x)
        head = tuple(a - b for a, b in zip(x, n))
        if head != self.unit:
            raise ValueError("series_log needs constant term 1")
        out = self.zero()
        power = self.unit
        for j in range(1, self.rank + 2):
            power = self.mul(power, n)
            if not any(power):
                break
            out = tuple(o + Fraction((-1) ** (j + 1), j) * p
                        for o, p in zip(out, power))
        return out

    def series_exp(self, x: Sequence) -> Vec:
        """exp of a series with zero constant term."""
        if any(x[i] and self.degrees[i] == 0 for i in range(self.rank)):
            raise ValueError("series_exp needs zero constant term")
        out = self.unit
        power = self.unit
        fact = 1
        for j in range(1, self.rank + 2):
            power = self.mul(power, x)
            fact *= j
            if not any(power):
                break
            out = tuple(o + Fraction(1, fact) * p for o, p in zip(out, power))
        return out

    def series_pow(self, x: Sequence, q) -> Vec:
        """x^q for rational q, x with constant term 1."""
        q = Fraction(q)
        if q == 0:
            return self.unit
        if q.denominator == 1 and q > 0:
            out = self.unit
            for _ in range(int(q)):
                out = self.mul(out, x)
            return out
        return self.series_exp(self.scale(q, self.series_log(x)))


@lru_cache(maxsize=None)
def log_todd_coefficients(max_degree: int) -> tuple[Fraction, ...]:
    """Taylor coefficients L_1..L_max of log(t e^t / (e^t - 1))."""
    n = max_degree + 2
    # e^t - 1 = t * q(t), q = sum t^j/(j+1)!
    fact = [1]
    for j in range(1, n + 2):
        fact.append(fact[-1] * j)
    q = [Fraction(1, fact[j + 1]) for j in range(n)]
    e = [Fraction(1, fact[j]) for j in range(n)]
    # phi = e^t / q(t): series division
    phi = [Fraction(0)] * n
    for j in range(n):
        acc = e[j]
        for i in range(j):
            acc -= phi[i] * q[j - i]
        phi[j] = acc / q[0]
    # log phi
    out = [Fraction(0)] * n
    # log(1 + u) with u = phi - 1
    u = list(phi)
    u[0] = Fraction(0)
    power = [Fraction(1)] + [Fraction(0)] * (n - 1)
    logphi = [Fraction(0)] * n
    for j in range(1, n):
        # power = u^j
        new = [Fraction(0)] * n
        for a in range(n):
            if power[a]:
                for b in range(n - a):
                    if u[b]:
                        new[a + b] += power[a] * u[b]
        power = new
        coef = Fraction((-1) ** (j + 1), j)
        for a in range(n):
            logphi[a] += coef * power[a]
        if not any(power):
            break
    return tuple(logphi[1:max_degree + 1])


class Atom:
    """A named honest bundle: integer rank and a total Chern class on a home
    locus, restrictable along pullbacks."""

    def __init__(self, name: str, rank: int, home_key: tuple[int, ...],
                 chern: Vec):
        if rank < 0:
            raise ValueError(f"atom {name} has negative rank")
        self.name = name
        self.rank = int(rank)
        self.home_key = home_key
        self.chern = chern


class Combo(dict):
    """A rational combination of atoms: dict name -> Fraction."""

    def __add__(self, other: "Combo") -> "Combo":
        out = Combo(self)
        for k, v in other.items():
            out[k] = out.get(k, Fraction(0)) + v
        return Combo({k: v for k, v in out.items() if v})

    def scaled(self, q) -> "Combo":
        q = Fraction(q)
        return Combo({k: q * v for k, v in self.items() if q * v})

    def __neg__(self) -> "Combo":
        return self.scaled(-1)

    def __sub__(self, other: "Combo") -> "Combo":
        return self + (-other)

    def is_honest(self) -> bool:
        return all(v.denominator == 1 and v >= 0 for v in self.values())

    def is_zero(self) -> bool:
        return not any(self.values())


class GeometricModel:
    """Pluggable per-fixed-locus data feeding the stringy ring builders."""

    def __init__(self, group: FiniteGroup, name: str = "",
                 proper: bool = True, grading_mode: str = "chow",
                 dim_x: int = 0, trivial_chern: bool = False):
        self.group = group
        self.name = name
        self.proper = proper
        if grading_mode not in ("chow", "topological"):
            raise ValueError("grading_mode must be 'chow' or 'topological'")
        self.grading_mode = grading_mode
        self.dim_x = dim_x
        self.trivial_chern = trivial_chern
        self.loci: dict[tuple[int, ...], GradedAlgebra] = {}
        self.pullbacks: dict[tuple, list] = {}
        self.pushforwards: dict[tuple, list] = {}
        self.rho: dict[tuple, list] = {}       # (gamma, key) -> matrix
        self.sigma: dict[int, list] = {}        # m -> matrix on locus(<m>)
        self.atoms: dict[str, Atom] = {}
        self.tangent_combo: dict[tuple[int, ...], Combo] = {}
        self.eigen: dict[int, dict[int, Combo]] = {}
        self.obstruction_certificates: dict[tuple, Combo] = {}
        self._key_cache: dict[tuple, tuple[int, ...]] = {}
        self._linear_action: Optional[LinearGAction] = None

    # -- indexing -----------------------------------------------------------------

    def locus_key(self, elements: Iterable[int]) -> tuple[int, ...]:
        elems = tuple(sorted(set(elements) | {0}))
        cached = self._key_cache.get(elems)
        if cached is None:
            cached = self.group.subgroup_generated(elems).members
            self._key_cache[elems] = cached
        return cached

    def sector_key(self, m: int) -> tuple[int, ...]:
        return self.locus_key([m])

    def algebra(self, key: tuple[int, ...]) -> GradedAlgebra:
        return self.loci[key]

    def sector_algebra(self, m: int) -> GradedAlgebra:
        return self.loci[self.sector_key(m)]

    # -- maps ---------------------------------------------------------------------

    def pullback(self, key_small: tuple, key_big: tuple, x: Sequence) -> Vec:
        """Restrict a class on X^{K_small} to the deeper locus X^{K_big}."""
        if key_small == key_big:
            return tuple(x)
        return tuple(linalg.mat_vec(self.pullbacks[(key_small, key_big)], list(x)))

    def pushforward(self, key_small: tuple, key_big: tuple, x: Sequence) -> Vec:
        """Push a class on X^{K_big} forward to X^{K_small}."""
        if key_small == key_big:
            return tuple(x)
        return tuple(linalg.mat_vec(self.pushforwards[(key_small, key_big)], list(x)))

    def act(self, gamma: int, key: tuple, x: Sequence) -> tuple[Vec, tuple]:
        target = self.locus_key([self.group.conjugate(g, gamma) for g in key])
        if gamma == 0:
            return tuple(x), target
        mat = self.rho[(gamma, key)]
        return tuple(linalg.mat_vec(mat, list(x))), target

    def sigma_apply(self, m: int, x: Sequence) -> Vec:
        mat = self.sigma.get(m)
        if mat is None:
            return tuple(x)
        return tuple(linalg.mat_vec(mat, list(x)))

    # -- atoms and characteristic classes -------------------------------------------

    def atom_chern_at(self, name: str, key: tuple) -> Vec:
        atom = self.atoms[name]
        return self.pullback(atom.home_key, key, atom.chern)

    def atom_power_sums(self, name: str, key: tuple, top: int) -> list[Vec]:
        """Newton power sums p_1..p_top of the Chern roots, at the locus."""
        alg = self.loci[key]
        c = self.atom_chern_at(name, key)
        e = [alg.degree_part(c, d) for d in range(top + 1)]
        p: list[Vec] = [alg.zero()] * (top + 1)
        for k in range(1, top + 1):
            acc = alg.scale(Fraction((-1) ** (k - 1) * k), e[k]) \
                if k < len(e) else alg.zero()
            for i in range(1, k):
                term = alg.mul(e[k - i], p[i])
                acc = alg.add(acc, alg.scale(Fraction((-1) ** (k - i - 1)), term))
            p[k] = acc
        return p

    def combo_rank(self, combo: Combo) -> Fraction:
        return sum((q * self.atoms[name].rank for name, q in combo.items()),
                   Fraction(0))

    def combo_todd(self, combo: Combo, key: tuple) -> Vec:
        alg = self.loci[key]
        top = int(alg.top_degree) if alg.top_degree == int(alg.top_degree) else 0
        if self.trivial_chern or top == 0:
            return alg.unit
        L = log_todd_coefficients(top)
        logtd = alg.zero()
        for name, q in combo.items():
            p = self.atom_power_sums(name, key, top)
            for j in range(1, top + 1):
                logtd = alg.add(logtd, alg.scale(q * L[j - 1], p[j]))
        return alg.series_exp(logtd)

    def combo_chern_character(self, combo: Combo, key: tuple) -> Vec:
        alg = self.loci[key]
        top = int(alg.top_degree)
        out = alg.scale(self.combo_rank(combo), alg.unit)
        if self.trivial_chern or top == 0:
            return out
        sums: dict[int, Vec] = {}
        for name, q in combo.items():
            p = self.atom_power_sums(name, key, top)
            for j in range(1, top + 1):
                cur = sums.get(j, alg.zero())
                sums[j] = alg.add(cur, alg.scale(q, p[j]))
        fact = 1
        for j in range(1, top + 1):
            fact *= j
            if j in sums:
                out = alg.add(out, alg.scale(Fraction(1, fact), sums[j]))
        return out

    def combo_total_chern(self, combo: Combo, key: tuple) -> Vec:
        alg = self.loci[key]
        out = alg.unit
        for name, q in combo.items():
            c = self.atom_chern_at(name, key)
            out = alg.mul(out, alg.series_pow(c, q))
        return out

    def combo_c_top(self, combo: Combo, key: tuple, context: str = "") -> Vec:
        """Top Chern class; requires an honest (nonneg integer) combination."""
        alg = self.loci[key]
        if combo.is_zero():
            return alg.unit
        if not combo.is_honest():
            raise UncertifiedClassError(
                f"no honesty certificate for {dict(combo)} {context}")
        out = alg.unit
        for name, q in combo.items():
            atom = self.atoms[name]
            c = self.atom_chern_at(name, key)
            ctop = alg.degree_part(c, atom.rank)
            for _ in range(int(q)):
                out = alg.mul(out, ctop)
        return out

    def combo_k_euler_class(self, combo: Combo, key: tuple,
                            context: str = "") -> Vec:
        """Ch(lambda_-1(dual)) = c_top * td^{-1}, for an honest combination."""
        alg = self.loci[key]
        ctop = self.combo_c_top(combo, key, context)
        if self.trivial_chern or combo.is_zero():
            return ctop
        td = self.combo_todd(combo, key)
        return alg.mul(ctop, alg.series_inverse(td))

    # -- stringy ingredients -----------------------------------------------------

    def eigen_pieces(self, m: int) -> dict[int, Combo]:
        if m == 0:
            return {0: Combo(self.tangent_combo[self.locus_key([])])}
        return self.eigen[m]

    def s_combo(self, m: int) -> Combo:
        r = self.group.element_order(m)
        out = Combo()
        for k, piece in self.eigen_pieces(m).items():
            if k:
                out = out + piece.scaled(Fraction(k, r))
        return out

    def age(self, m: int) -> Fraction:
        return self.combo_rank(self.s_combo(m))

    def restricted_tangent_combo(self, m: int) -> Combo:
        """TX restricted to X^m, expanded through the eigen pieces of m."""
        out = Combo()
        for piece in self.eigen_pieces(m).values():
            out = out + piece
        return out

    def obstruction_combo(self, m1: int, m2: int) -> Combo:
        """R(m1, m2, (m1 m2)^-1) as an atom combination, reduced."""
        G = self.group
        m3 = G.inv[G.table[m1][m2]]
        cert = self.obstruction_certificates.get((m1, m2))
        if cert is not None:
            return cert
        key = self.locus_key([m1, m2])
        ref = next((m for m in (m1, m2, m3) if m != 0), 0)
        combo = Combo(self.tangent_combo[key]) - self.restricted_tangent_combo(ref)
        for mi in (m1, m2, m3):
            combo = combo + self.s_combo(mi)
        if self._linear_action is not None and not combo.is_honest():
            # affine-space backend: trivial Chern data, exact integral rank
            rank = self.combo_rank(combo)
            if rank.denominator != 1 or rank < 0:
                raise UncertifiedClassError(
                    f"obstruction rank {rank} is not a nonnegative integer")
            return Combo() if rank == 0 else Combo({"__rank__": rank})
        return combo

    def obstruction_c_top(self, m1: int, m2: int) -> Vec:
        combo = self.obstruction_combo(m1, m2)
        key = self.locus_key([m1, m2])
        if "__rank__" in combo:
            # positive-rank honest bundle over affine space: c_top vanishes
            return self.loci[key].zero()
        return self.combo_c_top(combo, key,
                                context=f"(obstruction for ({m1},{m2}))")

    def obstruction_k_euler(self, m1: int, m2: int) -> Vec:
        combo = self.obstruction_combo(m1, m2)
        key = self.locus_key([m1, m2])
        if "__rank__" in combo:
            return self.loci[key].zero()
        return self.combo_k_euler_class(combo, key,
                                        context=f"(obstruction for ({m1},{m2}))")

    def trace_class_combo(self, a: int, b: int) -> Combo:
        """TX^{<a,b>} + S_{[a,b]} restricted there (honest by the theory)."""
        key = self.locus_key([a, b])
        m = self.group.commutator(a, b)
        return Combo(self.tangent_combo[key]) + self.s_combo(m)

    # -- calculus -----------------------------------------------------------------

    def euler_characteristic(self, key: tuple, chern_vector: Sequence) -> Fraction:
        """chi(X^K, F) by Hirzebruch-Riemann-Roch on exact series."""
        alg = self.loci[key]
        if alg.integration is None:
            raise ValueError("model is not proper; no Euler characteristics")
        td = self.combo_todd(Combo(self.tangent_combo[key]), key)
        return alg.integrate(alg.mul(tuple(chern_vector), td))

    def topological_euler(self, key: tuple) -> Fraction:
        """chi_top(X^K) = integral of c_top of the tangent."""
        alg = self.loci[key]
        if alg.integration is None:
            raise ValueError("model is not proper")
        ctop = self.combo_c_top(Combo(self.tangent_combo[key]), key,
                                context="(tangent)")
        return alg.integrate(ctop)

    def grr_pushforward(self, key_small: tuple, key_big: tuple,
                        x: Sequence) -> Vec:
        """Push a Chern-coordinate class along X^{K_big} -> X^{K_small}."""
        if key_small == key_big:
            return tuple(x)
        alg_big = self.loci[key_big]
        if self.trivial_chern:
            return self.pushforward(key_small, key_big, x)
        td_sub = self.combo_todd(Combo(self.tangent_combo[key_big]), key_big)
        td_amb = self.combo_todd(Combo(self.tangent_combo[key_small]), key_small)
        td_amb_res = self.pullback(key_small, key_big, td_amb)
        rel = alg_big.mul(td_sub, alg_big.series_inverse(td_amb_res))
        return self.pushforward(key_small, key_big, alg_big.mul(tuple(x), rel))

    # -- validation ----------------------------------------------------------------

    def validate(self) -> None:
        G = self.group
        for (ks, kb), mat in self.pullbacks.items():
            alg_s, alg_b = self.loci[ks], self.loci[kb]
            if tuple(linalg.mat_vec(mat, list(alg_s.unit))) != alg_b.unit:
                raise ValueError(f"pullback {ks}->{kb} is not unital")
            for i in range(alg_s.rank):
                for j in range(alg_s.rank):
                    lhs = linalg.mat_vec(mat, list(alg_s.mul(
                        alg_s.basis_vector(i), alg_s.basis_vector(j))))
                    rhs = alg_b.mul(
                        tuple(linalg.mat_vec(mat, list(alg_s.basis_vector(i)))),
                        tuple(linalg.mat_vec(mat, list(alg_s.basis_vector(j)))))
                    if tuple(lhs) != rhs:
                        raise ValueError(f"pullback {ks}->{kb} is not a ring map")
            push = self.pushforwards.get((ks, kb))
            if push is None:
                raise ValueError(f"missing pushforward for pair {ks}->{kb}")
            for i in range(alg_b.rank):
                x = alg_b.basis_vector(i)
                for j in range(alg_s.rank):
                    y = alg_s.basis_vector(j)
                    lhs = linalg.mat_vec(push, list(alg_b.mul(
                        x, self.pullback(ks, kb, y))))
                    rhs = alg_s.mul(
                        tuple(linalg.mat_vec(push, list(x))), y)
                    if tuple(lhs) != rhs:
                        raise ValueError(
                            f"projection formula fails for {ks}->{kb} "
                            f"at basis ({i},{j})")
        # rho is an action compatible with conjugation relabeling
        for g in G.elements():
            if g == 0:
                continue
            for key in self.loci:
                if (g, key) not in self.rho:
                    raise ValueError(f"missing action of {g} on locus {key}")
        for g in G.elements():
            for h in G.elements():
                gh = G.table[g][h]
                for key in self.loci:
                    alg = self.loci[key]
                    for i in range(alg.rank):
                        v, mid = self.act(h, key, alg.basis_vector(i))
                        w, fin = self.act(g, mid, v)
                        u, fin2 = self.act(gh, key, alg.basis_vector(i))
                        if fin != fin2 or w != u:
                            raise ValueError(
                                f"action is not a homomorphism at ({g},{h}) "
                                f"on locus {key}")
        # the action relabels nested locus pairs compatibly with the maps
        for g in G.elements():
            if g == 0:
                continue
            for (k1, k2) in self.pullbacks:
                t1 = self.locus_key([G.conjugate(x, g) for x in k1])
                t2 = self.locus_key([G.conjugate(x, g) for x in k2])
                if t1 != t2 and (t1, t2) not in self.pullbacks:
                    raise ValueError(
                        f"action of {g} has no conjugated map pair for "
                        f"{k1}->{k2}")
                alg1 = self.loci[k1]
                for i in range(alg1.rank):
                    v = alg1.basis_vector(i)
                    lhs, _ = self.act(g, k2, self.pullback(k1, k2, v))
                    moved, _ = self.act(g, k1, v)
                    rhs = self.pullback(t1, t2, moved)
                    if lhs != rhs:
                        raise ValueError(
                            f"pullback {k1}->{k2} is not equivariant "
                            f"under {g}")
                alg2 = self.loci[k2]
                for i in range(alg2.rank):
                    v = alg2.basis_vector(i)
                    lhs, _ = self.act(g, k1, self.pushforward(k1, k2, v))
                    moved, _ = self.act(g, k2, v)
                    rhs = self.pushforward(t1, t2, moved)
                    if lhs != rhs:
                        raise ValueError(
                            f"pushforward {k1}->{k2} is not equivariant "
                            f"under {g}")
        # sigma is an involution exchanging sectors m and m^-1, commuting
        # with the sector relabeling action
        for m in G.elements():
            mat = self.sigma.get(m)
            if mat is None:
                continue
            minv = G.inv[m]
            alg = self.sector_algebra(m)
            twice = [self.sigma_apply(minv, self.sigma_apply(m, alg.basis_vector(i)))
                     for i in range(alg.rank)]
            if twice != [alg.basis_vector(i) for i in range(alg.rank)]:
                raise ValueError(f"sigma squared is not the identity at sector {m}")
            key = self.sector_key(m)
            for g in G.elements():
                if g == 0:
                    continue
                cm = G.conjugate(m, g)
                for i in range(alg.rank):
                    v = alg.basis_vector(i)
                    lhs, _ = self.act(g, key, self.sigma_apply(m, v))
                    moved, _ = self.act(g, key, v)
                    rhs = self.sigma_apply(cm, moved)
                    if lhs != rhs:
                        raise ValueError(
                            f"sigma does not commute with the action of {g} "
                            f"at sector {m}")
        # eigen data: pieces refine the restricted tangent bundle
        for m in G.elements():
            if m == 0:
                continue
            pieces = self.eigen.get(m)
            if pieces is None:
                raise ValueError(f"missing eigen data for element {m}")
            r = G.element_order(m)
            if any(k < 0 or k >= r for k in pieces):
                raise ValueError(f"eigen labels out of range for element {m}")
            total = Combo()
            for piece in pieces.values():
                if not piece.is_honest():
                    raise ValueError(f"eigen pieces of {m} must be honest")
                total = total + piece
            if self.combo_rank(total) != self.dim_x:
                raise ValueError(
                    f"eigen pieces of {m} do not fill the tangent space")
            key = self.sector_key(m)
            lhs = self.combo_total_chern(total, key)
            rhs = self.pullback(self.locus_key([]), key,
                                self.combo_total_chern(
                                    Combo(self.tangent_combo[self.locus_key([])]),
                                    self.locus_key([])))
            if lhs != rhs:
                raise ValueError(
                    f"eigen pieces of {m} have wrong total Chern class")
            # fixed part matches the tangent of the fixed locus
            fixed = pieces.get(0, Combo())
            tloc = Combo(self.tangent_combo[key])
            if self.combo_rank(fixed) != self.combo_rank(tloc) or \
                    self.combo_total_chern(fixed, key) != \
                    self.combo_total_chern(tloc, key):
                raise ValueError(
                    f"k=0 eigen piece of {m} differs from the fixed tangent")
            # sigma compatibility: W_{m^-1, k} ~ W_{m, r-k}
            minv = G.inv[m]
            inv_pieces = self.eigen.get(minv)
            if inv_pieces is None:
                raise ValueError(f"missing eigen data for inverse of {m}")
            for k in range(1, r):
                a = pieces.get(k, Combo())
                b = inv_pieces.get(r - k, Combo())
                if self.combo_rank(a) != self.combo_rank(b) or \
                        self.combo_total_chern(a, key) != \
                        self.combo_total_chern(b, key):
                    raise ValueError(
                        f"eigen data of {m} and its inverse are not "
                        f"sigma-compatible at k={k}")
