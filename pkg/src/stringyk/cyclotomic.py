"""Exact arithmetic in cyclotomic fields Q(zeta_N) with rational coefficients.

Elements are stored in the power basis 1, z, ..., z^(phi(N)-1) of
Q[x]/Phi_N(x), where z = exp(2*pi*i/N).  All arithmetic is exact; there is
no floating-point fallback.  Mixed-conductor operations embed both operands
into the lcm of their conductors.  Conductor reduction (finding the minimal
cyclotomic subfield containing a value) is done on demand, not after every
operation.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Optional, Union

Rational = Union[int, Fraction]
_ZERO = Fraction(0)
_ONE = Fraction(1)


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    count = 0
    for k in range(1, n + 1):
        if gcd(k, n) == 1:
            count += 1
    return count


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    return tuple(d for d in range(1, n + 1) if n % d == 0)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, ascending degree, monic."""
    # Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, by exact polynomial division.
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    for d in divisors(n)[:-1]:
        den = cyclotomic_polynomial(d)
        num = _int_poly_div(num, list(den))
    return tuple(num)


def _int_poly_div(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (den monic, remainder zero)."""
    num = list(num)
    dn, dd = len(num) - 1, len(den) - 1
    out = [0] * (dn - dd + 1)
    for i in range(dn - dd, -1, -1):
        q = num[i + dd]
        out[i] = q
        if q:
            for j, c in enumerate(den):
                num[i + j] -= q * c
    assert all(c == 0 for c in num), "non-exact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def _reduction_rows(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Row k - phi(n) expresses x^k (k >= phi(n), k < n) in the power basis."""
    phi = euler_phi(n)
    poly = cyclotomic_polynomial(n)
    rows: list[tuple[Fraction, ...]] = []
    # x^phi == -(poly[0] + ... + poly[phi-1] x^(phi-1)); higher powers by shifting.
    for k in range(phi, n):
        if k == phi:
            row = [Fraction(-poly[i]) for i in range(phi)]
        else:
            prev = rows[-1]
            shifted = [_ZERO] + list(prev[:-1])
            top = prev[-1]
            if top:
                base = rows[0]
                row = [shifted[i] + top * base[i] for i in range(phi)]
            else:
                row = shifted
        rows.append(tuple(row))
    return tuple(rows)


@lru_cache(maxsize=None)
def _zeta_power(n: int, k: int) -> tuple[Fraction, ...]:
    """Coefficient vector of zeta_n^k in the power basis of conductor n."""
    k %= n
    phi = euler_phi(n)
    if k < phi:
        vec = [_ZERO] * phi
        vec[k] = _ONE
        return tuple(vec)
    return _reduction_rows(n)[k - phi]


def _reduce_mod_phi(coeffs: list[Fraction], n: int) -> tuple[Fraction, ...]:
    """Reduce a coefficient list of any length modulo Phi_n."""
    # x^k == x^(k mod n) mod (x^n - 1), and Phi_n divides x^n - 1.
    phi = euler_phi(n)
    out = list(coeffs[:phi]) + [_ZERO] * max(0, phi - len(coeffs))
    for k in range(phi, len(coeffs)):
        c = coeffs[k]
        if c:
            for i, r in enumerate(_zeta_power(n, k % n)):
                if r:
                    out[i] += c * r
    return tuple(out)


@lru_cache(maxsize=None)
def _embedding(n: int, m: int) -> tuple[tuple[Fraction, ...], ...]:
    """Images of the conductor-n power basis inside conductor m (n | m)."""
    assert m % n == 0
    step = m // n
    return tuple(_zeta_power(m, step * i) for i in range(euler_phi(n)))


class Cyclo:
    """An element of the cyclotomic field Q(zeta_N), exact."""

    __slots__ = ("n", "c")

    def __init__(self, n: int, coeffs):
        self.n = n
        self.c = tuple(Fraction(x) for x in coeffs)
        assert len(self.c) == euler_phi(n)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_rational(q: Rational) -> "Cyclo":
        return Cyclo(1, (Fraction(q),))

    @staticmethod
    def zero() -> "Cyclo":
        return Cyclo(1, (_ZERO,))

    @staticmethod
    def one() -> "Cyclo":
        return Cyclo(1, (_ONE,))

    # -- basics ------------------------------------------------------------

    def __bool__(self) -> bool:
        return any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def try_rational(self) -> Optional[Fraction]:
        """The rational value, or None if the element is irrational."""
        if self.is_rational():
            return self.c[0]
        return None

    def rational_value(self) -> Fraction:
        q = self.try_rational()
        if q is None:
            raise ValueError(f"not a rational value: {self}")
        return q

    def at_conductor(self, m: int) -> "Cyclo":
        """Embed into Q(zeta_m); requires n | m."""
        if m == self.n:
            return self
        if m % self.n != 0:
            raise ValueError(f"conductor {self.n} does not divide {m}")
        emb = _embedding(self.n, m)
        out = [_ZERO] * euler_phi(m)
        for i, ci in enumerate(self.c):
            if ci:
                for j, e in enumerate(emb[i]):
                    if e:
                        out[j] += ci * e
        return Cyclo(m, out)

    def reduced(self) -> "Cyclo":
        """Rewrite at the minimal conductor among divisors of the current one."""
        if self.n == 1:
            return self
        if self.is_rational():
            return Cyclo(1, (self.c[0],))
        for d in divisors(self.n)[1:-1]:
            coords = _subfield_coords(self.n, d, self.c)
            if coords is not None:
                return Cyclo(d, coords)
        return self

    # -- arithmetic ---------------------------------------------------------

    def _pair(self, other) -> tuple["Cyclo", "Cyclo"]:
        if not isinstance(other, Cyclo):
            other = Cyclo.from_rational(other)
        if self.n == other.n:
            return self, other
        m = self.n * other.n // gcd(self.n, other.n)
        return self.at_conductor(m), other.at_conductor(m)

    def __add__(self, other) -> "Cyclo":
        a, b = self._pair(other)
        return Cyclo(a.n, tuple(x + y for x, y in zip(a.c, b.c)))

    __radd__ = __add__

    def __neg__(self) -> "Cyclo":
        return Cyclo(self.n, tuple(-x for x in self.c))

    def __sub__(self, other) -> "Cyclo":
        a, b = self._pair(other)
        return Cyclo(a.n, tuple(x - y for x, y in zip(a.c, b.c)))

    def __rsub__(self, other) -> "Cyclo":
        return (-self) + other

    def __mul__(self, other) -> "Cyclo":
        if isinstance(other, (int, Fraction)):
            return Cyclo(self.n, tuple(x * other for x in self.c))
        a, b = self._pair(other)
        if a.is_rational():
            return Cyclo(b.n, tuple(a.c[0] * y for y in b.c))
        if b.is_rational():
            return Cyclo(a.n, tuple(b.c[0] * x for x in a.c))
        prod = [_ZERO] * (2 * len(a.c) - 1)
        for i, x in enumerate(a.c):
            if x:
                for j, y in enumerate(b.c):
                    if y:
                        prod[i + j] += x * y
        return Cyclo(a.n, _reduce_mod_phi(prod, a.n))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclo":
        """Multiplicative inverse; raises ZeroDivisionError on zero."""
        if not self:
            raise ZeroDivisionError("inverse of zero cyclotomic element")
        if self.is_rational():
            return Cyclo(1, (1 / self.c[0],))
        inv = _poly_inverse_mod(self.c, self.n)
        return Cyclo(self.n, inv)

    def __truediv__(self, other) -> "Cyclo":
        if not isinstance(other, Cyclo):
            other = Cyclo.from_rational(other)
        return self * other.inverse()

    def __rtruediv__(self, other) -> "Cyclo":
        return Cyclo.from_rational(other) * self.inverse()

    def galois(self, t: int) -> "Cyclo":
        """Apply the field automorphism zeta -> zeta^t (gcd(t, n) must be 1)."""
        if gcd(t, self.n) != 1:
            raise ValueError(f"{t} is not coprime to conductor {self.n}")
        out = [_ZERO] * euler_phi(self.n)
        for i, ci in enumerate(self.c):
            if ci:
                vec = _zeta_power(self.n, (t * i) % self.n)
                for j, v in enumerate(vec):
                    if v:
                        out[j] += ci * v
        return Cyclo(self.n, out)

    def conjugate(self) -> "Cyclo":
        """Complex conjugation, zeta_n -> zeta_n^(n-1)."""
        if self.n == 1:
            return self
        return self.galois(self.n - 1)

    # -- comparison / hashing ------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.c[0] == other
        if not isinstance(other, Cyclo):
            return NotImplemented
        a, b = self._pair(other)
        return a.c == b.c

    def __ne__(self, other) -> bool:
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __hash__(self) -> int:
        r = self.reduced()
        return hash((r.n, r.c))

    # -- text form ------------------------------------------------------------

    def __repr__(self) -> str:
        return f"Cyclo({self.literal()!r})"

    def __str__(self) -> str:
        return self.literal()

    def literal(self) -> str:
        """Render in the model-file literal grammar, e.g. '1/2*z(3)^1 - 1'."""
        r = self.reduced()
        if r.n == 1:
            return str(r.c[0])
        terms = []
        for i, ci in enumerate(r.c):
            if not ci:
                continue
            if i == 0:
                body = str(abs(ci))
            else:
                mag = abs(ci)
                head = "" if mag == 1 else f"{mag}*"
                body = f"{head}z({r.n})^{i}"
            sign = "-" if ci < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


@lru_cache(maxsize=None)
def _subfield_basis(n: int, d: int) -> tuple[tuple[Fraction, ...], ...]:
    """Power basis of Q(zeta_d) embedded at conductor n (d | n)."""
    return _embedding(d, n)


def _subfield_coords(n: int, d: int, coeffs: tuple[Fraction, ...]):
    """Coordinates of coeffs (conductor n) over Q(zeta_d), or None."""
    basis = _subfield_basis(n, d)
    phi_n, phi_d = euler_phi(n), euler_phi(d)
    # Gaussian elimination on the (phi_n x phi_d) embedding matrix.
    rows = [[basis[j][i] for j in range(phi_d)] + [coeffs[i]] for i in range(phi_n)]
    pivots = []
    r = 0
    for col in range(phi_d):
        pivot = next((i for i in range(r, phi_n) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(phi_n):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    sol = [_ZERO] * phi_d
    for i, col in enumerate(pivots):
        sol[col] = rows[i][-1]
    for i in range(r, phi_n):
        if rows[i][-1]:
            return None
    return tuple(sol)


def _poly_inverse_mod(coeffs: tuple[Fraction, ...], n: int) -> tuple[Fraction, ...]:
    """Inverse of coeffs modulo Phi_n by the extended Euclidean algorithm."""
    phi = cyclotomic_polynomial(n)
    a = [Fraction(x) for x in phi]
    b = list(coeffs)
    # Invariant: s*phi + t*b0 == b (mod nothing), tracked only through t.
    t0: list[Fraction] = [_ZERO]
    t1: list[Fraction] = [_ONE]

    def deg(p):
        for i in range(len(p) - 1, -1, -1):
            if p[i]:
                return i
        return -1

    def poly_sub_scaled(p, q, c, shift):
        out = list(p) + [_ZERO] * max(0, len(q) + shift - len(p))
        for i, x in enumerate(q):
            if x:
                out[i + shift] -= c * x
        return out

    while deg(b) > 0:
        # Divide a by b.
        q_terms = []
        ra = list(a)
        db = deg(b)
        lead_inv = 1 / b[db]
        while deg(ra) >= db:
            da = deg(ra)
            c = ra[da] * lead_inv
            q_terms.append((c, da - db))
            ra = poly_sub_scaled(ra, b, c, da - db)
        new_t = list(t0)
        for c, shift in q_terms:
            new_t = poly_sub_scaled(new_t, t1, c, shift)
        a, b = b, ra
        t0, t1 = t1, new_t
    d = deg(b)
    if d < 0:
        raise ZeroDivisionError("element is zero modulo the cyclotomic polynomial")
    scale = 1 / b[0]
    inv = [c * scale for c in t1]
    return _reduce_mod_phi(inv, n)


def root_of_unity(k: int, n: int) -> Cyclo:
    """The root of unity zeta_n^k = exp(2*pi*i*k/n), in canonical form."""
    if n < 1:
        raise ValueError("conductor must be positive")
    return Cyclo(n, _zeta_power(n, k % n)).reduced()


_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
            (?P<coef>\d+(?:/\d+)?)\s*(?:\*\s*(?P<zc>z\(\s*(?P<nc>\d+)\s*\)(?:\^(?P<kc>\d+))?))?
          | (?P<z>z\(\s*(?P<n>\d+)\s*\)(?:\^(?P<k>\d+))?)
        )\s*""",
    re.VERBOSE,
)


def parse_cyclo(text: str) -> Cyclo:
    """Parse a literal like '1/2*z(3)^1 - 1' into a Cyclo value."""
    pos = 0
    total = Cyclo.zero()
    text = text.strip()
    if not text:
        raise ValueError("empty cyclotomic literal")
    first = True
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad cyclotomic literal at {text[pos:]!r}")
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("sign") is None and not first:
            raise ValueError(f"missing +/- between terms in {text!r}")
        if m.group("coef") is not None:
            coef = Fraction(m.group("coef"))
            if m.group("zc") is not None:
                n = int(m.group("nc"))
                k = int(m.group("kc") or 1)
                term = root_of_unity(k, n) * coef
            else:
                term = Cyclo.from_rational(coef)
        else:
            n = int(m.group("n"))
            k = int(m.group("k") or 1)
            term = root_of_unity(k, n)
        total = total + term * sign
        pos = m.end()
        first = False
    return total
