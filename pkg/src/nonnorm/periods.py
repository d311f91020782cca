"""Exact cyclotomic arithmetic, Gaussian periods and Galois orbits.

A :class:`CyclotomicInt` is ``A(zeta_m) + omega * B(zeta_m)`` with integer
polynomials A, B reduced modulo the m-th cyclotomic polynomial, omega being
i or zeta_3 depending on the base ring.  When 4 does not divide m (resp. 3
does not divide m) this is exact arithmetic in the ring of integers of
Q(zeta_m, base).
"""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from importlib import resources

import numpy as np

from .arith import factorize, totient
from .errors import ArgumentError, DegeneratePeriodError
from .quadring import QuadInt, Ring


def _divisors(m):
    divs = [1]
    for p, e in factorize(m):
        divs = [d * p**j for d in divs for j in range(e + 1)]
    return sorted(divs)


def _poly_divexact(num, den):
    # exact division of integer polynomials (ascending coefficients), den monic
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + dn]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m):
    """Coefficients of the m-th cyclotomic polynomial, constant term first."""
    if m < 1:
        raise ArgumentError("m must be positive")
    poly = [-1] + [0] * (m - 1) + [1]
    if m == 1:
        return tuple(poly)
    for d in _divisors(m)[:-1]:
        poly = _poly_divexact(poly, cyclotomic_poly(d))
    return tuple(poly)


def _reduce(poly, m):
    """Reduce an integer polynomial modulo x**m - 1 and then Phi_m."""
    phi = cyclotomic_poly(m)
    deg = len(phi) - 1
    if len(poly) > m:
        folded = [0] * m
        for j, c in enumerate(poly):
            folded[j % m] += c
        poly = folded
    poly = list(poly) + [0] * max(0, deg - len(poly))
    for i in range(len(poly) - 1, deg - 1, -1):
        c = poly[i]
        if c:
            base = i - deg
            for j in range(deg):
                poly[base + j] -= c * phi[j]
    return tuple(poly[:deg])


def _polymul(x, y):
    if not any(x) or not any(y):
        return [0]
    out = [0] * (len(x) + len(y) - 1)
    for i, a in enumerate(x):
        if a:
            for j, b in enumerate(y):
                out[i + j] += a * b
    return out


@dataclass(frozen=True)
class CyclotomicInt:
    m: int
    a: tuple
    b: tuple
    ring: Ring = Ring.GAUSSIAN

    # constructors

    @classmethod
    def zero(cls, m, ring=Ring.GAUSSIAN):
        deg = totient(m)
        return cls(m, (0,) * deg, (0,) * deg, ring)

    @classmethod
    def from_quadint(cls, m, x, ring=None):
        if isinstance(x, int):
            x = QuadInt(x, 0, ring or Ring.GAUSSIAN)
        ring = x.ring
        z = cls.zero(m, ring)
        if not z.a:
            return z
        return cls(m, (x.a,) + z.a[1:], (x.b,) + z.b[1:], ring)

    @classmethod
    def from_exponents(cls, m, exponents, ring=Ring.GAUSSIAN):
        """Sum of zeta_m**e over ``exponents`` (repeats allowed)."""
        poly = [0] * m
        for e in exponents:
            poly[e % m] += 1
        return cls(m, _reduce(poly, m), (0,) * totient(m), ring)

    @classmethod
    def from_coeffs(cls, m, coeffs, ring=Ring.GAUSSIAN):
        """Build from a list of QuadInt (or int) coefficients of zeta**j."""
        qs = [c if isinstance(c, QuadInt) else QuadInt(c, 0, ring) for c in coeffs]
        return cls(m, _reduce([q.a for q in qs], m), _reduce([q.b for q in qs], m), ring)

    # arithmetic

    def _check(self, other):
        if self.m != other.m or self.ring is not other.ring:
            raise ArgumentError("operands live in different rings")

    def _lift(self, other):
        if isinstance(other, CyclotomicInt):
            self._check(other)
            return other
        if isinstance(other, (int, QuadInt)):
            return CyclotomicInt.from_quadint(self.m, other if isinstance(other, QuadInt) else QuadInt(other, 0, self.ring))
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return CyclotomicInt(
            self.m,
            tuple(x + y for x, y in zip(self.a, other.a)),
            tuple(x + y for x, y in zip(self.b, other.b)),
            self.ring,
        )

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInt(self.m, tuple(-x for x in self.a), tuple(-x for x in self.b), self.ring)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        m = self.m
        ac = _polymul(self.a, other.a)
        bd = _polymul(self.b, other.b)
        ad = _polymul(self.a, other.b)
        bc = _polymul(self.b, other.a)
        size = max(len(ac), len(bd), len(ad), len(bc))
        pad = lambda p: p + [0] * (size - len(p))  # noqa: E731
        ac, bd, ad, bc = pad(ac), pad(bd), pad(ad), pad(bc)
        re = [x - y for x, y in zip(ac, bd)]
        if self.ring is Ring.GAUSSIAN:
            im = [x + y for x, y in zip(ad, bc)]
        else:
            im = [x + y - z for x, y, z in zip(ad, bc, bd)]
        return CyclotomicInt(m, _reduce(re, m), _reduce(im, m), self.ring)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ArgumentError("negative power")
        out = CyclotomicInt.from_quadint(self.m, QuadInt(1, 0, self.ring))
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def galois(self, c):
        """Apply zeta -> zeta**c (the base ring is fixed)."""
        m = self.m
        if math.gcd(c, m) != 1:
            raise ArgumentError(f"{c} is not a unit modulo {m}")
        pa, pb = [0] * m, [0] * m
        for j, (x, y) in enumerate(zip(self.a, self.b)):
            k = j * c % m
            pa[k] += x
            pb[k] += y
        return CyclotomicInt(m, _reduce(pa, m), _reduce(pb, m), self.ring)

    # inspection

    @property
    def coeffs(self):
        return [QuadInt(x, y, self.ring) for x, y in zip(self.a, self.b)]

    def is_zero(self):
        return not any(self.a) and not any(self.b)

    def is_constant(self):
        return not any(self.a[1:]) and not any(self.b[1:])

    def constant(self):
        if not self.is_constant():
            raise ArgumentError("element is not in the base ring")
        if not self.a:
            return QuadInt(0, 0, self.ring)
        return QuadInt(self.a[0], self.b[0], self.ring)

    def __complex__(self):
        return cyc_eval(self)

    def to_dict(self):
        return {"m": self.m, "ring": self.ring.value, "a": list(self.a), "b": list(self.b)}


def cyc_eval(x):
    """Evaluate at zeta_m = exp(2*pi*i/m) in binary64 (Horner).

    Absolute error is roughly deg * max|coeff| * 1e-15.
    """
    z = cmath.exp(2j * cmath.pi / x.m)
    acc_a = acc_b = 0j
    for ca, cb in zip(reversed(x.a), reversed(x.b)):
        acc_a = acc_a * z + ca
        acc_b = acc_b * z + cb
    return acc_a + x.ring.omega * acc_b


def period_exponents(M, n, c):
    """Exponents c**(n*i) mod M, i < phi(M)/n, of the degree-n Gaussian period."""
    phi = totient(M)
    if n < 1 or phi % n:
        raise ArgumentError(f"{n} does not divide phi({M})={phi}")
    step = pow(c, n, M)
    out, x = [], 1
    for _ in range(phi // n):
        out.append(x)
        x = x * step % M
    return out


def gaussian_period(M, n, c, ring=Ring.GAUSSIAN):
    """eta = sum_i zeta_M**(c**(n*i)) for an odd prime power M and primitive root c."""
    pp = factorize(M) if M >= 2 else []
    if len(pp) != 1 or pp[0][0] == 2:
        raise ArgumentError(f"{M} is not an odd prime power")
    return CyclotomicInt.from_exponents(M, period_exponents(M, n, c), ring)


@dataclass(frozen=True)
class PeriodOrbit:
    """The conjugates sigma**a(eta), a = 0..n-1, as exponent lists over zeta_conductor.

    ``generator`` is the residue c with sigma(zeta) = zeta**c.
    """

    conductor: int
    ring: Ring
    generator: int
    exponents: tuple
    label: str = ""
    composite: bool = False
    ordered: bool = True

    @property
    def n(self):
        return len(self.exponents)

    @cached_property
    def sigma_images(self):
        return [CyclotomicInt.from_exponents(self.conductor, e, self.ring) for e in self.exponents]

    @property
    def eta(self):
        return self.sigma_images[0]

    @cached_property
    def complex_orbit(self):
        m = self.conductor
        return [sum(cmath.exp(2j * cmath.pi * (e % m) / m) for e in exps) for exps in self.exponents]

    @property
    def roots_of_unity(self):
        """True when every conjugate is a single root of unity."""
        return all(len(e) == 1 for e in self.exponents)

    def apply_generator(self, x):
        return x.galois(self.generator)

    def permuted(self, perm):
        """Same conjugates, rows reordered (no longer in sigma order)."""
        perm = list(perm)
        if sorted(perm) != list(range(self.n)):
            raise ArgumentError(f"{perm} is not a permutation of 0..{self.n - 1}")
        return PeriodOrbit(
            self.conductor,
            self.ring,
            self.generator,
            tuple(self.exponents[i] for i in perm),
            self.label + f" permuted{perm}",
            self.composite,
            ordered=perm == list(range(self.n)),
        )

    def check_distinct(self, tol=1e-6):
        vals = self.complex_orbit
        for i in range(len(vals)):
            for j in range(i):
                if abs(vals[i] - vals[j]) <= tol:
                    raise DegeneratePeriodError(f"conjugates {j} and {i} of {self.label or 'eta'} coincide")

    def to_dict(self):
        return {
            "label": self.label,
            "ring": self.ring.value,
            "conductor": self.conductor,
            "generator": self.generator,
            "n": self.n,
            "eta": "sum-of-periods" if self.composite else "gaussian-period",
            "exponents": [list(e) for e in self.exponents],
        }


def galois_orbit(plan):
    """Orbit of eta under the plan's Galois generator.

    eta is the sum over the plan's prime factors of each factor's Gaussian
    period (a single period when one prime carries the whole degree).
    """
    ring = plan.base.kind
    m = plan.conductor
    c = plan.generator
    eta = []
    for ff in plan.factor_fields:
        scale = m // ff.conductor
        if ff.prime == 2:
            exps = [1, ff.conductor - 1]
        else:
            exps = period_exponents(ff.conductor, ff.degree, ff.generator)
        eta.extend(e * scale % m for e in exps)
    if not eta:
        eta = [0]
    orbit, cur = [], eta
    for _ in range(plan.n):
        orbit.append(tuple(cur))
        cur = [e * c % m for e in cur]
    label = f"{plan.base.name} n={plan.n} m={plan.m}"
    result = PeriodOrbit(m, ring, c, tuple(orbit), label, plan.composite)
    result.check_distinct()
    return result


def vandermonde(orbit, exact=False):
    """Matrix with row a equal to the powers 0..n-1 of sigma**a(eta).

    Returns a complex ndarray, or with ``exact=True`` nested lists of
    CyclotomicInt.
    """
    n = orbit.n
    if exact:
        rows = []
        for x in orbit.sigma_images:
            row, cur = [], CyclotomicInt.from_quadint(orbit.conductor, QuadInt(1, 0, orbit.ring))
            for _ in range(n):
                row.append(cur)
                cur = cur * x
            rows.append(row)
        return rows
    vals = np.array(orbit.complex_orbit, dtype=complex)
    return np.vander(vals, n, increasing=True)


def load_reference_orbit(name):
    """Orbits printed for previously published codes (not built from periods)."""
    data = json.loads(resources.files("nonnorm").joinpath("data/reference_orbits.json").read_text())
    try:
        entry = data[name]
    except KeyError:
        raise ArgumentError(f"unknown reference orbit {name!r}; have {sorted(data)}") from None
    m, c = entry["conductor"], entry["generator"]
    exps, cur = [], list(entry["eta"])
    for _ in range(entry["n"]):
        exps.append(tuple(cur))
        cur = [e * c % m for e in cur]
    return PeriodOrbit(m, Ring(entry["ring"]), c, tuple(exps), name)


def reference_orbit_names():
    data = json.loads(resources.files("nonnorm").joinpath("data/reference_orbits.json").read_text())
    return sorted(data)


def printed_reference_pairs(name):
    data = json.loads(resources.files("nonnorm").joinpath("data/reference_orbits.json").read_text())
    return [tuple(p) for p in data[name]["printed"]]
