"""Arithmetic in Z[i] and Z[zeta_3], prime splitting and residue fields."""
from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .arith import is_prime, sqrt_mod
from .errors import ArgumentError, RamifiedPrimeError


class Ring(enum.Enum):
    GAUSSIAN = "gaussian"
    EISENSTEIN = "eisenstein"

    @property
    def ramified_prime(self):
        return 2 if self is Ring.GAUSSIAN else 3

    @property
    def omega(self):
        """Complex value of the ring generator."""
        if self is Ring.GAUSSIAN:
            return 1j
        return complex(-0.5, math.sqrt(3) / 2)

    @property
    def symbol(self):
        return "i" if self is Ring.GAUSSIAN else "w"

    def splits(self, p):
        if self is Ring.GAUSSIAN:
            return p % 4 == 1
        return p % 3 == 1


@dataclass(frozen=True)
class QuadInt:
    """The element a + b*omega of Z[i] (omega**2 = -1) or Z[zeta_3] (omega**2 = -omega - 1)."""

    a: int
    b: int = 0
    ring: Ring = Ring.GAUSSIAN

    def _coerce(self, other):
        if isinstance(other, QuadInt):
            if other.ring is not self.ring:
                raise ArgumentError("mixed rings")
            return other
        if isinstance(other, int):
            return QuadInt(other, 0, self.ring)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadInt(self.a + other.a, self.b + other.b, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return QuadInt(-self.a, -self.b, self.ring)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadInt(self.a - other.a, self.b - other.b, self.ring)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.a, self.b, other.a, other.b
        if self.ring is Ring.GAUSSIAN:
            return QuadInt(a * c - b * d, a * d + b * c, self.ring)
        return QuadInt(a * c - b * d, a * d + b * c - b * d, self.ring)

    __rmul__ = __mul__

    def __pow__(self, e):
        out = QuadInt(1, 0, self.ring)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conj(self):
        if self.ring is Ring.GAUSSIAN:
            return QuadInt(self.a, -self.b, self.ring)
        return QuadInt(self.a - self.b, -self.b, self.ring)

    def norm(self):
        a, b = self.a, self.b
        if self.ring is Ring.GAUSSIAN:
            return a * a + b * b
        return a * a - a * b + b * b

    def __complex__(self):
        return self.a + self.b * self.ring.omega

    def __bool__(self):
        return bool(self.a or self.b)

    def __str__(self):
        if self == SQRT_MINUS_3:
            return "sqrt-3"
        if self.b == 0:
            return str(self.a)
        sym = self.ring.symbol
        coef = {1: "", -1: "-"}.get(self.b, str(self.b))
        if self.a == 0:
            return f"{coef}{sym}"
        sign = "+" if self.b > 0 else "-"
        mag = abs(self.b)
        return f"{self.a}{sign}{'' if mag == 1 else mag}{sym}"


SQRT_MINUS_3 = QuadInt(1, 2, Ring.EISENSTEIN)
if SQRT_MINUS_3 * SQRT_MINUS_3 != QuadInt(-3, 0, Ring.EISENSTEIN):  # pragma: no cover
    raise ImportError("1+2w does not square to -3")

_QUAD_RE = re.compile(r"^\s*([+-]?\d+)?\s*(?:([+-])\s*(\d*)\s*([iw]))?\s*$")


def parse_quadint(text, ring=None):
    """Parse ``a+bi``, ``a+bw`` or the literal ``sqrt-3``."""
    text = text.strip().replace(" ", "")
    if text in ("sqrt-3", "sqrt(-3)"):
        if ring is Ring.GAUSSIAN:
            raise ArgumentError("sqrt-3 is not a Gaussian integer")
        return SQRT_MINUS_3
    m = _QUAD_RE.match(text)
    if not m or (m.group(1) is None and m.group(2) is None):
        # bare "i", "-2i"
        m2 = re.match(r"^([+-]?)(\d*)([iw])$", text)
        if not m2:
            raise ArgumentError(f"cannot parse {text!r}")
        sign, mag, sym = m2.groups()
        b = int(mag or 1) * (-1 if sign == "-" else 1)
        a = 0
    else:
        a = int(m.group(1) or 0)
        if m.group(2) is None:
            b, sym = 0, None
        else:
            b = int(m.group(3) or 1) * (-1 if m.group(2) == "-" else 1)
            sym = m.group(4)
    inferred = {"i": Ring.GAUSSIAN, "w": Ring.EISENSTEIN, None: None}[sym]
    if ring is None:
        ring = inferred or Ring.GAUSSIAN
    elif inferred is not None and inferred is not ring:
        raise ArgumentError(f"{text!r} does not belong to the {ring.value} ring")
    return QuadInt(a, b, ring)


def _units(ring):
    if ring is Ring.GAUSSIAN:
        return [QuadInt(1, 0, ring), QuadInt(0, 1, ring), QuadInt(-1, 0, ring), QuadInt(0, -1, ring)]
    w = QuadInt(0, 1, ring)
    return [s * w**k for s in (1, -1) for k in range(3)]


@dataclass(frozen=True)
class SplitResult:
    split: bool
    a: Optional[int] = None
    b: Optional[int] = None


def _check_unramified(p, ring):
    if p == ring.ramified_prime:
        raise RamifiedPrimeError(f"{p} ramifies in the {ring.value} ring")
    if p == 2 or not is_prime(p):
        raise ArgumentError(f"{p} is not an odd prime")


def split_prime(p, ring=Ring.GAUSSIAN):
    """Decide whether ``p`` splits; if so return a generator a+b*omega of norm p.

    Uses Cornacchia's algorithm and normalises to a > 0, b > 0 with a minimal.
    """
    _check_unramified(p, ring)
    if not ring.splits(p):
        return SplitResult(False)
    d = 1 if ring is Ring.GAUSSIAN else 3
    # x^2 + d*y^2 = p
    r = sqrt_mod(-d, p)
    if r < p // 2:
        r = p - r
    x, y = p, r
    limit = math.isqrt(p)
    while y > limit:
        x, y = y, x % y
    rest = p - y * y
    t = math.isqrt(rest // d)
    if rest % d or t * t * d != rest:
        raise ArithmeticError(f"Cornacchia failed for p={p}")
    base = QuadInt(y, t, ring) if ring is Ring.GAUSSIAN else QuadInt(y + t, 2 * t, ring)
    candidates = [u * g for g in (base, base.conj()) for u in _units(ring)]
    best = min((c for c in candidates if c.a > 0 and c.b > 0), key=lambda c: (c.a, c.b))
    assert best.norm() == p
    return SplitResult(True, best.a, best.b)


class ResidueField:
    """O/P for a prime P above an unramified rational prime p.

    Degree-one fields hold integers mod p, ``omega_image`` being the image of
    omega.  Degree-two fields hold pairs (u, v) = u + v*x modulo x**2 + 1
    (Gaussian) or x**2 + x + 1 (Eisenstein).
    """

    def __init__(self, p, ring, f, omega_image=None, embedding=None):
        self.p = p
        self.ring = ring
        self.f = f
        self.omega_image = omega_image
        self.embedding = embedding

    def __repr__(self):
        if self.f == 1:
            return f"ResidueField(p={self.p}, {self.ring.value}, omega->{self.omega_image})"
        return f"ResidueField(p={self.p}^2, {self.ring.value})"

    @property
    def size(self):
        return self.p**self.f

    @property
    def one(self):
        return 1 if self.f == 1 else (1, 0)

    def element(self, x):
        if self.f == 1:
            return x % self.p
        if isinstance(x, int):
            return (x % self.p, 0)
        return (x[0] % self.p, x[1] % self.p)

    def is_zero(self, x):
        return x == (0 if self.f == 1 else (0, 0))

    def mul(self, x, y):
        p = self.p
        if self.f == 1:
            return x * y % p
        (a, b), (c, d) = x, y
        if self.ring is Ring.GAUSSIAN:
            return ((a * c - b * d) % p, (a * d + b * c) % p)
        return ((a * c - b * d) % p, (a * d + b * c - b * d) % p)

    def pow(self, x, e):
        if self.f == 1:
            return pow(x, e, self.p)
        out, base = self.one, x
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def nonzero_elements(self):
        p = self.p
        if self.f == 1:
            return range(1, p)
        return [(u, v) for u in range(p) for v in range(p) if u or v]


def residue_field(p, ring=Ring.GAUSSIAN, embedding="first"):
    """Residue field at a prime above ``p``.

    For split p, ``first`` picks the smaller image of omega and ``second``
    the other root; inert primes ignore ``embedding``.
    """
    _check_unramified(p, ring)
    if not ring.splits(p):
        return ResidueField(p, ring, 2)
    if embedding not in ("first", "second"):
        raise ArgumentError(f"unknown embedding {embedding!r}")
    if ring is Ring.GAUSSIAN:
        t = sqrt_mod(-1, p)
        roots = sorted((t, p - t))
    else:
        s = sqrt_mod(-3, p)
        inv2 = (p + 1) // 2
        roots = sorted(((-1 + s) * inv2 % p, (-1 - s) * inv2 % p))
    t = roots[0] if embedding == "first" else roots[1]
    return ResidueField(p, ring, 1, t, embedding)


def reduce(x, K):
    """Image of ``x`` in the residue field ``K``."""
    if x.ring is not K.ring:
        raise ArgumentError("element and residue field use different rings")
    if x.norm() % K.p == 0:
        raise ArgumentError(f"{x} lies in a prime above {K.p}")
    if K.f == 1:
        return (x.a + x.b * K.omega_image) % K.p
    return (x.a % K.p, x.b % K.p)


@lru_cache(maxsize=256)
def _qth_powers(p, ring, f, omega_image, q):
    K = ResidueField(p, ring, f, omega_image)
    return frozenset(K.pow(y, q) for y in K.nonzero_elements())


def ff_is_qth_power(alpha, q, K, mode="exponent"):
    """Is the nonzero field element ``alpha`` a q-th power in ``K``?"""
    alpha = K.element(alpha)
    if K.is_zero(alpha):
        raise ArgumentError("zero has no multiplicative class")
    order = K.size - 1
    if mode == "exponent":
        return K.pow(alpha, order // math.gcd(q, order)) == K.one
    if mode == "bruteforce":
        if K.size >= 10**6:
            raise ArgumentError(f"field of size {K.size} too large to enumerate")
        return alpha in _qth_powers(K.p, K.ring, K.f, K.omega_image, q)
    raise ArgumentError(f"unknown mode {mode!r}")
