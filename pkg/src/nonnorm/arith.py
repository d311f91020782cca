"""Integer and modular arithmetic primitives.

Everything here is pure and deterministic.  Moduli are limited to the
signed 64-bit range; Python integers never overflow, but the bound keeps
the contracts (and the cost of factoring) honest.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache, reduce

from .errors import ArgumentError

MAX_MODULUS = 1 << 63
MAX_PRIMALITY = 1 << 64
TRIAL_LIMIT = 10**6

# Deterministic for every n < 3.3e24, which covers the 64-bit range.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def _check_modulus(m):
    if m < 2:
        raise ArgumentError(f"modulus must be >= 2, got {m}")
    if m >= MAX_MODULUS:
        raise ArgumentError(f"modulus {m} exceeds the supported 63-bit range")


def mod_pow(base, exp, modulus):
    """Return ``base**exp % modulus`` by square-and-multiply."""
    _check_modulus(modulus)
    if exp < 0:
        raise ArgumentError("negative exponent")
    return pow(base, exp, modulus)


def is_prime(x):
    """Deterministic Miller-Rabin for 1 <= x <= 2**64."""
    if x > MAX_PRIMALITY:
        raise ArgumentError(f"{x} is outside the deterministic range")
    if x < 2:
        return False
    for p in _SMALL_PRIMES:
        if x % p == 0:
            return x == p
    d, r = x - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        y = pow(a, d, x)
        if y == 1 or y == x - 1:
            continue
        for _ in range(r - 1):
            y = y * y % x
            if y == x - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n):
    # n is odd, composite, and has no factor below TRIAL_LIMIT
    for c in range(1, 100):
        y, m, g, r, q = 2, 128, 1, 1, 1
        f = lambda v: (v * v + c) % n  # noqa: E731
        while g == 1:
            x = y
            for _ in range(r):
                y = f(y)
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = f(y)
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = f(ys)
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"Pollard rho failed on {n}")


def _split(n, out):
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_brent(n)
    _split(d, out)
    _split(n // d, out)


@lru_cache(maxsize=4096)
def _factorize_cached(x):
    out = {}
    n = x
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 5
    # wheel over 6k +- 1
    while d <= TRIAL_LIMIT and d * d <= n:
        for p in (d, d + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        d += 6
    if n > 1:
        if d * d > n:
            out[n] = out.get(n, 0) + 1
        else:
            _split(n, out)
    return tuple(sorted(out.items()))


def factorize(x):
    """Return the factorization of ``x`` as ascending ``(prime, exponent)`` pairs."""
    if x < 2:
        raise ArgumentError(f"cannot factor {x}")
    if x >= MAX_PRIMALITY:
        raise ArgumentError(f"{x} exceeds the supported 64-bit range")
    return list(_factorize_cached(x))


def prime_power(m):
    """Return ``(p, e)`` if ``m == p**e`` for a prime p, else None."""
    if m < 2:
        return None
    f = factorize(m)
    return f[0] if len(f) == 1 else None


def _phi_pp(p, e):
    return (p - 1) * p ** (e - 1)


def _lambda_pp(p, e):
    if p == 2 and e >= 3:
        return 1 << (e - 2)
    return _phi_pp(p, e)


def totient(m):
    if m == 1:
        return 1
    return math.prod(_phi_pp(p, e) for p, e in factorize(m))


def carmichael(m):
    """Group exponent of (Z/m)*."""
    if m == 1:
        return 1
    return reduce(math.lcm, (_lambda_pp(p, e) for p, e in factorize(m)), 1)


def multiplicative_order(a, m):
    """Smallest r >= 1 with a**r == 1 (mod m).

    Starts from the Carmichael exponent and strips prime factors, so the
    cost is logarithmic in the order rather than linear.
    """
    _check_modulus(m)
    a %= m
    if math.gcd(a, m) != 1:
        raise ArgumentError(f"{a} is not a unit modulo {m}")
    order = carmichael(m)
    if order == 1:
        return 1
    for p, _ in factorize(order):
        while order % p == 0 and pow(a, order // p, m) == 1:
            order //= p
    return order


def primitive_root(m):
    """Smallest primitive root modulo an odd prime power ``m``."""
    pp = prime_power(m) if m >= 2 else None
    if pp is None or pp[0] == 2:
        raise ArgumentError(f"{m} is not an odd prime power")
    phi = totient(m)
    primes = [p for p, _ in factorize(phi)] if phi > 1 else []
    for c in range(2, m):
        if math.gcd(c, m) != 1:
            continue
        if all(pow(c, phi // q, m) != 1 for q in primes):
            return c
    # m == 3 has root 2, so the loop always returns for m >= 3
    raise AssertionError("unreachable")


def qth_power_residue_test(a, q, p, mode="exponent"):
    """Is ``a`` a q-th power modulo the prime ``p``?"""
    if not is_prime(p):
        raise ArgumentError(f"{p} is not prime")
    if not is_prime(q):
        raise ArgumentError(f"{q} is not prime")
    a %= p
    if a == 0:
        raise ArgumentError("zero residue")
    if mode == "exponent":
        return pow(a, (p - 1) // math.gcd(q, p - 1), p) == 1
    if mode == "bruteforce":
        if p >= TRIAL_LIMIT:
            raise ArgumentError(f"p={p} too large to enumerate")
        return a in _qth_powers(q, p)
    raise ArgumentError(f"unknown mode {mode!r}")


@lru_cache(maxsize=256)
def _qth_powers(q, p):
    return frozenset(pow(y, q, p) for y in range(1, p))


def sqrt_mod(a, p):
    """A square root of ``a`` modulo an odd prime, or None (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    s, q = 0, p - 1
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def crt(residues, moduli):
    """Combine pairwise-coprime congruences; returns the residue mod the product."""
    x, mod = 0, 1
    for r, n in zip(residues, moduli):
        # x + mod*k == r (mod n)
        k = (r - x) * pow(mod, -1, n) % n if n > 1 else 0
        x += mod * k
        mod *= n
    return x % mod


@dataclass(frozen=True)
class UnitGroup:
    """Cyclic decomposition of (Z/m)*.

    ``generators[j]`` has order ``component_orders[j]``; trivial components
    (from a factor 2) are omitted.
    """

    modulus: int
    component_orders: tuple
    generators: tuple
    lam: int

    @property
    def order(self):
        return math.prod(self.component_orders)

    def elements(self):
        """Every unit, as products of generator powers (order of enumeration is fixed)."""
        out = [1]
        for g, k in zip(self.generators, self.component_orders):
            powers = [pow(g, j, self.modulus) for j in range(k)]
            out = [x * y % self.modulus for x in out for y in powers]
        return out


def unit_group(m):
    _check_modulus(m)
    parts = [(p, e, p**e) for p, e in factorize(m)]
    moduli = [pe for _, _, pe in parts]
    orders, gens = [], []

    def lift(idx, value):
        # value modulo parts[idx], 1 modulo every other part
        return crt([value if j == idx else 1 for j in range(len(parts))], moduli)

    for idx, (p, e, pe) in enumerate(parts):
        if p == 2:
            if e == 2:
                orders.append(2)
                gens.append(lift(idx, 3))
            elif e >= 3:
                orders.extend((2, 1 << (e - 2)))
                gens.extend((lift(idx, pe - 1), lift(idx, 3)))
        else:
            orders.append(_phi_pp(p, e))
            gens.append(lift(idx, primitive_root(pe)))
    lam = reduce(math.lcm, orders, 1)
    return UnitGroup(m, tuple(orders), tuple(gens), lam)
