import math
import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from nonnorm.arith import (
    MAX_MODULUS,
    carmichael,
    crt,
    factorize,
    is_prime,
    mod_pow,
    multiplicative_order,
    primitive_root,
    qth_power_residue_test,
    sqrt_mod,
    totient,
    unit_group,
)
from nonnorm.errors import ArgumentError


def test_mod_pow_examples():
    assert mod_pow(3, 8, 17) == 16
    assert mod_pow(5, 0, 12) == 1
    assert mod_pow(2, 1092, 1093**2) == 1
    with pytest.raises(ArgumentError):
        mod_pow(2, 3, 1)


def test_mod_pow_rejects_huge_modulus():
    with pytest.raises(ArgumentError):
        mod_pow(2, 3, MAX_MODULUS + 1)


def test_is_prime_examples():
    assert is_prime(17)
    assert not is_prime(119)
    assert is_prime(1021)
    assert not is_prime(1)


def test_is_prime_matches_sympy_small():
    for x in range(1, 20000):
        assert is_prime(x) == sympy.isprime(x), x


@settings(max_examples=300)
@given(st.integers(min_value=1, max_value=2**64 - 1))
def test_is_prime_matches_sympy_64bit(x):
    assert is_prime(x) == sympy.isprime(x)


def test_is_prime_strong_pseudoprimes():
    # strong pseudoprimes to several small bases
    for n in (3215031751, 2152302898747, 3474749660383, 341550071728321, 3825123056546413051):
        assert not is_prime(n)
    assert is_prime(2**61 - 1)
    assert is_prime(18446744073709551557)


def test_factorize_examples():
    assert factorize(119) == [(7, 1), (17, 1)]
    assert factorize(81) == [(3, 4)]
    assert factorize(187) == [(11, 1), (17, 1)]
    with pytest.raises(ArgumentError):
        factorize(1)


@settings(max_examples=200)
@given(st.integers(min_value=2, max_value=2**62))
def test_factorize_matches_sympy(x):
    assert factorize(x) == sorted(sympy.factorint(x).items())


def test_factorize_semiprime_above_trial_limit():
    p, q = 1000003, 1000033
    assert factorize(p * q) == [(p, 1), (q, 1)]


def test_multiplicative_order_examples():
    assert multiplicative_order(2, 9) == 6
    assert multiplicative_order(1, 35) == 1
    assert multiplicative_order(3, 128) == 32
    with pytest.raises(ArgumentError):
        multiplicative_order(3, 9)


def test_multiplicative_order_divides_lambda():
    rng = random.Random(7)
    for m in range(2, 2000):
        lam = unit_group(m).lam
        for _ in range(20):
            a = rng.randrange(1, m + 1)
            if math.gcd(a, m) != 1:
                continue
            r = multiplicative_order(a, m)
            assert lam % r == 0
            assert r == sympy.n_order(a, m)


def test_primitive_root_examples():
    assert primitive_root(17) == 3
    assert primitive_root(3) == 2
    assert primitive_root(7) == 3
    for bad in (8, 15, 2, 1):
        with pytest.raises(ArgumentError):
            primitive_root(bad)


def test_primitive_root_has_full_order():
    for m in range(3, 2000):
        pp = factorize(m)
        if len(pp) != 1 or pp[0][0] == 2:
            continue
        c = primitive_root(m)
        assert multiplicative_order(c, m) == totient(m)
        assert all(multiplicative_order(d, m) != totient(m) for d in range(2, c) if math.gcd(d, m) == 1)


def test_qth_power_examples():
    assert qth_power_residue_test(2, 3, 7) is False
    assert qth_power_residue_test(5, 2, 17) is False
    assert qth_power_residue_test(2, 2, 7) is True
    with pytest.raises(ArgumentError):
        qth_power_residue_test(2, 3, 9)
    with pytest.raises(ArgumentError):
        qth_power_residue_test(7, 3, 7)


def test_qth_power_modes_agree():
    for p in sympy.primerange(2, 500):
        for q in (2, 3, 5, 7):
            for a in range(1, p):
                assert qth_power_residue_test(a, q, p) == qth_power_residue_test(a, q, p, "bruteforce")


def test_carmichael_identity():
    for m in range(2, 2000):
        lam = carmichael(m)
        assert lam == sympy.reduced_totient(m)
        for a in range(1, m):
            if math.gcd(a, m) == 1:
                assert mod_pow(a, lam, m) == 1


def test_unit_group_examples():
    g = unit_group(17)
    assert g.component_orders == (16,) and g.lam == 16
    g = unit_group(128)
    assert g.component_orders == (2, 32) and g.generators == (127, 3) and g.lam == 32
    g = unit_group(119)
    assert g.component_orders == (6, 16) and g.lam == 48


@pytest.mark.parametrize("m", list(range(2, 300)) + [1000, 2047, 4096, 9991])
def test_unit_group_structure(m):
    g = unit_group(m)
    assert math.prod(g.component_orders) == totient(m)
    assert g.lam == math.lcm(*g.component_orders)
    for gen, order in zip(g.generators, g.component_orders):
        assert multiplicative_order(gen, m) == order
    elems = list(g.elements())
    assert len(elems) == len(set(elems)) == totient(m)
    assert {e % m for e in elems} == {a % m for a in range(1, m + 1) if math.gcd(a, m) == 1}


def test_unit_group_unique_representation_exhaustive():
    for m in range(2, 10**4, 37):
        g = unit_group(m)
        elems = list(g.elements())
        assert len(set(elems)) == totient(m)


@given(st.integers(min_value=3, max_value=10**6))
def test_sqrt_mod(p):
    p = sympy.nextprime(p)
    a = (p // 3) % p or 1
    if pow(a, (p - 1) // 2, p) == 1:
        r = sqrt_mod(a, p)
        assert r * r % p == a


def test_crt():
    assert crt([2, 3], [3, 5]) == 8
    assert crt([3, 3], [32, 17]) % 32 == 3
