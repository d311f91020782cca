import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from nonnorm.errors import ArgumentError, RamifiedPrimeError
from nonnorm.quadring import (
    SQRT_MINUS_3,
    QuadInt,
    Ring,
    ff_is_qth_power,
    parse_quadint,
    reduce,
    residue_field,
    split_prime,
)

G, E = Ring.GAUSSIAN, Ring.EISENSTEIN
small = st.integers(min_value=-10**6, max_value=10**6)


@given(small, small, small, small, st.sampled_from([G, E]))
def test_norm_multiplicative(a, b, c, d, ring):
    x, y = QuadInt(a, b, ring), QuadInt(c, d, ring)
    assert (x * y).norm() == x.norm() * y.norm()


@given(small, small, small, small, st.sampled_from([G, E]))
def test_conjugation_is_ring_map(a, b, c, d, ring):
    x, y = QuadInt(a, b, ring), QuadInt(c, d, ring)
    assert (x * y).conj() == x.conj() * y.conj()
    assert (x + y).conj() == x.conj() + y.conj()
    assert x.conj().conj() == x
    assert x * x.conj() == QuadInt(x.norm(), 0, ring)


@given(small, small, st.sampled_from([G, E]))
def test_complex_mirror(a, b, ring):
    x = QuadInt(a, b, ring)
    assert abs(abs(complex(x)) ** 2 - x.norm()) <= 1e-9 * max(1, x.norm())


def test_norm_formulas():
    assert QuadInt(3, 4, G).norm() == 25
    assert QuadInt(3, 4, E).norm() == 9 - 12 + 16
    assert SQRT_MINUS_3 * SQRT_MINUS_3 == QuadInt(-3, 0, E)
    assert SQRT_MINUS_3.norm() == 3


def test_parse_and_str():
    assert parse_quadint("1+1i") == QuadInt(1, 1, G)
    assert parse_quadint("2+1i") == QuadInt(2, 1, G)
    assert parse_quadint("sqrt-3") == SQRT_MINUS_3
    assert str(QuadInt(1, 1, G)) == "1+i"
    assert str(SQRT_MINUS_3) == "sqrt-3"
    with pytest.raises(ArgumentError):
        parse_quadint("banana")


def test_split_prime_examples():
    r = split_prime(17, G)
    assert r.split and (r.a, r.b) == (1, 4)
    assert not split_prime(3, G).split
    r = split_prime(13, G)
    assert (r.a, r.b) == (2, 3)
    with pytest.raises(RamifiedPrimeError):
        split_prime(2, G)
    with pytest.raises(RamifiedPrimeError):
        split_prime(3, E)


@pytest.mark.parametrize("ring", [G, E])
def test_split_prime_all_small(ring):
    for p in sympy.primerange(5, 3000):
        r = split_prime(p, ring)
        assert r.split == ring.splits(p)
        assert r.split == (p % (4 if ring is G else 3) == 1)
        if r.split:
            assert QuadInt(r.a, r.b, ring).norm() == p
            assert r.a > 0 and r.b > 0


def test_residue_field_examples():
    K = residue_field(17, G, "first")
    assert K.f == 1 and K.omega_image == 4
    assert residue_field(17, G, "second").omega_image == 13
    assert residue_field(17, E).f == 2
    with pytest.raises(RamifiedPrimeError):
        residue_field(2, G)
    with pytest.raises(RamifiedPrimeError):
        residue_field(3, E)


@pytest.mark.parametrize("ring", [G, E])
def test_residue_field_omega(ring):
    for p in sympy.primerange(5, 500):
        K = residue_field(p, ring)
        assert K.size == p**K.f
        if K.f == 1:
            t = K.omega_image
            if ring is G:
                assert t * t % p == p - 1
            else:
                assert (t * t + t + 1) % p == 0
            assert residue_field(p, ring, "second").omega_image > t


def test_reduce_examples():
    g = QuadInt(1, 1, G)
    assert reduce(g, residue_field(17, G, "first")) == 5
    assert reduce(g, residue_field(17, G, "second")) == 14
    with pytest.raises(ArgumentError):
        reduce(QuadInt(0, 0, G), residue_field(17, G))
    with pytest.raises(ArgumentError):
        reduce(QuadInt(1, 4, G), residue_field(17, G))


@given(small, small, st.sampled_from([G, E]), st.sampled_from([5, 7, 13, 37, 101]))
def test_reduce_is_ring_map(a, b, ring, p):
    x = QuadInt(a, b, ring)
    y = QuadInt(b - 3, a + 1, ring)
    for emb in ("first", "second"):
        K = residue_field(p, ring, emb)
        if x.norm() % p == 0 or y.norm() % p == 0:
            continue
        assert reduce(x * y, K) == K.mul(reduce(x, K), reduce(y, K))


def test_embeddings_product_is_norm():
    for p in sympy.primerange(5, 500):
        if p % 4 != 1:
            continue
        K = residue_field(p, G, "first")
        g = QuadInt(1, 1, G)
        assert reduce(g, K) * reduce(g.conj(), K) % p == 2


def test_ff_examples():
    K = residue_field(17, G)
    assert ff_is_qth_power(5, 2, K) is False
    F25 = residue_field(5, E)
    alpha = reduce(SQRT_MINUS_3, F25)
    assert F25.pow(alpha, 12) == (4, 0)
    assert ff_is_qth_power(alpha, 2, F25) is False
    assert ff_is_qth_power(1, 7, K) is True
    with pytest.raises(ArgumentError):
        ff_is_qth_power(0, 2, K)


def test_ff_modes_agree():
    for ring in (G, E):
        for p in sympy.primerange(5, 100):
            for emb in ("first", "second"):
                K = residue_field(p, ring, emb)
                if K.size >= 10**4:
                    continue
                for q in (2, 3, 5, 7):
                    powers = {K.pow(y, q) for y in K.nonzero_elements()}
                    for alpha in K.nonzero_elements():
                        fast = ff_is_qth_power(alpha, q, K)
                        assert fast == (alpha in powers)
                if K.f == 2:
                    break


def test_one_sided_squares():
    # when 2 is a non-square, 1+i cannot be a square at both primes above p
    g = QuadInt(1, 1, G)
    seen_one_sided = False
    for p in sympy.primerange(5, 500):
        if p % 4 != 1 or pow(2, (p - 1) // 2, p) == 1:
            continue
        sq = [ff_is_qth_power(reduce(g, residue_field(p, G, e)), 2, residue_field(p, G, e)) for e in ("first", "second")]
        assert not all(sq)
        seen_one_sided |= any(sq)
    assert seen_one_sided
