import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gaussforge.errors import FieldError, FieldMismatchError
from gaussforge.gf import GF, create_field, field, is_irreducible, parse_scalars, smallest_irreducible

SMALL = [(3, 1), (3, 2), (3, 3), (3, 4)]


def schoolbook_mul(F, a, b):
    """Reference product: multiply coefficient lists, reduce by the modulus."""
    p, k, mod = F.p, F.k, F.modulus
    x, y = F.coeffs(a), F.coeffs(b)
    prod = [0] * (2 * k - 1)
    for i, u in enumerate(x):
        for j, v in enumerate(y):
            prod[i + j] = (prod[i + j] + u * v) % p
    for top in range(len(prod) - 1, k - 1, -1):
        c = prod[top]
        if c:
            for i in range(k + 1):
                prod[top - k + i] = (prod[top - k + i] - c * mod[i]) % p
    return sum(c * p**i for i, c in enumerate(prod[:k]))


def digit_add(F, a, b):
    return sum(((x + y) % F.p) * F.p**i for i, (x, y) in enumerate(zip(F.coeffs(a), F.coeffs(b))))


@pytest.mark.parametrize("p,k", SMALL)
def test_add_mul_match_reference(p, k):
    F = field(p, k)
    for a, b in itertools.product(F.elements(), repeat=2):
        assert F.add(a, b) == digit_add(F, a, b)
        assert F.mul(a, b) == schoolbook_mul(F, a, b)


@pytest.mark.parametrize("p,k", SMALL)
def test_ring_axioms_exhaustive(p, k):
    F = field(p, k)
    els = list(F.elements())
    for a, b in itertools.product(els, repeat=2):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        ab, a_b = F.mul(a, b), F.add(a, b)
        for c in els:
            assert F.mul(ab, c) == F.mul(a, F.mul(b, c))
            assert F.add(a_b, c) == F.add(a, F.add(b, c))
            assert F.mul(c, a_b) == F.add(F.mul(c, a), F.mul(c, b))


@pytest.mark.parametrize("p,k", SMALL)
def test_inverses_and_identities(p, k):
    F = field(p, k)
    for a in F.elements():
        assert F.add(a, 0) == a and F.mul(a, 1) == a
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
            assert F.div(a, a) == 1
            assert F.pow(a, F.q - 1) == 1
            assert F.pow(a, -1) == F.inv(a)
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_generator_has_full_order():
    for p, k in SMALL + [(5, 2), (7, 2)]:
        F = field(p, k)
        g = F.generator
        seen = {F.pow(g, e) for e in range(F.q - 1)}
        assert seen == set(range(1, F.q))


def test_modulus_is_smallest_irreducible_by_root_search():
    # degree 2 and 3: irreducible iff no root in the prime field
    for p, k in [(3, 2), (3, 3), (5, 2), (7, 3)]:
        mod = smallest_irreducible(p, k)
        for v in range(p**k):
            cand = [(v // p**i) % p for i in range(k)] + [1]
            rootless = all(sum(c * pow(t, i, p) for i, c in enumerate(cand)) % p for t in range(p))
            if rootless:
                assert tuple(cand) == mod
                break
    assert smallest_irreducible(3, 2) == (1, 0, 1)


def test_is_irreducible_rejects_products():
    assert not is_irreducible([2, 0, 1], 3)  # x^2 - 1
    assert is_irreducible([1, 0, 1], 3)
    assert not is_irreducible([0, 1, 1], 5)


@pytest.mark.parametrize("p,k", SMALL)
def test_frobenius_is_a_field_automorphism(p, k):
    F = field(p, k)
    images = set()
    for a, b in itertools.product(F.elements(), repeat=2):
        assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))
        assert F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b))
    for a in F.elements():
        images.add(F.frobenius(a))
        assert F.frobenius(F.frobenius_inverse(a)) == a
        assert F.pow(a, F.q) == a
    assert len(images) == F.q


@pytest.mark.parametrize("p,k", SMALL + [(5, 2), (7, 2)])
def test_nth_roots_complete_and_sound(p, k):
    F = field(p, k)
    for n in [1, 2, 3, 4, 5, 6, 8, 9]:
        table = {}
        for x in F.elements():
            table.setdefault(F.pow(x, n), []).append(x)
        for a in F.elements():
            assert F.nth_roots(a, n) == sorted(table.get(a, [])), (a, n)


def test_cube_roots_in_characteristic_three_are_frobenius_inverse():
    F = field(3, 3)
    for a in F.elements():
        assert F.nth_roots(a, 3) == [F.pow(a, 9)]


def test_roots_of_unity_gf9():
    F = field(3, 2)
    assert F.roots_of_unity(4) == [1, 2, 3, 6]
    assert F.sqrt_minus_one() in (3, 6)


@pytest.mark.parametrize("p,k", [(3, 2), (3, 4), (5, 2)])
def test_vectorised_ops_match_scalar(p, k):
    F = field(p, k)
    a, b = (np.array(v, dtype=np.int64) for v in zip(*itertools.product(F.elements(), repeat=2)))
    assert list(F.vadd(a, b)) == [F.add(x, y) for x, y in zip(a.tolist(), b.tolist())]
    assert list(F.vadd_digits(a, b)) == [F.add(x, y) for x, y in zip(a.tolist(), b.tolist())]
    assert list(F.vmul(a, b)) == [F.mul(x, y) for x, y in zip(a.tolist(), b.tolist())]
    assert list(F.vneg(a)) == [F.neg(x) for x in a.tolist()]
    assert list(F.vinv(a)) == [F.inv(x) if x else 0 for x in a.tolist()]


def test_large_field_without_tables():
    F = field(3, 13)  # q > 2^20: polynomial arithmetic path
    assert not F.has_tables
    a, b = 123456, 987654
    assert F.mul(F.div(a, b), b) == a
    assert F.sub(F.add(a, b), b) == a
    assert F.frobenius_inverse(F.frobenius(a)) == a
    assert F.nth_roots(F.pow(a, 5), 5) == [a]  # gcd(5, q-1) = 1
    with pytest.raises(NotImplementedError):
        F.nth_roots(F.pow(a, 2), 2)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_embedding_is_a_ring_homomorphism(m):
    small, big = field(3, 1), field(3, 2)
    for s, b in [(small, big), (field(3, 2), field(3, 2 * m))]:
        e = s.embedding(b)
        assert len(set(e)) == s.q
        for x, y in itertools.product(s.elements(), repeat=2):
            assert e[s.add(x, y)] == b.add(e[x], e[y])
            assert e[s.mul(x, y)] == b.mul(e[x], e[y])


@pytest.mark.parametrize("p,k", [(4, 1), (2, 1), (9, 1), (3, 0), (257, 1)])
def test_invalid_parameters(p, k):
    with pytest.raises(FieldError):
        create_field(p, k)


def test_degree_cap_and_order_limit():
    with pytest.raises(FieldError):
        create_field(3, 9)
    with pytest.raises(FieldError):
        GF(251, 9)


def test_scalar_wrapper():
    F, G = field(3, 2), field(5)
    x = F([0, 1])
    assert x * x == F(-1)
    assert (x + 1) * (x - 1) == x**2 - 1
    assert x / x == F(1)
    assert x.inverse() * x == F(1)
    assert str(x) == "[0,1]"
    assert sorted(s.value for s in F(1).nth_roots(4)) == [1, 2, 3, 6]
    with pytest.raises(FieldMismatchError):
        _ = x + G(1)


def test_parse_and_format_roundtrip():
    F = field(3, 2)
    assert parse_scalars("1,[0,1],2,[2,2]", F) == [1, 3, 2, 8]
    for a in F.elements():
        assert F.parse(F.format(a)) == a
    with pytest.raises(FieldError):
        F.parse("[1,2,0]")
    with pytest.raises(FieldError):
        F.parse("x")


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([(5, 2), (7, 2), (3, 5)]), st.data())
def test_random_field_axioms(pk, data):
    F = field(*pk)
    a, b, c = (data.draw(st.integers(0, F.q - 1)) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(a, b) == schoolbook_mul(F, a, b)


def test_field_cache_ignores_call_style():
    assert field(7) is field(7, 1) is field(7, k=1) is create_field(7)
    assert field(3, 1).extension(2) is field(3, 2)
