import cmath
import math
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kfield.errors import (
    FieldMismatch,
    NotPrime,
    PrimenessViolated,
    SizeGuardExceeded,
    ZeroElement,
)
from kfield.ffield import (
    Character,
    RootOfUnity,
    build_psi,
    build_x,
    char_value,
    characters,
    extension_field,
    field_of_order,
    find_unit_correction,
    make_field,
    mult_generator,
    subfield_coordinates,
)
from kfield.repunit import repunit_value

# -- brute-force oracle: polynomials as coefficient lists, low degree first ----


def pmul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def preduce(a, m, p):
    a = list(a)
    d = len(m) - 1
    for k in range(len(a) - 1, d - 1, -1):
        c = a[k]
        if c:
            for i in range(d + 1):
                a[k - d + i] = (a[k - d + i] - c * m[i]) % p
    return (a + [0] * d)[:d]


def brute_irreducible(m, p):
    d = len(m) - 1
    products = set()
    for d1 in range(1, d // 2 + 1):
        for c1 in product(range(p), repeat=d1):
            for c2 in product(range(p), repeat=d - d1):
                products.add(tuple(pmul(list(c1) + [1], list(c2) + [1], p)))
    return tuple(m) not in products


def brute_modulus(p, d):
    for tail in product(range(p), repeat=d):
        # product() varies the last slot fastest, so reverse to make c0 most significant
        m = tuple(tail) + (1,)
        if brute_irreducible(m, p):
            return m


def lex_order(p, d):
    return sorted(product(range(p), repeat=d))


def brute_generator(p, m):
    d = len(m) - 1
    n = p**d - 1
    for vec in lex_order(p, d):
        if not any(vec):
            continue
        x, k = list(vec), 1
        while x != [1] + [0] * (d - 1):
            x = preduce(pmul(x, list(vec), p), m, p)
            k += 1
        if k == n:
            return vec


SMALL_FIELDS = [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (7, 2), (2, 5)]


@pytest.mark.parametrize("p,d", SMALL_FIELDS)
def test_modulus_and_generator_match_oracle(p, d):
    F = make_field(p, d)
    if d == 1:
        assert F.modulus == (0, 1)
    else:
        assert F.modulus == brute_modulus(p, d)
        assert F.digits(F.gen) == brute_generator(p, list(F.modulus))


def test_frozen_conventions():
    assert field_of_order(4).modulus == (1, 1, 1)
    assert field_of_order(8).modulus == (1, 0, 1, 1)
    assert field_of_order(8).digits(field_of_order(8).gen) == (0, 0, 1)
    assert field_of_order(9).modulus == (1, 0, 1)
    assert field_of_order(9).digits(field_of_order(9).gen) == (1, 1)
    assert field_of_order(7).gen == 3


@pytest.mark.parametrize("p,d", SMALL_FIELDS)
def test_multiplication_matches_schoolbook(p, d):
    F = make_field(p, d)
    m = list(F.modulus)
    codes = list(range(F.order))
    for a in codes:
        for b in codes[: min(F.order, 40)]:
            da, db = list(F.digits(a)), list(F.digits(b))
            want = preduce(pmul(da, db, p), m, p) if d > 1 else [(a * b) % p]
            assert F.digits(F.mul(a, b)) == tuple(want)
            want_add = tuple((x + y) % p for x, y in zip(da, db))
            assert F.digits(F.add(a, b)) == want_add


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64, 81, 128, 243])
def test_field_axioms(q):
    F = field_of_order(q)
    g = mult_generator(F)
    assert g.order() == q - 1
    assert sorted(F.exp(k) for k in range(q - 1)) == list(range(1, q))
    for a in F.nonzero_codes():
        assert F.mul(a, F.inv(a)) == 1
        assert F.exp(F.log(a)) == a
        assert F.add(a, F.neg(a)) == 0


def test_not_prime_and_size_guard():
    with pytest.raises(NotPrime):
        field_of_order(6)
    with pytest.raises(NotPrime):
        make_field(9, 1)
    with pytest.raises(SizeGuardExceeded):
        make_field(2, 21)


def test_element_arithmetic():
    F = field_of_order(9)
    a, b = F.element(5), F.element(7)
    assert (a * b) / b == a
    assert a + b - b == a
    assert a**8 == F.one()
    with pytest.raises(ZeroElement):
        F.one() / F.zero()
    with pytest.raises(FieldMismatch):
        a + field_of_order(3).one()


def test_subfield_generator_and_elements():
    E = extension_field(4, 3)
    assert (E.p, E.deg) == (2, 6)
    assert E.subfield_degree(4) == 2
    assert E.subfield_step(4) == 21
    sub = E.subfield_elements(4)
    assert len(sub) == 3
    for a in sub:
        assert E.pow(a, 4) == a
    with pytest.raises(FieldMismatch):
        E.subfield_degree(16)


def test_root_of_unity():
    z = RootOfUnity(2, 6)
    assert (z.num, z.den) == (1, 3)
    assert z * z * z == RootOfUnity.one()
    assert z.conjugate() == RootOfUnity(2, 3)
    assert z**3 == RootOfUnity.one()
    assert abs(z.to_complex() - cmath.exp(2j * math.pi / 3)) < 1e-12


def test_character_values():
    F = field_of_order(7)
    chi = characters(7)[1]
    assert chi.is_trivial is False and characters(7)[0].is_trivial
    assert char_value(chi, F.element(3)) == RootOfUnity(1, 6)
    assert char_value(chi, F.element(2)) == RootOfUnity(2, 6)
    with pytest.raises(ZeroElement):
        char_value(chi, F.zero())


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9])
def test_characters_form_dual_group(q):
    F = field_of_order(q)
    chars = characters(q)
    assert len({tuple(char_value(c, F.element(a)) for a in F.nonzero_codes()) for c in chars}) == q - 1
    for c in chars:
        for a in F.nonzero_codes():
            for b in F.nonzero_codes():
                assert char_value(c, F.element(F.mul(a, b))) == (
                    char_value(c, F.element(a)) * char_value(c, F.element(b))
                )


def test_subfield_coordinates_span():
    E = extension_field(3, 2)
    coords = subfield_coordinates(E, 3)
    assert len(coords) == 9
    assert coords[0] == (0, 0)
    assert coords[1] == (1, 0)
    assert coords[3] == (0, 1)


@pytest.mark.parametrize("q,f", [(2, 3), (3, 2), (4, 2), (4, 3), (5, 2), (7, 2), (8, 2), (9, 2), (3, 3)])
def test_psi_is_equivariant(q, f):
    E = extension_field(q, f)
    for psi in characters(q):
        table = build_psi(psi, E)
        assert table.check_equivariance()
        assert table.values_in_mu(q - 1)


def test_psi_frozen_values():
    E = extension_field(3, 2)
    psi = characters(3)[1]
    table = build_psi(psi, E)
    # 2 + 0t has first coordinate 2, the generator of F_3^x
    assert table(2) == RootOfUnity(1, 2)
    # 0 + 1t has first nonzero coordinate 1
    assert table(3) == RootOfUnity.one()
    assert table(6) == RootOfUnity(1, 2)


@pytest.mark.parametrize("q,f", [(3, 3), (4, 2), (5, 3), (7, 5), (8, 2), (9, 3), (4, 4)])
def test_x_is_equivariant(q, f):
    if math.gcd(f, q - 1) != 1:
        pytest.skip("needs gcd(f, q-1) = 1")
    E = extension_field(q, f)
    Qf = repunit_value(q, f)
    for chi in characters(q):
        table = build_x(chi, E)
        assert table.check_equivariance()
        # X(b) only depends on b^(Q^f)
        seen = {}
        for b in E.nonzero_codes():
            assert seen.setdefault(E.pow(b, Qf), table(b)) == table(b)
        assert table.values_in_mu(q - 1)


def test_x_rejects_non_coprime():
    with pytest.raises(PrimenessViolated):
        build_x(characters(3)[1], extension_field(3, 2))


def test_x_trivial_on_kernel_of_norm():
    # X(b) = 1 whenever b^(Q^f) = 1
    E = extension_field(5, 3)
    Qf = repunit_value(5, 3)
    table = build_x(characters(5)[1], E)
    for b in E.nonzero_codes():
        if E.pow(b, Qf) == 1:
            assert table(b) == RootOfUnity.one()


@pytest.mark.parametrize("q,f", [(2, 3), (3, 3), (4, 5), (5, 3), (8, 3), (9, 3), (7, 5), (2, 7)])
def test_unit_correction_unique(q, f):
    if math.gcd(f, q - 1) != 1:
        pytest.skip("needs gcd(f, q-1) = 1")
    E = extension_field(q, f)
    Qf = repunit_value(q, f)
    sub = E.subfield_elements(q)
    for beta in list(E.nonzero_codes())[::7]:
        a = find_unit_correction(E.element(beta), q)
        hits = [c for c in sub if E.pow(E.mul(c, beta), Qf) == 1]
        assert hits == [a.code]


def test_unit_correction_needs_coprime():
    E = extension_field(3, 2)
    with pytest.raises(PrimenessViolated):
        find_unit_correction(E.element(5), 3)
    with pytest.raises(ZeroElement):
        find_unit_correction(extension_field(3, 3).zero(), 3)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(2, 6), (3, 4), (5, 3), (7, 2)]), st.data())
def test_power_map_bijective_iff_coprime(pd, data):
    p, d = pd
    F = make_field(p, d)
    k = data.draw(st.integers(1, 3 * F.order))
    image = {F.pow(a, k) for a in F.nonzero_codes()}
    assert (len(image) == F.order - 1) == (math.gcd(k, F.order - 1) == 1)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([4, 8, 9, 25, 27, 64]), st.data())
def test_distributivity(q, data):
    F = field_of_order(q)
    a, b, c = (F.element(data.draw(st.integers(0, q - 1))) for _ in range(3))
    assert a * (b + c) == a * b + a * c


def test_character_mismatch():
    with pytest.raises(FieldMismatch):
        Character(5, 1) * Character(7, 1)


@pytest.mark.parametrize("q,f", [(3, 2), (4, 2), (5, 3), (8, 2), (9, 2)])
def test_fast_check_agrees_with_pairwise(q, f):
    from dataclasses import replace

    E = extension_field(q, f)
    for chi in characters(q):
        tables = [build_psi(chi, E)]
        if math.gcd(f, q - 1) == 1:
            tables.append(build_x(chi, E))
        for t in tables:
            assert t.check_equivariance() and t.check_equivariance_pairs()
            # tampering with one value breaks both checks
            bad = list(t.exponents)
            bad[5] = (bad[5] + 1) % (q - 1)
            broken = replace(t, exponents=tuple(bad))
            assert not broken.check_equivariance()
            assert not broken.check_equivariance_pairs()
