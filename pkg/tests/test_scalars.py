"""Exact scalar arithmetic: Laurent polynomials in u, quantized
integers, cyclotomic specialization."""

import pytest
from hypothesis import given, strategies as st

from bmwrep.scalars import (
    QQ, LaurentPoly, RationalFunction, Cyclotomic, ScalarRing,
    ExactDivisionError, qint, qint_u, qfactorial, qbinomial,
    euler_phi, cyclotomic_poly, format_laurent, laurent_gcd,
)


def L(d):
    return LaurentPoly({k: QQ(v) for k, v in d.items()})


# --- quantized integers (q = u^2 convention) ---

def test_qint_values():
    assert qint(0) == LaurentPoly.zero()
    assert qint(1) == LaurentPoly.one()
    assert qint(2) == L({2: 1, -2: 1})          # q + q^-1
    assert qint(3) == L({4: 1, 0: 1, -4: 1})
    assert qint(-2) == L({2: -1, -2: -1})


def test_qint_u_step():
    # step 1 gives the u-balanced bracket
    assert qint_u(2, 1) == L({1: 1, -1: 1})
    assert qint_u(3, 2) == qint(3)
    # step 4: type C long-root bracket
    assert qint_u(2, 4) == L({4: 1, -4: 1})


def test_qfactorial():
    assert qfactorial(3) == qint(3) * qint(2)
    assert qfactorial(0) == LaurentPoly.one()


def test_qbinomial_frozen():
    # [4 choose 2] = [4]![2]!^-2 = q^4 + q^2 + 2 + q^-2 + q^-4
    assert qbinomial(4, 2) == L({8: 1, 4: 1, 0: 2, -4: 1, -8: 1})
    assert qbinomial(3, 0) == LaurentPoly.one()
    assert qbinomial(3, 3) == LaurentPoly.one()
    assert qbinomial(3, 1) == qint(3)


# --- Laurent polynomial ring ---

def test_laurent_basic():
    a = L({1: 1, 0: 1})       # u + 1
    b = L({1: 1, 0: -1})      # u - 1
    assert a * b == L({2: 1, 0: -1})
    assert a - a == LaurentPoly.zero()
    assert a ** 3 == a * a * a
    assert a.shift(-2) == L({-1: 1, -2: 1})
    assert (-a) + a == LaurentPoly.zero()


def test_exact_div_roundtrip():
    a = qfactorial(4)
    b = qint(3) * qint(2)
    q = a.exact_div(b)
    assert q * b == a
    with pytest.raises(ExactDivisionError):
        qint(3).exact_div(qint(2))


def test_format():
    assert format_laurent(qint(2)) == 'u^2 + u^-2'
    assert format_laurent(LaurentPoly.zero()) == '0'
    assert format_laurent(L({1: -1})) == '-u'
    assert format_laurent(L({0: 3, -1: QQ(1, 2)})) == '3 + 1/2*u^-1'


def test_gcd_monic():
    # gcd works on the underlying ordinary polynomials (constant term
    # nonzero, monic): gcd([4], [2]) = u^4 + 1
    g = laurent_gcd(qint(4), qint(2))
    assert g == L({4: 1, 0: 1})
    assert qint(4).exact_div(g) * g == qint(4)


small_laurents = st.dictionaries(
    st.integers(-4, 4), st.integers(-5, 5), max_size=4
).map(lambda d: L({k: v for k, v in d.items() if v}))


@given(small_laurents, small_laurents, small_laurents)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a + (b + c) == (a + b) + c


@given(small_laurents, small_laurents)
def test_eval_mod_is_hom(a, b):
    p, x = 1000003, 37
    assert (a * b).eval_mod(x, p) == a.eval_mod(x, p) * b.eval_mod(x, p) % p
    assert (a + b).eval_mod(x, p) == (a.eval_mod(x, p) + b.eval_mod(x, p)) % p


# --- cyclotomic polynomials and specialization ---

def test_cyclotomic_polys():
    assert euler_phi(8) == 4 and euler_phi(6) == 2 and euler_phi(16) == 8
    assert tuple(cyclotomic_poly(1)) == (QQ(-1), QQ(1))
    assert tuple(cyclotomic_poly(2)) == (QQ(1), QQ(1))
    assert tuple(cyclotomic_poly(6)) == (QQ(1), QQ(-1), QQ(1))
    assert tuple(cyclotomic_poly(8)) == (QQ(1), QQ(0), QQ(0), QQ(0), QQ(1))
    assert tuple(cyclotomic_poly(12)) == (QQ(1), QQ(0), QQ(-1), QQ(0), QQ(1))


def test_ring_parameters():
    g = ScalarRing.generic()
    assert g.is_generic and g.e == 0
    assert ScalarRing.root_of_unity(2).m == 8    # e even: m = 4e
    assert ScalarRing.root_of_unity(3).m == 6    # e odd:  m = 2e
    assert ScalarRing.root_of_unity(4).m == 16
    with pytest.raises(ValueError):
        ScalarRing.root_of_unity(1)
    with pytest.raises(ValueError):
        ScalarRing.root_of_unity(-3)


def test_specialization_kills_the_right_brackets():
    # at e the order of q^2 is e, so [k] vanishes iff e | k
    for e in (2, 3, 4):
        ring = ScalarRing.root_of_unity(e)
        for k in range(1, 9):
            val = ring.spec(qint(k))
            assert val.is_zero() == (k % e == 0), (e, k)


def test_root_ring_u_order():
    ring = ScalarRing.root_of_unity(3)      # m = 6
    assert ring.u(6) == ring.one()
    assert ring.u(3) == -ring.one()
    assert not (ring.u(2) - ring.one()).is_zero()
    # q = u^2 is a primitive cube root: 1 + q + q^2 = 0
    acc = ring.zero()
    for j in (0, 1, 2):
        acc = acc + ring.q(j)
    assert acc.is_zero()


def test_cyclotomic_field_ops():
    z = Cyclotomic.root_power(8, 1)
    assert z * z.inv() == Cyclotomic.one(8)
    w = z * z * z * z
    assert w == -Cyclotomic.one(8)
    # eval_mod sends zeta to an element of the right order
    from bmwrep.linalg import prime_with_root_of_order
    p, wroot = prime_with_root_of_order(8)
    v = z.eval_mod(wroot, p)
    assert pow(v, 8, p) == 1 and pow(v, 4, p) != 1


def test_rational_function_field():
    f = RationalFunction.from_laurent(qint(4)) * RationalFunction.from_laurent(qint(2)).inv()
    assert f == RationalFunction.from_laurent(L({4: 1, -4: 1}))
    g = f - f
    assert g.is_zero()
    assert (f * f.inv()) == RationalFunction.from_laurent(LaurentPoly.one())


@given(small_laurents, small_laurents)
def test_spec_is_hom(a, b):
    ring = ScalarRing.root_of_unity(3)
    assert ring.spec(a * b) == ring.spec(a) * ring.spec(b)
    assert ring.spec(a + b) == ring.spec(a) + ring.spec(b)
