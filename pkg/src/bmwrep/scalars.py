r"""Exact scalar arithmetic in a single quantum parameter.

Everything downstream works over one formal variable ``u`` with

    q = u**2,        q**(1/2) = u,

so that half-integer powers of q (which show up for odd orthogonal
groups) are integral powers of u.  Two coefficient modes exist:

* generic: Laurent polynomials in u over the rationals (and their
  fraction field for linear algebra),
* root of unity: the cyclotomic field Q(zeta_m) where u is sent to a
  primitive m-th root of unity with

      m = 2*e   if e is odd       (q = exp(2*pi*i/e)),
      m = 4*e   if e is even      (q = exp(pi*i/e)),

  which makes q**2 a primitive e-th root of unity in both cases.

Cyclotomic numbers are stored as coordinate vectors of length
euler_phi(m) over the power basis 1, u, ..., u**(phi-1) modulo the m-th
cyclotomic polynomial; equality is structural.

Quantized integers use the balanced convention

    [k] = (v**k - v**-k) / (v - v**-1)

and ``qint(k, d)`` returns [k] in the variable v = q with the d-th
dilation (i.e. v replaced by q**d).  The helper ``qint_u`` takes the
dilation as a power of u instead, which is what the rank-n generators
of the odd orthogonal quantum group need.
"""

from __future__ import annotations

import functools

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover - gmpy2 is a hard dependency
    from fractions import Fraction as QQ

__all__ = [
    'QQ', 'LaurentPoly', 'RationalFunction', 'Cyclotomic', 'ScalarRing',
    'qint', 'qint_u', 'qfactorial', 'qbinomial', 'cyclotomic_poly',
    'euler_phi', 'ExactDivisionError',
]

Q0 = QQ(0)
Q1 = QQ(1)


class ExactDivisionError(ArithmeticError):
    """Raised when a division that must be exact leaves a remainder."""


# ---------------------------------------------------------------------------
# Laurent polynomials in u
# ---------------------------------------------------------------------------

class LaurentPoly:
    """Laurent polynomial in u with rational coefficients.

    Immutable by convention: the coefficient dict is never mutated after
    construction and zero coefficients are dropped.
    """

    __slots__ = ('c',)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for k, v in coeffs.items():
                if v:
                    c[k] = QQ(v)
        self.c = c

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> 'LaurentPoly':
        return LaurentPoly()

    @staticmethod
    def one() -> 'LaurentPoly':
        return LaurentPoly({0: Q1})

    @staticmethod
    def u_power(k: int, coeff=Q1) -> 'LaurentPoly':
        return LaurentPoly({k: coeff})

    @staticmethod
    def from_int(n) -> 'LaurentPoly':
        return LaurentPoly({0: QQ(n)})

    # -- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.c

    def is_one(self) -> bool:
        return self.c == {0: Q1}

    def min_exp(self) -> int:
        return min(self.c)

    def max_exp(self) -> int:
        return max(self.c)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        c = dict(self.c)
        for k, v in other.c.items():
            s = c.get(k, Q0) + v
            if s:
                c[k] = s
            else:
                c.pop(k, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out.c = c
        return out

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        c = dict(self.c)
        for k, v in other.c.items():
            s = c.get(k, Q0) - v
            if s:
                c[k] = s
            else:
                c.pop(k, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out.c = c
        return out

    def __neg__(self):
        out = LaurentPoly.__new__(LaurentPoly)
        out.c = {k: -v for k, v in self.c.items()}
        return out

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self.c, other.c
        if not a or not b:
            return LaurentPoly()
        if len(a) > len(b):
            a, b = b, a
        c = {}
        for ka, va in a.items():
            for kb, vb in b.items():
                k = ka + kb
                s = c.get(k, Q0) + va * vb
                if s:
                    c[k] = s
                else:
                    del c[k]
        out = LaurentPoly.__new__(LaurentPoly)
        out.c = c
        return out

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError('negative power of a Laurent polynomial')
        out = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, q) -> 'LaurentPoly':
        q = QQ(q)
        if not q:
            return LaurentPoly()
        out = LaurentPoly.__new__(LaurentPoly)
        out.c = {k: v * q for k, v in self.c.items()}
        return out

    def shift(self, k: int) -> 'LaurentPoly':
        """Multiply by u**k."""
        out = LaurentPoly.__new__(LaurentPoly)
        out.c = {e + k: v for e, v in self.c.items()}
        return out

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    # -- division -----------------------------------------------------

    def exact_div(self, other: 'LaurentPoly') -> 'LaurentPoly':
        """Exact division; raises ExactDivisionError on a remainder."""
        if other.is_zero():
            raise ZeroDivisionError('division by the zero polynomial')
        if self.is_zero():
            return LaurentPoly()
        q, r = _poly_divmod(self, other)
        if not r.is_zero():
            raise ExactDivisionError('inexact Laurent division')
        return q

    # -- conversions --------------------------------------------------

    def items(self):
        return self.c.items()

    def eval_mod(self, a: int, p: int) -> int:
        """Evaluate at u = a over Z/p.  Requires p coprime to denominators
        and a invertible mod p."""
        ainv = pow(a, p - 2, p)
        acc = 0
        for k, v in self.c.items():
            num = int(v.numerator) % p
            den = int(v.denominator) % p
            if den == 0:
                raise ZeroDivisionError('prime divides a coefficient denominator')
            term = num * pow(den, p - 2, p) % p
            term = term * pow(a if k >= 0 else ainv, abs(k), p) % p
            acc = (acc + term) % p
        return acc

    def __repr__(self):
        return 'LaurentPoly(%s)' % format_laurent(self)


def _poly_divmod(a: LaurentPoly, b: LaurentPoly):
    """Divide Laurent polynomials; remainder is taken in the shifted
    polynomial sense (u-power factors are units, so they never obstruct)."""
    amin, bmin = a.min_exp(), b.min_exp()
    da = [Q0] * (a.max_exp() - amin + 1)
    for k, v in a.c.items():
        da[k - amin] = v
    db = [Q0] * (b.max_exp() - bmin + 1)
    for k, v in b.c.items():
        db[k - bmin] = v
    qd, rd = _dense_divmod(da, db)
    q = LaurentPoly({i + amin - bmin: v for i, v in enumerate(qd) if v})
    r = LaurentPoly({i + amin: v for i, v in enumerate(rd) if v})
    return q, r


def _dense_divmod(a: list, b: list):
    """Standard dense polynomial division over the rationals."""
    a = list(a)
    while a and not a[-1]:
        a.pop()
    db = len(b) - 1
    lead = b[db]
    q = [Q0] * max(0, len(a) - db)
    while len(a) - 1 >= db and a:
        k = len(a) - 1 - db
        f = a[-1] / lead
        q[k] = f
        for i in range(db + 1):
            a[k + i] -= f * b[i]
        while a and not a[-1]:
            a.pop()
    return q, a


def _dense_gcd(a: list, b: list) -> list:
    while b:
        _, r = _dense_divmod(a, b)
        a, b = b, r
    lead = a[-1]
    return [v / lead for v in a]


def laurent_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Monic gcd, as an ordinary polynomial with nonzero constant term."""
    if a.is_zero():
        return _monic_shifted(b)
    if b.is_zero():
        return _monic_shifted(a)
    da = _to_dense(a)
    db = _to_dense(b)
    return _from_dense(_dense_gcd(da, db))


def _to_dense(a: LaurentPoly) -> list:
    amin = a.min_exp()
    d = [Q0] * (a.max_exp() - amin + 1)
    for k, v in a.c.items():
        d[k - amin] = v
    return d


def _from_dense(d: list) -> LaurentPoly:
    return LaurentPoly({i: v for i, v in enumerate(d) if v})


def _monic_shifted(a: LaurentPoly) -> LaurentPoly:
    if a.is_zero():
        return a
    d = _to_dense(a)
    lead = d[-1]
    return LaurentPoly({i: v / lead for i, v in enumerate(d) if v})


def format_laurent(p: LaurentPoly) -> str:
    """Canonical human-readable form, descending powers of u."""
    if p.is_zero():
        return '0'
    parts = []
    for k in sorted(p.c, reverse=True):
        v = p.c[k]
        if k == 0:
            mon = str(v)
        else:
            um = 'u' if k == 1 else 'u^%d' % k
            if v == 1:
                mon = um
            elif v == -1:
                mon = '-' + um
            else:
                mon = '%s*%s' % (v, um)
        parts.append(mon)
    out = parts[0]
    for t in parts[1:]:
        out += ' - ' + t[1:] if t.startswith('-') else ' + ' + t
    return out


# ---------------------------------------------------------------------------
# quantized integers
# ---------------------------------------------------------------------------

def qint_u(k: int, step: int) -> LaurentPoly:
    """[k] in the variable u**step (balanced form)."""
    if k < 0:
        return -qint_u(-k, step)
    return LaurentPoly({step * (k - 1 - 2 * j): Q1 for j in range(k)})


def qint(k: int, d: int = 1) -> LaurentPoly:
    """Quantized integer [k] in the variable q = u**2, dilated by d."""
    if d <= 0:
        raise ValueError('dilation must be positive')
    return qint_u(k, 2 * d)


def qfactorial(k: int, d: int = 1) -> LaurentPoly:
    if k < 0:
        raise ValueError('negative quantized factorial')
    return qfactorial_u(k, 2 * d)


def qfactorial_u(k: int, step: int) -> LaurentPoly:
    out = LaurentPoly.one()
    for j in range(2, k + 1):
        out = out * qint_u(j, step)
    return out


def qbinomial(n: int, k: int, d: int = 1) -> LaurentPoly:
    return qbinomial_u(n, k, 2 * d)


def qbinomial_u(n: int, k: int, step: int) -> LaurentPoly:
    if k < 0 or k > n:
        return LaurentPoly.zero()
    num = LaurentPoly.one()
    for j in range(n - k + 1, n + 1):
        num = num * qint_u(j, step)
    return num.exact_div(qfactorial_u(k, step))


# ---------------------------------------------------------------------------
# cyclotomic fields
# ---------------------------------------------------------------------------

def euler_phi(m: int) -> int:
    out, n, p = 1, m, 2
    while p * p <= n:
        if n % p == 0:
            out *= p - 1
            n //= p
            while n % p == 0:
                out *= p
                n //= p
        p += 1
    if n > 1:
        out *= n - 1
    return out


@functools.lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple:
    """Coefficients (low to high) of the m-th cyclotomic polynomial."""
    # x^m - 1 = prod_{d | m} Phi_d
    poly = [Q0] * (m + 1)
    poly[0], poly[m] = QQ(-1), Q1
    for d in range(1, m):
        if m % d == 0:
            q, r = _dense_divmod(poly, list(cyclotomic_poly(d)))
            assert not r
            poly = q
    return tuple(poly)


@functools.lru_cache(maxsize=None)
def _cyclo_tables(m: int):
    """Reduction data for Q(zeta_m): power basis rows for u^j, j < 2*phi-1."""
    phi = euler_phi(m)
    minpoly = list(cyclotomic_poly(m))
    rows = []
    cur = [Q0] * phi
    cur[0] = Q1
    for j in range(2 * phi - 1):
        rows.append(tuple(cur))
        # multiply by x and reduce
        top = cur[-1]
        nxt = [Q0] + cur[:-1]
        if top:
            for i in range(phi):
                nxt[i] -= top * minpoly[i]
        cur = nxt
    # powers of zeta for j in 0..m-1
    zpows = []
    cur = [Q0] * phi
    cur[0] = Q1
    for j in range(m):
        zpows.append(tuple(cur))
        top = cur[-1]
        nxt = [Q0] + cur[:-1]
        if top:
            for i in range(phi):
                nxt[i] -= top * minpoly[i]
        cur = nxt
    return phi, tuple(rows), tuple(zpows), tuple(minpoly)


class Cyclotomic:
    """Element of Q(zeta_m) over the power basis modulo Phi_m."""

    __slots__ = ('m', 'co')

    def __init__(self, m: int, co):
        self.m = m
        self.co = tuple(QQ(x) for x in co)

    @staticmethod
    def zero(m: int) -> 'Cyclotomic':
        phi = _cyclo_tables(m)[0]
        return Cyclotomic(m, (Q0,) * phi)

    @staticmethod
    def one(m: int) -> 'Cyclotomic':
        phi = _cyclo_tables(m)[0]
        return Cyclotomic(m, (Q1,) + (Q0,) * (phi - 1))

    @staticmethod
    def root_power(m: int, k: int) -> 'Cyclotomic':
        """zeta_m**k."""
        zpows = _cyclo_tables(m)[2]
        return Cyclotomic(m, zpows[k % m])

    def is_zero(self) -> bool:
        return not any(self.co)

    def __add__(self, other):
        if not isinstance(other, Cyclotomic) or other.m != self.m:
            return NotImplemented
        return Cyclotomic(self.m, tuple(a + b for a, b in zip(self.co, other.co)))

    def __sub__(self, other):
        if not isinstance(other, Cyclotomic) or other.m != self.m:
            return NotImplemented
        return Cyclotomic(self.m, tuple(a - b for a, b in zip(self.co, other.co)))

    def __neg__(self):
        return Cyclotomic(self.m, tuple(-a for a in self.co))

    def __mul__(self, other):
        if not isinstance(other, Cyclotomic) or other.m != self.m:
            return NotImplemented
        phi, rows, _, _ = _cyclo_tables(self.m)
        a, b = self.co, other.co
        conv = [Q0] * (2 * phi - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        out = list(conv[:phi])
        for j in range(phi, 2 * phi - 1):
            cj = conv[j]
            if cj:
                row = rows[j]
                for i in range(phi):
                    if row[i]:
                        out[i] += cj * row[i]
        return Cyclotomic(self.m, tuple(out))

    def inv(self) -> 'Cyclotomic':
        """Multiplicative inverse by the extended Euclidean algorithm."""
        if self.is_zero():
            raise ZeroDivisionError('inverse of zero cyclotomic element')
        phi, _, _, minpoly = _cyclo_tables(self.m)
        # Bezout: s * self + t * Phi_m = gcd = 1 in Q[x]
        r0, r1 = list(minpoly), list(self.co)
        while r1 and not r1[-1]:
            r1.pop()
        s0, s1 = [], [Q1]
        while r1:
            q, r = _dense_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _dense_sub(s0, _dense_mul(q, s1))
        # r0 = gcd (a constant, Phi_m being irreducible); s0 * self = r0 mod Phi
        assert len(r0) == 1 and len(s0) <= phi
        c = r0[0]
        co = [Q0] * phi
        for i, v in enumerate(s0):
            co[i] = v / c
        return Cyclotomic(self.m, tuple(co))

    def __eq__(self, other):
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self.m == other.m and self.co == other.co

    def __hash__(self):
        return hash((self.m, self.co))

    def eval_mod(self, w: int, p: int) -> int:
        """Image under zeta_m -> w in Z/p (caller picks w of order m)."""
        acc = 0
        wp = 1
        for v in self.co:
            num = int(v.numerator) % p
            den = int(v.denominator) % p
            if den == 0:
                raise ZeroDivisionError('prime divides a coefficient denominator')
            acc = (acc + num * pow(den, p - 2, p) * wp) % p
            wp = wp * w % p
        return acc

    def __repr__(self):
        return 'Cyclotomic(m=%d, %s)' % (self.m, list(self.co))


def _dense_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Q0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    while out and not out[-1]:
        out.pop()
    return out


def _dense_sub(a: list, b: list) -> list:
    out = list(a) + [Q0] * max(0, len(b) - len(a))
    for i, bi in enumerate(b):
        out[i] -= bi
    while out and not out[-1]:
        out.pop()
    return out


# ---------------------------------------------------------------------------
# rational functions (fraction field of the Laurent ring)
# ---------------------------------------------------------------------------

class RationalFunction:
    """Quotient of Laurent polynomials, kept in a canonical reduced form:
    the denominator is an ordinary polynomial with nonzero constant term,
    monic in its leading coefficient."""

    __slots__ = ('num', 'den')

    def __init__(self, num: LaurentPoly, den: LaurentPoly = None):
        if den is None:
            den = LaurentPoly.one()
        if den.is_zero():
            raise ZeroDivisionError('zero denominator')
        if num.is_zero():
            self.num, self.den = LaurentPoly.zero(), LaurentPoly.one()
            return
        shift = den.min_exp()
        den = den.shift(-shift)
        num = num.shift(-shift)
        g = laurent_gcd(num, den)
        if not g.is_one():
            num = num.exact_div(g)
            den = den.exact_div(g)
        lead = den.c[den.max_exp()]
        if lead != 1:
            inv = Q1 / lead
            num = num.scale(inv)
            den = den.scale(inv)
        self.num, self.den = num, den

    @staticmethod
    def from_laurent(p: LaurentPoly) -> 'RationalFunction':
        return RationalFunction(p)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    def __sub__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return RationalFunction(self.num * other.den - other.num * self.den,
                                self.den * other.den)

    def __neg__(self):
        out = RationalFunction.__new__(RationalFunction)
        out.num, out.den = -self.num, self.den
        return out

    def __mul__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    def eval_mod(self, a: int, p: int) -> int:
        den = self.den.eval_mod(a, p)
        if den % p == 0:
            raise ZeroDivisionError('denominator vanishes at this point')
        return self.num.eval_mod(a, p) * pow(den, p - 2, p) % p

    def inv(self) -> 'RationalFunction':
        if self.is_zero():
            raise ZeroDivisionError('inverse of zero rational function')
        return RationalFunction(self.den, self.num)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den.is_one():
            return 'RationalFunction(%s)' % format_laurent(self.num)
        return 'RationalFunction((%s)/(%s))' % (format_laurent(self.num),
                                                format_laurent(self.den))


# ---------------------------------------------------------------------------
# the two coefficient modes
# ---------------------------------------------------------------------------

class ScalarRing:
    """Either the generic Laurent ring or a fixed cyclotomic specialization."""

    __slots__ = ('kind', 'e', 'm')

    def __init__(self, kind: str, e: int = 0, m: int = 0):
        self.kind = kind
        self.e = e
        self.m = m

    @staticmethod
    def generic() -> 'ScalarRing':
        return ScalarRing('generic')

    @staticmethod
    def root_of_unity(e: int) -> 'ScalarRing':
        if e < 2:
            raise ValueError('root-of-unity order e must be at least 2 '
                             '(q - q**-1 must stay invertible)')
        m = 2 * e if e % 2 else 4 * e
        return ScalarRing('root', e, m)

    @property
    def is_generic(self) -> bool:
        return self.kind == 'generic'

    def key(self):
        return (self.kind, self.e)

    def u(self, k: int = 1):
        if self.is_generic:
            return LaurentPoly.u_power(k)
        return Cyclotomic.root_power(self.m, k)

    def q(self, k: int = 1):
        return self.u(2 * k)

    def zero(self):
        if self.is_generic:
            return LaurentPoly.zero()
        return Cyclotomic.zero(self.m)

    def one(self):
        if self.is_generic:
            return LaurentPoly.one()
        return Cyclotomic.one(self.m)

    def from_int(self, n):
        if self.is_generic:
            return LaurentPoly.from_int(n)
        one = Cyclotomic.one(self.m)
        return Cyclotomic(self.m, tuple(QQ(n) * x for x in one.co))

    def spec(self, p: LaurentPoly):
        """Specialize a generic Laurent polynomial into this ring."""
        if self.is_generic:
            return p
        phi, _, zpows, _ = _cyclo_tables(self.m)
        co = [Q0] * phi
        for k, v in p.c.items():
            row = zpows[k % self.m]
            for i in range(phi):
                if row[i]:
                    co[i] += v * row[i]
        return Cyclotomic(self.m, tuple(co))

    def is_zero(self, x) -> bool:
        return x.is_zero()

    def __repr__(self):
        if self.is_generic:
            return 'ScalarRing(generic)'
        return 'ScalarRing(root of unity, e=%d, m=%d)' % (self.e, self.m)

    def __eq__(self, other):
        return isinstance(other, ScalarRing) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())
