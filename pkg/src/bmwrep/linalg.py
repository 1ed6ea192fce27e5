"""Exact sparse linear algebra over the scalar fields.

Vectors are dicts mapping column keys (any sortable hashables) to field
elements; zero entries are never stored.  Field elements must support
+, -, *, unary -, .inv() and .is_zero() -- Cyclotomic and
RationalFunction both qualify.  Generic-mode matrices of Laurent
polynomials are lifted entrywise into RationalFunction before any
elimination.

The RowReducer keeps a fully reduced row echelon form with unit pivots
(each stored row meets every pivot column exactly once), so reducing an
incoming vector is a single pass over its pivot keys.  Pivot choice is
the smallest column key, which together with canonical input orders
makes every elimination deterministic.

Rank certificates: ranks over Q(u) or Q(zeta_m) are bounded below by
ranks of integer specializations mod p (u -> a, or zeta_m -> an element
of order m), since specializing a ring homomorphism can only collapse
rank.  Whenever such a lower bound meets a known upper bound the exact
rank follows with no exact elimination at all; the helpers here only
ever use mod-p work in that sound direction.
"""

from __future__ import annotations

from .scalars import (Cyclotomic, ExactDivisionError, LaurentPoly,
                      RationalFunction, ScalarRing)

__all__ = [
    'FieldSpec', 'field_for', 'RowReducer', 'matrix_rank', 'nullspace',
    'mod_rank', 'prime_with_root_of_order', 'generic_eval_point',
    'ring_mod_evaluator', 'lift_rows', 'scalar_to_int',
]


def scalar_to_int(val):
    """Exact integer value of a ring or lifted field scalar, or None
    when the scalar is not an integer."""
    if isinstance(val, RationalFunction):
        try:
            val = val.num.exact_div(val.den)
        except ExactDivisionError:
            return None
    if isinstance(val, LaurentPoly):
        if val.is_zero():
            return 0
        items = list(val.items())
        if len(items) != 1 or items[0][0] != 0:
            return None
        q = items[0][1]
        return int(q) if q.denominator == 1 else None
    if isinstance(val, Cyclotomic):
        if val.is_zero():
            return 0
        head, tail = val.co[0], val.co[1:]
        if any(tail):
            return None
        return int(head) if head.denominator == 1 else None
    return None


class FieldSpec:
    """Bundle of field constants plus a lift from generic Laurent data."""

    __slots__ = ('zero', 'one', 'lift')

    def __init__(self, zero, one, lift):
        self.zero = zero
        self.one = one
        self.lift = lift


def field_for(ring: ScalarRing) -> FieldSpec:
    if ring.is_generic:
        return FieldSpec(RationalFunction(LaurentPoly.zero()),
                         RationalFunction(LaurentPoly.one()),
                         RationalFunction.from_laurent)
    m = ring.m
    return FieldSpec(Cyclotomic.zero(m), Cyclotomic.one(m), ring.spec)


def lift_rows(rows, ring: ScalarRing):
    """Lift dict-rows into field elements: LaurentPoly entries become
    RationalFunction (generic) or Cyclotomic (root of unity); entries
    already in the field pass through."""
    out = []
    for r in rows:
        row = {}
        for k, v in r.items():
            if isinstance(v, LaurentPoly):
                if ring.is_generic:
                    v = RationalFunction.from_laurent(v)
                else:
                    v = ring.spec(v)
            row[k] = v
        out.append(row)
    return out


class RowReducer:
    """Incremental reduced row echelon form with optional combination
    tracking (each stored row remembers its expression in the inputs)."""

    def __init__(self, track: bool = False):
        self.rows = []      # parallel lists: pivot key, row dict, tag dict
        self.pivot_of = {}  # pivot key -> row index
        self.track = track
        self.n_seen = 0

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _eliminate(self, vec: dict, comb: dict):
        hits = [k for k in vec if k in self.pivot_of]
        hits.sort()
        for k in hits:
            c = vec.get(k)
            if c is None or c.is_zero():
                vec.pop(k, None)
                continue
            _, row, tag = self.rows[self.pivot_of[k]]
            for kk, vv in row.items():
                s = vec.get(kk)
                s = -(c * vv) if s is None else s - c * vv
                if s.is_zero():
                    vec.pop(kk, None)
                else:
                    vec[kk] = s
            if comb is not None:
                for kk, vv in tag.items():
                    s = comb.get(kk)
                    s = -(c * vv) if s is None else s - c * vv
                    if s.is_zero():
                        comb.pop(kk, None)
                    else:
                        comb[kk] = s
        return vec

    def add(self, vec: dict, label=None) -> bool:
        """Reduce vec against the current rows and insert the residual.
        Returns True if the vector enlarged the span."""
        idx = label if label is not None else self.n_seen
        self.n_seen += 1
        vec = {k: v for k, v in vec.items() if not v.is_zero()}
        comb = {idx: _ONE_SENTINEL} if self.track else None
        vec = self._eliminate(vec, comb)
        if not vec:
            return False
        piv = min(vec)
        inv = vec[piv].inv()
        row = {k: inv * v for k, v in vec.items()}
        tag = {}
        if self.track:
            for k, v in comb.items():
                tag[k] = inv if v is _ONE_SENTINEL else inv * v
        # back-eliminate the new pivot from every stored row
        for i, (p, r, t) in enumerate(self.rows):
            c = r.get(piv)
            if c is None:
                continue
            for kk, vv in row.items():
                s = r.get(kk)
                s = -(c * vv) if s is None else s - c * vv
                if s.is_zero():
                    r.pop(kk, None)
                else:
                    r[kk] = s
            if self.track:
                for kk, vv in tag.items():
                    s = t.get(kk)
                    s = -(c * vv) if s is None else s - c * vv
                    if s.is_zero():
                        t.pop(kk, None)
                    else:
                        t[kk] = s
        self.pivot_of[piv] = len(self.rows)
        self.rows.append((piv, row, tag))
        return True

    def express(self, vec: dict):
        """Coefficients over the added input rows if vec lies in their
        span, else None.  Requires track=True."""
        assert self.track
        vec = {k: v for k, v in vec.items() if not v.is_zero()}
        coeffs = {}
        hits = sorted(k for k in vec if k in self.pivot_of)
        for k in hits:
            c = vec.get(k)
            if c is None or c.is_zero():
                vec.pop(k, None)
                continue
            _, row, tag = self.rows[self.pivot_of[k]]
            for kk, vv in row.items():
                s = vec.get(kk)
                s = -(c * vv) if s is None else s - c * vv
                if s.is_zero():
                    vec.pop(kk, None)
                else:
                    vec[kk] = s
            for kk, vv in tag.items():
                s = coeffs.get(kk)
                s = c * vv if s is None else s + c * vv
                if s.is_zero():
                    coeffs.pop(kk, None)
                else:
                    coeffs[kk] = s
        if vec:
            return None
        return coeffs

    def residual(self, vec: dict) -> dict:
        vec = {k: v for k, v in vec.items() if not v.is_zero()}
        return self._eliminate(vec, None)


_ONE_SENTINEL = object()


def matrix_rank(rows, ring: ScalarRing = None) -> int:
    """Exact rank of an iterable of dict-rows.  If a ScalarRing is given
    the rows are lifted into its field first."""
    if ring is not None:
        rows = lift_rows(rows, ring)
    red = RowReducer()
    for r in rows:
        red.add(dict(r))
    return red.rank


def nullspace(rows, cols, ring: ScalarRing = None, field: FieldSpec = None):
    """Exact kernel basis of the linear map with the given constraint
    rows (each a dict over keys from cols).  Returns dict-vectors over
    cols, one per free column, in column order."""
    if ring is not None:
        rows = lift_rows(rows, ring)
        field = field_for(ring)
    assert field is not None
    red = RowReducer()
    for r in rows:
        red.add(dict(r))
    pivots = set(red.pivot_of)
    basis = []
    for f in cols:
        if f in pivots:
            continue
        vec = {f: field.one}
        for p, row, _ in red.rows:
            c = row.get(f)
            if c is not None and not c.is_zero():
                vec[p] = -c
        basis.append(vec)
    return basis


# ---------------------------------------------------------------------------
# mod-p machinery for rank certificates
# ---------------------------------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_factors(n: int):
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def prime_with_root_of_order(m: int, skip: int = 0):
    """Deterministic (p, w): the (skip+1)-th prime p = 1 mod m above 10**6
    together with an element w of exact multiplicative order m."""
    p = 10 ** 6 // m * m + 1
    found = 0
    while True:
        p += m
        if not _is_prime(p):
            continue
        found += 1
        if found <= skip:
            continue
        factors = _prime_factors(m)
        for a in range(2, p):
            w = pow(a, (p - 1) // m, p)
            if w == 1:
                continue
            if all(pow(w, m // f, p) != 1 for f in factors):
                return p, w
        raise ArithmeticError('no element of order %d mod %d' % (m, p))


def generic_eval_point(skip: int = 0):
    """Deterministic (p, a) for generic-mode specialization u -> a mod p,
    with a**4 != 1 so that q and q - q**-1 stay invertible."""
    primes = []
    p = 10 ** 6 + 3
    while len(primes) <= skip:
        if _is_prime(p):
            primes.append(p)
        p += 2
    p = primes[skip]
    return p, 2 + skip


def mod_rank(rows, evaluate, p: int) -> int:
    """Rank over GF(p) of rows mapped through evaluate (scalar -> int)."""
    red_pivot = {}
    red_rows = []
    rank = 0
    for r in rows:
        vec = {}
        for k, v in r.items():
            x = evaluate(v) % p
            if x:
                vec[k] = x
        # forward echelon only, so eliminating one pivot can expose
        # another: loop until no stored pivot remains in the support
        while True:
            hits = [k for k in vec if k in red_pivot]
            if not hits:
                break
            k = min(hits)
            c = vec.pop(k)
            row = red_rows[red_pivot[k]]
            for kk, vv in row.items():
                if kk == k:
                    continue
                s = (vec.get(kk, 0) - c * vv) % p
                if s:
                    vec[kk] = s
                else:
                    vec.pop(kk, None)
        if not vec:
            continue
        piv = min(vec)
        inv = pow(vec[piv], p - 2, p)
        row = {k: v * inv % p for k, v in vec.items()}
        red_pivot[piv] = len(red_rows)
        red_rows.append(row)
        rank += 1
    return rank


def ring_mod_evaluator(ring: ScalarRing, skip: int = 0):
    """(evaluate, p) pair specializing this ring's scalars into GF(p)."""
    if ring.is_generic:
        p, a = generic_eval_point(skip)
        return (lambda x, _a=a, _p=p: x.eval_mod(_a, _p)), p
    p, w = prime_with_root_of_order(ring.m, skip)
    return (lambda x, _w=w, _p=p: x.eval_mod(_w, _p)), p
