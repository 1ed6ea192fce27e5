"""Operators on tensor powers of the natural module that commute with
the quantum group: the braiding of adjacent slots, the contraction onto
the invariant line, and the bilinear forms realising self-duality.

Everything acts on the right.  A rank-r tensor is a dict mapping index
tuples (length r, entries 1..N) to scalars; the slot operators touch two
adjacent positions and are stored as sparse N^2 x N^2 structure tables,
built once per (type, ring) and checked against their defining
identities at build time.
"""

from gmpy2 import mpq

from .scalars import LaurentPoly, ScalarRing
from .qgroup import (
    LieType,
    tensor_add_term,
    tensor_prune,
    tensor_eq,
    tensor_is_zero,
)

_OPS_CACHE = {}


def _delta(ring: ScalarRing):
    return ring.spec(LaurentPoly({2: mpq(1), -2: mpq(-1)}))


def alpha_vector(lie: LieType, ring: ScalarRing):
    """The invariant vector in the tensor square, sum over k of
    q^{rho_{k'}} eps_{k'} v_k (x) v_{k'}."""
    rho = lie.rho2()
    out = {}
    for k in range(1, lie.N + 1):
        kp = lie.prime(k)
        c = LaurentPoly.u_power(rho[kp - 1], lie.epsilon_sign(kp))
        out[(k, kp)] = ring.spec(c)
    return out


def _build_tables(lie: LieType):
    """Generic structure tables for the braiding and the contraction on
    a pair of slots, as {(k,l): {(a,b): LaurentPoly}}."""
    N = lie.N
    rho = lie.rho2()
    eps = lie.epsilon_sign
    prime = lie.prime
    delta = LaurentPoly({2: mpq(1), -2: mpq(-1)})
    q = LaurentPoly.u_power(2)
    qinv = LaurentPoly.u_power(-2)
    mid = lie.n + 1 if lie.family == 'B' else None

    emat = {}
    for k in range(1, N + 1):
        l = prime(k)
        row = {}
        for i in range(1, N + 1):
            ip = prime(i)
            coeff = LaurentPoly.u_power(rho[ip - 1] - rho[k - 1],
                                        eps(ip) * eps(k))
            tensor_add_term(row, (i, ip), coeff)
        emat[(k, l)] = tensor_prune(row)

    rmat = {}
    for k in range(1, N + 1):
        for l in range(1, N + 1):
            row = {}
            if k == l and k != mid:
                row[(k, k)] = q
            elif k == l == mid:
                row[(mid, mid)] = LaurentPoly.one()
                for i in range(mid + 1, N + 1):
                    c = LaurentPoly.u_power(rho[i - 1], -1) * delta
                    tensor_add_term(row, (prime(i), i), c)
            elif k > l and k != prime(l):
                row[(l, k)] = LaurentPoly.one()
            elif k > l:
                row[(l, k)] = qinv
                for i in range(k + 1, N + 1):
                    c = LaurentPoly.u_power(rho[i - 1] - rho[k - 1],
                                            -eps(i) * eps(k)) * delta
                    tensor_add_term(row, (prime(i), i), c)
            elif k < l and k != prime(l):
                row[(l, k)] = LaurentPoly.one()
                row[(k, l)] = delta
            else:
                row[(l, k)] = qinv
                tensor_add_term(row, (k, l), delta)
                for i in range(k + 1, N + 1):
                    c = LaurentPoly.u_power(rho[i - 1] - rho[k - 1],
                                            -eps(i) * eps(k)) * delta
                    tensor_add_term(row, (prime(i), i), c)
            rmat[(k, l)] = tensor_prune(row)

    # inverse from the skein relation
    rinv = {}
    for k in range(1, N + 1):
        for l in range(1, N + 1):
            row = dict(rmat[(k, l)])
            tensor_add_term(row, (k, l), delta.scale(-1))
            for ab, c in emat.get((k, l), {}).items():
                tensor_add_term(row, ab, c * delta)
            rinv[(k, l)] = tensor_prune(row)
    return rmat, rinv, emat


def _compose(t1, t2):
    out = {}
    for kl, row in t1.items():
        acc = {}
        for ab, c in row.items():
            for ij, d in t2[ab].items() if ab in t2 else ():
                tensor_add_term(acc, ij, c * d)
        out[kl] = tensor_prune(acc)
    return out


class SlotOps:
    """Structure tables of the braiding, its inverse, and the
    contraction over a fixed scalar ring, with the word-level action."""

    __slots__ = ('lie', 'ring', 'rmat', 'rinv', 'emat',
                 'alpha', 'delta', 'varrho', 'varrho_inv', 'loop')

    def __init__(self, lie, ring, rmat, rinv, emat):
        self.lie = lie
        self.ring = ring
        self.rmat = rmat
        self.rinv = rinv
        self.emat = emat
        self.alpha = alpha_vector(lie, ring)
        self.delta = _delta(ring)
        vr = lie.varrho()
        ((vexp, vcoeff),) = vr.items()
        self.varrho = ring.spec(vr)
        self.varrho_inv = ring.spec(LaurentPoly.u_power(-vexp, 1 / vcoeff))
        rho = lie.rho2()
        x = LaurentPoly()
        for i in range(1, lie.N + 1):
            ip = lie.prime(i)
            x = x + LaurentPoly.u_power(
                rho[ip - 1] - rho[i - 1],
                lie.epsilon_sign(i) * lie.epsilon_sign(ip))
        self.loop = ring.spec(x)

    def table(self, kind: str):
        if kind == 'T':
            return self.rmat
        if kind == 'T-':
            return self.rinv
        if kind == 'E':
            return self.emat
        raise ValueError('unknown letter kind %r' % kind)

    def apply_letter(self, letter, t):
        """Right action of one generator letter ('T'|'T-'|'E', i) on the
        adjacent slots i, i+1 of every monomial."""
        kind, i = letter
        table = self.table(kind)
        out = {}
        for mono, coeff in t.items():
            row = table.get((mono[i - 1], mono[i]))
            if not row:
                continue
            head, tail = mono[:i - 1], mono[i + 1:]
            for (a, b), val in row.items():
                tensor_add_term(out, head + (a, b) + tail, coeff * val)
        return tensor_prune(out)

    def apply_word(self, word, t):
        for letter in word:
            if not t:
                break
            t = self.apply_letter(letter, t)
        return t

    def apply_element(self, items, t):
        """Right action of a linear combination given as (word, scalar)
        pairs."""
        out = {}
        for word, c in items:
            img = self.apply_word(word, t)
            for mono, val in img.items():
                tensor_add_term(out, mono, val * c)
        return tensor_prune(out)


def slot_ops(lie: LieType, ring: ScalarRing) -> SlotOps:
    key = (lie.family, lie.n, ring.key())
    ops = _OPS_CACHE.get(key)
    if ops is None:
        rmat, rinv, emat = _build_tables(lie)
        if not ring.is_generic:
            spec = ring.spec
            rmat = {kl: tensor_prune({ab: spec(c) for ab, c in row.items()})
                    for kl, row in rmat.items()}
            rinv = {kl: tensor_prune({ab: spec(c) for ab, c in row.items()})
                    for kl, row in rinv.items()}
            emat = {kl: tensor_prune({ab: spec(c) for ab, c in row.items()})
                    for kl, row in emat.items()}
        ops = SlotOps(lie, ring, rmat, rinv, emat)
        _check_tables(ops)
        _OPS_CACHE[key] = ops
    return ops


def _check_tables(ops: SlotOps):
    lie, ring = ops.lie, ops.ring
    N = lie.N
    one = ring.one()
    # braiding output is triangular: (a,b) appears in the image of (k,l)
    # only if a <= l and b >= k
    for (k, l), row in ops.rmat.items():
        for (a, b) in row:
            assert a <= l and b >= k, ('triangularity', (k, l), (a, b))
    # two-sided inverse
    comp = _compose(ops.rmat, ops.rinv)
    for kl, row in comp.items():
        assert tensor_eq(row, {kl: one}), ('inverse', kl)
    # every contraction row is a multiple of the invariant vector, and
    # the contraction is idempotent up to the loop value
    rho = lie.rho2()
    for (k, l), row in ops.emat.items():
        c = ring.spec(LaurentPoly.u_power(-rho[k - 1], lie.epsilon_sign(k)))
        expect = {ab: val * c for ab, val in ops.alpha.items()}
        assert tensor_eq(tensor_prune(expect), row), ('alpha row', k)
    esq = _compose(ops.emat, ops.emat)
    for kl, row in esq.items():
        expect = {ab: val * ops.loop for ab, val in ops.emat[kl].items()}
        assert tensor_eq(row, tensor_prune(expect)), ('loop', kl)
    # loop value against the twist parameter
    if ring.is_generic:
        vr = lie.varrho()
        ((exp, coeff),) = vr.items()
        vr_inv = LaurentPoly.u_power(-exp, 1 / coeff)
        delta = _delta(ring)
        assert ops.loop == one + (vr - vr_inv).exact_div(delta)


# --- bilinear forms -------------------------------------------------

def reversed_prime(lie: LieType, mono):
    return tuple(lie.prime(a) for a in reversed(mono))


def beta_count(lie: LieType, mono) -> int:
    """Exponent of q in the diagonal form of the even families: each
    unordered slot pair contributes 2 when the entries are paired
    partners, 1 when unrelated, 0 when equal."""
    total = 0
    r = len(mono)
    for a in range(r):
        for b in range(a + 1, r):
            if mono[a] == lie.prime(mono[b]):
                total += 2
            elif mono[a] != mono[b]:
                total += 1
    return total


def form_value(lie: LieType, ring: ScalarRing, mi, mj):
    """Pairing of two basis monomials.  The odd orthogonal form pairs a
    monomial with its reversed partner; the even forms are diagonal."""
    if lie.family == 'B':
        if mi != reversed_prime(lie, mj):
            return ring.zero()
        rho = lie.rho2()
        exp = -sum(rho[a - 1] for a in mi)
        return ring.spec(LaurentPoly.u_power(exp))
    if lie.family in ('C', 'D'):
        if mi != mj:
            return ring.zero()
        return ring.spec(LaurentPoly.u_power(2 * beta_count(lie, mi)))
    raise ValueError('no bilinear form in type %s' % lie.family)


def form(lie: LieType, ring: ScalarRing, s, t):
    """Bilinear extension of form_value to dict-vectors."""
    total = ring.zero()
    if lie.family == 'B':
        for mono, c in s.items():
            mate = reversed_prime(lie, mono)
            d = t.get(mate)
            if d is not None:
                total = total + c * d * form_value(lie, ring, mono, mate)
    else:
        for mono, c in s.items():
            d = t.get(mono)
            if d is not None:
                total = total + c * d * form_value(lie, ring, mono, mono)
    return total


# --- involutions on generator words ---------------------------------

def word_sigma(word):
    """Anti-involution fixing every generator: reverse the word."""
    return tuple(reversed(word))


def word_gamma(word, r: int):
    """Automorphism relabelling position i to r - i."""
    return tuple((kind, r - i) for kind, i in word)


def word_sigma_tilde(word, r: int):
    """Anti-involution sending position i to r - i: reverse and
    relabel."""
    return word_gamma(word_sigma(word), r)
