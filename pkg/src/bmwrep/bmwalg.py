"""The Birman-Murakami-Wenzl algebra on r strands.

Elements are sparse linear combinations of generator words (tuples of
('T', i), ('T-', i), ('E', i) letters read left to right).  Nothing is
rewritten symbolically: the algebra is pinned down through its action
on the r-th tensor power of the natural module, which is faithful once
the rank of the underlying type is large enough, so expanding an
element in the distinguished basis is a linear solve against recorded
images of probe vectors.
"""

import functools
import itertools
import math

from .scalars import LaurentPoly, ScalarRing
from .linalg import RowReducer, lift_rows, mod_rank, ring_mod_evaluator
from .combin import (
    coset_reps,
    cell_labels,
    perm_embed,
    reduced_word,
    std_tableaux,
    tableau_perm,
    young_subgroup,
)
from .qgroup import (
    LieType,
    minimal_rank,
    tensor_add_term,
    tensor_eq,
    tensor_prune,
    tensor_scale,
    tensor_sub,
    tensor_is_zero,
)
from .tensorop import slot_ops, word_sigma


def bmw_dim(r: int) -> int:
    """(2r - 1)!!, the rank of the algebra on r strands."""
    out = 1
    for k in range(1, 2 * r, 2):
        out *= k
    return out


# ---------------------------------------------------------------------------
# words and sparse elements
# ---------------------------------------------------------------------------

def word_for_perm(w: tuple) -> tuple:
    return tuple(('T', i) for i in reduced_word(w))


def e_block_word(f: int) -> tuple:
    """E_1 E_3 ... E_{2f-1}, the floor of the f-th contraction layer."""
    return tuple(('E', 2 * i - 1) for i in range(1, f + 1))


def elem_from_word(word, ring: ScalarRing) -> dict:
    return {tuple(word): ring.one()}


def elem_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for w, c in b.items():
        s = out.get(w)
        s = c if s is None else s + c
        if s.is_zero():
            out.pop(w, None)
        else:
            out[w] = s
    return out


def elem_scale(a: dict, c) -> dict:
    if c.is_zero():
        return {}
    return {w: v * c for w, v in a.items()}


def elem_mul(a: dict, b: dict) -> dict:
    """Concatenation product of two word combinations."""
    out = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            w = wa + wb
            s = out.get(w)
            c = ca * cb
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
    return out


def m_element(lam: tuple, r: int, ring: ScalarRing, shift: int = 0) -> dict:
    """Sum of q^{l(w)} T_w over the Young subgroup of shape lam
    (acting on letters shift+1 .. shift+|lam|)."""
    return {word_for_perm(w): ring.q(l)
            for w, l in young_subgroup(lam, r, shift)}


def n_element(lam: tuple, r: int, ring: ScalarRing, shift: int = 0) -> dict:
    """Signed companion of m_element, with (-q)^{-l(w)} coefficients."""
    out = {}
    for w, l in young_subgroup(lam, r, shift):
        sign = 1 if l % 2 == 0 else -1
        out[word_for_perm(w)] = ring.spec(LaurentPoly.u_power(-2 * l, sign))
    return out


# ---------------------------------------------------------------------------
# the two distinguished bases
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def enyang_basis(r: int):
    """Word form of the basis T*_{d1} E^f T_w T_{d2} (star = reversal),
    where f counts contraction layers, w runs over the symmetric group
    on the last r - 2f letters and d1, d2 over the coset transversal.

    Returns (words, labels) in a frozen order: f ascending, then d1, w,
    d2 each in their own enumeration order.  labels[i] = (f, w, d1, d2)
    as one-line permutations.
    """
    words, labels = [], []
    for f in range(r // 2 + 1):
        reps = coset_reps(r, f)
        ef = e_block_word(f)
        k = r - 2 * f
        syms = [perm_embed(p, r, 2 * f)
                for p in itertools.permutations(range(1, k + 1))]
        for d1 in reps:
            star = word_sigma(word_for_perm(d1))
            for w in syms:
                mid = star + ef + word_for_perm(w)
                for d2 in reps:
                    words.append(mid + word_for_perm(d2))
                    labels.append((f, w, d1, d2))
    assert len(words) == bmw_dim(r)
    return tuple(words), tuple(labels)


_CELL_CACHE = {}


def cellular_basis(r: int, ring: ScalarRing):
    """The cellwise basis T*_{d1} E^f n_{st} T_{d2}, where
    n_{st} = T*_{d(s)} n_lam T_{d(t)} lives on the last r - 2f letters.

    Returns (elements, labels); labels[i] = ((f, lam), si, ti, ai, bi)
    with si, ti indexing std_tableaux(lam) and ai, bi the transversal,
    grouped by cell_labels(r) order.
    """
    key = (r, ring.key())
    got = _CELL_CACHE.get(key)
    if got is not None:
        return got
    elements, labels = [], []
    for f, lam in cell_labels(r):
        reps = coset_reps(r, f)
        ef = e_block_word(f)
        tabs = std_tableaux(lam)
        nlam = n_element(lam, r, ring, shift=2 * f)
        for si, s in enumerate(tabs):
            ds = word_sigma(word_for_perm(perm_embed(tableau_perm(s), r, 2 * f)))
            for ti, t in enumerate(tabs):
                dt = word_for_perm(perm_embed(tableau_perm(t), r, 2 * f))
                nst = {ds + w + dt: c for w, c in nlam.items()}
                for ai, d1 in enumerate(reps):
                    left = word_sigma(word_for_perm(d1)) + ef
                    for bi, d2 in enumerate(reps):
                        wd2 = word_for_perm(d2)
                        elements.append(
                            {left + w + wd2: c for w, c in nst.items()})
                        labels.append(((f, lam), si, ti, ai, bi))
    assert len(elements) == bmw_dim(r)
    _CELL_CACHE[key] = (elements, labels)
    return elements, labels


# ---------------------------------------------------------------------------
# defining relations, verified on tensor space
# ---------------------------------------------------------------------------

def check_relations(lie: LieType, r: int, ring: ScalarRing) -> list:
    """Verify the defining presentation through the tensor action and
    return a list of human-readable failures (empty when all hold).

    Every relation only touches a fixed window of adjacent slots and
    the generators act slotwise, so checking all index assignments on
    the window with the remaining slots pinned proves the identity on
    the whole tensor power.
    """
    ops = slot_ops(lie, ring)
    N = lie.N
    one = ring.one()
    q, qi = ring.q(1), ring.q(-1)
    vr, vri = ops.varrho, ops.varrho_inv
    delta = ops.delta
    failures = []

    def window(slots):
        for combo in itertools.product(range(1, N + 1), repeat=len(slots)):
            mono = [1] * r
            for s, v in zip(slots, combo):
                mono[s - 1] = v
            yield {tuple(mono): one}

    def report(name, slots, residual_of):
        for t in window(slots):
            res = residual_of(t)
            if not tensor_is_zero(res):
                failures.append('%s fails on %r' % (name, next(iter(t))))
                return

    for i in range(1, r):
        ti = ('T', i)

        def cubic(t, ti=ti):
            t1 = tensor_sub(ops.apply_letter(ti, t), tensor_scale(t, q))
            t2 = tensor_sub(ops.apply_letter(ti, t1), tensor_scale(t1, -qi))
            return tensor_sub(ops.apply_letter(ti, t2), tensor_scale(t2, vri))

        report('eigenvalue cubic at %d' % i, (i, i + 1), cubic)

        def tie(t, i=i):
            a = tensor_sub(ops.apply_word((('E', i), ('T', i)), t),
                           tensor_scale(ops.apply_letter(('E', i), t), vri))
            if not tensor_is_zero(a):
                return a
            return tensor_sub(ops.apply_word((('T', i), ('E', i)), t),
                              tensor_scale(ops.apply_letter(('E', i), t), vri))

        report('E_i T_i = T_i E_i = rho^-1 E_i at %d' % i, (i, i + 1), tie)

        def skein(t, i=i):
            lhs = tensor_sub(ops.apply_letter(('T', i), t),
                             ops.apply_letter(('T-', i), t))
            rhs = tensor_scale(
                tensor_sub(t, ops.apply_letter(('E', i), t)), delta)
            return tensor_sub(lhs, rhs)

        report('skein at %d' % i, (i, i + 1), skein)

    for i in range(1, r - 1):
        def braid(t, i=i):
            return tensor_sub(
                ops.apply_word((('T', i), ('T', i + 1), ('T', i)), t),
                ops.apply_word((('T', i + 1), ('T', i), ('T', i + 1)), t))

        report('braid at %d' % i, (i, i + 1, i + 2), braid)

    for i in range(1, r):
        for j in (i - 1, i + 1):
            if not 1 <= j <= r - 1:
                continue
            lo = min(i, j)

            def tangle(t, i=i, j=j):
                a = tensor_sub(
                    ops.apply_word((('E', i), ('T', j), ('E', i)), t),
                    tensor_scale(ops.apply_letter(('E', i), t), vr))
                if not tensor_is_zero(a):
                    return a
                return tensor_sub(
                    ops.apply_word((('E', i), ('T-', j), ('E', i)), t),
                    tensor_scale(ops.apply_letter(('E', i), t), vri))

            report('E_i T_j^+- E_i = rho^+-1 E_i at (%d,%d)' % (i, j),
                   (lo, lo + 1, lo + 2), tangle)

    for i in range(1, r - 2):
        for j in range(i + 2, r):
            def distant(t, i=i, j=j):
                return tensor_sub(
                    ops.apply_word((('T', i), ('T', j)), t),
                    ops.apply_word((('T', j), ('T', i)), t))

            report('distant commute (%d,%d)' % (i, j),
                   (i, i + 1, j, j + 1), distant)

    return failures


def check_inverse(lie: LieType, r: int, ring: ScalarRing) -> list:
    """Verify that the skein combination T_i - delta(1 - E_i) is a
    two-sided inverse of T_i on tensor space, by the same window
    argument as check_relations.  The combination is formed from the
    T and E operators alone, so this does not assume the implemented
    inverse letter is correct."""
    ops = slot_ops(lie, ring)
    N = lie.N
    one = ring.one()
    failures = []

    def skein_inverse(i, t):
        a = ops.apply_letter(('T', i), t)
        return tensor_sub(a, tensor_scale(
            tensor_sub(t, ops.apply_letter(('E', i), t)), ops.delta))

    for i in range(1, r):
        for combo in itertools.product(range(1, N + 1), repeat=2):
            mono = [1] * r
            mono[i - 1], mono[i] = combo
            t = {tuple(mono): one}
            left = ops.apply_letter(('T', i), skein_inverse(i, t))
            right = skein_inverse(i, ops.apply_letter(('T', i), t))
            if not (tensor_eq(left, t) and tensor_eq(right, t)):
                failures.append(
                    'inverse identity fails at %d on %r' % (i, tuple(mono)))
                break
    return failures


# ---------------------------------------------------------------------------
# probe families
# ---------------------------------------------------------------------------

def thin_probes(lie: LieType, r: int) -> list:
    """Monomials v_b (x) v_c with c the standard contraction tail of
    length 2f and b strictly decreasing in 1..n-f; one family per layer
    f.  Small, and separates the contraction filtration layer by layer,
    though on its own it need not separate the whole algebra."""
    n = lie.n
    out = []
    for f in range(r // 2 + 1):
        if n - f < r - 2 * f:
            continue
        c = tuple(lie.prime(n - a) for a in range(f)) \
            + tuple(range(n - f + 1, n + 1))
        for inc in itertools.combinations(range(1, n - f + 1), r - 2 * f):
            out.append(tuple(reversed(inc)) + c)
    return out


def initial_probes(lie: LieType, r: int, max_full: int = 50000) -> list:
    if lie.N ** r <= max_full:
        return list(itertools.product(range(1, lie.N + 1), repeat=r))
    return thin_probes(lie, r)


def _probe_growth(lie: LieType, r: int, existing):
    """Deterministic enumeration of the remaining monomials, walking
    the index space with a fixed coprime stride so that consecutive
    probes are well spread instead of lexicographic neighbours."""
    seen = set(existing)
    N = lie.N
    total = N ** r
    stride = max(1, (total * 5) // 8) | 1
    while math.gcd(stride, total) != 1:
        stride += 2
    for i in range(total):
        k = (stride * i) % total
        mono = []
        for _ in range(r):
            k, d = divmod(k, N)
            mono.append(d + 1)
        mono = tuple(mono)
        if mono not in seen:
            yield mono


def _element_rows(ops, elements, probes, one):
    rows = []
    for elem in elements:
        row = {}
        for p_idx, mono in enumerate(probes):
            img = ops.apply_element(elem.items(), {mono: one})
            for m, v in img.items():
                row[(p_idx, m)] = v
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# the expansion frame
# ---------------------------------------------------------------------------

class ProbeFrame:
    """Expansion oracle for the algebra on r strands.

    Records the image of every basis element on a probe family, then
    expresses arbitrary elements in the basis by solving against those
    rows.  Requires the faithful regime (rank of the type at least
    minimal_rank); the constructor extends a thin probe family until
    the recorded rows reach full rank (2r-1)!!, so a successful build
    doubles as a faithfulness certificate.
    """

    def __init__(self, lie: LieType, r: int, ring: ScalarRing,
                 elements=None, labels=None, max_full: int = 50000,
                 chunk: int = 32):
        assert lie.n >= minimal_rank(lie.family, r)
        self.lie, self.r, self.ring = lie, r, ring
        self.ops = slot_ops(lie, ring)
        self.dim = bmw_dim(r)
        if elements is None:
            words, _ = enyang_basis(r)
            elements = [elem_from_word(w, ring) for w in words]
        if labels is None:
            labels = list(range(len(elements)))
        self.elements, self.labels = list(elements), list(labels)
        self.probes = initial_probes(lie, r, max_full)
        growth = _probe_growth(lie, r, self.probes)
        while True:
            self._build()
            if self.rank == self.dim:
                break
            more = list(itertools.islice(growth, chunk))
            if not more:
                raise ArithmeticError(
                    'probe family exhausted at rank %d < %d'
                    % (self.rank, self.dim))
            self.probes.extend(more)

    def _build(self):
        rows = _element_rows(self.ops, self.elements, self.probes,
                             self.ring.one())
        self.red = RowReducer(track=True)
        for lab, row in zip(self.labels, lift_rows(rows, self.ring)):
            self.red.add(row, lab)
        self.rank = self.red.rank

    def row_of(self, elem: dict) -> dict:
        row = {}
        for p_idx, mono in enumerate(self.probes):
            img = self.ops.apply_element(elem.items(), {mono: self.ring.one()})
            for m, v in img.items():
                row[(p_idx, m)] = v
        return row

    def expand(self, elem: dict):
        """Coefficients of elem over the frame labels, or None if the
        recorded images cannot produce it (never happens for genuine
        algebra elements once the frame has full rank)."""
        return self.red.express(lift_rows([self.row_of(elem)], self.ring)[0])

    def expand_word(self, word):
        return self.expand(elem_from_word(word, self.ring))


def operator_rank(lie: LieType, r: int, ring: ScalarRing,
                  modular: bool = False, max_full: int = 256) -> int:
    """Rank of the span of the basis words acting on a probe family.

    With modular=True the rows are evaluated at a prime point first;
    since specialisation never raises rank, a full modular answer
    (2r-1)!! is still an exact certificate of faithfulness, at a small
    fraction of the cost.  Probes grow until the rank stabilises at
    full, or the family is exhausted (the true rank is then reported,
    which in the faithful regime cannot happen below full rank).
    """
    ops = slot_ops(lie, ring)
    words, _ = enyang_basis(r)
    elements = [elem_from_word(w, ring) for w in words]
    probes = initial_probes(lie, r, max_full)
    growth = _probe_growth(lie, r, probes)
    target = bmw_dim(r)
    while True:
        rows = _element_rows(ops, elements, probes, ring.one())
        if modular:
            rank = 0
            for skip in range(3):
                evaluate, p = ring_mod_evaluator(ring, skip)
                rank = max(rank, mod_rank(rows, evaluate, p))
                if rank == target:
                    break
        else:
            red = RowReducer()
            for row in lift_rows(rows, ring):
                red.add(row)
            rank = red.rank
        if rank == target:
            return rank
        more = list(itertools.islice(growth, max(32, target - rank)))
        if not more:
            return rank
        probes.extend(more)
