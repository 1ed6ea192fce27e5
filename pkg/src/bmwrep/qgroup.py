"""Root data for the classical families and quantum-group actions on
tensor space.

Everything is expressed in the variable u with q = u**2; for the odd
orthogonal family the deformation parameter of the quantized enveloping
algebra is q^{1/2} = u, so all generator matrix entries on the vector
module are Laurent in u for every family.

Sparse tensors are plain dicts mapping index tuples (1-based entries in
1..N) to scalars.  Generator actions keep coefficients Laurent; divided
powers may introduce a bounded denominator on the odd orthogonal family
(see act_divided_power) and are therefore terminal operations whose
output feeds linear algebra, never another generator application.
"""

import itertools
from functools import lru_cache

from gmpy2 import mpq

from .scalars import (
    ExactDivisionError,
    LaurentPoly,
    RationalFunction,
    ScalarRing,
    laurent_gcd,
    qfactorial_u,
    qbinomial_u,
)
from .linalg import RowReducer, field_for, lift_rows, matrix_rank, mod_rank, nullspace, ring_mod_evaluator


# ---------------------------------------------------------------------------
# root data


class LieType:
    """A classical family label (A/B/C/D) with its rank.

    Carries the derived index data used everywhere else: the dimension N
    of the vector module, the duality involution on indices, simple roots
    and the Cartan matrix in epsilon coordinates, and the exponent tables
    that make k_i diagonal in powers of u.
    """

    __slots__ = ('family', 'n')

    def __init__(self, family: str, n: int):
        if family not in ('A', 'B', 'C', 'D'):
            raise ValueError('family must be one of A, B, C, D')
        if n < 2:
            raise ValueError('rank must be at least 2')
        self.family = family
        self.n = n

    def __eq__(self, other):
        return (isinstance(other, LieType)
                and self.family == other.family and self.n == other.n)

    def __hash__(self):
        return hash((self.family, self.n))

    def __repr__(self):
        return 'LieType(%r, %d)' % (self.family, self.n)

    @property
    def N(self) -> int:
        """Dimension of the vector module."""
        if self.family == 'A':
            return self.n
        if self.family == 'B':
            return 2 * self.n + 1
        return 2 * self.n

    @property
    def num_gen(self) -> int:
        """Number of simple roots / generator indices."""
        return self.n - 1 if self.family == 'A' else self.n

    def prime(self, i: int) -> int:
        """Duality involution on basis indices; the middle index of the
        odd orthogonal family is self-dual."""
        if self.family == 'A':
            raise ValueError('no duality involution on the linear family')
        if not 1 <= i <= self.N:
            raise ValueError('index out of range')
        return self.N + 1 - i

    def epsilon_sign(self, k: int) -> int:
        """Sign attached to index k in the invariant vector: -1 exactly on
        the lower half of the symplectic family."""
        if self.family == 'C' and k > self.n:
            return -1
        return 1

    def weight_of(self, k: int) -> tuple:
        """Weight of the k-th basis vector in epsilon coordinates."""
        n = self.n
        if self.family == 'A':
            return tuple(1 if j == k else 0 for j in range(1, n + 1))
        if self.family == 'B' and k == n + 1:
            return (0,) * n
        if k <= n:
            return tuple(1 if j == k else 0 for j in range(1, n + 1))
        kp = self.prime(k)
        return tuple(-1 if j == kp else 0 for j in range(1, n + 1))

    def simple_root(self, i: int) -> tuple:
        n = self.n
        if not 1 <= i <= self.num_gen:
            raise ValueError('no such simple root')
        v = [0] * n
        if i < n or self.family == 'A':
            v[i - 1] = 1
            v[i] = -1
        elif self.family == 'B':
            v[n - 1] = 1
        elif self.family == 'C':
            v[n - 1] = 2
        else:
            v[n - 2] = 1
            v[n - 1] = 1
        return tuple(v)

    def cartan(self) -> tuple:
        """Cartan matrix a_ij = 2(a_i, a_j)/(a_i, a_i)."""
        g = self.num_gen
        roots = [self.simple_root(i) for i in range(1, g + 1)]
        out = []
        for i in range(g):
            sq = _dot(roots[i], roots[i])
            row = tuple(2 * _dot(roots[i], roots[j]) // sq for j in range(g))
            out.append(row)
        return tuple(out)

    def d(self, i: int) -> int:
        """Symmetrizer d_i of the Cartan matrix."""
        if self.family == 'B':
            return 2 if i < self.n else 1
        if self.family == 'C':
            return 1 if i < self.n else 2
        return 1

    def u_step(self, i: int) -> int:
        """u-exponent s with v^{d_i} = u^s, i.e. s = (a_i, a_i)."""
        a = self.simple_root(i)
        return _dot(a, a)

    def rho2(self) -> tuple:
        """u-exponents of q^{rho_k} for k = 1..N (twice the half-sum
        pairing, always integral)."""
        n, fam = self.n, self.family
        if fam == 'A':
            raise ValueError('not used on the linear family')
        if fam == 'B':
            top = [2 * (n - k) + 1 for k in range(1, n + 1)]
            return tuple(top + [0] + [-t for t in reversed(top)])
        if fam == 'C':
            top = [2 * (n - k + 1) for k in range(1, n + 1)]
        else:
            top = [2 * (n - k) for k in range(1, n + 1)]
        return tuple(top + [-t for t in reversed(top)])

    def varrho(self) -> LaurentPoly:
        """The BMW parameter tied to this family and rank."""
        n = self.n
        if self.family == 'B':
            return LaurentPoly.u_power(4 * n)
        if self.family == 'C':
            return -LaurentPoly.u_power(4 * n + 2)
        if self.family == 'D':
            return LaurentPoly.u_power(4 * n - 2)
        raise ValueError('no BMW parameter on the linear family')


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def minimal_rank(family: str, r: int) -> int:
    """Smallest rank for which the tensor representation of the rank-r
    tangle algebra is faithful: r for C, r + 1 for B and D."""
    return r if family == 'C' else r + 1


# ---------------------------------------------------------------------------
# the vector representation


class NaturalRep:
    """Sparse generator tables on the vector module.

    e_col[i][k] and f_col[i][k] map a basis index k to {image: coeff};
    k_exp[i][k] is the integer t with k_i v_k = u^t v_k.  All built
    straight from the action tables of the vector module, then checked
    against the weight data.
    """

    __slots__ = ('lie', 'e_col', 'f_col', 'k_exp')

    def __init__(self, lie, e_col, f_col, k_exp):
        self.lie = lie
        self.e_col = e_col
        self.f_col = f_col
        self.k_exp = k_exp

    def gen_matrix(self, gen) -> dict:
        """Matrix {(row, col): coeff} of a generator, rows = image index."""
        kind, i = gen
        if kind == 'e':
            return {(b, a): c for a, img in self.e_col[i].items()
                    for b, c in img.items()}
        if kind == 'f':
            return {(b, a): c for a, img in self.f_col[i].items()
                    for b, c in img.items()}
        sign = 1 if kind == 'k' else -1
        return {(a, a): LaurentPoly.u_power(sign * self.k_exp[i][a])
                for a in range(1, self.lie.N + 1)}


@lru_cache(maxsize=None)
def natural_rep(lie: LieType) -> NaturalRep:
    """Generator action tables on the vector module."""
    n, N, fam = lie.n, lie.N, lie.family
    one = LaurentPoly.one()
    e_col = {}
    f_col = {}
    k_exp = {}

    for i in range(1, lie.num_gen + 1):
        ei = {}
        fi = {}
        if fam == 'A':
            ei[i + 1] = {i: one}
            fi[i] = {i + 1: one}
        elif i < n:
            p = lie.prime
            ei[i + 1] = {i: one}
            ei[p(i)] = {p(i + 1): -one}
            fi[i] = {i + 1: one}
            fi[p(i + 1)] = {p(i): -one}
        elif fam == 'B':
            p = lie.prime
            two = LaurentPoly({1: mpq(1), -1: mpq(1)})  # u + 1/u
            ei[n + 1] = {n: one}
            ei[p(n)] = {n + 1: -LaurentPoly.u_power(-1)}
            fi[n] = {n + 1: two}
            fi[n + 1] = {p(n): -LaurentPoly.u_power(1) * two}
        elif fam == 'C':
            p = lie.prime
            ei[p(n)] = {n: one}
            fi[n] = {p(n): one}
        else:
            p = lie.prime
            ei[p(n)] = {n - 1: one}
            ei[p(n - 1)] = {n: -one}
            fi[n - 1] = {p(n): one}
            fi[n] = {p(n - 1): -one}
        e_col[i] = ei
        f_col[i] = fi

        alpha = lie.simple_root(i)
        k_exp[i] = tuple(
            0 if a == 0 else 2 * _dot(alpha, lie.weight_of(a))
            for a in range(N + 1))

    rep = NaturalRep(lie, e_col, f_col, k_exp)

    # the tables must respect the weight grading: e_i shifts weight by
    # +alpha_i, f_i by -alpha_i
    for i in range(1, lie.num_gen + 1):
        alpha = lie.simple_root(i)
        for a, img in e_col[i].items():
            for b in img:
                want = tuple(x + y for x, y in zip(lie.weight_of(a), alpha))
                assert lie.weight_of(b) == want
        for a, img in f_col[i].items():
            for b in img:
                want = tuple(x - y for x, y in zip(lie.weight_of(a), alpha))
                assert lie.weight_of(b) == want
    return rep


# ---------------------------------------------------------------------------
# sparse tensor helpers


def tensor_add_term(dest: dict, idx: tuple, c) -> None:
    cur = dest.get(idx)
    if cur is None:
        dest[idx] = c
    else:
        dest[idx] = cur + c


def tensor_prune(t: dict) -> dict:
    return {k: v for k, v in t.items() if not v.is_zero()}


def tensor_sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        tensor_add_term(out, k, -v)
    return tensor_prune(out)


def tensor_scale(t: dict, c) -> dict:
    if c.is_zero():
        return {}
    return {k: v * c for k, v in t.items()}


def tensor_is_zero(t: dict) -> bool:
    return all(v.is_zero() for v in t.values())


def tensor_eq(a: dict, b: dict) -> bool:
    return tensor_is_zero(tensor_sub(a, b))


def weight_of_monomial(lie: LieType, idx: tuple) -> tuple:
    tot = [0] * lie.n
    for a in idx:
        w = lie.weight_of(a)
        for j, x in enumerate(w):
            tot[j] += x
    return tuple(tot)


# ---------------------------------------------------------------------------
# generator actions through the iterated coproduct


def act_generator(rep: NaturalRep, gen: tuple, t: dict) -> dict:
    """Apply e_i, f_i, or k_i^{+-1} to a sparse tensor.

    The coproduct threads k_i through every slot left of where e_i acts,
    and k_i^{-1} through every slot right of where f_i acts; k_i itself
    is grouplike.  Coefficients stay Laurent in u.
    """
    kind, i = gen
    out = {}
    if kind in ('k', 'k-'):
        sign = 1 if kind == 'k' else -1
        kexp = rep.k_exp[i]
        for idx, c in t.items():
            tot = sign * sum(kexp[a] for a in idx)
            out[idx] = c.shift(tot) if tot else c
        return tensor_prune(out)
    if kind == 'e':
        col = rep.e_col[i]
        kexp = rep.k_exp[i]
        for idx, c in t.items():
            pre = 0
            for j, a in enumerate(idx):
                img = col.get(a)
                if img is not None:
                    base = c.shift(pre) if pre else c
                    for b, w in img.items():
                        tensor_add_term(out, idx[:j] + (b,) + idx[j + 1:],
                                        base * w)
                pre += kexp[a]
        return tensor_prune(out)
    if kind == 'f':
        col = rep.f_col[i]
        kexp = rep.k_exp[i]
        for idx, c in t.items():
            suf = -sum(kexp[a] for a in idx)
            for j, a in enumerate(idx):
                suf += kexp[a]
                img = col.get(a)
                if img is not None:
                    base = c.shift(suf) if suf else c
                    for b, w in img.items():
                        tensor_add_term(out, idx[:j] + (b,) + idx[j + 1:],
                                        base * w)
        return tensor_prune(out)
    raise ValueError('unknown generator kind %r' % (kind,))


def act_power(rep: NaturalRep, gen: tuple, k: int, t: dict) -> dict:
    for _ in range(k):
        t = act_generator(rep, gen, t)
    return t


def act_divided_power(rep: NaturalRep, gen: tuple, k: int, t: dict,
                      ring: ScalarRing = None) -> dict:
    """k-th divided power of e_i or f_i applied to a sparse tensor.

    Computed generically and divided by the quantum factorial in the step
    of the acting root.  On the odd orthogonal family the short-root
    columns are not divided-power normalized, so the division can leave a
    denominator dividing a power of u + u^{-1}; such coefficients come
    back as exact fractions, or specialized in `ring`, where that factor
    never vanishes (the cyclotomic order is never 4).  The output is
    terminal: feed it to linear algebra, not to act_generator.
    """
    kind, i = gen
    if kind not in ('e', 'f'):
        raise ValueError('divided powers only exist for e and f')
    if k < 0:
        raise ValueError('negative power')
    cur = act_power(rep, gen, k, t)
    if k <= 1:
        if ring is not None and not ring.is_generic:
            return {idx: ring.spec(c) for idx, c in cur.items()}
        return cur
    fact = qfactorial_u(k, rep.lie.u_step(i))
    out = {}
    for idx, c in cur.items():
        out[idx] = _divide_scalar(c, fact, ring)
    return {k2: v for k2, v in out.items() if not v.is_zero()}


def _divide_scalar(c: LaurentPoly, fact: LaurentPoly, ring):
    """c / fact, exactly when possible, else as a reduced fraction; at a
    root of unity the reduced denominator must not vanish there."""
    try:
        val = c.exact_div(fact)
    except ExactDivisionError:
        val = RationalFunction(c, fact)
    if ring is None or ring.is_generic:
        return val
    if isinstance(val, RationalFunction):
        den = ring.spec(val.den)
        if den.is_zero():
            raise ArithmeticError(
                'divided power denominator vanishes at this root')
        return ring.spec(val.num) * den.inv()
    return ring.spec(val)


# ---------------------------------------------------------------------------
# defining relations, checked as operator identities


def verify_defining_relations(lie: LieType, r: int = 1) -> list:
    """Check the defining relations of the quantized enveloping algebra as
    exact operator identities on rank-r tensor space.  Returns the names
    of violated relations (empty means all hold)."""
    rep = natural_rep(lie)
    gens = range(1, lie.num_gen + 1)
    basis = [idx for idx in itertools.product(range(1, lie.N + 1), repeat=r)]
    a = lie.cartan()
    one = LaurentPoly.one()
    failures = []

    def apply_seq(seq, t):
        # seq of gen tuples, applied right-to-left (left module).
        for g in reversed(seq):
            t = act_generator(rep, g, t)
        return t

    def check(name, fn):
        for idx in basis:
            if not tensor_is_zero(fn({idx: one})):
                failures.append(name)
                return

    for i in gens:
        check('k k^-1 (i=%d)' % i,
              lambda t, i=i: tensor_sub(apply_seq((('k', i), ('k-', i)), t), t))
    for i in gens:
        for j in gens:
            if i < j:
                check('k k commute (%d,%d)' % (i, j),
                      lambda t, i=i, j=j: tensor_sub(
                          apply_seq((('k', i), ('k', j)), t),
                          apply_seq((('k', j), ('k', i)), t)))
            shift = _dot(lie.simple_root(i), lie.simple_root(j))
            for kind, sgn in (('e', 1), ('f', -1)):
                check('k %s k^-1 (%d,%d)' % (kind, i, j),
                      lambda t, i=i, j=j, kind=kind, s=2 * sgn * shift:
                      tensor_sub(
                          apply_seq((('k', i), (kind, j), ('k-', i)), t),
                          {k2: v.shift(s) for k2, v in
                           act_generator(rep, (kind, j), t).items()}))

    for i in gens:
        for j in gens:
            if i != j:
                check('e f commute (%d,%d)' % (i, j),
                      lambda t, i=i, j=j: tensor_sub(
                          apply_seq((('e', i), ('f', j)), t),
                          apply_seq((('f', j), ('e', i)), t)))
    for i in gens:
        s = lie.u_step(i)
        den = LaurentPoly({s: mpq(1), -s: mpq(-1)})

        def cartan_bracket(t, i=i, s=s, den=den):
            lhs = tensor_sub(apply_seq((('e', i), ('f', i)), t),
                             apply_seq((('f', i), ('e', i)), t))
            rhs = {}
            kexp = rep.k_exp[i]
            for idx, c in t.items():
                tot = sum(kexp[x] for x in idx)
                if tot:
                    num = LaurentPoly({tot: mpq(1), -tot: mpq(-1)})
                    tensor_add_term(rhs, idx, c * num.exact_div(den))
            return tensor_sub(lhs, tensor_prune(rhs))

        check('cartan bracket (i=%d)' % i, cartan_bracket)

    for i in gens:
        for j in gens:
            if i == j:
                continue
            m = 1 - a[i - 1][j - 1]
            s = lie.u_step(i)
            for kind in ('e', 'f'):

                def serre(t, i=i, j=j, m=m, s=s, kind=kind):
                    acc = {}
                    for k in range(m + 1):
                        coeff = qbinomial_u(m, k, s)
                        if k % 2:
                            coeff = -coeff
                        seq = ((kind, i),) * (m - k) + ((kind, j),) + \
                              ((kind, i),) * k
                        img = apply_seq(seq, t)
                        for idx, c in img.items():
                            tensor_add_term(acc, idx, c * coeff)
                    return tensor_prune(acc)

                check('serre %s (%d,%d)' % (kind, i, j), serre)

    return failures


# ---------------------------------------------------------------------------
# weight-space enumeration and highest-weight vectors


def pad_weight(lie: LieType, lam) -> tuple:
    """Partition or short coordinate tuple, padded to n coordinates."""
    lam = tuple(lam)
    if len(lam) > lie.n:
        if any(lam[lie.n:]):
            raise ValueError('weight needs more coordinates than the rank')
        lam = lam[:lie.n]
    return lam + (0,) * (lie.n - len(lam))


def weight_monomials(lie: LieType, mu, r: int) -> tuple:
    """All index tuples of rank r whose total weight is mu, in
    lexicographic order."""
    mu = pad_weight(lie, mu)
    N = lie.N
    letters = [(a, lie.weight_of(a)) for a in range(1, N + 1)]
    has_zero = lie.family == 'B'
    out = []
    prefix = []
    need = list(mu)

    def rec(pos):
        rem = r - pos
        l1 = sum(abs(x) for x in need)
        if l1 > rem:
            return
        if not has_zero and (rem - l1) % 2:
            return
        if pos == r:
            out.append(tuple(prefix))
            return
        for a, w in letters:
            for jj, x in enumerate(w):
                if x:
                    need[jj] -= x
            prefix.append(a)
            rec(pos + 1)
            prefix.pop()
            for jj, x in enumerate(w):
                if x:
                    need[jj] += x

    rec(0)
    return tuple(out)


class HwSpace:
    """Result of a highest-weight-vector computation on tensor space.

    basis vectors are dicts over the weight-space monomials with field
    coefficients.  dim_e_only is the kernel dimension when only the plain
    generator actions (no higher divided powers) are imposed; when the
    certified path cannot pin it down exactly it is None and
    e_only_bounds holds the certified (lower, upper) range.
    """

    __slots__ = ('weight', 'monomials', 'dim', 'basis', 'dim_e_only',
                 'e_only_bounds', 'mode')

    def __init__(self, weight, monomials, dim, basis, dim_e_only,
                 e_only_bounds, mode):
        self.weight = weight
        self.monomials = monomials
        self.dim = dim
        self.basis = basis
        self.dim_e_only = dim_e_only
        self.e_only_bounds = e_only_bounds
        self.mode = mode


def _hw_constraint_rows(lie, rep, lam, r, ring, monomials):
    """Rows of the stacked raising-operator constraints on the weight
    space, split into the plain rows (power 1) and the full list."""
    rows_e = []
    rows_all = []
    for i in range(1, lie.num_gen + 1):
        alpha = lie.simple_root(i)
        # plain powers of e_i on each monomial, raised until the target
        # weight space empties or the operator dies on the whole space
        cols = {m: {m: LaurentPoly.one()} for m in monomials}
        k = 0
        while True:
            k += 1
            mu = tuple(x + k * y for x, y in zip(pad_weight(lie, lam), alpha))
            targets = weight_monomials(lie, mu, r)
            if not targets:
                break
            cols = {m: act_generator(rep, ('e', i), t)
                    for m, t in cols.items()}
            if all(not t for t in cols.values()):
                break
            fact = qfactorial_u(k, lie.u_step(i))
            by_target = {}
            for m, t in cols.items():
                for idx, c in t.items():
                    if k > 1:
                        c = _divide_scalar(c, fact, ring)
                        if c.is_zero():
                            continue
                    by_target.setdefault(idx, {})[m] = c
            for idx in sorted(by_target):
                row = by_target[idx]
                rows_all.append(row)
                if k == 1:
                    rows_e.append(row)
    return rows_e, rows_all


def _clear_denominators(vec):
    """Rescale a kernel vector with rational-function entries to a
    proportional vector with Laurent entries of minimal content."""
    common = LaurentPoly.one()
    for val in vec.values():
        if isinstance(val, RationalFunction):
            g = laurent_gcd(common, val.den)
            common = common * val.den.exact_div(g)
    out = {}
    for key, val in vec.items():
        if isinstance(val, RationalFunction):
            out[key] = val.num * common.exact_div(val.den)
        else:
            out[key] = val * common
    g = LaurentPoly()
    for val in out.values():
        g = laurent_gcd(g, val)
    if not g.is_zero() and g != LaurentPoly.one():
        out = {k: v.exact_div(g) for k, v in out.items()}
    shift = -min(v.min_exp() for v in out.values())
    if shift:
        out = {k: v.shift(shift) for k, v in out.items()}
    return out


def hw_space(lie: LieType, lam, r: int, ring: ScalarRing,
             candidates=None, exact_limit: int = 120) -> HwSpace:
    """Exact basis of the highest-weight vectors of weight lam in rank-r
    tensor space over the given ring.

    Small weight spaces are solved by exact kernel computation.  Larger
    ones take a certified route: supplied candidate vectors are verified
    to be killed by every raising operator and divided power, checked
    linearly independent, and a modular rank certificate pins the kernel
    dimension from above; if the certificate cannot close the gap the
    computation falls back to the exact kernel.
    """
    rep = natural_rep(lie)
    weight = pad_weight(lie, lam)
    monomials = weight_monomials(lie, weight, r)
    if not monomials:
        return HwSpace(weight, monomials, 0, [], 0, (0, 0), 'empty')
    rows_e, rows_all = _hw_constraint_rows(lie, rep, lam, r, ring, monomials)

    if len(monomials) <= exact_limit or not candidates:
        kern = nullspace(rows_all, list(monomials), ring=ring)
        if ring.is_generic:
            kern = [_clear_denominators(v) for v in kern]
        dim = len(kern)
        rank_e = matrix_rank(rows_e, ring=ring)
        dim_e = len(monomials) - rank_e
        return HwSpace(weight, monomials, dim, kern, dim_e,
                       (dim_e, dim_e), 'exact')

    # certified route: candidates give the lower bound, a modular rank
    # certificate of the constraint matrix gives the upper bound
    mono_set = set(monomials)
    for vec in candidates:
        if set(vec) - mono_set:
            raise ValueError('candidate leaves the weight space')
        for i in range(1, lie.num_gen + 1):
            alpha = lie.simple_root(i)
            cur = vec
            k = 0
            while True:
                k += 1
                mu = tuple(x + k * y for x, y in zip(weight, alpha))
                if not weight_monomials(lie, mu, r):
                    break
                cur = act_generator(rep, ('e', i), cur)
                if not cur:
                    break
                fact = qfactorial_u(k, lie.u_step(i))
                for c in cur.values():
                    if not _divide_scalar(c, fact, ring).is_zero():
                        raise ValueError(
                            'candidate is not a highest-weight vector')

    red = RowReducer()
    for row in lift_rows(candidates, ring):
        red.add(dict(row))
    lower = red.rank

    cols = len(monomials)
    upper = None
    for skip in range(6):
        ev, p = ring_mod_evaluator(ring, skip)
        try:
            rank_p = mod_rank(rows_all, ev, p)
        except ZeroDivisionError:
            continue
        upper = cols - rank_p
        if upper == lower:
            break
    if upper != lower:
        kern = nullspace(rows_all, list(monomials), ring=ring)
        dim = len(kern)
        rank_e = matrix_rank(rows_e, ring=ring)
        dim_e = len(monomials) - rank_e
        return HwSpace(weight, monomials, dim, kern, dim_e,
                       (dim_e, dim_e), 'exact-fallback')

    basis = lift_rows(candidates, ring)
    # bound the plain-action kernel: it contains the full kernel, so the
    # candidate rank is a lower bound there too
    e_upper = None
    for skip in range(6):
        ev, p = ring_mod_evaluator(ring, skip)
        try:
            rank_p = mod_rank(rows_e, ev, p)
        except ZeroDivisionError:
            continue
        cand = cols - rank_p
        e_upper = cand if e_upper is None else min(e_upper, cand)
        if e_upper == lower:
            break
    dim_e = lower if e_upper == lower else None
    return HwSpace(weight, monomials, lower, basis, dim_e,
                   (lower, e_upper), 'certified')


# ---------------------------------------------------------------------------
# characters: weight multiplicities and the decomposition of tensor space


def _positive_roots(lie: LieType) -> list:
    n, fam = lie.n, lie.family
    roots = []
    for i in range(n):
        for j in range(i + 1, n):
            v = [0] * n
            v[i], v[j] = 1, -1
            roots.append(tuple(v))
            v = [0] * n
            v[i], v[j] = 1, 1
            roots.append(tuple(v))
    if fam == 'B':
        for i in range(n):
            v = [0] * n
            v[i] = 1
            roots.append(tuple(v))
    elif fam == 'C':
        for i in range(n):
            v = [0] * n
            v[i] = 2
            roots.append(tuple(v))
    elif fam != 'D':
        raise ValueError('character routines cover the B/C/D families')
    return roots


def _rho_hat(lie: LieType) -> tuple:
    n, fam = lie.n, lie.family
    if fam == 'B':
        return tuple(mpq(2 * (n - k) + 1, 2) for k in range(1, n + 1))
    if fam == 'C':
        return tuple(mpq(n - k + 1) for k in range(1, n + 1))
    if fam == 'D':
        return tuple(mpq(n - k) for k in range(1, n + 1))
    raise ValueError('character routines cover the B/C/D families')


def dominantize(lie: LieType, vec: tuple) -> tuple:
    """Dominant representative of the orbit of vec under the relevant
    reflection group (signed permutations; only evenly many sign changes
    for the even orthogonal family)."""
    fam = lie.family
    vals = sorted((abs(x) for x in vec), reverse=True)
    if fam == 'D':
        negs = sum(1 for x in vec if x < 0)
        if negs % 2 and all(x != 0 for x in vec):
            vals[-1] = -vals[-1]
    return tuple(vals)


def _in_positive_root_cone(lie: LieType, diff: tuple):
    """Coordinates of diff over the simple roots if they are all
    non-negative integers, else None."""
    n, fam = lie.n, lie.family
    s = 0
    partial = []
    for x in diff:
        s += x
        partial.append(s)
    if fam == 'B':
        coeffs = partial[:n - 1] + [partial[n - 1]]
    elif fam == 'C':
        if partial[n - 1] % 2:
            return None
        coeffs = partial[:n - 1] + [partial[n - 1] // 2]
    else:
        if partial[n - 1] % 2:
            return None
        cn = (partial[n - 1]) // 2
        cn1 = cn - diff[n - 1]
        coeffs = partial[:n - 2] + [cn1, cn]
    if any(c < 0 for c in coeffs):
        return None
    return tuple(coeffs)


def _is_dominant(lie: LieType, vec: tuple) -> bool:
    n, fam = lie.n, lie.family
    if any(vec[i] < vec[i + 1] for i in range(n - 1)):
        return False
    if fam == 'D':
        return vec[n - 2] >= abs(vec[n - 1])
    return vec[n - 1] >= 0


@lru_cache(maxsize=None)
def dominant_weight_multiplicities(lie: LieType, lam: tuple) -> dict:
    """Weight multiplicities of the irreducible highest-weight module,
    tabulated on dominant weights (Freudenthal recursion, exact)."""
    lam = pad_weight(lie, lam)
    if not _is_dominant(lie, lam):
        raise ValueError('highest weight must be dominant')
    roots = _positive_roots(lie)
    rho = _rho_hat(lie)
    size = sum(lam)

    candidates = []
    for tot in range(size, -1, -1):
        for part in _bounded_partitions(tot, lie.n):
            nu = pad_weight(lie, part)
            if _in_positive_root_cone(lie, tuple(a - b for a, b in
                                                 zip(lam, nu))) is not None:
                candidates.append(nu)
    order = sorted(candidates, key=lambda v: (-sum(v), tuple(-x for x in v)))

    lam_rho = tuple(mpq(a) + b for a, b in zip(lam, rho))
    c_lam = sum(x * x for x in lam_rho)
    mult = {}
    for nu in order:
        if nu == lam:
            mult[nu] = 1
            continue
        total = 0
        for alpha in roots:
            k = 0
            while True:
                k += 1
                om = tuple(a + k * b for a, b in zip(nu, alpha))
                dom = dominantize(lie, om)
                m = mult.get(dom)
                if m is None:
                    break
                total += m * _dot(om, alpha)
        nu_rho = tuple(mpq(a) + b for a, b in zip(nu, rho))
        den = c_lam - sum(x * x for x in nu_rho)
        val = mpq(2 * total) / den
        assert val.denominator == 1 and val >= 0
        if val:
            mult[nu] = int(val)
    return mult


def _bounded_partitions(tot: int, parts: int):
    out = []

    def rec(rem, mx, cur):
        if rem == 0:
            out.append(tuple(cur))
            return
        if len(cur) == parts:
            return
        for p in range(min(rem, mx), 0, -1):
            cur.append(p)
            rec(rem - p, p, cur)
            cur.pop()

    rec(tot, tot, [])
    return out


def _weyl_orbit(lie: LieType, nu: tuple):
    """All distinct images of a dominant weight under the reflection
    group."""
    fam = lie.family
    seen = set()
    vals = list(nu)
    for perm in set(itertools.permutations(vals)):
        nonzero = [i for i, x in enumerate(perm) if x != 0]
        for flips in itertools.product((1, -1), repeat=len(nonzero)):
            if fam == 'D' and len(nonzero) == len(perm):
                if sum(1 for s in flips if s < 0) % 2:
                    continue
            out = list(perm)
            for pos, s in zip(nonzero, flips):
                out[pos] *= s
            seen.add(tuple(out))
    return seen


def full_weight_multiplicities(lie: LieType, lam: tuple) -> dict:
    dom = dominant_weight_multiplicities(lie, pad_weight(lie, lam))
    out = {}
    for nu, m in dom.items():
        for w in _weyl_orbit(lie, nu):
            out[w] = m
    return out


def weyl_dim(lie: LieType, lam) -> int:
    """Dimension of the irreducible highest-weight module, by the
    product-over-positive-roots formula."""
    lam = pad_weight(lie, lam)
    rho = _rho_hat(lie)
    num = mpq(1)
    lam_rho = tuple(mpq(a) + b for a, b in zip(lam, rho))
    for alpha in _positive_roots(lie):
        num *= mpq(sum(a * b for a, b in zip(lam_rho, alpha)),
                   1) / sum(a * b for a, b in zip(rho, alpha))
    assert num.denominator == 1
    return int(num)


def tensor_weight_multiplicities(lie: LieType, r: int) -> dict:
    """Weight multiplicities of rank-r tensor space, by convolution."""
    cur = {(0,) * lie.n: 1}
    letters = [lie.weight_of(a) for a in range(1, lie.N + 1)]
    for _ in range(r):
        nxt = {}
        for wt, m in cur.items():
            for w in letters:
                key = tuple(a + b for a, b in zip(wt, w))
                nxt[key] = nxt.get(key, 0) + m
        cur = nxt
    return cur


def weyl_multiplicities(lie: LieType, r: int) -> dict:
    """Multiplicities of the irreducible highest-weight modules in rank-r
    tensor space, keyed by (f, partition) with f = (r - |partition|)/2.

    Computed by peeling characters down the dominance order from exact
    weight multiplicities; cross-checked against total dimension.
    """
    fam, n = lie.family, lie.n
    if fam == 'A':
        raise ValueError('character routines cover the B/C/D families')
    if fam == 'C':
        if n < r:
            raise ValueError('rank too small for faithful tensor space')
    elif n <= r:
        raise ValueError('rank too small for faithful tensor space')

    remaining = dict(tensor_weight_multiplicities(lie, r))
    dominant = [wt for wt in remaining if _is_dominant(lie, wt)]
    dominant.sort(key=lambda v: (-sum(v), tuple(-x for x in v)))

    out = {}
    for mu in dominant:
        m = remaining.get(mu, 0)
        if m == 0:
            continue
        assert m > 0, 'character inversion went negative'
        for wt, c in full_weight_multiplicities(lie, mu).items():
            remaining[wt] = remaining.get(wt, 0) - m * c
            if remaining[wt] == 0:
                del remaining[wt]
        part = tuple(x for x in mu if x)
        size = sum(part)
        assert (r - size) % 2 == 0, 'multiplicity outside the label set'
        out[((r - size) // 2, part)] = m

    assert not remaining, 'character inversion left residue'
    total = sum(m * weyl_dim(lie, pad_weight(lie, mu)) for (f, mu), m in
                out.items())
    assert total == lie.N ** r
    return out
