"""Iwahori-Hecke algebra of the symmetric group with the quadratic
relation (g_i - q)(g_i + q^-1) = 0, the signed Murphy basis, and the
Specht-module decomposition data it produces at a root of unity.

Deliberately self-contained: everything here comes from permutation
combinatorics, structure constants on the group basis, and exact
linear algebra.  It never touches the tensor-space machinery, so it
can serve as an independent cross-check for the top layer of the big
diagram algebra, whose braid generators satisfy the same quadratic
relation modulo the contraction ideal.
"""

import itertools
import math

from gmpy2 import mpq

from .scalars import LaurentPoly, ScalarRing
from .linalg import (RowReducer, field_for, lift_rows, nullspace,
                     scalar_to_int)
from .combin import (
    dominates,
    partitions,
    perm_identity,
    perm_inv,
    reduced_word,
    std_tableaux,
    tableau_perm,
    young_subgroup,
)


class Hecke:
    """The algebra on r strands over a scalar ring, in the group basis
    {g_w}.  Elements are dicts mapping one-line permutations to
    scalars; multiplication runs the standard length recursion."""

    def __init__(self, r: int, ring: ScalarRing):
        self.r = r
        self.ring = ring
        self.perms = sorted(itertools.permutations(range(1, r + 1)))
        self.delta = ring.spec(LaurentPoly({2: mpq(1), -2: mpq(-1)}))

    def one(self) -> dict:
        return {perm_identity(self.r): self.ring.one()}

    def right_gen(self, x: dict, i: int) -> dict:
        """x * g_i: swap the values i, i+1 of each word, picking up the
        delta term when the length goes down."""
        out = {}
        for w, c in x.items():
            pi, pj = w.index(i), w.index(i + 1)
            ws = list(w)
            ws[pi], ws[pj] = i + 1, i
            ws = tuple(ws)
            s = out.get(ws)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(ws, None)
            else:
                out[ws] = s
            if pi > pj:
                s = out.get(w)
                d = c * self.delta
                s = d if s is None else s + d
                if s.is_zero():
                    out.pop(w, None)
                else:
                    out[w] = s
        return out

    def right_word(self, x: dict, w: tuple) -> dict:
        for i in reduced_word(w):
            x = self.right_gen(x, i)
        return x

    def mult(self, x: dict, y: dict) -> dict:
        out = {}
        for wy, cy in y.items():
            term = self.right_word({w: c * cy for w, c in x.items()}, wy)
            for w, c in term.items():
                s = out.get(w)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(w, None)
                else:
                    out[w] = s
        return out

    def star(self, x: dict) -> dict:
        """The anti-involution fixing every generator: g_w -> g_{w^-1}."""
        return {perm_inv(w): c for w, c in x.items()}

    def n_lam(self, lam: tuple) -> dict:
        out = {}
        for w, l in young_subgroup(lam, self.r):
            sign = 1 if l % 2 == 0 else -1
            out[w] = self.ring.spec(LaurentPoly.u_power(-2 * l, sign))
        return out

    def n_st(self, lam: tuple, s: tuple, t: tuple) -> dict:
        """g*_{d(s)} n_lam g_{d(t)}."""
        x = {perm_inv(tableau_perm(s)): self.ring.one()}
        x = self.mult(x, self.n_lam(lam))
        return self.right_word(x, tableau_perm(t))


def _mat_mult(a, b, field):
    out = []
    for row in a:
        acc = {}
        for mid, c in row.items():
            for u, d in b[mid].items():
                s = acc.get(u)
                p = c * d
                acc[u] = p if s is None else s + p
        out.append({u: v for u, v in acc.items() if not v.is_zero()})
    return out


def _mat_trace(rows, field):
    tr = field.zero
    for t, row in enumerate(rows):
        c = row.get(t)
        if c is not None:
            tr = tr + c
    return tr


class HeckeCells:
    """Cell modules of the signed Murphy basis: per-partition generator
    action matrices, Gram matrices from structure constants, and word
    action matrices derived from them."""

    def __init__(self, r: int, ring: ScalarRing):
        self.alg = Hecke(r, ring)
        self.ring = ring
        self.r = r
        self.field = field_for(ring)
        self.lams = [tuple(lam) for lam in partitions(r)]
        self.tabs = {lam: std_tableaux(lam) for lam in self.lams}
        self._gen = {}
        self._word = {}
        # transition from the group basis to the Murphy basis
        self.red = RowReducer(track=True)
        self.murphy = {}
        for lam in self.lams:
            for si in range(len(self.tabs[lam])):
                for ti in range(len(self.tabs[lam])):
                    s, t = self.tabs[lam][si], self.tabs[lam][ti]
                    elem = self.alg.n_st(lam, s, t)
                    self.murphy[(lam, si, ti)] = elem
                    ok = self.red.add(lift_rows([elem], ring)[0],
                                      (lam, si, ti))
                    assert ok, 'Murphy family is dependent'
        assert self.red.rank == len(self.alg.perms)

    def express(self, x: dict) -> dict:
        co = self.red.express(lift_rows([x], self.ring)[0])
        assert co is not None
        return co

    def gen_matrix(self, lam: tuple, i: int):
        """Right action of g_i on the cell module of lam, rows indexed
        by standard tableaux.  Structure constants are read off the
        Murphy expansion; spill terms must sit at strictly more
        dominant cells, which is asserted."""
        got = self._gen.get((lam, i))
        if got is not None:
            return got
        dim = len(self.tabs[lam])
        mat = []
        for ti in range(dim):
            prod = self.alg.right_gen(self.murphy[(lam, 0, ti)], i)
            row = {}
            for (mu, si, ui), c in self.express(prod).items():
                if mu == lam:
                    assert si == 0, 'cell action broke the left index'
                    row[ui] = c
                else:
                    assert dominates(mu, lam) and mu != lam, \
                        'cell spill out of order: %r under %r' % (mu, lam)
            mat.append(row)
        self._gen[(lam, i)] = mat
        return mat

    def word_matrix(self, lam: tuple, w: tuple):
        got = self._word.get((lam, w))
        if got is not None:
            return got
        word = reduced_word(w)
        if not word:
            dim = len(self.tabs[lam])
            rows = [{t: self.field.one} for t in range(dim)]
        else:
            prefix = perm_identity(self.r)
            for i in word[:-1]:
                cur = list(prefix)
                pi, pj = cur.index(i), cur.index(i + 1)
                cur[pi], cur[pj] = i + 1, i
                prefix = tuple(cur)
            rows = _mat_mult(self.word_matrix(lam, prefix),
                             self.gen_matrix(lam, word[-1]), self.field)
        self._word[(lam, w)] = rows
        return rows

    def gram(self, lam: tuple):
        """G[t][u]: coefficient of n_{s0 s0} in (n_{s0 t})(n_{u s0}),
        the invariant-form matrix of the cell module."""
        dim = len(self.tabs[lam])
        out = []
        for ti in range(dim):
            row = []
            for ui in range(dim):
                prod = self.alg.mult(self.murphy[(lam, 0, ti)],
                                     self.murphy[(lam, ui, 0)])
                val = self.field.zero
                for (mu, si, vi), c in self.express(prod).items():
                    if mu == lam:
                        assert (si, vi) == (0, 0), 'form extraction slipped'
                        val = c
                    else:
                        assert dominates(mu, lam) and mu != lam
                row.append(val)
            out.append(row)
        return out


def hecke_decomposition(r: int, ring: ScalarRing):
    """Decomposition matrix of the algebra on r strands over the ring.

    Returns (row_labels, col_labels, matrix, cell_dims, simple_dims).
    Rows run over all partitions of r (descending lex); columns over
    partitions whose cell Gram is nonzero; matrix[i][j] is the
    multiplicity of the j-th simple in the i-th cell module, obtained
    by solving the character identity of the composition series on the
    group basis.  Over a generic ring the matrix is the identity.
    """
    cells = HeckeCells(r, ring)
    alg, field = cells.alg, cells.field
    lams = cells.lams
    perms = alg.perms

    # regular trace form on the group basis
    prod = {}
    for v in perms:
        xv = {v: ring.one()}
        for w in perms:
            prod[(v, w)] = alg.right_word(dict(xv), w)
    tau = {}
    for y in perms:
        tot = None
        for z in perms:
            c = prod[(z, y)].get(z)
            if c is not None:
                tot = c if tot is None else tot + c
        if tot is not None and not tot.is_zero():
            tau[y] = tot
    trace_rows = []
    for v in perms:
        row = {}
        for wi, w in enumerate(perms):
            tot = None
            for y, c in prod[(v, w)].items():
                t = tau.get(y)
                if t is None:
                    continue
                term = c * t
                tot = term if tot is None else tot + term
            if tot is not None and not tot.is_zero():
                row[wi] = tot
        trace_rows.append(row)
    radical = nullspace(trace_rows, range(len(perms)), ring=ring)

    # cell characters, radical-quotient characters, and simple columns
    cols = []
    cell_dims, simple_dims = {}, {}
    simple_char = {}
    cell_char = {}
    for lam in lams:
        dim = len(cells.tabs[lam])
        cell_dims[lam] = dim
        char = {}
        for wi, w in enumerate(perms):
            tr = _mat_trace(cells.word_matrix(lam, w), field)
            if not tr.is_zero():
                char[wi] = tr
        cell_char[lam] = char
        gram_zero = all(v.is_zero()
                        for row in cells.gram(lam) for v in row)
        if gram_zero:
            continue
        # radical of the module: span of the radical's action images
        jc = RowReducer(track=True)
        jc_basis = []
        for x in radical:
            mats = None
            acc = [dict() for _ in range(dim)]
            for vi, c in x.items():
                wmat = cells.word_matrix(lam, perms[vi])
                for t in range(dim):
                    for u, d in wmat[t].items():
                        s = acc[t].get(u)
                        p = c * d
                        acc[t][u] = p if s is None else s + p
            for t in range(dim):
                vec = {u: v for u, v in acc[t].items()
                       if not v.is_zero()}
                if vec and jc.add(vec, len(jc_basis)):
                    jc_basis.append(vec)
        simple_dims[lam] = dim - len(jc_basis)
        assert simple_dims[lam] > 0
        # character of the head: cell character minus the trace on the
        # radical submodule
        char = dict(cell_char[lam])
        for wi, w in enumerate(perms):
            wmat = cells.word_matrix(lam, w)
            tr = field.zero
            for k, b in enumerate(jc_basis):
                img = {}
                for t, c in b.items():
                    for u, d in wmat[t].items():
                        s = img.get(u)
                        p = c * d
                        img[u] = p if s is None else s + p
                img = {u: v for u, v in img.items() if not v.is_zero()}
                co = jc.express(img)
                assert co is not None, 'radical is not a submodule'
                c = co.get(k)
                if c is not None:
                    tr = tr + c
            if not tr.is_zero():
                cur = char.get(wi, field.zero) - tr
                if cur.is_zero():
                    char.pop(wi, None)
                else:
                    char[wi] = cur
        simple_char[lam] = char
        cols.append(lam)

    solver = RowReducer(track=True)
    for lam in cols:
        ok = solver.add(dict(simple_char[lam]), lam)
        assert ok, 'simple characters are dependent'
    matrix = []
    for mu in lams:
        co = solver.express(dict(cell_char[mu]))
        assert co is not None, 'cell character outside simple span'
        row = []
        for lam in cols:
            c = co.get(lam)
            if c is None:
                row.append(0)
            else:
                k = scalar_to_int(c)
                assert k is not None and k >= 0, 'non-integral multiplicity'
                row.append(k)
        matrix.append(row)
        total = sum(k * simple_dims[lam] for k, lam in zip(row, cols))
        assert total == cell_dims[mu], 'composition series does not fill'
    return lams, cols, matrix, cell_dims, simple_dims
