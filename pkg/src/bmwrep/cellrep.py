"""Cell modules realized inside tensor space, and everything built on
top of them: Jacobson radical, simple quotients, characters, and
decomposition matrices.

The pipeline realizes each cell module as the span of explicitly
constructed highest-weight vectors, reads off exact action matrices
for the diagram-word basis, recovers the radical from the trace form
of the regular representation (using the cell filtration, where each
cell module enters with multiplicity equal to its own dimension),
peels simple characters along the dominance order, and finally solves
every cell character against the simple characters.

For the odd orthogonal family the module structure on the span is
twisted by the diagram automorphism T_i -> T_{r-i}; the twist is an
autoequivalence, so all multiplicities agree with the untwisted
labels.
"""

import os
from concurrent.futures import ThreadPoolExecutor

from .scalars import LaurentPoly, ScalarRing
from .linalg import (RowReducer, field_for, lift_rows, mod_rank, nullspace,
                     ring_mod_evaluator, scalar_to_int)
from .combin import (cell_labels, conjugate, coset_reps, label_dominates,
                     partitions, perm_embed, std_tableaux, t_col,
                     tableau_perm)
from .qgroup import LieType, minimal_rank
from .bmwalg import (ProbeFrame, bmw_dim, cellular_basis, e_block_word,
                     elem_mul, enyang_basis, n_element, word_for_perm)
from .tensorop import slot_ops


# ---------------------------------------------------------------------------
# small dense-ish matrices as lists of dict rows (row-vector convention:
# row s of matrix(b) holds the coordinates of basis_s . b)
# ---------------------------------------------------------------------------

def _mat_identity(d: int, field):
    return [{i: field.one} for i in range(d)]


def _mat_mult(a, b):
    out = []
    for row in a:
        acc = {}
        for k, c in row.items():
            for j, v in b[k].items():
                s = acc.get(j)
                p = c * v
                acc[j] = p if s is None else s + p
        out.append({j: v for j, v in acc.items() if not v.is_zero()})
    return out


def _mat_trace(rows, field):
    tot = field.zero
    for i, row in enumerate(rows):
        c = row.get(i)
        if c is not None:
            tot = tot + c
    return tot


def _trace_product(a, b, field):
    """tr(a.b) without forming the product."""
    tot = field.zero
    for s, row in enumerate(a):
        for t, c in row.items():
            d = b[t].get(s)
            if d is not None:
                tot = tot + c * d
    return tot


def _lift_scalar(field, c):
    # ring scalars are LaurentPoly only in the generic ring or in inputs
    # that were never specialized; field elements pass through
    if isinstance(c, LaurentPoly):
        return field.lift(c)
    return c


def _vec_mat(vec: dict, rows):
    acc = {}
    for k, c in vec.items():
        for j, v in rows[k].items():
            s = acc.get(j)
            p = c * v
            acc[j] = p if s is None else s + p
    return {j: v for j, v in acc.items() if not v.is_zero()}


# ---------------------------------------------------------------------------
# one cell module
# ---------------------------------------------------------------------------

class CellModule:
    """A cell module realized as a span of highest-weight vectors.

    The label is (f, kappa): f contraction layers plus a partition
    kappa of r - 2f.  The span consists of the highest-weight vectors
    of weight conjugate(kappa), built by pushing a seed monomial
    through the contraction floor, the column symmetrizer of the
    weight, and the tableau/transversal words.
    """

    __slots__ = ('lie', 'r', 'ring', 'field', 'label', 'f', 'kappa',
                 'lam', 'dim', 'ops', 'monomial_count', 'raw_basis',
                 'frame', '_letters', '_words')

    def __init__(self, lie: LieType, r: int, ring: ScalarRing, label):
        f, kappa = label
        kappa = tuple(kappa)
        assert 0 <= 2 * f <= r and sum(kappa) == r - 2 * f
        assert lie.n >= minimal_rank(lie.family, r)
        self.lie = lie
        self.r = r
        self.ring = ring
        self.field = field_for(ring)
        self.label = (f, kappa)
        self.f = f
        self.kappa = kappa
        self.lam = conjugate(kappa)
        self.ops = slot_ops(lie, ring)
        self.raw_basis = self._build_vectors()
        self.dim = len(self.raw_basis)
        assert self.dim == len(std_tableaux(kappa)) * len(coset_reps(r, f))
        self.frame = RowReducer(track=True)
        for i, vec in enumerate(lift_rows(self.raw_basis, ring)):
            ok = self.frame.add(vec, i)
            assert ok, 'constructed cell vectors are dependent: %r' % (label,)
        self.monomial_count = len({m for v in self.raw_basis for m in v})
        self._letters = {}
        self._words = {(): _mat_identity(self.dim, self.field)}

    def _build_vectors(self):
        lie, ring, ops = self.lie, self.ring, self.ops
        f, r, lam = self.f, self.r, self.lam
        seed = []
        for _ in range(f):
            seed.append(1)
            seed.append(lie.prime(1))
        for row, width in enumerate(lam, 1):
            seed.extend([row] * width)
        t0 = {tuple(seed): ring.one()}
        wlam = tableau_perm(t_col(lam))
        prefix = e_block_word(f) + word_for_perm(perm_embed(wlam, r, 2 * f))
        t0 = ops.apply_word(prefix, t0)
        t0 = ops.apply_element(
            n_element(self.kappa, r, ring, shift=2 * f).items(), t0)
        out = []
        for t in std_tableaux(self.kappa):
            dt = word_for_perm(perm_embed(tableau_perm(t), r, 2 * f))
            base = ops.apply_word(dt, t0)
            for d in coset_reps(r, f):
                vec = ops.apply_word(word_for_perm(d), base)
                assert vec, 'cell vector vanished: %r' % (self.label,)
                out.append(vec)
        return out

    def tensor_letter(self, letter):
        """Tensor-space letter realizing an abstract generator letter.
        The odd orthogonal family acts through the diagram flip."""
        if self.lie.family == 'B':
            return (letter[0], self.r - letter[1])
        return letter

    def letter_matrix(self, letter):
        letter = (letter[0], letter[1])
        m = self._letters.get(letter)
        if m is None:
            m = []
            for vec in self.raw_basis:
                img = self.ops.apply_letter(self.tensor_letter(letter), vec)
                co = self.frame.express(lift_rows([img], self.ring)[0])
                assert co is not None, \
                    'span not stable under %r at %r' % (letter, self.label)
                m.append(co)
            self._letters[letter] = m
        return m

    def word_matrix(self, word):
        word = tuple(word)
        m = self._words.get(word)
        if m is None:
            m = _mat_mult(self.word_matrix(word[:-1]),
                          self.letter_matrix(word[-1]))
            self._words[word] = m
        return m

    def element_matrix(self, elem: dict):
        """Action matrix of a word combination with ring coefficients."""
        acc = [dict() for _ in range(self.dim)]
        for word, c in elem.items():
            cl = _lift_scalar(self.field, c)
            for s, row in enumerate(self.word_matrix(word)):
                tgt = acc[s]
                for j, v in row.items():
                    p = cl * v
                    old = tgt.get(j)
                    tgt[j] = p if old is None else old + p
        return [{j: v for j, v in row.items() if not v.is_zero()}
                for row in acc]


def build_cell_module(lie: LieType, r: int, ring: ScalarRing,
                      label) -> CellModule:
    return CellModule(lie, r, ring, label)


class SimpleModule:
    """A nonzero simple quotient of a cell module."""

    __slots__ = ('label', 'dim', 'action', 'character')

    def __init__(self, label, dim, action, character):
        self.label = label
        self.dim = dim
        self.action = action
        self.character = character


class Decomposition:
    """Rows over all cell labels, columns over the nonzero simples."""

    __slots__ = ('lie', 'r', 'ring', 'rows', 'cols', 'entries',
                 'cell_dims', 'simple_dims')

    def __init__(self, lie, r, ring, rows, cols, entries, cell_dims,
                 simple_dims):
        self.lie = lie
        self.r = r
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.entries = entries
        self.cell_dims = cell_dims
        self.simple_dims = simple_dims


# ---------------------------------------------------------------------------
# the pipeline
# ---------------------------------------------------------------------------

_UNSET = object()


class BmwRep:
    """Shared state for one (lie, r, ring) decomposition run.

    Modules are built independently per label (in a thread pool when
    BMW_THREADS asks for one); the radical is a single synchronized
    phase; characters and the final solves reuse everything.
    """

    def __init__(self, lie: LieType, r: int, ring: ScalarRing,
                 threads: int = None):
        self.lie = lie
        self.r = r
        self.ring = ring
        self.field = field_for(ring)
        self.labels = cell_labels(r)
        self.words, _ = enyang_basis(r)
        if threads is None:
            threads = int(os.environ.get('BMW_THREADS', '1') or '1')
        self.threads = max(1, threads)
        self._modules = None
        self._chars = None
        self._radical = _UNSET
        self._heads = None
        self._simples = None

    @property
    def modules(self) -> dict:
        if self._modules is None:
            if self.threads > 1:
                with ThreadPoolExecutor(max_workers=self.threads) as pool:
                    built = list(pool.map(
                        lambda lab: CellModule(self.lie, self.r, self.ring,
                                               lab),
                        self.labels))
            else:
                built = [CellModule(self.lie, self.r, self.ring, lab)
                         for lab in self.labels]
            self._modules = dict(zip(self.labels, built))
        return self._modules

    def cell_dims(self) -> dict:
        return {lab: mod.dim for lab, mod in self.modules.items()}

    def characters(self) -> dict:
        """Cell characters as vectors over the word-basis indices."""
        if self._chars is None:
            out = {}
            for lab in self.labels:
                mod = self.modules[lab]
                vec = {}
                for i, w in enumerate(self.words):
                    tr = _mat_trace(mod.word_matrix(w), self.field)
                    if not tr.is_zero():
                        vec[i] = tr
                out[lab] = vec
            self._chars = out
        return self._chars

    # -- radical ------------------------------------------------------

    def radical(self) -> list:
        """Basis of the radical of the regular trace form, as coefficient
        vectors over the word-basis indices."""
        if self._radical is not _UNSET:
            return self._radical
        if self.ring.is_generic and self._full_rank_certificate():
            self._radical = []
            return self._radical
        dim = len(self.words)
        mats = {lab: [self.modules[lab].word_matrix(w) for w in self.words]
                for lab in self.labels}
        rows = [dict() for _ in range(dim)]
        for lab in self.labels:
            mlist = mats[lab]
            mult = _lift_scalar(self.field, self.ring.from_int(
                self.modules[lab].dim))
            for i in range(dim):
                ai = mlist[i]
                for j in range(i, dim):
                    v = _trace_product(ai, mlist[j], self.field)
                    if v.is_zero():
                        continue
                    v = mult * v
                    old = rows[i].get(j)
                    rows[i][j] = v if old is None else old + v
                    if j != i:
                        old = rows[j].get(i)
                        rows[j][i] = v if old is None else old + v
        rows = [{j: v for j, v in row.items() if not v.is_zero()}
                for row in rows]
        self._radical = nullspace(rows, range(dim), field=self.field)
        return self._radical

    def _full_rank_certificate(self) -> bool:
        """Modular full-rank witness for the trace form.  Specializing a
        point never raises rank, so full rank mod p proves zero radical
        exactly; anything short of full rank proves nothing and falls
        back to the exact route."""
        dim = len(self.words)
        for skip in range(3):
            try:
                ev, p = ring_mod_evaluator(self.ring, skip)
                rows = [dict() for _ in range(dim)]
                for lab in self.labels:
                    mod = self.modules[lab]
                    mlist = _word_mats_mod(mod, self.words, ev, p)
                    for i in range(dim):
                        ai = mlist[i]
                        for j in range(i, dim):
                            t = 0
                            for s, row in enumerate(ai):
                                bj = mlist[j]
                                for u, c in row.items():
                                    d = bj[u].get(s)
                                    if d is not None:
                                        t += c * d
                            t = t * mod.dim % p
                            if t:
                                rows[i][j] = (rows[i].get(j, 0) + t) % p
                                if j != i:
                                    rows[j][i] = rows[i][j]
                rows = [{j: v for j, v in row.items() if v % p}
                        for row in rows]
                if mod_rank(rows, lambda x: x, p) == dim:
                    return True
            except ZeroDivisionError:
                continue
        return False

    # -- simple quotients ---------------------------------------------

    def _peel_order(self):
        out = []
        for f in range(self.r // 2 + 1):
            for lam in reversed(partitions(self.r - 2 * f)):
                out.append((f, lam))
        return out

    def _radical_submodule(self, label):
        """Frame and basis of C.J inside the module's coordinates."""
        mod = self.modules[label]
        jc = RowReducer(track=True)
        basis = []
        for x in self.radical():
            acc = [dict() for _ in range(mod.dim)]
            for wi, c in x.items():
                wmat = mod.word_matrix(self.words[wi])
                for t in range(mod.dim):
                    tgt = acc[t]
                    for u, d in wmat[t].items():
                        p = c * d
                        old = tgt.get(u)
                        tgt[u] = p if old is None else old + p
            for t in range(mod.dim):
                vec = {u: v for u, v in acc[t].items() if not v.is_zero()}
                if vec and jc.add(dict(vec), len(basis)):
                    basis.append(vec)
        return jc, basis

    def heads(self) -> dict:
        """label -> (radical-submodule rank, head dimension, head character)."""
        if self._heads is None:
            chars = self.characters()
            out = {}
            for lab in self.labels:
                mod = self.modules[lab]
                jc, basis = self._radical_submodule(lab)
                h = dict(chars[lab])
                for wi, w in enumerate(self.words):
                    if not basis:
                        break
                    wmat = mod.word_matrix(w)
                    tr = self.field.zero
                    for k, b in enumerate(basis):
                        co = jc.express(_vec_mat(b, wmat))
                        assert co is not None, 'C.J is not a submodule'
                        c = co.get(k)
                        if c is not None:
                            tr = tr + c
                    if not tr.is_zero():
                        old = h.get(wi, self.field.zero)
                        s = old - tr
                        if s.is_zero():
                            h.pop(wi, None)
                        else:
                            h[wi] = s
                out[lab] = (len(basis), mod.dim - len(basis), h)
            self._heads = out
        return self._heads

    def simples(self) -> dict:
        """label -> (dim, character) for the labels whose simple quotient
        is nonzero.

        Recognition works by peeling along the dominance order: the head
        of a cell module either is the label's own simple (one new
        character, independent of everything below) or, when the cell
        form vanishes, a sum of strictly dominated simples already seen.
        """
        if self._simples is None:
            heads = self.heads()
            known = {}
            solver = RowReducer(track=True)
            for lab in self._peel_order():
                jc_rank, head_dim, h = heads[lab]
                co = solver.express(dict(h))
                if co is None:
                    assert head_dim > 0
                    ok = solver.add(dict(h), lab)
                    assert ok
                    known[lab] = (head_dim, h)
                    continue
                total = 0
                for mu, c in co.items():
                    k = scalar_to_int(c)
                    assert k is not None and k >= 0, \
                        'head multiplicities must be counts: %r' % (lab,)
                    if k:
                        assert mu != lab and label_dominates(lab, mu)
                        total += k * known[mu][0]
                assert total == head_dim, 'head dimension mismatch: %r' % (lab,)
            self._simples = known
        return self._simples

    # -- the matrix ----------------------------------------------------

    def decomposition(self) -> Decomposition:
        cell_dims = self.cell_dims()
        if not self.radical():
            # semisimple: every cell module is already simple
            n = len(self.labels)
            entries = [[1 if i == j else 0 for j in range(n)]
                       for i in range(n)]
            return Decomposition(self.lie, self.r, self.ring,
                                 list(self.labels), list(self.labels),
                                 entries, cell_dims, dict(cell_dims))
        simples = self.simples()
        chars = self.characters()
        cols = [lab for lab in self.labels if lab in simples]
        solver = RowReducer(track=True)
        for lab in cols:
            ok = solver.add(dict(simples[lab][1]), lab)
            assert ok, 'simple characters are dependent'
        simple_dims = {lab: simples[lab][0] for lab in cols}
        entries = []
        for lab in self.labels:
            co = solver.express(dict(chars[lab]))
            assert co is not None, 'cell character outside the simple span'
            row = []
            for col in cols:
                c = co.get(col)
                k = 0 if c is None else scalar_to_int(c)
                assert k is not None and k >= 0, \
                    'multiplicity must be a count: %r %r' % (lab, col)
                if k and col != lab:
                    assert label_dominates(lab, col), \
                        'dominance violated at %r %r' % (lab, col)
                row.append(k)
            if lab in simples:
                assert row[cols.index(lab)] == 1, 'diagonal must be 1'
            total = sum(k * simple_dims[col] for k, col in zip(row, cols))
            assert total == cell_dims[lab], 'row sum mismatch: %r' % (lab,)
            entries.append(row)
        return Decomposition(self.lie, self.r, self.ring, list(self.labels),
                             cols, entries, cell_dims, simple_dims)


def _word_mats_mod(module: CellModule, words, ev, p: int):
    """Word action matrices of the module specialized into GF(p)."""
    letters = {}
    cache = {(): [{i: 1} for i in range(module.dim)]}

    def letter_mod(letter):
        m = letters.get(letter)
        if m is None:
            m = [{j: ev(v) % p for j, v in row.items() if ev(v) % p}
                 for row in module.letter_matrix(letter)]
            letters[letter] = m
        return m

    def rec(word):
        m = cache.get(word)
        if m is None:
            a = rec(word[:-1])
            b = letter_mod(word[-1])
            m = []
            for row in a:
                acc = {}
                for k, c in row.items():
                    for j, v in b[k].items():
                        acc[j] = (acc.get(j, 0) + c * v) % p
                m.append({j: v for j, v in acc.items() if v})
            cache[word] = m
        return m

    return [rec(tuple(w)) for w in words]


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def jacobson_radical(lie: LieType, r: int, ring: ScalarRing,
                     rep: BmwRep = None) -> list:
    """Radical of the trace form of the regular representation, as exact
    coefficient vectors over the word basis."""
    if rep is None:
        rep = BmwRep(lie, r, ring)
    return rep.radical()


def simple_quotients(lie: LieType, r: int, ring: ScalarRing,
                     rep: BmwRep = None) -> list:
    """The nonzero simple quotients, with generator matrices on the
    quotient coordinates and the character over the word basis."""
    if rep is None:
        rep = BmwRep(lie, r, ring)
    simples = rep.simples()
    out = []
    for lab in rep.labels:
        if lab not in simples:
            continue
        dim, char = simples[lab]
        mod = rep.modules[lab]
        jc, _ = rep._radical_submodule(lab)
        free = [i for i in range(mod.dim) if i not in jc.pivot_of]
        assert len(free) == dim
        pos = {i: k for k, i in enumerate(free)}
        action = {}
        for letter in _generator_letters(r):
            rows = []
            for i in free:
                img = jc.residual(dict(mod.letter_matrix(letter)[i]))
                assert all(j in pos for j in img), 'projection escaped'
                rows.append({pos[j]: v for j, v in img.items()})
            action[letter] = rows
        out.append(SimpleModule(lab, dim, action, char))
    return out


def _generator_letters(r: int):
    return [('T', i) for i in range(1, r)] + [('E', i) for i in range(1, r)]


def decomposition_matrix(lie: LieType, r: int, ring: ScalarRing,
                         threads: int = None) -> Decomposition:
    return BmwRep(lie, r, ring, threads=threads).decomposition()


def tilting_report(dec: Decomposition):
    """Tilting-module Weyl multiplicities read off the decomposition
    matrix: the multiplicity of the Weyl module of nu' in the tilting
    module of kappa' equals the matrix entry at row (l, nu), column
    (f, kappa).  Returns (tilting_labels, weyl_labels, table) with the
    partition labels conjugated accordingly."""
    tilt = [(f, conjugate(kappa)) for f, kappa in dec.cols]
    weyl = [(l, conjugate(nu)) for l, nu in dec.rows]
    table = [[dec.entries[j][i] for j in range(len(dec.rows))]
             for i in range(len(dec.cols))]
    return tilt, weyl, table


def hom_space(m: CellModule, n: CellModule) -> int:
    """Dimension of the space of maps commuting with every generator."""
    assert m.lie == n.lie and m.r == n.r and m.ring.key() == n.ring.key()
    field = m.field
    cols = [(s, t) for s in range(m.dim) for t in range(n.dim)]
    rows = []
    for letter in _generator_letters(m.r):
        a = m.letter_matrix(letter)
        b = n.letter_matrix(letter)
        for s in range(m.dim):
            for u in range(n.dim):
                row = {}
                for t, c in a[s].items():
                    old = row.get((t, u))
                    row[(t, u)] = c if old is None else old + c
                for t in range(n.dim):
                    c = b[t].get(u)
                    if c is None:
                        continue
                    old = row.get((s, t))
                    d = -c if old is None else old - c
                    row[(s, t)] = d
                row = {k: v for k, v in row.items() if not v.is_zero()}
                if row:
                    rows.append(row)
    return len(nullspace(rows, cols, field=field))


def gram_matrix(lie: LieType, r: int, ring: ScalarRing, label,
                frame: ProbeFrame = None):
    """Gram matrix of the cellular bilinear form on the cell module,
    extracted from structure constants of the cellwise basis: the
    coefficient of the (s, v) basis element in the product of the
    (s, t) and (u, v) elements is the pairing of t with u."""
    elements, labels = cellular_basis(r, ring)
    if frame is None:
        frame = ProbeFrame(lie, r, ring, elements=elements, labels=labels)
    f, lam = label
    tabs = std_tableaux(lam)
    reps = coset_reps(r, f)
    pairs = [(ti, bi) for ti in range(len(tabs)) for bi in range(len(reps))]
    pos = {key: i for i, key in enumerate(labels)}
    target = ((f, lam), 0, 0, 0, 0)
    zero = field_for(ring).zero
    gram = []
    for (t1, b1) in pairs:
        left = elements[pos[((f, lam), 0, t1, 0, b1)]]
        row = []
        for (t2, b2) in pairs:
            right = elements[pos[((f, lam), t2, 0, b2, 0)]]
            co = frame.expand(elem_mul(left, right))
            assert co is not None
            val = co.get(target)
            row.append(zero if val is None else val)
        gram.append(row)
    return gram
