r"""Partitions, standard tableaux, permutations, and the pairing cosets.

Conventions, fixed once and used everywhere:

* Partitions are tuples of weakly decreasing positive integers; the
  empty partition is ().  ``partitions(r)`` lists them in descending
  lexicographic order, so (r) comes first and (1,...,1) last.

* Permutations of {1..r} act on the right: (k)w = w[k-1], and products
  compose left to right, (k)(uv) = ((k)u)v.  Reduced words are written
  in the same order, w = s_{i_1} s_{i_2} ... s_{i_k}.

* A standard tableau t of shape lam (entries 1..m) is a tuple of row
  tuples.  t_row(lam) is the row filling (1..m along rows), t_col(lam)
  the column filling, and tableau_perm(t) the unique w with
  t_row(lam) * w = t, matching boxes.

* For 0 <= f <= r//2, B_f is the subgroup of S_{2f} preserving the
  pairing {1,2}, {3,4}, ..., {2f-1,2f} (order 2^f f!) generated by s_1
  and the block transpositions s_{2i-2} s_{2i-1} s_{2i-3} s_{2i-2}.
  coset_reps(r, f) is the frozen transversal of B_f x S_{r-2f} in S_r:
  the minimal-length representatives of B_f \ S_{2f} (listed by length,
  then one-line form) times the increasing-insertion elements d_J over
  all 2f-subsets J of {1..r} in lexicographic order.

>>> partitions(3)
[(3,), (2, 1), (1, 1, 1)]
>>> len(coset_reps(4, 1)), len(coset_reps(4, 2))
(6, 3)
"""

from __future__ import annotations

import functools
import itertools

__all__ = [
    'partitions', 'conjugate', 'dominates', 'is_e_restricted',
    'std_tableaux', 't_row', 't_col', 'tableau_perm', 'updown_count',
    'perm_identity', 'perm_mult', 'perm_inv', 'perm_length',
    'reduced_word', 'perm_from_word', 'perm_embed', 'simple_perm',
    'young_subgroup', 'pairing_group', 'upper_coset_reps', 'd_J',
    'd_0', 'J_0', 'coset_reps', 'cell_labels', 'label_dominates',
]


# ---------------------------------------------------------------------------
# partitions
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def partitions(r: int, max_part: int = None) -> list:
    """All partitions of r in descending lexicographic order.

    >>> partitions(4)
    [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    """
    if r == 0:
        return [()]
    if max_part is None or max_part > r:
        max_part = r
    out = []
    for first in range(max_part, 0, -1):
        for rest in partitions(r - first, first):
            out.append((first,) + rest)
    return out


def conjugate(lam: tuple) -> tuple:
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > j) for j in range(lam[0]))


def dominates(lam: tuple, mu: tuple) -> bool:
    """Dominance order on partitions of the same number: lam >= mu."""
    if sum(lam) != sum(mu):
        return False
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a < b:
            return False
    return True


def is_e_restricted(lam: tuple, e: int) -> bool:
    """Successive differences lam_i - lam_{i+1} < e; e = 0 means generic
    (every partition counts as restricted)."""
    if e == 0:
        return True
    padded = lam + (0,)
    return all(padded[i] - padded[i + 1] < e for i in range(len(lam)))


@functools.lru_cache(maxsize=None)
def updown_count(lam: tuple, r: int) -> int:
    """Number of r-step walks from the empty shape to lam on Young's
    lattice where each step adds or removes a single box."""
    if r == 0:
        return 1 if lam == () else 0
    total = 0
    for mu in _box_neighbors(lam):
        total += updown_count(mu, r - 1)
    return total


def _box_neighbors(lam: tuple):
    out = set()
    for i in range(len(lam) + 1):
        row = lam[i] if i < len(lam) else 0
        above = lam[i - 1] if i > 0 else None
        # add a box in row i
        if above is None or row < above:
            grown = list(lam) + [0] * (i + 1 - len(lam))
            grown[i] += 1
            out.add(tuple(x for x in grown if x))
        # remove a box from row i
        below = lam[i + 1] if i + 1 < len(lam) else 0
        if i < len(lam) and row > below:
            shrunk = list(lam)
            shrunk[i] -= 1
            out.add(tuple(x for x in shrunk if x))
    return sorted(out)


# ---------------------------------------------------------------------------
# standard tableaux
# ---------------------------------------------------------------------------

def t_row(lam: tuple) -> tuple:
    """Row filling: 1..m left to right along consecutive rows."""
    out, a = [], 1
    for row in lam:
        out.append(tuple(range(a, a + row)))
        a += row
    return tuple(out)


def t_col(lam: tuple) -> tuple:
    """Column filling: 1..m down consecutive columns."""
    cols = conjugate(lam)
    grid = [[0] * row for row in lam]
    a = 1
    for j, h in enumerate(cols):
        for i in range(h):
            grid[i][j] = a
            a += 1
    return tuple(tuple(row) for row in grid)


@functools.lru_cache(maxsize=None)
def std_tableaux(lam: tuple) -> tuple:
    """All standard tableaux of shape lam, sorted by row reading word.

    >>> std_tableaux((2, 1))
    (((1, 2), (3,)), ((1, 3), (2,)))
    """
    m = sum(lam)
    if m == 0:
        return ((),)
    out = []
    for mu in _removable(lam):
        for t in std_tableaux(mu):
            rows = [list(row) for row in t]
            i = _removed_row(lam, mu)
            if i == len(rows):
                rows.append([m])
            else:
                rows[i].append(m)
            out.append(tuple(tuple(row) for row in rows))
    out.sort(key=lambda t: tuple(itertools.chain.from_iterable(t)))
    return tuple(out)


def _removable(lam: tuple):
    out = []
    for i in range(len(lam)):
        below = lam[i + 1] if i + 1 < len(lam) else 0
        if lam[i] > below:
            shrunk = list(lam)
            shrunk[i] -= 1
            out.append(tuple(x for x in shrunk if x))
    return out


def _removed_row(lam: tuple, mu: tuple) -> int:
    for i in range(len(lam)):
        if i >= len(mu) or lam[i] != mu[i]:
            return i
    raise ValueError('not a one-box removal')


def tableau_perm(t: tuple) -> tuple:
    """One-line permutation w with t_row(shape) * w = t (boxwise)."""
    shape = tuple(len(row) for row in t)
    ref = t_row(shape)
    m = sum(shape)
    w = [0] * m
    for ref_row, row in zip(ref, t):
        for a, c in zip(ref_row, row):
            w[a - 1] = c
    return tuple(w)


# ---------------------------------------------------------------------------
# permutations (one-line tuples, right action, left-to-right products)
# ---------------------------------------------------------------------------

def perm_identity(r: int) -> tuple:
    return tuple(range(1, r + 1))

def perm_mult(u: tuple, v: tuple) -> tuple:
    """(k)(uv) = ((k)u)v."""
    return tuple(v[a - 1] for a in u)

def perm_inv(w: tuple) -> tuple:
    out = [0] * len(w)
    for k, a in enumerate(w, start=1):
        out[a - 1] = k
    return tuple(out)

def perm_length(w: tuple) -> int:
    """Inversion count."""
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])

def simple_perm(i: int, r: int) -> tuple:
    w = list(range(1, r + 1))
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)

def reduced_word(w: tuple) -> tuple:
    """Deterministic reduced word by repeatedly peeling the leftmost
    descent as a left factor: w = s_{i_1} s_{i_2} ... s_{i_k}."""
    w = list(w)
    word = []
    n = len(w)
    while True:
        for i in range(n - 1):
            if w[i] > w[i + 1]:
                word.append(i + 1)
                w[i], w[i + 1] = w[i + 1], w[i]
                break
        else:
            return tuple(word)

def perm_from_word(word, r: int) -> tuple:
    w = perm_identity(r)
    for i in word:
        w = perm_mult(w, simple_perm(i, r))
    return w

def perm_embed(w: tuple, r: int, shift: int = 0) -> tuple:
    """View a permutation of {1..m} as one of {1..r} moving only the
    window shift+1 .. shift+m."""
    out = list(range(1, r + 1))
    for k, a in enumerate(w, start=1):
        out[shift + k - 1] = shift + a
    return tuple(out)


# ---------------------------------------------------------------------------
# Young subgroups
# ---------------------------------------------------------------------------

def young_subgroup(lam: tuple, r: int, shift: int = 0):
    """All elements of S_lam (consecutive blocks starting at shift+1)
    embedded in S_r, with their Coxeter lengths."""
    blocks = []
    a = shift + 1
    for row in lam:
        blocks.append(list(range(a, a + row)))
        a += row
    out = []
    pools = [list(itertools.permutations(b)) for b in blocks]
    for choice in itertools.product(*pools):
        w = list(range(1, r + 1))
        for block, img in zip(blocks, choice):
            for pos, val in zip(block, img):
                w[pos - 1] = val
        w = tuple(w)
        out.append((w, perm_length(w)))
    out.sort()
    return out


# ---------------------------------------------------------------------------
# the pairing subgroup and its cosets
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def pairing_group(f: int) -> tuple:
    """Elements of B_f inside S_{2f} (one-line tuples), sorted."""
    if f == 0:
        return ((),)
    m = 2 * f
    gens = [simple_perm(1, m)]
    for i in range(2, f + 1):
        word = (2 * i - 2, 2 * i - 1, 2 * i - 3, 2 * i - 2)
        gens.append(perm_from_word(word, m))
    seen = {perm_identity(m)}
    frontier = [perm_identity(m)]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                x = perm_mult(w, g)
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
        frontier = nxt
    out = tuple(sorted(seen))
    assert len(out) == 2 ** f * _factorial(f)
    return out


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


@functools.lru_cache(maxsize=None)
def upper_coset_reps(f: int) -> tuple:
    """Representatives of the right cosets B_f \\ S_{2f}, sorted by
    (length, one-line form).

    A coset is determined by the unordered matching of image pairs
    {(1)w, (2)w}, ..., {(2f-1)w, (2f)w}; the representative sends each
    block to its pair in increasing order, blocks sorted by smallest
    image.  These are the minimal-length elements of their cosets
    (ties broken toward this one; checked against a brute-force scan
    in the test suite)."""
    if f == 0:
        return ((),)
    reps = []
    for match in _matchings(tuple(range(1, 2 * f + 1))):
        reps.append(tuple(itertools.chain.from_iterable(match)))
    reps.sort(key=lambda x: (perm_length(x), x))
    assert len(reps) == _factorial(2 * f) // (2 ** f * _factorial(f))
    return tuple(reps)


def _matchings(points: tuple):
    if not points:
        yield ()
        return
    a = points[0]
    for b in points[1:]:
        rest = tuple(p for p in points if p not in (a, b))
        for m in _matchings(rest):
            yield ((a, b),) + m


def _s_range(i: int, j: int) -> tuple:
    """Word for s_{i,j}: s_i s_{i+1} ... s_{j-1} when i < j, empty when
    i = j."""
    assert i <= j
    return tuple(range(i, j))


def d_J(J: tuple, r: int) -> tuple:
    """The insertion element sending k to i_k for k = 1..2f, from the
    factorization s_{2f, i_{2f}} ... s_{1, i_1}."""
    word = []
    for k in range(len(J), 0, -1):
        word.extend(_s_range(k, J[k - 1]))
    d = perm_from_word(word, r)
    for k, ik in enumerate(J, start=1):
        assert d[k - 1] == ik
    return d


def d_0(f: int, r: int) -> tuple:
    """s_{2f-2,2f} s_{2f-4,2f} ... s_{2,2f} embedded in S_r."""
    word = []
    for i in range(2 * f - 2, 0, -2):
        word.extend(_s_range(i, 2 * f))
    return perm_from_word(word, r)


def J_0(r: int, f: int) -> tuple:
    return tuple(range(r - 2 * f + 1, r + 1))


@functools.lru_cache(maxsize=None)
def coset_reps(r: int, f: int) -> tuple:
    """The transversal D_f of B_f x S_{r-2f} in S_r (frozen order:
    J lexicographic, then upper representatives)."""
    assert 0 <= 2 * f <= r
    if f == 0:
        return (perm_identity(r),)
    upper = [perm_embed(w, r) for w in upper_coset_reps(f)]
    out = []
    for J in itertools.combinations(range(1, r + 1), 2 * f):
        dj = d_J(J, r)
        for w in upper:
            out.append(perm_mult(w, dj))
    expected = _factorial(r) // (2 ** f * _factorial(f) * _factorial(r - 2 * f))
    assert len(out) == expected
    return tuple(out)


# ---------------------------------------------------------------------------
# cell labels
# ---------------------------------------------------------------------------

def cell_labels(r: int) -> list:
    """[(f, lam)] with f ascending, partitions of r - 2f descending-lex.

    >>> cell_labels(2)
    [(0, (2,)), (0, (1, 1)), (1, ())]
    """
    out = []
    for f in range(r // 2 + 1):
        for lam in partitions(r - 2 * f):
            out.append((f, lam))
    return out


def label_dominates(a: tuple, b: tuple) -> bool:
    """(f, lam) >= (l, mu): strictly more contractions dominate; equal
    levels compare by partition dominance."""
    (f, lam), (l, mu) = a, b
    if f != l:
        return f > l
    return dominates(lam, mu)
