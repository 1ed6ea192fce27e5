"""Hecke algebra decomposition matrices on the signed basis.

Expected matrices at roots of unity are the classical decomposition
matrices of the Iwahori-Hecke algebra of the symmetric group, with all
labels conjugated because the cellular basis here is the signed one
(column stabilisers with alternating coefficients).
"""

import pytest

from bmwrep.scalars import ScalarRing
from bmwrep.combin import partitions, std_tableaux
from bmwrep.hecke import Hecke, HeckeCells, hecke_decomposition

GEN = ScalarRing.generic()


class TestHeckeProduct:

    def test_quadratic_relation(self):
        # g_i^2 = 1 + (q - q^-1) g_i
        h = Hecke(3, GEN)
        x = h.right_gen(h.right_gen(h.one(), 1), 1)
        e = (1, 2, 3)
        s = (2, 1, 3)
        assert set(x) == {e, s}
        assert x[e] == GEN.one()
        assert x[s] == h.delta

    def test_braid_relation(self):
        h = Hecke(3, GEN)
        a = h.right_word(h.one(), (3, 2, 1))  # longest element of S_3
        b = h.right_gen(h.right_gen(h.right_gen(h.one(), 2), 1), 2)
        c = h.right_gen(h.right_gen(h.right_gen(h.one(), 1), 2), 1)
        assert a == b == c

    def test_star_antiinvolution(self):
        h = Hecke(4, GEN)
        x = h.right_word(h.one(), (3, 1, 2, 4))
        y = h.right_word(h.one(), (1, 3, 4, 2))
        lhs = h.star(h.mult(x, y))
        rhs = h.mult(h.star(y), h.star(x))
        assert lhs == rhs


class TestMurphyBasis:

    @pytest.mark.parametrize('r', [2, 3, 4])
    def test_basis_spans(self, r):
        cells = HeckeCells(r, GEN)
        assert cells.red.rank == len(cells.alg.perms)

    def test_gram_rank_one_row(self):
        # single-row shape: one tableau, Gram entry is the Poincare
        # polynomial of S_r up to a unit, nonzero generically
        cells = HeckeCells(3, GEN)
        g = cells.gram((1, 1, 1))
        assert len(g) == 1
        assert not g[0][0].is_zero()


class TestDecomposition:

    @pytest.mark.parametrize('r', [2, 3, 4])
    def test_generic_identity(self, r):
        lams, cols, mat, cell_dims, simple_dims = hecke_decomposition(r, GEN)
        assert cols == lams == partitions(r)
        n = len(lams)
        assert mat == [[1 if i == j else 0 for j in range(n)]
                       for i in range(n)]
        for lam in lams:
            assert cell_dims[lam] == len(std_tableaux(lam))
            assert simple_dims[lam] == cell_dims[lam]

    def test_r3_e2(self):
        ring = ScalarRing.root_of_unity(2)
        lams, cols, mat, cell_dims, simple_dims = hecke_decomposition(3, ring)
        assert cols == [(2, 1), (1, 1, 1)]
        assert mat == [[0, 1], [1, 0], [0, 1]]
        assert simple_dims == {(2, 1): 2, (1, 1, 1): 1}

    def test_r3_e3(self):
        ring = ScalarRing.root_of_unity(3)
        lams, cols, mat, cell_dims, simple_dims = hecke_decomposition(3, ring)
        assert cols == [(2, 1), (1, 1, 1)]
        assert mat == [[1, 0], [1, 1], [0, 1]]
        assert simple_dims == {(2, 1): 1, (1, 1, 1): 1}

    def test_r4_e2(self):
        ring = ScalarRing.root_of_unity(2)
        lams, cols, mat, cell_dims, simple_dims = hecke_decomposition(4, ring)
        assert cols == [(2, 1, 1), (1, 1, 1, 1)]
        assert mat == [[0, 1],
                       [1, 1],
                       [1, 0],
                       [1, 1],
                       [0, 1]]
        assert simple_dims == {(2, 1, 1): 2, (1, 1, 1, 1): 1}

    def test_r4_e3(self):
        ring = ScalarRing.root_of_unity(3)
        lams, cols, mat, cell_dims, simple_dims = hecke_decomposition(4, ring)
        assert cols == [(3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
        assert mat == [[0, 1, 0, 0],
                       [1, 0, 0, 0],
                       [0, 1, 0, 1],
                       [0, 0, 1, 0],
                       [0, 0, 0, 1]]
        assert simple_dims == {(3, 1): 3, (2, 2): 1,
                               (2, 1, 1): 3, (1, 1, 1, 1): 1}

    def test_row_sums_match_cell_dims(self):
        ring = ScalarRing.root_of_unity(4)
        lams, cols, mat, cell_dims, simple_dims = hecke_decomposition(4, ring)
        for lam, row in zip(lams, mat):
            total = sum(d * simple_dims[mu] for d, mu in zip(row, cols))
            assert total == cell_dims[lam]
