"""Algebra-level checks: word bases, defining relations on tensor
space, and expansion through the probe frame."""

import pytest

from bmwrep.scalars import LaurentPoly, ScalarRing
from bmwrep.linalg import lift_rows
from bmwrep.combin import updown_count, cell_labels, std_tableaux, coset_reps
from bmwrep.qgroup import LieType, minimal_rank
from bmwrep.tensorop import slot_ops
from bmwrep.bmwalg import (
    ProbeFrame,
    bmw_dim,
    cellular_basis,
    check_relations,
    elem_add,
    elem_from_word,
    elem_mul,
    enyang_basis,
    m_element,
    n_element,
    operator_rank,
    thin_probes,
)

GEN = ScalarRing.generic()


def lift1(ring, val):
    return lift_rows([{0: val}], ring)[0][0]


class TestWordBases:
    def test_dimension_sequence(self):
        assert [bmw_dim(r) for r in (1, 2, 3, 4, 5)] == [1, 3, 15, 105, 945]

    @pytest.mark.parametrize('r', [1, 2, 3, 4])
    def test_enyang_count(self, r):
        words, labels = enyang_basis(r)
        assert len(words) == len(labels) == bmw_dim(r)
        assert len(set(words)) == len(words)

    def test_enyang_r2_words(self):
        words, labels = enyang_basis(2)
        assert words == ((), (('T', 1),), (('E', 1),))
        assert [lab[0] for lab in labels] == [0, 0, 1]

    def test_enyang_letters_respect_layer(self):
        # the middle permutation part only uses letters past the
        # contraction block
        words, labels = enyang_basis(4)
        for word, (f, w, d1, d2) in zip(words, labels):
            es = [i for kind, i in word if kind == 'E']
            assert es == [2 * a - 1 for a in range(1, f + 1)]

    @pytest.mark.parametrize('r', [2, 3])
    def test_cellular_count(self, r):
        elements, labels = cellular_basis(r, GEN)
        assert len(elements) == bmw_dim(r)
        # block sizes match the square of standard-tableau counts
        for f, lam in cell_labels(r):
            block = [lab for lab in labels if lab[0] == (f, lam)]
            d = len(std_tableaux(lam)) * len(coset_reps(r, f))
            assert len(block) == d * d

    def test_m_element_hook_shape(self):
        m = m_element((2, 1), 3, GEN)
        assert m == {(): GEN.one(), (('T', 1),): GEN.q(1)}

    def test_n_element_signs(self):
        n = n_element((2,), 4, GEN, shift=2)
        assert n == {(): GEN.one(),
                     (('T', 3),): GEN.spec(LaurentPoly.u_power(-2, -1))}

    def test_elem_mul_cancellation(self):
        # (T - q)(T + q^-1) = T^2 - delta T - 1
        q, qi = GEN.q(1), GEN.q(-1)
        t = elem_from_word((('T', 1),), GEN)
        prod = elem_mul(elem_add(t, {(): -q}), elem_add(t, {(): qi}))
        assert prod == {(('T', 1), ('T', 1)): GEN.one(),
                        (('T', 1),): qi - q,
                        (): -GEN.one()}


class TestRelations:
    @pytest.mark.parametrize('family', ['B', 'C', 'D'])
    @pytest.mark.parametrize('r', [2, 3])
    def test_generic(self, family, r):
        lie = LieType(family, minimal_rank(family, r))
        assert check_relations(lie, r, GEN) == []

    @pytest.mark.parametrize('family', ['B', 'C', 'D'])
    def test_root_of_unity(self, family):
        lie = LieType(family, minimal_rank(family, 3))
        assert check_relations(lie, 3, ScalarRing.root_of_unity(2)) == []

    def test_nonminimal_rank_still_holds(self):
        # the relations are identities of the action for every rank,
        # faithfulness is what needs the rank bound
        assert check_relations(LieType('C', 2), 3, GEN) == []


class TestProbes:
    def test_thin_probe_shape(self):
        lie = LieType('C', 4)
        probes = thin_probes(lie, 4)
        assert len(probes) == 5
        assert probes[0] == (4, 3, 2, 1)
        # pure contraction tail at the deepest layer
        assert probes[-1] == (5, 6, 3, 4)
        for p in probes:
            assert all(1 <= a <= lie.N for a in p)

    @pytest.mark.parametrize('family,r', [('C', 2), ('C', 3), ('B', 2),
                                          ('D', 2)])
    def test_frame_reaches_full_rank(self, family, r):
        lie = LieType(family, minimal_rank(family, r))
        frame = ProbeFrame(lie, r, GEN)
        assert frame.rank == bmw_dim(r)

    def test_frame_requires_faithful_regime(self):
        with pytest.raises(AssertionError):
            ProbeFrame(LieType('C', 2), 3, GEN)

    def test_unit_expansion(self):
        frame = ProbeFrame(LieType('C', 3), 3, GEN)
        words, _ = enyang_basis(3)
        one = lift1(GEN, GEN.one())
        for idx in (0, 3, 8, 14):
            assert frame.expand_word(words[idx]) == {idx: one}

    def test_contraction_square_is_loop_multiple(self):
        frame = ProbeFrame(LieType('C', 2), 2, GEN)
        co = frame.expand_word((('E', 1), ('E', 1)))
        assert co == {2: lift1(GEN, frame.ops.loop)}

    def test_braid_square_expansion(self):
        # T^2 = 1 + delta T - delta rho^-1 E, a skein consequence
        frame = ProbeFrame(LieType('C', 2), 2, GEN)
        co = frame.expand_word((('T', 1), ('T', 1)))
        delta = frame.ops.delta
        assert co == {0: lift1(GEN, GEN.one()),
                      1: lift1(GEN, delta),
                      2: lift1(GEN, -delta * frame.ops.varrho_inv)}

    def test_hecke_quotient_membership(self):
        # (T_i - q)(T_i + q^-1) lands in the span of the contraction
        # layers: no coefficients on the f=0 part of the basis
        frame = ProbeFrame(LieType('C', 3), 3, GEN)
        _, labels = enyang_basis(3)
        q, qi = GEN.q(1), GEN.q(-1)
        for i in (1, 2):
            t = elem_from_word((('T', i),), GEN)
            prod = elem_mul(elem_add(t, {(): -q}), elem_add(t, {(): qi}))
            co = frame.expand(prod)
            assert co is not None and co
            assert all(labels[k][0] > 0 for k in co)

    def test_structure_constants_root_ring(self):
        ring = ScalarRing.root_of_unity(3)
        frame = ProbeFrame(LieType('C', 2), 2, ring)
        words, _ = enyang_basis(2)
        for i in range(3):
            for j in range(3):
                co = frame.expand_word(words[i] + words[j])
                assert co is not None


class TestOperatorRank:
    @pytest.mark.parametrize('family', ['B', 'C', 'D'])
    def test_exact_small(self, family):
        for r in (2, 3):
            lie = LieType(family, minimal_rank(family, r))
            assert operator_rank(lie, r, GEN) == bmw_dim(r)

    def test_modular_agrees(self):
        lie = LieType('C', 3)
        assert operator_rank(lie, 3, GEN, modular=True) == 15
        ring = ScalarRing.root_of_unity(2)
        assert operator_rank(lie, 3, ring, modular=True) == 15
