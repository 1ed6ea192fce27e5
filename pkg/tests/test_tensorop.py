"""Braiding and contraction tables, the invariant vector, the bilinear
forms, and their adjointness laws on small tensor powers."""

import itertools

import pytest
from gmpy2 import mpq

from bmwrep.scalars import LaurentPoly, ScalarRing
from bmwrep.qgroup import (
    LieType, natural_rep, act_generator,
    tensor_eq, tensor_is_zero,
)
from bmwrep.tensorop import (
    slot_ops, alpha_vector, beta_count, form, form_value,
    word_sigma, word_gamma, word_sigma_tilde,
)

GEN = ScalarRing.generic()
ONE = LaurentPoly.one()


def u(k, c=1):
    return LaurentPoly.u_power(k, mpq(c))


def monomials(lie, r):
    return [tuple(m) for m in
            itertools.product(range(1, lie.N + 1), repeat=r)]


# --- structure tables ---

@pytest.mark.parametrize('fam,n', [
    ('B', 2), ('B', 3), ('C', 2), ('C', 3), ('D', 3), ('D', 4),
])
@pytest.mark.parametrize('e', [0, 2, 3])
def test_tables_build_and_self_check(fam, n, e):
    # slot_ops asserts triangularity, two-sided invertibility, that the
    # contraction rows lie on the invariant line, and the loop identity
    ring = GEN if e == 0 else ScalarRing.root_of_unity(e)
    ops = slot_ops(LieType(fam, n), ring)
    assert ops.rmat and ops.rinv and ops.emat


def test_braiding_rows_symplectic_rank_two():
    # the five clauses of the braiding table, worked out by hand for
    # sp_4 where rho-exponents are (4, 2, -2, -4) and the signs are
    # (+, +, -, -)
    lie = LieType('C', 2)
    ops = slot_ops(lie, GEN)
    d = u(2) - u(-2)
    assert tensor_eq(ops.rmat[(1, 1)], {(1, 1): u(2)})
    assert tensor_eq(ops.rmat[(2, 1)], {(1, 2): ONE})
    assert tensor_eq(ops.rmat[(4, 1)], {(1, 4): u(-2)})
    assert tensor_eq(ops.rmat[(1, 2)], {(2, 1): ONE, (1, 2): d})
    assert tensor_eq(ops.rmat[(1, 4)], {
        (4, 1): u(-2),
        (1, 4): d + d * u(-8),
        (3, 2): d.scale(-1) * u(-2),
        (2, 3): d * u(-6),
    })


def test_braiding_middle_row_odd_orthogonal():
    # the self-paired middle column of so_5: rho-exponents (3,1,0,-1,-3)
    lie = LieType('B', 2)
    ops = slot_ops(lie, GEN)
    d = u(2) - u(-2)
    assert tensor_eq(ops.rmat[(3, 3)], {
        (3, 3): ONE,
        (2, 4): d.scale(-1) * u(-1),
        (1, 5): d.scale(-1) * u(-3),
    })


def test_contraction_row_symplectic_rank_two():
    lie = LieType('C', 2)
    ops = slot_ops(lie, GEN)
    assert tensor_eq(ops.emat[(1, 4)], {
        (1, 4): u(-8, -1), (2, 3): u(-6, -1),
        (3, 2): u(-2), (4, 1): ONE,
    })
    assert (1, 2) not in ops.emat
    al = alpha_vector(lie, GEN)
    assert tensor_eq(al, {
        (1, 4): u(-4, -1), (2, 3): u(-2, -1),
        (3, 2): u(2), (4, 1): u(4),
    })


def test_skein_relation_on_tensor_square():
    for fam, n in [('B', 2), ('C', 2), ('D', 3)]:
        lie = LieType(fam, n)
        ops = slot_ops(lie, GEN)
        d = u(2) - u(-2)
        for m in monomials(lie, 2):
            t = {m: ONE}
            lhs = ops.apply_letter(('T', 1), t)
            for k, v in ops.apply_letter(('T-', 1), t).items():
                lhs[k] = lhs.get(k, LaurentPoly.zero()) - v
            rhs = {m: d}
            for k, v in ops.apply_letter(('E', 1), t).items():
                rhs[k] = rhs.get(k, LaurentPoly.zero()) - v * d
            assert tensor_eq(lhs, rhs)


def test_braiding_eigenvalue_relation():
    # (R - q)(R + q^{-1})(R - varrho^{-1}) kills the tensor square
    for fam, n in [('B', 2), ('C', 2), ('D', 3)]:
        lie = LieType(fam, n)
        ops = slot_ops(lie, GEN)
        ((exp, coeff),) = lie.varrho().items()
        vri = LaurentPoly.u_power(-exp, 1 / coeff)
        for m in monomials(lie, 2):
            t = {m: ONE}
            for scal in (u(2), u(-2).scale(-1), vri):
                nxt = ops.apply_letter(('T', 1), t)
                for k, v in t.items():
                    nxt[k] = nxt.get(k, LaurentPoly.zero()) - v * scal
                t = nxt
            assert tensor_is_zero(t)


# --- commutation with the quantum group ---

@pytest.mark.parametrize('fam,n', [('B', 2), ('C', 2), ('D', 3)])
def test_operators_commute_with_quantum_group(fam, n):
    lie = LieType(fam, n)
    rep = natural_rep(lie)
    ops = slot_ops(lie, GEN)
    for m in monomials(lie, 2):
        t = {m: ONE}
        for i in range(1, lie.num_gen + 1):
            for gen in (('e', i), ('f', i), ('k', i)):
                for letter in (('T', 1), ('T-', 1), ('E', 1)):
                    lhs = ops.apply_letter(letter, act_generator(rep, gen, t))
                    rhs = act_generator(rep, gen, ops.apply_letter(letter, t))
                    assert tensor_eq(lhs, rhs), (fam, m, gen, letter)


@pytest.mark.parametrize('fam,n', [('B', 2), ('C', 3), ('D', 3)])
def test_alpha_spans_trivial_module(fam, n):
    lie = LieType(fam, n)
    rep = natural_rep(lie)
    al = alpha_vector(lie, GEN)
    for i in range(1, lie.num_gen + 1):
        assert tensor_is_zero(act_generator(rep, ('e', i), al))
        assert tensor_is_zero(act_generator(rep, ('f', i), al))
        assert tensor_eq(act_generator(rep, ('k', i), al), al)


def test_contraction_projects_onto_alpha():
    lie = LieType('D', 3)
    ops = slot_ops(lie, GEN)
    for m in monomials(lie, 2):
        img = ops.apply_letter(('E', 1), {m: ONE})
        if not img:
            assert m[0] != lie.prime(m[1])
            continue
        # proportional to alpha: cross-multiply against a fixed entry
        ref = (1, lie.prime(1))
        c_img, c_al = img[ref], ops.alpha[ref]
        for k, v in ops.alpha.items():
            assert img[k] * c_al == v * c_img


# --- bilinear forms ---

def test_form_values_odd_orthogonal():
    lie = LieType('B', 2)
    assert form_value(lie, GEN, (1,), (5,)) == u(-3)
    assert form_value(lie, GEN, (5,), (1,)) == u(3)
    assert form_value(lie, GEN, (1,), (1,)).is_zero()
    assert form_value(lie, GEN, (3,), (3,)) == ONE
    # rank two: reversal matters
    assert form_value(lie, GEN, (1, 2), (4, 5)) == u(-4)
    assert form_value(lie, GEN, (1, 2), (5, 4)).is_zero()


def test_form_values_even_families():
    lie = LieType('C', 2)
    assert beta_count(lie, (1, 4)) == 2
    assert beta_count(lie, (1, 2)) == 1
    assert beta_count(lie, (1, 1)) == 0
    assert form_value(lie, GEN, (1, 4), (1, 4)) == u(4)
    assert form_value(lie, GEN, (1, 2), (1, 2)) == u(2)
    assert form_value(lie, GEN, (1, 1), (1, 1)) == ONE
    assert form_value(lie, GEN, (1, 2), (2, 1)).is_zero()
    assert beta_count(lie, (1, 2, 4)) == 4      # 1|2 and 2|4 free, 1|4 paired


def test_form_nondegenerate_by_structure():
    # every monomial pairs against exactly one partner monomial with an
    # invertible value, so the Gram matrix is a scaled permutation
    for fam, n in [('B', 2), ('C', 2), ('D', 3)]:
        lie = LieType(fam, n)
        seen = set()
        for m in monomials(lie, 2):
            from bmwrep.tensorop import reversed_prime
            mate = reversed_prime(lie, m) if fam == 'B' else m
            assert not form_value(lie, GEN, m, mate).is_zero()
            assert mate not in seen
            seen.add(mate)


def test_form_symmetric_even_families():
    for fam, n in [('C', 2), ('D', 3)]:
        lie = LieType(fam, n)
        for m in monomials(lie, 2):
            for m2 in monomials(lie, 2):
                assert form_value(lie, GEN, m, m2) == \
                    form_value(lie, GEN, m2, m)


# --- adjointness ---

def act_antipode(rep, gen, t):
    """Left action of the antipode image of a generator."""
    kind, i = gen
    if kind == 'e':
        img = act_generator(rep, ('k-', i), act_generator(rep, ('e', i), t))
        return {k: v.scale(-1) for k, v in img.items()}
    if kind == 'f':
        img = act_generator(rep, ('f', i), act_generator(rep, ('k', i), t))
        return {k: v.scale(-1) for k, v in img.items()}
    if kind == 'k':
        return act_generator(rep, ('k-', i), t)
    raise ValueError(gen)


def test_quantum_group_adjoint_odd_orthogonal():
    # <a v, w> = <v, S(a) w> for the reversal form
    lie = LieType('B', 2)
    rep = natural_rep(lie)
    for m in monomials(lie, 2):
        for gen in (('e', 1), ('e', 2), ('f', 1), ('f', 2), ('k', 1)):
            av = act_generator(rep, gen, {m: ONE})
            sa = act_antipode(rep, gen, {})
            for m2 in monomials(lie, 2):
                lhs = form(lie, GEN, av, {m2: ONE})
                rhs = form(lie, GEN, {m: ONE},
                           act_antipode(rep, gen, {m2: ONE}))
                assert (lhs - rhs).is_zero(), (m, gen, m2)


def test_quantum_group_adjoint_even_families():
    # <u v, w> = <v, tau(u) w> with tau swapping raising and lowering
    swap = {'e': 'f', 'f': 'e', 'k': 'k'}
    for fam, n in [('C', 2), ('D', 3)]:
        lie = LieType(fam, n)
        rep = natural_rep(lie)
        for m in monomials(lie, 2):
            for gen in (('e', 1), ('e', lie.n), ('f', 1), ('k', lie.n)):
                av = act_generator(rep, gen, {m: ONE})
                tg = (swap[gen[0]], gen[1])
                for m2 in monomials(lie, 2):
                    lhs = form(lie, GEN, av, {m2: ONE})
                    rhs = form(lie, GEN, {m: ONE},
                               act_generator(rep, tg, {m2: ONE}))
                    assert (lhs - rhs).is_zero(), (fam, m, gen, m2)


def word_adjoint_holds(lie, ops, word, dual_word, r):
    for mi in monomials(lie, r):
        vb = ops.apply_word(word, {mi: ONE})
        for mj in monomials(lie, r):
            lhs = form(lie, GEN, vb, {mj: ONE})
            rhs = form(lie, GEN, {mi: ONE},
                       ops.apply_word(dual_word, {mj: ONE}))
            if not (lhs - rhs).is_zero():
                return False
    return True


def test_algebra_adjoint_uses_position_reversal_only_when_pairing_reverses():
    # the reversal form needs the position-reversing anti-involution;
    # the diagonal forms need the plain one.  Each fails with the other.
    words = [(('T', 1),), (('E', 2),)]
    for fam, n, use_tilde in [('B', 2, True), ('C', 2, False)]:
        lie = LieType(fam, n)
        ops = slot_ops(lie, GEN)
        for word in words:
            good = word_sigma_tilde(word, 3) if use_tilde \
                else word_sigma(word)
            bad = word_sigma(word) if use_tilde \
                else word_sigma_tilde(word, 3)
            assert word_adjoint_holds(lie, ops, word, good, 3)
            assert not word_adjoint_holds(lie, ops, word, bad, 3)


# --- word involutions ---

def test_word_involutions():
    w = (('T', 1), ('E', 2), ('T-', 3))
    assert word_sigma(word_sigma(w)) == w
    assert word_gamma(word_gamma(w, 4), 4) == w
    assert word_sigma_tilde(word_sigma_tilde(w, 4), 4) == w
    assert word_sigma_tilde(w, 4) == (('T-', 1), ('E', 2), ('T', 3))


def test_action_at_root_of_unity():
    # tables specialise coherently: the skein identity survives
    ring = ScalarRing.root_of_unity(3)
    lie = LieType('C', 2)
    ops = slot_ops(lie, ring)
    one = ring.one()
    d = ops.delta
    for m in monomials(lie, 2):
        t = {m: one}
        lhs = ops.apply_letter(('T', 1), t)
        for k, v in ops.apply_letter(('T-', 1), t).items():
            lhs[k] = lhs.get(k, ring.zero()) - v
        rhs = {m: d}
        for k, v in ops.apply_letter(('E', 1), t).items():
            rhs[k] = rhs.get(k, ring.zero()) - v * d
        assert tensor_eq(lhs, rhs)
