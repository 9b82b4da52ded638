import random

import pytest

from gmalg.algebra import Algebra
from gmalg.errors import HypothesesNotMet, NotEnumerable, NotKCommuting
from gmalg.families import matrix_algebra
from gmalg.maps import (
    LinMap,
    check_properness_hypotheses,
    commuting_space,
    construct_proper_form,
    decompose,
    has_scalar_engel_centers,
    is_k_commuting,
    properness_certificate,
    verify_proper_form_steps,
    verify_structure_conditions,
)
from gmalg.rings import Rationals, Zmod


def left_mult_map(alg, c):
    return LinMap.from_columns(
        alg.ring, [alg.mul(c, alg.basis_vector(j)) for j in range(alg.dim)]
    )


def commutative_pair_algebra(R):
    return Algebra(
        R, ["a", "b"], [[(1, 0), (0, 0)], [(0, 0), (0, 1)]], (1, 1)
    ).validate()


def test_identity_and_scalars_commute(m2_z3):
    alg = m2_z3.algebra
    for k in (1, 2, 3):
        assert is_k_commuting(m2_z3, LinMap.identity(alg.ring, alg.dim), k) == (
            True,
            None,
        )
        assert is_k_commuting(m2_z3, LinMap.zero(alg.ring, alg.dim), k) == (
            True,
            None,
        )
    two_id = LinMap.identity(alg.ring, alg.dim).scale(2)
    assert is_k_commuting(m2_z3, two_id, 1)[0]


def test_left_multiplication_is_not_commuting():
    A = matrix_algebra(Zmod(3), 2)
    e11 = A.basis_vector(A.labels.index("E11"))
    theta = left_mult_map(A, e11)
    ok, x = is_k_commuting(A, theta, 1)
    assert not ok
    # the returned witness really violates the identity
    assert not A.is_zero(A.bracket(theta.apply(x), x))


def test_rational_polarization_k1_only():
    A = matrix_algebra(Rationals(), 2)
    ident = LinMap.identity(A.ring, A.dim)
    assert is_k_commuting(A, ident, 1) == (True, None)
    e11 = A.basis_vector(A.labels.index("E11"))
    ok, x = is_k_commuting(A, left_mult_map(A, e11), 1)
    assert not ok
    assert not A.is_zero(A.bracket(A.mul(e11, x), x))
    with pytest.raises(NotEnumerable):
        is_k_commuting(A, ident, 2)


def test_commuting_space_rank_and_membership(m2_z3):
    for k in (1, 2, 3):
        sp = commuting_space(m2_z3, k)
        assert sp.rank == 5
        for g in sp.basis():
            assert is_k_commuting(m2_z3, g, k) == (True, None)


def test_commuting_space_grows_with_k(t3_z3):
    s1 = commuting_space(t3_z3, 1)
    s2 = commuting_space(t3_z3, 2)
    for g in s1.basis():
        assert s2.contains(g)
    assert s2.rank >= s1.rank


def test_commutative_algebra_every_map_commutes():
    A = commutative_pair_algebra(Zmod(3))
    sp = commuting_space(A, 1)
    assert sp.rank == A.dim * A.dim


def test_random_member_is_seeded(m2_z3):
    sp = commuting_space(m2_z3, 1)
    a = sp.random_member(random.Random(11))
    b = sp.random_member(random.Random(11))
    assert a == b
    assert sp.contains(a)


def test_decompose_reassembles_exactly(m2_z3):
    rg = m2_z3.ring
    for theta in (
        LinMap.identity(rg, m2_z3.dim),
        LinMap.zero(rg, m2_z3.dim),
        commuting_space(m2_z3, 2).random_member(random.Random(5)),
    ):
        assert decompose(m2_z3, theta).reassemble() == theta


def test_structure_conditions_pass_for_commuting_maps(m2_z3, t2_z3):
    for G in (m2_z3, t2_z3):
        for k in (1, 2):
            sp = commuting_space(G, k)
            for g in sp.basis():
                rep = verify_structure_conditions(G, g, k)
                assert rep.all_pass, rep.failures()


def test_structure_conditions_reject_non_commuting(m2_z3):
    e11 = m2_z3.embed("A", m2_z3.ctx.A.unit)
    theta = left_mult_map(m2_z3.algebra, m2_z3.embed("M", (1,)))
    with pytest.raises(NotKCommuting):
        verify_structure_conditions(m2_z3, theta, 1)


def test_structure_negative_control(m2_z3):
    """Corrupting one block of a genuine map trips the matching lines."""
    theta = LinMap.identity(m2_z3.ring, m2_z3.dim)
    dec = decompose(m2_z3, theta)
    dec.set_block("M", "A", [[1]])
    rep = verify_structure_conditions(m2_z3, theta, 1, blocks=dec)
    failed = {line.cond_id for line in rep.failures()}
    assert "m_to_a_engel_range" in failed or "m_balance_symmetrized" in failed


def test_properness_hypotheses_witnesses(m2_z3, t2_z3):
    for k in (1, 2, 3):
        h = check_properness_hypotheses(m2_z3, k)
        assert (h.cond1, h.cond2, h.cond3) == (True, True, True)
        assert h.m_witness == (1,)
        assert h.n_witness == (1,)
    h = check_properness_hypotheses(t2_z3, 1)
    assert (h.cond1, h.cond2, h.cond3) == (True, True, True)
    assert h.m_witness == (1,)
    assert h.n_witness == ()


def test_scalar_engel_center_shortcut(m2_z3, b21_z3):
    assert has_scalar_engel_centers(m2_z3, 1)
    assert has_scalar_engel_centers(b21_z3, 2)


def test_proper_form_reconstructs_the_map(m2_z3):
    alg = m2_z3.algebra
    sp = commuting_space(m2_z3, 2)
    z = m2_z3.gma_center()
    for g in sp.basis():
        res = construct_proper_form(m2_z3, g, 2)
        assert z.contains(res.center_shift)
        for j in range(alg.dim):
            ej = alg.basis_vector(j)
            zeta = res.residual_map.apply(ej)
            assert z.contains(zeta)
            assert g.apply(ej) == alg.add(alg.mul(ej, res.center_shift), zeta)


def test_proper_form_requires_commuting(m2_z3):
    theta = left_mult_map(m2_z3.algebra, m2_z3.embed("M", (1,)))
    with pytest.raises(NotKCommuting):
        construct_proper_form(m2_z3, theta, 1)


def test_certificate_for_proper_and_improper_maps(m2_z3):
    alg = m2_z3.algebra
    two_id = LinMap.identity(alg.ring, alg.dim).scale(2)
    cert = properness_certificate(m2_z3, two_id)
    assert cert is not None
    lam, zeta = cert
    assert m2_z3.gma_center().contains(lam)
    for j in range(alg.dim):
        ej = alg.basis_vector(j)
        assert two_id.apply(ej) == alg.add(
            alg.mul(ej, lam), zeta.apply(ej)
        )
        assert m2_z3.gma_center().contains(zeta.apply(ej))
    e11 = m2_z3.embed("A", m2_z3.ctx.A.unit)
    assert properness_certificate(m2_z3, left_mult_map(alg, e11)) is None


def test_certificate_matches_proper_form_on_random_maps(m2_z3):
    sp = commuting_space(m2_z3, 1)
    rng = random.Random(3)
    for _ in range(10):
        theta = sp.random_member(rng)
        assert properness_certificate(m2_z3, theta) is not None


def test_proper_form_steps_all_pass(m2_z3, t2_z3):
    for G in (m2_z3, t2_z3):
        for k in (1, 2):
            hyp = check_properness_hypotheses(G, k)
            for g in commuting_space(G, k).basis():
                rep = verify_proper_form_steps(G, g, k, hypotheses=hyp)
                assert rep.all_pass, rep.failures()


def test_step_negative_control(m2_z3):
    theta = LinMap.identity(m2_z3.ring, m2_z3.dim)
    dec = decompose(m2_z3, theta)
    dec.set_block("M", "A", [[1]])
    hyp = check_properness_hypotheses(m2_z3, 1)
    rep = verify_proper_form_steps(m2_z3, theta, 1, blocks=dec, hypotheses=hyp)
    failed = {line.cond_id for line in rep.failures()}
    assert "m_to_a_quadratic_balance" in failed
