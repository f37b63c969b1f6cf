from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from quotlab.actions import (
    AlgebraAutomorphism,
    ConstantGroup,
    ProductAction,
    build_alpha_p_action,
    build_constant_action,
    cayley_hamilton_check,
    char_poly,
    etale_power_identity_check,
    is_invariant,
    norm,
    sigma,
)
from quotlab.algebra import NormalFormAlgebra, UniPoly
from quotlab.errors import ActionError
from quotlab.rings import GaloisField, PrimeField, ResidueRing


def sign_action():
    A = NormalFormAlgebra(PrimeField(5), ["t"], [], 8)
    return build_constant_action(ConstantGroup.cyclic(2), A, {"g": {"t": "-t"}})


def wild_action():
    A = NormalFormAlgebra(PrimeField(2), ["t"], [], 8)
    return build_constant_action(ConstantGroup.cyclic(2), A, {"g": {"t": "t/(1+t)"}})


def v4_action():
    A = NormalFormAlgebra(GaloisField(2, 2), ["t"], [], 8)
    G = ConstantGroup.product(ConstantGroup.cyclic(2), ConstantGroup.cyclic(2))
    return build_constant_action(G, A, {"(g,e)": {"t": "t/(1+t)"}, "(e,g)": {"t": "t/(1+z*t)"}})


def alpha_action(p):
    A = NormalFormAlgebra(PrimeField(p), ["X", "t"], [f"X^{p}", "t^5"])
    return build_alpha_p_action(A, {"X": "1", "t": "0"})


ACTIONS = [sign_action(), wild_action(), v4_action(), alpha_action(2), alpha_action(3)]


def samples(action, seed, n=5):
    rng = random.Random(seed)
    return [action.algebra.random_element(rng) for _ in range(n)]


def test_cyclic_group_tables():
    G = ConstantGroup.cyclic(6)
    assert G.order == 6
    assert [G.element_order(g) for g in range(6)] == [1, 6, 3, 2, 3, 6]
    assert G.is_subgroup((0, 2, 4))
    assert len(G.left_cosets((0, 3))) == 3


def test_product_group_labels():
    G = ConstantGroup.product(ConstantGroup.cyclic(2), ConstantGroup.cyclic(2))
    assert list(G.labels) == ["(e,e)", "(e,g)", "(g,e)", "(g,g)"]
    assert all(G.element_order(g) <= 2 for g in range(4))


def test_group_law_convention():
    act = v4_action()
    G = act.group
    t = act.algebra.generator("t")
    for g in range(G.order):
        for h in range(G.order):
            assert act.act(G.table[g][h], t) == act.act(g, act.act(h, t))


@given(st.sampled_from(range(len(ACTIONS))), st.integers(0, 10**6))
def test_cayley_hamilton(i, seed):
    act = ACTIONS[i]
    for a in samples(act, seed, 3):
        assert cayley_hamilton_check(act, a)


@given(st.sampled_from(range(3)), st.integers(0, 10**6))
def test_determinant_agrees_with_orbit_product(i, seed):
    act = ACTIONS[i]
    for a in samples(act, seed, 3):
        assert char_poly(act, a) == act.orbit_char_poly(a)
        assert norm(act, a) == act.orbit_norm(a)


@given(st.sampled_from(range(len(ACTIONS))), st.integers(0, 10**6))
def test_coaction_counit_and_multiplicativity(i, seed):
    act = ACTIONS[i]
    a, b = samples(act, seed, 2)
    assert act.counit_check(a)
    assert act.coassociativity_check([a, b])
    H = act.hopf
    assert H.tensor_mul(act.coaction(a), act.coaction(b)) == act.coaction(a * b)


def test_sign_action_values():
    act = sign_action()
    t = act.algebra.generator("t")
    assert str(norm(act, t)) == "-t^2"
    sv = sigma(act, t)
    assert str(sv[1]) == "0" and str(sv[2]) == "-t^2"
    assert sv.char_poly() == char_poly(act, t)
    assert is_invariant(act, t * t) and not is_invariant(act, t)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_alpha_p_char_poly_is_pth_power(p):
    act = alpha_action(p)
    A = act.algebra
    X = A.generator("X")
    assert char_poly(act, X) == UniPoly(A, [-X, A.one]) ** p
    assert etale_power_identity_check(act, X + A.generator("t"))


def test_product_action_char_poly():
    A = NormalFormAlgebra(PrimeField(3), ["t"], [], 8)
    inf = build_alpha_p_action(A, {"t": "0"})
    et = build_constant_action(ConstantGroup.cyclic(2), A, {"g": {"t": "-t"}})
    act = ProductAction(inf, et)
    t = A.generator("t")
    assert str(char_poly(act, t)) == "T^6 - t^6"


def test_non_commuting_factors_are_rejected():
    A = NormalFormAlgebra(PrimeField(3), ["X", "t"], ["X^3", "t^4"])
    inf = build_alpha_p_action(A, {"X": "1", "t": "0"})
    et = build_constant_action(ConstantGroup.cyclic(2), A, {"g": {"X": "-X", "t": "t"}})
    with pytest.raises(ActionError):
        ProductAction(inf, et)


def test_automorphism_must_respect_relations():
    A = NormalFormAlgebra(PrimeField(5), ["x", "y"], ["x*y"], 4)
    with pytest.raises(ActionError):
        AlgebraAutomorphism(A, {"x": "x + y", "y": "y"})


def test_images_must_define_a_group_action():
    A = NormalFormAlgebra(PrimeField(5), ["t"], [], 6)
    with pytest.raises(ActionError):
        build_constant_action(ConstantGroup.cyclic(2), A, {"g": {"t": "2*t"}})


def test_actions_over_residue_rings():
    A = NormalFormAlgebra(ResidueRing(9), ["t"], [], 5)
    act = build_constant_action(ConstantGroup.cyclic(3), A, {"g": {"t": "4*t"}})
    for a in samples(act, 3):
        assert cayley_hamilton_check(act, a)
        assert char_poly(act, a) == act.orbit_char_poly(a)
