from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from quotlab import invariants as inv
from quotlab.actions import ConstantGroup, build_alpha_p_action, build_constant_action, char_poly, sigma
from quotlab.algebra import NormalFormAlgebra, UniPoly
from quotlab.errors import PreconditionError
from quotlab.rings import PrimeField, ResidueRing


def every_element(A):
    for coeffs in itertools.product(A.base.elements(), repeat=A.dim):
        yield A.from_vector(list(coeffs))


def small_actions():
    F2 = NormalFormAlgebra(PrimeField(2), ["t"], [], 4)
    F3 = NormalFormAlgebra(PrimeField(3), ["x", "y"], ["x*y"], 3)
    Z4 = NormalFormAlgebra(ResidueRing(4), ["t"], [], 3)
    return [
        build_constant_action(ConstantGroup.cyclic(2), F2, {"g": {"t": "t/(1+t)"}}),
        build_constant_action(ConstantGroup.cyclic(2), F3, {"g": {"x": "y", "y": "x"}}),
        build_constant_action(ConstantGroup.cyclic(2), Z4, {"g": {"t": "-t"}}),
        build_alpha_p_action(NormalFormAlgebra(PrimeField(2), ["X", "b"], ["X^2", "b^3"]), {"X": "1", "b": "0"}),
    ]


@pytest.mark.parametrize("act", small_actions())
def test_invariant_ring_matches_brute_force(act):
    A = act.algebra
    fixed = [a for a in every_element(A) if act.is_invariant(a)]
    S = inv.invariant_subring(act)
    assert all(S.contains(a) for a in fixed)
    assert len(fixed) == len([a for a in every_element(A) if S.contains(a)])


@pytest.mark.parametrize("act", small_actions())
def test_sigma_algebra_matches_all_element_oracle(act):
    A = act.algebra
    seeds = []
    for a in every_element(A):
        sv = sigma(act, a)
        seeds.extend(sv.sigmas)
    oracle = inv.algebra_closure(A, seeds)
    assert inv.kl_subalgebra(act).span.same_as(oracle)


@pytest.mark.parametrize("act", small_actions())
def test_sigma_algebra_is_inside_invariants(act):
    assert inv.kl_subalgebra(act).span <= inv.invariant_subring(act).span


def test_alpha_p_on_b_tensor_algebra():
    A = NormalFormAlgebra(PrimeField(3), ["X", "b"], ["X^3", "b^12"])
    act = build_alpha_p_action(A, {"X": "1", "b": "0"})
    rep = inv.compare(act)
    assert not rep.equal
    assert str(rep.witness) == "b"
    assert [str(g) for g in inv.kl_subalgebra(act).generators] == ["b^3"]


@given(st.sampled_from([(3, 2), (5, 2), (5, 4), (7, 3), (7, 6)]), st.integers(0, 5), st.integers(0, 5),
       st.booleans(), st.integers(3, 6))
def test_tame_order_gives_equality(p_order, a, b, node_relation, N):
    # invertible order: A^G is generated by the symmetric functions
    p, order = p_order
    F = PrimeField(p)
    root = next(r for r in range(1, p) if all(pow(r, k, p) != 1 for k in range(1, order)) and pow(r, order, p) == 1)
    A = NormalFormAlgebra(F, ["x", "y"], ["x*y"] if node_relation else [], N)
    images = {"x": f"{pow(root, a + 1, p)}*x", "y": f"{pow(root, b, p)}*y"}
    act = build_constant_action(ConstantGroup.cyclic(order), A, {"g": images})
    assert F.is_unit(F.from_int(order))
    assert inv.compare(act).equal


@pytest.mark.parametrize("act", small_actions())
def test_comparison_witness_is_sound_in_every_characteristic(act):
    # the converse direction is only recorded: any witness must be invariant and outside the symmetric span
    rep = inv.compare(act)
    if not rep.equal:
        assert act.is_invariant(rep.witness)
        assert not inv.kl_subalgebra(act).contains(rep.witness)


@given(st.integers(0, 10**6))
def test_gabber_power_for_random_invariants(seed):
    import random

    act = small_actions()[3]
    A = act.algebra
    rng = random.Random(seed)
    basis = inv.invariant_subring(act).module_basis
    a = sum((b.scale(A.base.random(rng)) for b in basis), A.zero())
    assert inv.gabber_power_check(act, a)


def test_p_part():
    assert inv.p_part(12, 2) == 4
    assert inv.p_part(9, 3) == 9
    assert inv.p_part(5, 2) == 1


def sign_through_quotient(n, p):
    A = NormalFormAlgebra(PrimeField(p), ["t"], [], 8)
    return build_constant_action(ConstantGroup.cyclic(n), A, {"g": {"t": "-t"}})


def test_extraction_z4_over_f5():
    act = sign_through_quotient(4, 5)
    t = act.algebra.generator("t")
    res = inv.quotient_extraction(act, [0, 2], t)
    assert [str(a) for a in reversed(res.alphas)] == ["1", "0", "-t^2"]
    assert res.m == 2
    assert res.power_identity and res.matches_direct
    assert res.chi_quotient**2 == char_poly(act, t)


def test_extraction_refused_when_m_is_not_invertible():
    act = sign_through_quotient(6, 3)
    with pytest.raises(PreconditionError):
        inv.quotient_extraction(act, [0, 2, 4], act.algebra.generator("t"))


def induced_z4():
    C = NormalFormAlgebra(PrimeField(5), ["s"], [], 6)
    G = ConstantGroup.cyclic(4)
    H = [0, 2]
    C_action = build_constant_action(inv.subgroup_group(G, H), C, {"g^2": {"s": "-s"}})
    return inv.induced_action(G, H, C_action)


def test_induced_identities():
    data = induced_z4()
    s = data.C.generator("s")
    rep = inv.induced_identities_check(data, s)
    assert rep.ok
    assert len(data.cosets) == 2
    assert not inv.free_points_check(data.action)


def test_induced_char_poly_is_coset_product():
    data = induced_z4()
    f = data.C.parse("s + 2*s^3")
    A = data.A
    assert char_poly(data.action, A.embed(0, f)) == inv.coset_product(data, f)
    assert inv.coset_product(data, f).degree == 4
    assert isinstance(inv.coset_product(data, f), UniPoly)


def test_free_action_has_equal_invariants_and_sigma():
    C = NormalFormAlgebra(PrimeField(3), ["s"], [], 4)
    G = ConstantGroup.cyclic(2)
    data = inv.induced_action(G, [0], build_constant_action(inv.subgroup_group(G, [0]), C, {}))
    assert inv.free_points_check(data.action)
    assert inv.compare(data.action).equal
