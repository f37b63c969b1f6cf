from __future__ import annotations

import pytest

from quotlab import curves
from quotlab.actions import ConstantGroup, build_constant_action
from quotlab.algebra import NormalFormAlgebra
from quotlab.errors import PreconditionError, StructuralError
from quotlab.rings import PrimeField


def smooth(p, N, group, image):
    A = NormalFormAlgebra(PrimeField(p), ["t"], [], N)
    return curves.SmoothPointModel(build_constant_action(ConstantGroup.cyclic(group), A, {"g": {"t": image}}))


def node(p, group, images, product=False):
    A = NormalFormAlgebra(PrimeField(p), ["x", "y"], ["x*y"], 8)
    if product:
        G = ConstantGroup.product(ConstantGroup.cyclic(2), ConstantGroup.cyclic(2))
    else:
        G = ConstantGroup.cyclic(group)
    return curves.NodeModel(build_constant_action(G, A, images))


@pytest.mark.parametrize("p,N,order,image", [(7, 9, 3, "2*t"), (2, 8, 2, "t/(1+t)"), (5, 10, 4, "2*t")])
def test_smooth_point_invariants(p, N, order, image):
    model = smooth(p, N, order, image)
    rep = curves.smooth_invariants_check(model)
    assert rep.equal
    assert rep.valuation == order
    assert rep.certified_degree == curves.degree_guard(model.algebra, order)


def test_tame_norm_is_a_power_of_t():
    model = smooth(7, 9, 3, "2*t")
    assert str(model.norm_of_t()) == "t^3"


def test_degree_guard():
    A = NormalFormAlgebra(PrimeField(2), ["t"], [], 8)
    assert curves.degree_guard(A, 2) == 7


def test_node_swap():
    model = node(5, 2, {"g": {"x": "y", "y": "x"}})
    data = curves.node_decompose(model)
    assert data.psi == 1
    rep = curves.node_invariants_check(model)
    assert rep.ok
    assert rep.quotient_type == "smooth"
    assert rep.invariant_generator == "x + y"
    assert curves.node_sigma_check(model)
    assert curves.cogenerated_check(model)


def test_node_swap_composed_with_sign():
    model = node(5, 2, {"g": {"x": "-y", "y": "-x"}})
    assert curves.node_decompose(model).psi == 1
    assert curves.node_invariants_check(model).ok
    assert curves.node_sigma_check(model)


def test_node_sigma_without_swap_is_the_norm():
    model = node(5, 4, {"(g,e)": {"x": "-x", "y": "y"}, "(e,g)": {"x": "x", "y": "-y"}}, product=True)
    assert curves.node_sigma_check(model)


def test_node_swap_z4():
    model = node(5, 4, {"g": {"x": "y", "y": "-x"}})
    data = curves.node_decompose(model)
    u, v = curves.branch_norms(model, data)
    assert str(u) == "-x^2"
    rep = curves.node_invariants_check(model)
    assert rep.ok
    assert rep.invariant_generator == "-x^2 - y^2"


def test_second_swap_choice_gives_the_same_quotient():
    model = node(5, 4, {"g": {"x": "y", "y": "-x"}})
    swaps = [g for g in range(4) if model.classes[g] == "swap"]
    assert len(swaps) == 2
    reps = [curves.node_invariants_check(model, psi) for psi in swaps]
    assert all(r.ok for r in reps)
    assert reps[0].invariant_generator == reps[1].invariant_generator
    assert all(curves.node_sigma_check(model, psi) for psi in swaps)


def test_node_with_independent_signs_stays_a_node():
    model = node(5, 4, {"(g,e)": {"x": "-x", "y": "y"}, "(e,g)": {"x": "x", "y": "-y"}}, product=True)
    rep = curves.node_invariants_check(model)
    assert rep.ok
    assert rep.quotient_type == "node"
    assert rep.swap_part_ok is None


def test_wild_inertia_is_gated():
    A = NormalFormAlgebra(PrimeField(2), ["x", "y"], ["x*y"], 8)
    model = curves.NodeModel(build_constant_action(ConstantGroup.cyclic(2), A, {"g": {"x": "x", "y": "y/(1+y)"}}))
    with pytest.raises(PreconditionError):
        curves.node_invariants_check(model)


def test_node_model_requires_two_variables():
    A = NormalFormAlgebra(PrimeField(5), ["t"], [], 4)
    with pytest.raises(StructuralError):
        curves.NodeModel(build_constant_action(ConstantGroup.cyclic(2), A, {"g": {"t": "-t"}}))
