from __future__ import annotations

import pytest

from quotlab import cohomology as coh
from quotlab.actions import ConstantGroup, build_constant_action
from quotlab.algebra import NormalFormAlgebra
from quotlab.errors import StructuralError, UnsupportedBaseError
from quotlab.rings import GaloisField, PrimeField, ResidueRing

Z4_SERIES = "t + t^2 + t^11 + t^15 + t^23 + t^31 + t^35 + t^39"


def action(p, order, image, truncation, degree=1):
    R = PrimeField(p) if degree == 1 else GaloisField(p, degree)
    A = NormalFormAlgebra(R, ["t"], [], truncation)
    return build_constant_action(ConstantGroup.cyclic(order), A, {"g": {"t": image}})


def v4_action(truncation=24):
    A = NormalFormAlgebra(GaloisField(2, 2), ["t"], [], truncation)
    G = ConstantGroup.product(ConstantGroup.cyclic(2), ConstantGroup.cyclic(2))
    return build_constant_action(G, A, {"(g,e)": {"t": "t/(1+t)"}, "(e,g)": {"t": "t/(1+z*t)"}})


def regular_module(G, R):
    mats = []
    for g in range(G.order):
        M = [[R.one if G.table[g][h] == k else R.zero for h in range(G.order)] for k in range(G.order)]
        mats.append(M)
    return coh.GModule(G, R, mats, [f"[{x}]" for x in G.labels], "k[G]")


def test_trivial_module_gives_homomorphisms():
    F2 = PrimeField(2)
    assert coh.h_one(coh.GModule.trivial(ConstantGroup.cyclic(2), F2)).dimension == 1
    V4 = ConstantGroup.product(ConstantGroup.cyclic(2), ConstantGroup.cyclic(2))
    assert coh.h_one(coh.GModule.trivial(V4, F2)).dimension == 2
    assert coh.h_one(coh.GModule.trivial(ConstantGroup.cyclic(3), F2)).dimension == 0
    assert coh.h_zero(coh.GModule.trivial(V4, F2, 3)).dimension == 3


@pytest.mark.parametrize("order,p", [(2, 2), (3, 3), (4, 2), (6, 3)])
def test_regular_module_is_acyclic(order, p):
    M = regular_module(ConstantGroup.cyclic(order), PrimeField(p))
    assert coh.h_one(M).dimension == 0
    assert coh.cyclic_h1_dimension(M) == 0
    assert coh.h_zero(M).dimension == 1


def test_modules_need_a_field():
    with pytest.raises(UnsupportedBaseError):
        coh.GModule.trivial(ConstantGroup.cyclic(2), ResidueRing(4))


@pytest.mark.parametrize(
    "act",
    [action(2, 2, "t/(1+t)", 30), action(7, 3, "2*t", 16), action(2, 4, Z4_SERIES, 48), action(3, 3, "t/(1+t)", 30)],
)
@pytest.mark.parametrize("N", [6, 8, 9])
def test_bar_complex_against_cyclic_oracle(act, N):
    M = coh.theta_module(act, N)
    assert coh.d1_d0_vanishes(M)
    assert coh.h_one(M).dimension == coh.cyclic_h1_dimension(M)


def test_tame_actions_have_no_first_cohomology():
    for act in (action(7, 3, "2*t", 16), action(7, 6, "3*t", 16), action(5, 4, "2*t", 16)):
        assert coh.h_one(coh.theta_module(act, 8)).dimension == 0


def test_theta_labels_and_truncation_limit():
    act = action(7, 3, "2*t", 10)
    M = coh.theta_module(act, 9)
    assert M.labels[:3] == ["d/dt", "t*d/dt", "t^2*d/dt"]
    with pytest.raises(StructuralError):
        coh.theta_module(act, 10)


def test_cocycle_membership():
    act = action(2, 2, "t/(1+t)", 30)
    M = coh.theta_module(act, 8)
    H1 = coh.h_one(M)
    for z in H1.cocycles:
        assert H1.is_cocycle(z)
    for b in H1.coboundaries:
        assert H1.is_coboundary(b)


@pytest.mark.parametrize("H", [[0, 1], [0, 2], [0, 3]])
def test_restriction_after_inflation_vanishes_for_v4(H):
    M = coh.theta_module(v4_action(), 8)
    res = coh.restriction_h1(M, H)
    infl = coh.inflation_h1(M, H)
    assert coh.compose_is_zero(res, infl)


def test_restriction_after_inflation_vanishes_for_z4():
    M = coh.theta_module(action(2, 4, Z4_SERIES, 48), 8)
    assert coh.compose_is_zero(coh.restriction_h1(M, [0, 2]), coh.inflation_h1(M, [0, 2]))


def test_wild_z2_stability():
    rep = coh.h1_stability(action(2, 2, "t/(1+t)", 30), 8)
    assert rep.raw == {8: 2, 9: 1}
    assert rep.stable and rep.dimension == 1


def test_z4_stable_dimension_is_independent_of_precision():
    act = action(2, 4, Z4_SERIES, 48)
    dims = {N: coh.h1_stability(act, N).dimension for N in (8, 10)}
    assert dims == {8: 2, 10: 2}


def test_z4_composite_signature_matches_across_precisions():
    act = action(2, 4, Z4_SERIES, 48)
    sigs = {N: coh.stable_composite(act, [0, 2], N).signature() for N in (8, 10)}
    assert sigs[8] == sigs[10] == (1, 1, 0)
    comp = coh.induction_differential_composite(act, [0, 2], 8)
    assert coh.cyclic_composite_rank(comp) == comp.rank


def test_composite_for_trivial_subgroup_is_the_identity_on_theta():
    act = action(2, 2, "t/(1+t)", 30)
    comp = coh.induction_differential_composite(act, [0], 8)
    assert comp.Y == "t"
    assert comp.rank == comp.domain.dimension
