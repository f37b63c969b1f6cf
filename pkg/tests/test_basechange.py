from __future__ import annotations

import itertools

import pytest

from quotlab import basechange as bcm
from quotlab import curves
from quotlab import invariants as inv
from quotlab.actions import ConstantGroup, build_alpha_p_action, build_constant_action
from quotlab.algebra import NormalFormAlgebra
from quotlab.rings import PrimeField, ResidueRing


def sign_action(R, N=6):
    A = NormalFormAlgebra(R, ["t"], [], N)
    return build_constant_action(ConstantGroup.cyclic(2), A, {"g": {"t": "-t"}})


@pytest.mark.parametrize("change", ["dual", "eps3", "gf2"])
def test_flat_changes_are_bijective(change):
    act = sign_action(PrimeField(5))
    maps = bcm.comparison_maps(act, bcm.base_change_from_spec(act.algebra.base, change))
    assert maps.phi.bijective and maps.psi.bijective
    assert maps.consistent


def test_flat_change_doubles_invariant_length():
    act = sign_action(PrimeField(5))
    bc = bcm.base_change_from_spec(act.algebra.base, "dual")
    target = bcm.tensored(act, bc)
    assert inv.invariant_subring(target).length == 2 * inv.invariant_subring(act).length


def test_residue_map_of_z4():
    act = build_constant_action(ConstantGroup.cyclic(2), NormalFormAlgebra(ResidueRing(4), ["t"], [], 6), {"g": {"t": "3*t"}})
    bc = bcm.base_change_from_spec(act.algebra.base, "residue")
    maps = bcm.comparison_maps(act, bc)
    assert maps.phi.surjective
    assert not maps.psi.surjective
    assert bcm.radicial_shadow_check(act, bc).ok
    assert not bcm.exchange_criterion(act).criterion


def test_residue_invariants_by_brute_force():
    act = build_constant_action(ConstantGroup.cyclic(2), NormalFormAlgebra(ResidueRing(4), ["t"], [], 4), {"g": {"t": "3*t"}})
    bc = bcm.base_change_from_spec(act.algebra.base, "residue")
    target = bcm.tensored(act, bc)
    B = target.algebra
    fixed = 0
    for coeffs in itertools.product(B.base.elements(), repeat=B.dim):
        if target.is_invariant(B.from_vector(list(coeffs))):
            fixed += 1
    assert fixed == 2 ** inv.invariant_subring(target).length
    # mod 2 the action is trivial, so every element is invariant
    assert fixed == 2**B.dim


def test_identity_change_is_bijective():
    A = NormalFormAlgebra(PrimeField(2), ["X", "b"], ["X^2", "b^8"])
    act = build_alpha_p_action(A, {"X": "1", "b": "0"})
    maps = bcm.comparison_maps(act, bcm.base_change_from_spec(A.base, "identity"))
    assert maps.phi.bijective and maps.psi.bijective


def test_stock_artinian_changes():
    names = [bc.name for bc in bcm.stock_artinian_changes(PrimeField(5))]
    assert names == ["GF(5) -> GF(5)[eps]/(eps^2)", "GF(5) -> GF(5)[eps]/(eps^3)"]


def test_quotient_commutes_for_smooth_point():
    A = NormalFormAlgebra(PrimeField(7), ["t"], [], 9)
    model = curves.SmoothPointModel(build_constant_action(ConstantGroup.cyclic(3), A, {"g": {"t": "2*t"}}))
    for bc in bcm.stock_artinian_changes(A.base):
        assert bcm.quotient_commutes(model, bc).bijective


def test_exchange_over_a_field_holds():
    assert bcm.exchange_criterion(sign_action(PrimeField(5))).criterion
