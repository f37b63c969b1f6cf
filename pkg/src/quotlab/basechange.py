"""Tensoring actions along base ring maps and comparing the results.

For a base change R -> R' two canonical maps are compared:

* ``phi``: Σ_R(A) ⊗ R' -> Σ_R'(A ⊗ R')
* ``psi``: A^G ⊗ R' -> (A ⊗ R')^G

Both source modules are presented explicitly (Howell rows of the span over R
and their relation module), so injectivity is decided exactly even when R'
is not flat over R.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Callable

from .actions import GroupAction
from .algebra import AlgebraElement, FiniteAlgebra
from .curves import NodeModel, SmoothPointModel, _require_tame_kernels, node_decompose
from .errors import FrameworkBug, PreconditionError, StructuralError
from .invariants import SubalgebraSpan, invariant_subring, kl_subalgebra, p_part, residue_characteristic
from .linalg import Span, kernel
from .rings import (
    ArtinianExtension,
    BaseRing,
    GaloisField,
    PrimeField,
    ResidueRing,
    SimpleExtension,
    _is_prime,
)

FLAT_KINDS = ("identity", "inclusion")


@dataclass
class BaseChange:
    source: BaseRing
    target: BaseRing
    kind: str
    flat: bool
    fn: Callable[[Any], Any]
    name: str = ""

    def __post_init__(self):
        if self.flat and self.kind not in FLAT_KINDS:
            raise StructuralError(f"a {self.kind} map is not flat")
        if not self.name:
            self.name = f"{self.source.name} -> {self.target.name}"
        self.verify_homomorphism()

    def __call__(self, c: Any) -> Any:
        return self.target.convert(self.fn(self.source.convert(c)))

    def verify_homomorphism(self) -> None:
        S, T = self.source, self.target
        if self(S.one) != T.one:
            raise StructuralError(f"{self.name} does not preserve 1")
        try:
            elems = S.elements()
            pairs = [(a, b) for a in elems for b in elems] if len(elems) <= 64 else None
        except Exception:
            pairs = None
        if pairs is None:
            rng = random.Random(0)
            pairs = [(S.random(rng), S.random(rng)) for _ in range(60)]
        for a, b in pairs:
            if self(S.add(a, b)) != T.add(self(a), self(b)) or self(S.mul(a, b)) != T.mul(self(a), self(b)):
                raise StructuralError(f"{self.name} is not a ring homomorphism at ({a}, {b})")

    def algebra(self, A: FiniteAlgebra) -> FiniteAlgebra:
        if A.base != self.source:
            raise StructuralError("the algebra is not over the source ring")
        return A.with_base(self.target)

    def element(self, a: AlgebraElement, target_algebra: FiniteAlgebra) -> AlgebraElement:
        return target_algebra.element({i: self(c) for i, c in a.c.items()})

    def vector(self, v) -> list:
        return [self(c) for c in v]

    def describe(self) -> dict:
        return {"name": self.name, "kind": self.kind, "flat": self.flat}


# stock constructors


def identity_change(R: BaseRing) -> BaseChange:
    return BaseChange(R, R, "identity", True, lambda c: c, f"id[{R.name}]")


def inclusion(R: BaseRing, T: SimpleExtension) -> BaseChange:
    """A field into an extension ring that is free over it."""
    if T.base != R:
        raise StructuralError("the extension is not built over the source")
    return BaseChange(R, T, "inclusion", True, T.embed)


def reduction(R: ResidueRing, modulus: int) -> BaseChange:
    """ZZ/n -> ZZ/m for m | n (a quotient map)."""
    if R.n % modulus:
        raise StructuralError("reduction modulus must divide n")
    T = PrimeField(modulus) if _is_prime(modulus) else ResidueRing(modulus)
    return BaseChange(R, T, "quotient", R.n == modulus, lambda c: c % modulus)


def residue_map(R: BaseRing) -> BaseChange:
    k = R.residue_field()
    if isinstance(R, ResidueRing):
        return reduction(R, R.prime)
    return BaseChange(R, k, "quotient", R == k, R.to_residue, f"{R.name} -> residue field {k.name}")


def artinian_truncation(R: SimpleExtension, order: int) -> BaseChange:
    T = ArtinianExtension(R.base, order, R.generator)
    return BaseChange(R, T, "quotient", False, lambda c: tuple(c[:order]))


def square_substitution(R: SimpleExtension) -> BaseChange:
    """K[e]/(e^2) -> K[d]/(d^3), e -> d^2 (not flat)."""
    if R.kind != "artinian" or R.degree != 2:
        raise StructuralError("square substitution starts from dual numbers")
    T = ArtinianExtension(R.base, 3, "delta")

    def fn(c):
        c = list(c) + [R.base.zero] * (2 - len(c))
        return (c[0], R.base.zero, c[1])

    return BaseChange(R, T, "substitution", False, fn, f"{R.name} -> {T.name}, eps -> delta^2")


def base_change_from_spec(R: BaseRing, spec: str | dict) -> BaseChange:
    """Build a stock base change from a short name."""
    if isinstance(spec, dict):
        kind = spec.get("kind")
        if kind == "galois":
            return inclusion(R, GaloisField(R.characteristic, int(spec["degree"])))
        if kind == "artinian":
            return inclusion(R, ArtinianExtension(R, int(spec["order"])))
        if kind == "reduction":
            return reduction(R, int(spec["modulus"]))
        raise StructuralError(f"unknown base change {spec!r}")
    if spec == "identity":
        return identity_change(R)
    if spec == "dual":
        return inclusion(R, ArtinianExtension(R, 2))
    if spec == "eps3":
        return inclusion(R, ArtinianExtension(R, 3))
    if spec == "residue":
        return residue_map(R)
    if spec.startswith("gf"):
        return inclusion(R, GaloisField(R.characteristic, int(spec[2:])))
    raise StructuralError(f"unknown base change {spec!r}")


# -- tensoring actions ---------------------------------------------------------------


def tensor_action(action: GroupAction, bc: BaseChange) -> GroupAction:
    A2 = bc.algebra(action.algebra)
    return action.change_base(A2, lambda a: bc.element(a, A2), bc)


def _tensor_cache(action: GroupAction) -> dict:
    c = getattr(action, "_tensor_cache", None)
    if c is None:
        c = {}
        action._tensor_cache = c
    return c


def tensored(action: GroupAction, bc: BaseChange) -> GroupAction:
    cache = _tensor_cache(action)
    key = (bc.name, bc.target.key())
    if key not in cache:
        cache[key] = tensor_action(action, bc)
    return cache[key]


@dataclass
class MapVerdict:
    surjective: bool
    injective: bool

    @property
    def bijective(self) -> bool:
        return self.surjective and self.injective


def presentation_relations(span: Span) -> list[list]:
    """Relations among the Howell rows of a span over its base ring."""
    rows = span.basis()
    return Span(span.base, span.n, rows).syzygies()


def compare_map(source: SubalgebraSpan, target: SubalgebraSpan, bc: BaseChange) -> MapVerdict:
    """Verdicts for ``source ⊗ R' -> target`` induced by the inclusion into A ⊗ R'."""
    rows = source.span.basis()
    R2 = bc.target
    images = [bc.vector(r) for r in rows]
    n = target.algebra.dim
    image = Span(R2, n, images)
    surjective = target.span <= image
    # injectivity: every relation among the images comes from one over R
    rels = [bc.vector(r) for r in presentation_relations(source.span)]
    rel_span = Span(R2, len(rows), rels)
    M = [[images[j][i] for j in range(len(rows))] for i in range(n)]
    K = kernel(R2, M, len(rows)) if rows else []
    injective = all(rel_span.contains(k) for k in K)
    return MapVerdict(surjective, injective)


@dataclass
class ComparisonMaps:
    bc: BaseChange
    phi: MapVerdict
    psi: MapVerdict
    source_invariants: SubalgebraSpan
    target_invariants: SubalgebraSpan
    source_kl: SubalgebraSpan
    target_kl: SubalgebraSpan

    @property
    def consistent(self) -> bool:
        """φ is always onto; along flat maps both maps are bijective."""
        if not self.phi.surjective:
            return False
        if self.bc.flat:
            return self.phi.bijective and self.psi.bijective
        return True

    def describe(self) -> dict:
        return {
            "base_change": self.bc.describe(),
            "phi_surjective": self.phi.surjective,
            "phi_injective": self.phi.injective,
            "psi_surjective": self.psi.surjective,
            "psi_injective": self.psi.injective,
            "invariant_rank": [self.source_invariants.rank, self.target_invariants.rank],
            "kl_rank": [self.source_kl.rank, self.target_kl.rank],
        }


def comparison_maps(action: GroupAction, bc: BaseChange) -> ComparisonMaps:
    act2 = tensored(action, bc)
    inv, inv2 = invariant_subring(action), invariant_subring(act2)
    kl, kl2 = kl_subalgebra(action), kl_subalgebra(act2)
    return ComparisonMaps(bc, compare_map(kl, kl2, bc), compare_map(inv, inv2, bc), inv, inv2, kl, kl2)


# -- radicial shadow -------------------------------------------------------------------


class TensoredSubalgebra:
    """``S ⊗ R'`` for a subalgebra S over R, via structure constants on its Howell rows."""

    def __init__(self, S: SubalgebraSpan, bc: BaseChange):
        self.S = S
        self.bc = bc
        self.rows = S.span.basis()
        A = S.algebra
        self.elements = [A.from_vector(r) for r in self.rows]
        r = len(self.rows)
        row_span = Span(A.base, A.dim, self.rows)
        self.consts = {}
        for i in range(r):
            for j in range(i, r):
                c = row_span.solve((self.elements[i] * self.elements[j]).to_vector())
                if c is None:
                    raise FrameworkBug("subalgebra span is not closed under multiplication")
                self.consts[(i, j)] = bc.vector(c)
        self.relations = Span(bc.target, r, [bc.vector(v) for v in presentation_relations(S.span)])
        self.one = bc.vector(row_span.solve(A.one.to_vector()))

    def mul(self, u: list, v: list) -> list:
        R2 = self.bc.target
        r = len(self.rows)
        out = [R2.zero] * r
        for i in range(r):
            if not u[i]:
                continue
            for j in range(r):
                if not v[j]:
                    continue
                a, b = (i, j) if i <= j else (j, i)
                s = R2.mul(u[i], v[j])
                for k, c in enumerate(self.consts[(a, b)]):
                    if c:
                        out[k] = R2.add(out[k], R2.mul(s, c))
        return out

    def power(self, u: list, e: int) -> list:
        out = list(self.one)
        for _ in range(e):
            out = self.mul(out, u)
        return out

    def is_zero(self, u: list) -> bool:
        return self.relations.contains(u)

    def image(self, u: list) -> list:
        """Image in A ⊗ R'."""
        R2 = self.bc.target
        n = self.S.algebra.dim
        out = [R2.zero] * n
        for c, row in zip(u, self.rows):
            if c:
                for i, x in enumerate(self.bc.vector(row)):
                    if x:
                        out[i] = R2.add(out[i], R2.mul(c, x))
        return out


@dataclass
class RadicialReport:
    kernel_killed: bool
    powers_in_image: bool
    p_power: int
    kernel_rank: int

    @property
    def ok(self) -> bool:
        return self.kernel_killed and self.powers_in_image

    def describe(self) -> dict:
        return {
            "kernel_killed": self.kernel_killed,
            "powers_in_image": self.powers_in_image,
            "p_power": self.p_power,
            "kernel_rank": self.kernel_rank,
        }


def radicial_shadow_check(action: GroupAction, bc: BaseChange, samples: int = 12) -> RadicialReport:
    """Kernel of ψ dies under p^r-th powers; p^r-th powers of target invariants come from the source."""
    if bc.kind not in ("quotient", "identity"):
        raise PreconditionError("the target must be a quotient of the source")
    R = action.algebra.base
    if not (isinstance(R, ResidueRing) and R.prime is not None):
        raise PreconditionError("the source must be ZZ/p^k or a prime field")
    pr = p_part(action.order, residue_characteristic(action))
    inv = invariant_subring(action)
    act2 = tensored(action, bc)
    inv2 = invariant_subring(act2)
    T = TensoredSubalgebra(inv, bc)
    r = len(T.rows)
    R2 = bc.target
    A2 = act2.algebra
    # kernel of S ⊗ R' -> A ⊗ R'
    M = [[bc.vector(T.rows[j])[i] for j in range(r)] for i in range(A2.dim)]
    K = kernel(R2, M, r) if r else []
    killed = all(T.is_zero(T.power(k, pr)) for k in K)
    image = Span(R2, A2.dim, [bc.vector(row) for row in T.rows])
    rng = random.Random(1)
    targets = list(inv2.module_basis)
    for _ in range(samples):
        x = A2.zero()
        for b in inv2.module_basis:
            x = x + b.scale(R2.random(rng))
        targets.append(x)
    in_image = all(image.contains((x**pr).to_vector()) for x in targets)
    nontrivial = sum(1 for k in K if not T.is_zero(k))
    return RadicialReport(killed, in_image, pr, nontrivial)


# -- exchange criterion ----------------------------------------------------------------


def stock_artinian_changes(R: BaseRing) -> list[BaseChange]:
    """Two test base changes per base: flat thickenings over a field, quotients otherwise."""
    if R.is_field:
        return [inclusion(R, ArtinianExtension(R, 2)), inclusion(R, ArtinianExtension(R, 3))]
    out = [residue_map(R)]
    if isinstance(R, ResidueRing) and R.exponent and R.exponent > 2:
        out.append(reduction(R, R.prime ** (R.exponent - 1)))
    elif isinstance(R, SimpleExtension) and R.kind == "artinian" and R.degree > 2:
        out.append(artinian_truncation(R, R.degree - 1))
    elif isinstance(R, SimpleExtension) and R.kind == "artinian" and R.degree == 2:
        out.append(square_substitution(R))
    return out


@dataclass
class ExchangeReport:
    criterion: bool
    compatibility: dict = field(default_factory=dict)
    framework_bug: bool = False

    def describe(self) -> dict:
        return {"criterion": self.criterion, "compatibility": self.compatibility, "framework_bug": self.framework_bug}


def exchange_criterion(action: GroupAction) -> ExchangeReport:
    """Surjectivity of A^G ⊗ k -> (A ⊗ k)^G at the residue field, and what it implies."""
    R = action.algebra.base
    R.require_chain()
    if R.is_field:
        criterion = True
    else:
        criterion = comparison_maps(action, residue_map(R)).psi.surjective
    report = ExchangeReport(criterion)
    if criterion:
        for bc in stock_artinian_changes(R):
            ok = comparison_maps(action, bc).psi.bijective
            report.compatibility[bc.name] = ok
            if not ok:
                report.framework_bug = True
    return report


# -- quotient versus base change for curve models ---------------------------------------


@dataclass
class QuotientCommutesReport:
    bijective: bool
    bc: str

    def describe(self) -> dict:
        return {"bijective": self.bijective, "base_change": self.bc}


def quotient_commutes(model: NodeModel | SmoothPointModel, bc: BaseChange) -> QuotientCommutesReport:
    if isinstance(model, NodeModel):
        _require_tame_kernels(model, node_decompose(model))
    else:
        model.check_generically_free()
    maps = comparison_maps(model.action, bc)
    return QuotientCommutesReport(maps.psi.bijective, bc.name)
