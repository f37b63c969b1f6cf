"""Invariant rings, the subalgebra generated by symmetric functions, and
the identities relating them under quotients and induction."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .actions import (
    AlgebraAutomorphism,
    ConstantAction,
    ConstantGroup,
    GroupAction,
    char_poly,
    sigma,
)
from .algebra import AlgebraElement, FiniteAlgebra, NormalFormAlgebra, ProductAlgebra, UniPoly
from .errors import ActionError, PreconditionError
from .linalg import Span, kernel


@dataclass
class SubalgebraSpan:
    """A subalgebra recorded by a module basis (Howell rows) and algebra generators."""

    algebra: FiniteAlgebra
    span: Span
    generators: list
    label: str = "Custom"

    @property
    def module_basis(self) -> list[AlgebraElement]:
        return [self.algebra.from_vector(v) for v in self.span.basis()]

    @property
    def rank(self) -> int:
        return self.span.rank

    @property
    def length(self) -> int:
        return self.span.length

    def contains(self, a: AlgebraElement) -> bool:
        return self.span.contains(a.to_vector())

    def same_as(self, other: "SubalgebraSpan") -> bool:
        return self.span.same_as(other.span)

    def truncated(self, d: int) -> "SubalgebraSpan":
        """Image in A / (degree >= d)."""
        vecs = [a.truncate(d).to_vector() for a in self.module_basis]
        return SubalgebraSpan(
            self.algebra,
            Span(self.algebra.base, self.algebra.dim, vecs),
            [g.truncate(d) for g in self.generators if g.truncate(d)],
            self.label,
        )

    def describe(self) -> dict:
        return {
            "label": self.label,
            "rank": self.rank,
            "length": self.length,
            "generators": [str(g) for g in self.generators],
            "basis": [str(b) for b in self.module_basis],
        }


def span_of(A: FiniteAlgebra, elements: Sequence[AlgebraElement]) -> Span:
    return Span(A.base, A.dim, [e.to_vector() for e in elements])


def algebra_closure(A: FiniteAlgebra, seeds: Sequence[AlgebraElement]) -> Span:
    """The R-subalgebra generated by ``seeds``, as a module span."""
    seed_span = span_of(A, seeds)
    seed_basis = [A.from_vector(v) for v in seed_span.basis()]
    current = span_of(A, [A.one] + seed_basis)
    while True:
        basis = [A.from_vector(v) for v in current.basis()]
        new = []
        for b in basis:
            for s in seed_basis:
                v = (b * s).to_vector()
                if not current.contains(v):
                    new.append(v)
        if not new:
            return current
        current = Span(A.base, A.dim, current.basis() + new)


def greedy_generators(A: FiniteAlgebra, span: Span) -> list[AlgebraElement]:
    """Scan the module basis in order, keeping what the earlier picks do not generate."""
    kept: list[AlgebraElement] = []
    closure = span_of(A, [A.one])
    for v in span.basis():
        if closure.contains(v):
            continue
        kept.append(A.from_vector(v))
        closure = algebra_closure(A, kept)
    return kept


def subalgebra(A: FiniteAlgebra, gens: Sequence[AlgebraElement], label: str = "Custom") -> SubalgebraSpan:
    return SubalgebraSpan(A, algebra_closure(A, gens), list(gens), label)


def _cache(action: GroupAction) -> dict:
    c = getattr(action, "_span_cache", None)
    if c is None:
        c = {}
        action._span_cache = c
    return c


def alpha_matrix(action: GroupAction) -> list[list]:
    """Matrix of a ↦ μ*(a) - 1⊗a, rows indexed by (hopf basis, algebra basis)."""
    A = action.algebra
    H = action.hopf
    R = A.base
    n = H.rank
    rows = [[R.zero] * A.dim for _ in range(n * A.dim)]
    for j in range(A.dim):
        b = A.basis_element(j)
        co = action.coaction(b)
        for i in range(n):
            diff = co[i] - b.scale(H.unit[i])
            for k, v in diff.c.items():
                rows[i * A.dim + k][j] = v
    return rows


def invariant_subring(action: GroupAction) -> SubalgebraSpan:
    """A^G as the kernel of a ↦ μ*(a) - 1⊗a."""
    cache = _cache(action)
    if "inv" not in cache:
        A = action.algebra
        K = kernel(A.base, alpha_matrix(action), A.dim)
        span = Span(A.base, A.dim, K)
        cache["inv"] = SubalgebraSpan(A, span, greedy_generators(A, span), "Invariants")
    return cache["inv"]


def sigma_seeds(action: GroupAction) -> list[AlgebraElement]:
    A = action.algebra
    seeds = []
    for i in range(A.dim):
        for s in sigma(action, A.basis_element(i)).sigmas:
            if s:
                seeds.append(s)
    return seeds


def kl_subalgebra(action: GroupAction) -> SubalgebraSpan:
    """The subalgebra generated by all σ_i of basis monomials, saturated."""
    cache = _cache(action)
    if "kl" not in cache:
        A = action.algebra
        span = algebra_closure(A, sigma_seeds(action))
        cache["kl"] = SubalgebraSpan(A, span, greedy_generators(A, span), "KleimanLonsted")
    return cache["kl"]


@dataclass
class ComparisonReport:
    equal: bool
    witness: AlgebraElement | None
    invariant_rank: int
    kl_rank: int
    certified_degree: int | None = None

    def describe(self) -> dict:
        return {
            "equal": self.equal,
            "witness": None if self.witness is None else str(self.witness),
            "invariant_rank": self.invariant_rank,
            "kl_rank": self.kl_rank,
            "certified_degree": self.certified_degree,
        }


def compare(action: GroupAction, degree: int | None = None) -> ComparisonReport:
    """Compare Σ with A^G, optionally only modulo monomials of degree >= ``degree``."""
    inv = invariant_subring(action)
    kl = kl_subalgebra(action)
    if not kl.span <= inv.span:
        raise ActionError("a symmetric function is not invariant")
    if degree is not None:
        inv, kl = inv.truncated(degree), kl.truncated(degree)
    witness = None
    for b in inv.module_basis:
        if not kl.contains(b):
            witness = b
            break
    return ComparisonReport(witness is None, witness, inv.rank, kl.rank, degree)


def residue_characteristic(action: GroupAction) -> int:
    R = action.algebra.base
    if R.nilpotency is not None:
        return R.residue_field().characteristic
    return R.characteristic


def p_part(n: int, p: int) -> int:
    if p <= 1:
        return 1
    q = 1
    while n % (q * p) == 0:
        q *= p
    return q


def gabber_power_check(action: GroupAction, a: AlgebraElement) -> bool:
    """For invariant a, a^(p^r) lies in Σ where p^r is the p-part of |G|."""
    if not action.is_invariant(a):
        raise PreconditionError(f"{a} is not invariant")
    pr = p_part(action.order, residue_characteristic(action))
    return kl_subalgebra(action).contains(a**pr)


# -- quotients by a trivially acting normal subgroup --------------------------------


@dataclass
class ExtractionResult:
    """Coefficients α_u of χ^{G/H}, lowest degree first, recovered from χ^G alone."""

    alphas: list
    chi_G: UniPoly
    chi_quotient: UniPoly
    direct: UniPoly
    m: int

    @property
    def power_identity(self) -> bool:
        return self.chi_quotient**self.m == self.chi_G

    @property
    def matches_direct(self) -> bool:
        return self.chi_quotient == self.direct

    def top_down(self) -> list[str]:
        return [str(a) for a in reversed(self.alphas)]


def quotient_extraction(action: ConstantAction, H: Sequence[int], a: AlgebraElement) -> ExtractionResult:
    G = action.group
    H = tuple(sorted(set(H)))
    if not G.is_normal(H):
        raise ActionError("H is not a normal subgroup")
    ident = AlgebraAutomorphism.identity(action.algebra)
    for h in H:
        if action.auts[h].images != ident.images:
            raise ActionError(f"{G.labels[h]} does not act trivially")
    A = action.algebra
    R = A.base
    m = len(H)
    if not R.is_unit(R.from_int(m)):
        raise PreconditionError("extraction requires m invertible")
    n = G.order
    ell = n // m
    chi = char_poly(action, a)
    minv = R.inv(R.from_int(m))
    alpha: dict[int, AlgebraElement] = {ell: A.one}
    for u in range(ell - 1, -1, -1):
        j = ell * (m - 1) + u
        rest = A.zero()
        for idx in itertools.product(range(u + 1, ell + 1), repeat=m):
            if sum(idx) == j:
                term = A.one
                for i in idx:
                    term = term * alpha[i]
                rest = rest + term
        alpha[u] = (chi.coefficient(j) - rest).scale(minv) * (alpha[ell] ** (m - 1)).inverse()
    alphas = [alpha[u] for u in range(ell + 1)]
    recon = UniPoly(A, alphas)
    direct = char_poly(action.quotient_action(H), a)
    return ExtractionResult(alphas, chi, recon, direct, m)


# -- induced algebras -------------------------------------------------------


@dataclass
class InducedData:
    G: ConstantGroup
    H: tuple
    C: NormalFormAlgebra
    C_action: ConstantAction
    A: ProductAlgebra
    action: ConstantAction
    cosets: list
    reps: list

    def phi(self, a: AlgebraElement) -> AlgebraElement:
        """Evaluation at the origin coset: projection onto the factor of H."""
        return self.A.project(0, a)

    def transport(self, alpha: int, c: AlgebraElement) -> AlgebraElement:
        """The copy of c ∈ C in factor α (the action of the coset representative)."""
        return self.action.act(self.reps[alpha], self.A.embed(0, c))


def subgroup_group(G: ConstantGroup, H: Sequence[int]) -> ConstantGroup:
    H = list(H)
    pos = {g: i for i, g in enumerate(H)}
    try:
        table = [[pos[G.table[a][b]] for b in H] for a in H]
    except KeyError:
        raise ActionError("H is not closed under multiplication") from None
    return ConstantGroup([G.labels[h] for h in H], table)


def induced_action(G: ConstantGroup, H: Sequence[int], C_action: ConstantAction) -> InducedData:
    """Ind_H^G(C) as a product of copies of C indexed by left cosets of H."""
    H = tuple(sorted(set(H)))
    if not G.is_subgroup(H):
        raise ActionError("H is not a subgroup")
    if C_action.group.order != len(H):
        raise ActionError("the action on C must be by a group of order |H|")
    hpos = {h: i for i, h in enumerate(H)}
    C = C_action.algebra
    cosets = G.left_cosets(H)
    reps = [c[0] for c in cosets]
    coset_of = {}
    for i, c in enumerate(cosets):
        for g in c:
            coset_of[g] = i
    A = ProductAlgebra([C] * len(cosets))
    auts = []
    for g in range(G.order):
        images = {}
        for alpha, r in enumerate(reps):
            gr = G.table[g][r]
            beta = coset_of[gr]
            h = G.table[G.inverse[reps[beta]]][gr]
            twist = C_action.auts[hpos[h]]
            images[f"e_{alpha}"] = A.generator(f"e_{beta}")
            for v in C.variables:
                images[f"{v}_{alpha}"] = A.embed(beta, twist.images[v])
        auts.append(AlgebraAutomorphism(A, images, check=False))
    action = ConstantAction(G, A, auts)
    for aut in auts:
        aut.validate()
    return InducedData(G, H, C, C_action, A, action, cosets, reps)


@dataclass
class InducedReport:
    equation_holds: bool
    phi_invariants: bool
    phi_sigma: bool
    chi_G: UniPoly
    coset_product: UniPoly

    @property
    def ok(self) -> bool:
        return self.equation_holds and self.phi_invariants and self.phi_sigma


def coset_product(data: InducedData, f: AlgebraElement) -> UniPoly:
    """Π_α α(χ_H(f)): each factor is monic with lower coefficients in factor α."""
    A = data.A
    chi_H = char_poly(data.C_action, f)
    out = UniPoly(A, [A.one])
    for alpha in range(len(data.cosets)):
        coeffs = [data.transport(alpha, c) for c in chi_H.coeffs[:-1]] + [A.one]
        out = out * UniPoly(A, coeffs)
    return out


def phi_image(data: InducedData, span: SubalgebraSpan) -> Span:
    C = data.C
    return Span(C.base, C.dim, [data.phi(b).to_vector() for b in span.module_basis])


def induced_identities_check(data: InducedData, f: AlgebraElement) -> InducedReport:
    A = data.A
    if f.parent == data.C:
        f_A = A.embed(0, f)
        f_C = f
    else:
        f_A = f
        if any(A.project(a, f) for a in range(1, len(data.cosets))):
            raise PreconditionError("f must be supported in the origin factor")
        f_C = A.project(0, f)
    chi_G = char_poly(data.action, f_A)
    prod = coset_product(data, f_C)
    inv_ok = phi_image(data, invariant_subring(data.action)).same_as(invariant_subring(data.C_action).span)
    sig_ok = phi_image(data, kl_subalgebra(data.action)).same_as(kl_subalgebra(data.C_action).span)
    return InducedReport(chi_G == prod, inv_ok, sig_ok, chi_G, prod)


def free_points_check(action: ConstantAction) -> bool:
    """No non-identity element fixes the residue point of any factor.

    For a normal-form algebra (one point) this means the group is trivial;
    for a product it means no non-identity element maps a factor to itself.
    """
    A = action.algebra
    G = action.group
    if isinstance(A, ProductAlgebra):
        for g in range(1, G.order):
            for a in range(len(A.factors)):
                e = A.generator(f"e_{a}")
                if action.act(g, e) == e:
                    return False
        return True
    return G.order == 1
