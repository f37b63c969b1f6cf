"""First group cohomology of finite modules, for vector fields on k[[t]].

A derivation ``h(t) d/dt`` is stored by the coefficients of ``h`` below degree
``N``.  The action is the adjoint one, ``g·θ = g ∘ θ ∘ g^{-1}``; on the basis
it reads ``g·(h d/dt) = h(φ_g) / φ_g' d/dt`` where ``φ_g`` is the image of t.
Reducing ``h`` modulo ``t^N`` needs ``φ_g`` modulo ``t^(N+1)``, so the
underlying algebra must be truncated at least one degree above ``N``.

H¹ comes from the inhomogeneous bar complex ``C^0 -> C^1 -> C^2``.  For a
cyclic group it is cross-checked against ``ker(Norm) / im(g - 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from .actions import ConstantAction, ConstantGroup
from .algebra import AlgebraElement, NormalFormAlgebra
from .errors import ActionError, PreconditionError, StructuralError, UnsupportedBaseError
from .invariants import subgroup_group
from .linalg import LinearMap, Span, kernel, mat_vec
from .rings import BaseRing


# -- small matrix helpers -----------------------------------------------------------


def _identity(R: BaseRing, d: int) -> list[list]:
    return [[R.one if i == j else R.zero for j in range(d)] for i in range(d)]


def _matmul(R: BaseRing, A: Sequence[Sequence[Any]], B: Sequence[Sequence[Any]]) -> list[list]:
    n = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [R.zero] * n
        for a, brow in zip(row, B):
            if a:
                for j, b in enumerate(brow):
                    if b:
                        acc[j] = R.add(acc[j], R.mul(a, b))
        out.append(acc)
    return out


def _columns_to_matrix(cols: Sequence[Sequence[Any]], nrows: int) -> list[list]:
    return [[col[i] for col in cols] for i in range(nrows)]


def _sub_identity(R: BaseRing, M: Sequence[Sequence[Any]]) -> list[list]:
    return [[R.sub(x, R.one) if i == j else x for j, x in enumerate(row)] for i, row in enumerate(M)]


# -- truncated power series over the base ------------------------------------------


def _pmul(R: BaseRing, a: Sequence[Any], b: Sequence[Any], K: int) -> list:
    out = [R.zero] * K
    for i, x in enumerate(a[:K]):
        if x:
            for j, y in enumerate(b[: K - i]):
                if y:
                    out[i + j] = R.add(out[i + j], R.mul(x, y))
    return out


def _pinv(R: BaseRing, a: Sequence[Any], K: int) -> list:
    if not a or not R.is_unit(a[0]):
        raise StructuralError("series is not invertible")
    c = R.inv(a[0])
    out = [R.zero] * K
    out[0] = c
    for n in range(1, K):
        s = R.zero
        for i in range(1, min(n, len(a) - 1) + 1):
            if a[i] and out[n - i]:
                s = R.add(s, R.mul(a[i], out[n - i]))
        out[n] = R.neg(R.mul(c, s))
    return out


def _pderiv(R: BaseRing, a: Sequence[Any]) -> list:
    return [R.mul(R.from_int(i), a[i]) for i in range(1, len(a))]


def _valuation(a: Sequence[Any]) -> int | None:
    return next((i for i, x in enumerate(a) if x), None)


def _series_of(a: AlgebraElement) -> list:
    """Coefficient list of an element of k[t]/(t^T), indexed by degree."""
    A = a.parent
    out = [A.base.zero] * A.dim
    for i, c in a.c.items():
        out[A.basis[i][0]] = c
    return out


def _substitution_matrices(R: BaseRing, phis: Sequence[Sequence[Any]], K: int) -> list[list[list]]:
    """Matrices of ``h d/dT -> h(φ)/φ' d/dT`` on ``{T^i d/dT : i < K}``."""
    mats = []
    for phi in phis:
        if len(phi) < K + 1:
            raise StructuralError("substitution known to too low a degree")
        jac_inv = _pinv(R, _pderiv(R, phi[: K + 1]), K)
        cols = []
        power = [R.one] + [R.zero] * (K - 1)
        for _ in range(K):
            cols.append(_pmul(R, power, jac_inv, K))
            power = _pmul(R, power, phi, K)
        mats.append(_columns_to_matrix(cols, K))
    return mats


# -- modules ------------------------------------------------------------------------


@dataclass
class GModule:
    """A finite free module over a field with a left action given by matrices."""

    group: ConstantGroup
    base: BaseRing
    matrices: list
    labels: list
    name: str = "M"

    def __post_init__(self):
        if not self.base.is_field:
            raise UnsupportedBaseError("cohomology is computed over fields only")
        d = self.dim
        if len(self.matrices) != self.group.order:
            raise StructuralError("one action matrix per group element is required")
        for M in self.matrices:
            if len(M) != d or any(len(row) != d for row in M):
                raise StructuralError("action matrix of the wrong size")
        R = self.base
        if self.matrices[0] != _identity(R, d):
            raise ActionError("the identity does not act as the identity")
        G = self.group
        for g in range(G.order):
            for h in range(G.order):
                if _matmul(R, self.matrices[g], self.matrices[h]) != self.matrices[G.mul(g, h)]:
                    raise ActionError(f"action matrices fail the group law at ({G.labels[g]}, {G.labels[h]})")

    @property
    def dim(self) -> int:
        return len(self.labels)

    @classmethod
    def trivial(cls, group: ConstantGroup, base: BaseRing, dim: int = 1) -> "GModule":
        I = _identity(base, dim)
        return cls(group, base, [I] * group.order, [f"e{i}" for i in range(dim)], "trivial")

    def act(self, g: int, v: Sequence[Any]) -> list:
        return mat_vec(self.base, self.matrices[g], v)

    def invariants(self, H: Sequence[int] | None = None) -> list[list]:
        """A basis of the vectors fixed by H (default: the whole group)."""
        R = self.base
        H = range(self.group.order) if H is None else H
        rows = []
        for h in H:
            rows.extend(_sub_identity(R, self.matrices[h]))
        if not rows:
            return [[R.one if i == j else R.zero for j in range(self.dim)] for i in range(self.dim)]
        return kernel(R, rows, self.dim)

    def restrict(self, H: Sequence[int]) -> "GModule":
        H = sorted(set(H))
        return GModule(subgroup_group(self.group, H), self.base, [self.matrices[h] for h in H], self.labels, self.name)

    def fixed_module(self, H: Sequence[int]) -> tuple["GModule", list[list], list[int]]:
        """M^H as a G/H-module: (module, basis of M^H in M, projection G -> G/H)."""
        G = self.group
        H = sorted(set(H))
        if not G.is_normal(H):
            raise ActionError("H is not a normal subgroup")
        Q, proj = G.quotient(H)
        R = self.base
        basis = self.invariants(H)
        span = Span(R, self.dim, basis)
        reps = {}
        for g in range(G.order):
            reps.setdefault(proj[g], g)
        mats = []
        for q in range(Q.order):
            cols = []
            for v in basis:
                coords = span.solve(self.act(reps[q], v))
                if coords is None:
                    raise ActionError("M^H is not stable under G")
                cols.append(coords)
            mats.append(_columns_to_matrix(cols, len(basis)) if basis else [])
        labels = [f"v{i}" for i in range(len(basis))]
        return GModule(Q, R, mats, labels, f"{self.name}^H"), basis, proj

    def describe(self) -> dict:
        return {"name": self.name, "group_order": self.group.order, "dim": self.dim}


def theta_module(action: ConstantAction, N: int | None = None) -> GModule:
    """``{t^i d/dt : i < N}`` with the adjoint action of a constant group on k[t]/(t^T)."""
    A = action.algebra
    if not isinstance(A, NormalFormAlgebra) or len(A.variables) != 1:
        raise StructuralError("Θ is defined for actions on k[t]/(t^T)")
    T = A.effective_truncation
    if N is None:
        N = T - 1
    if not 1 <= N <= T - 1:
        raise StructuralError(f"Θ truncated at N = {N} needs the algebra truncated above N (have {T})")
    t = A.variables[0]
    phis = [_series_of(action.auts[g].images[t]) for g in range(action.group.order)]
    mats = _substitution_matrices(A.base, phis, N)
    labels = [_theta_label(t, i) for i in range(N)]
    return GModule(action.group, A.base, mats, labels, f"Θ_{t}")


def _theta_label(var: str, i: int) -> str:
    mon = "" if i == 0 else var if i == 1 else f"{var}^{i}"
    return f"{mon}*d/d{var}" if mon else f"d/d{var}"


# -- the bar complex ----------------------------------------------------------------


def bar_d0(module: GModule) -> list[list]:
    """Matrix of ``m -> (g -> g m - m)``; rows index C^1 = (g, i)."""
    R = module.base
    d = module.dim
    rows = []
    for g in range(module.group.order):
        rows.extend(_sub_identity(R, module.matrices[g]))
    return rows if rows else [[R.zero] * d]


def bar_d1(module: GModule) -> list[list]:
    """Matrix of ``f -> ((g, h) -> g f(h) - f(gh) + f(g))``; rows index C^2 = (g, h, i)."""
    R = module.base
    G = module.group
    n, d = G.order, module.dim
    rows = [[R.zero] * (n * d) for _ in range(n * n * d)]
    for g in range(n):
        Mg = module.matrices[g]
        for h in range(n):
            gh = G.mul(g, h)
            base = (g * n + h) * d
            for i in range(d):
                row = rows[base + i]
                for j in range(d):
                    if Mg[i][j]:
                        row[h * d + j] = R.add(row[h * d + j], Mg[i][j])
                row[gh * d + i] = R.sub(row[gh * d + i], R.one)
                row[g * d + i] = R.add(row[g * d + i], R.one)
    return rows


def d1_d0_vanishes(module: GModule) -> bool:
    R = module.base
    if module.dim == 0:
        return True
    prod = _matmul(R, bar_d1(module), bar_d0(module))
    return not any(x for row in prod for x in row)


@dataclass
class CohomologyClassSpace:
    """H^0 or H^1 with a chosen basis of representing cocycles."""

    degree: int
    module: GModule
    cocycles: list
    coboundaries: list = field(default_factory=list)
    cocycle_dim: int = 0

    @property
    def dimension(self) -> int:
        return len(self.cocycles)

    @property
    def labels(self) -> tuple:
        return tuple(f"c{i}" for i in range(self.dimension))

    def is_cocycle(self, f: Sequence[Any]) -> bool:
        if self.degree == 0:
            return all(self.module.act(g, f) == list(f) for g in range(self.module.group.order))
        return not any(mat_vec(self.module.base, bar_d1(self.module), f))

    def is_coboundary(self, f: Sequence[Any]) -> bool:
        return Span(self.module.base, len(f), self.coboundaries).contains(f)

    def coordinates(self, f: Sequence[Any]) -> list:
        """Coordinates of the class of a cocycle in the chosen basis."""
        R = self.module.base
        n = len(f)
        span = Span(R, n, list(self.cocycles) + list(self.coboundaries))
        sol = span.solve(f)
        if sol is None:
            raise ActionError("not a cocycle")
        return sol[: self.dimension]

    def describe(self) -> dict:
        return {"degree": self.degree, "dimension": self.dimension, "module": self.module.name}


def h_zero(module: GModule) -> CohomologyClassSpace:
    return CohomologyClassSpace(0, module, module.invariants(), [], module.dim)


def h_one(module: GModule) -> CohomologyClassSpace:
    """H^1 via the bar complex; representatives extend a basis of the coboundaries."""
    cached = getattr(module, "_h1", None)
    if cached is not None:
        return cached
    R = module.base
    n, d = module.group.order, module.dim
    width = n * d
    if width == 0:
        space = CohomologyClassSpace(1, module, [], [], 0)
    else:
        d0 = bar_d0(module)
        boundaries = Span(R, width, [[row[j] for row in d0] for j in range(d)]).basis()
        cocycles = kernel(R, bar_d1(module), width)
        reps = []
        current = Span(R, width, boundaries)
        for z in cocycles:
            if not current.contains(z):
                reps.append(z)
                current = Span(R, width, boundaries + reps)
        space = CohomologyClassSpace(1, module, reps, boundaries, len(cocycles))
    module._h1 = space
    return space


def _cyclic_generator(G: ConstantGroup) -> int:
    for g in range(G.order):
        if G.element_order(g) == G.order:
            return g
    raise ActionError("the group is not cyclic")


def cyclic_h1_dimension(module: GModule) -> int:
    """dim ker(Norm) - rank(g - 1) for a cyclic group with generator g."""
    R = module.base
    G = module.group
    d = module.dim
    if d == 0:
        return 0
    g = _cyclic_generator(G)
    norm = [[R.zero] * d for _ in range(d)]
    for h in range(G.order):
        norm = [[R.add(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(norm, module.matrices[h])]
    ker = kernel(R, norm, d)
    gm1 = _sub_identity(R, module.matrices[g])
    image = Span(R, d, [[row[j] for row in gm1] for j in range(d)])
    return len(ker) - image.rank


# -- restriction and inflation --------------------------------------------------------


def _cocycle_map(source: CohomologyClassSpace, target: CohomologyClassSpace, transform: Callable) -> LinearMap:
    """Linear map on classes induced by a cochain map, checked on coboundaries."""
    for b in source.coboundaries:
        if not target.is_coboundary(transform(b)):
            raise ActionError("the cochain map does not preserve coboundaries")
    cols = []
    for z in source.cocycles:
        image = transform(z)
        if not target.is_cocycle(image):
            raise ActionError("the cochain map does not preserve cocycles")
        cols.append(target.coordinates(image))
    return LinearMap.from_columns(source.module.base, source.labels, target.labels, cols)


def restriction_h1(module: GModule, H: Sequence[int]) -> LinearMap:
    """H^1(G, M) -> H^1(H, M) by restricting cocycles."""
    G = module.group
    H = sorted(set(H))
    if not G.is_subgroup(H):
        raise ActionError("H is not a subgroup")
    sub = module.restrict(H)
    d = module.dim

    def transform(f):
        return [x for h in H for x in f[h * d : (h + 1) * d]]

    return _cocycle_map(h_one(module), h_one(sub), transform)


def inflation_h1(module: GModule, H: Sequence[int]) -> LinearMap:
    """H^1(G/H, M^H) -> H^1(G, M) by pulling cocycles back along G -> G/H."""
    fixed, basis, proj = module.fixed_module(H)
    R = module.base
    e = fixed.dim
    G = module.group

    def transform(f):
        out = []
        for g in range(G.order):
            q = proj[g]
            coeffs = f[q * e : (q + 1) * e]
            v = [R.zero] * module.dim
            for c, b in zip(coeffs, basis):
                if c:
                    v = [R.add(x, R.mul(c, y)) for x, y in zip(v, b)]
            out.extend(v)
        return out

    return _cocycle_map(h_one(fixed), h_one(module), transform)


def compose_is_zero(second: LinearMap, first: LinearMap) -> bool:
    if not first.domain or not second.codomain:
        return True
    return second.compose(first).is_zero()


# -- the induction differential composite ----------------------------------------------


def _express_in(R: BaseRing, r: Sequence[Any], Y: Sequence[Any], m: int, B: int) -> list:
    """Coefficients F_j with ``r = Σ F_j Y^j`` modulo the precision ``B`` of r.

    Returns ``floor((B - m) / m) + 1`` coefficients; a non-zero term of r in a
    degree not divisible by m below that range means r is not a series in Y.
    """
    K = (B - m) // m + 1
    if K < 1:
        return []
    limit = m * (K - 1) + 1
    lead = R.inv(Y[m])
    residual = list(r[:limit]) + [R.zero] * max(0, limit - len(r))
    power = [R.one] + [R.zero] * (limit - 1)
    out = []
    for j in range(K):
        for dgr in range(m * (j - 1) + 1 if j else 0, min(m * j, limit)):
            if residual[dgr]:
                raise PreconditionError(f"Θ_Y unavailable: term of degree {dgr} is not a series in Y")
        c = R.mul(residual[m * j], R.pow(lead, j)) if m * j < limit else R.zero
        out.append(c)
        if c:
            residual = [R.sub(x, R.mul(c, y)) for x, y in zip(residual, power)]
        power = _pmul(R, power, Y, limit)
    return out


@dataclass
class InductionComposite:
    N: int
    N_Y: int
    Y: str
    theta_T_H: GModule
    theta_Y: GModule
    fixed_basis: list
    inclusion: list
    map: LinearMap
    domain: CohomologyClassSpace
    codomain: CohomologyClassSpace

    @property
    def rank(self) -> int:
        R = self.map.base
        cols = [self.map.column(j) for j in range(len(self.map.domain))]
        return Span(R, len(self.map.codomain), cols).rank if cols and self.map.codomain else 0

    def describe(self) -> dict:
        return {
            "N": self.N,
            "N_Y": self.N_Y,
            "Y": self.Y,
            "domain_dim": self.domain.dimension,
            "codomain_dim": self.codomain.dimension,
            "rank": self.rank,
            "matrix": [[self.map.base.format(x) for x in row] for row in self.map.matrix],
        }


def induction_differential_composite(action: ConstantAction, H: Sequence[int], N: int | None = None) -> InductionComposite:
    """The map on H^1(G/H, -) induced by Θ_T^H -> Θ_Y, where Y = Nm_H(t)."""
    A = action.algebra
    R = A.base
    G = action.group
    H = sorted(set(H))
    theta = theta_module(action, N)
    N = theta.dim
    T = A.effective_truncation
    t = A.generator(A.variables[0])
    Yel = A.one
    for h in H:
        Yel = Yel * action.act(h, t)
    Y = _series_of(Yel)
    m = len(H)
    if _valuation(Y) != m:
        raise PreconditionError(f"Θ_Y unavailable: Nm_H(t) has valuation {_valuation(Y)}, expected {m}")
    dY = _pderiv(R, Y)
    vdY = _valuation(dY)
    B_iota = T - 1 if vdY is None else min(N + vdY, T - 1)
    # an H-invariant known modulo t^B is a series in Y only below B + 1 - v,
    # where v is the least valuation of h(t) - t over h != e
    v_min = min((_valuation(_series_of(action.act(h, t) - t)) for h in H if h), default=1)
    slack = v_min - 1
    fixed, basis, proj = theta.fixed_module(H)
    Q = fixed.group
    reps = {}
    for g in range(G.order):
        reps.setdefault(proj[g], g)
    # the G/H action on k[[Y]], as series P_q with q(Y) = P_q(Y)
    P = []
    for q in range(Q.order):
        gY = _series_of(action.act(reps[q], Yel))
        P.append(_express_in(R, gY, Y, m, T - slack))
    K = min((B_iota - slack - m) // m + 1, min(len(p) for p in P) - 1)
    if K < 1:
        raise PreconditionError("Θ_Y unavailable: truncation too low for the invariant coordinate")
    theta_Y = GModule(Q, R, _substitution_matrices(R, [p[: K + 1] for p in P], K),
                      [_theta_label("Y", j) for j in range(K)], "Θ_Y")
    cols = []
    for v in basis:
        r = _pmul(R, v, dY, B_iota)
        cols.append(_express_in(R, r, Y, m, B_iota - slack)[:K])
    iota = _columns_to_matrix(cols, K)
    if basis:
        for q in range(Q.order):
            if _matmul(R, iota, fixed.matrices[q]) != _matmul(R, theta_Y.matrices[q], iota):
                raise PreconditionError("Θ_Y unavailable: the inclusion is not equivariant at this truncation")
    e = fixed.dim

    def transform(f):
        out = []
        for q in range(Q.order):
            out.extend(mat_vec(R, iota, f[q * e : (q + 1) * e]) if e else [R.zero] * K)
        return out

    source, target = h_one(fixed), h_one(theta_Y)
    lin = _cocycle_map(source, target, transform)
    return InductionComposite(N, K, A.format_element(Yel), fixed, theta_Y, basis, iota, lin, source, target)


def cyclic_composite_rank(comp: InductionComposite) -> int:
    """Rank of the induced map computed on ker(Norm) / im(g - 1) instead of cocycles."""
    R = comp.map.base
    src, tgt = comp.theta_T_H, comp.theta_Y
    Q = src.group
    g = _cyclic_generator(Q)
    K = tgt.dim
    if K == 0 or src.dim == 0:
        return 0

    def norm_kernel(mod):
        d = mod.dim
        norm = [[R.zero] * d for _ in range(d)]
        for h in range(Q.order):
            norm = [[R.add(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(norm, mod.matrices[h])]
        return kernel(R, norm, d)

    gm1 = _sub_identity(R, tgt.matrices[g])
    image = [[row[j] for row in gm1] for j in range(K)]
    pushed = [mat_vec(R, comp.inclusion, v) for v in norm_kernel(src)]
    return Span(R, K, image + pushed).rank - Span(R, K, image).rank


# -- stability in the truncation ----------------------------------------------------
#
# Θ/t^N carries spurious classes near the top degree.  The classes that lift
# to Θ/t^N' for N' well above N are the finite shadow of H^1 of the untruncated
# module; their number is the rank of the reduction map on H^1.


def _rank(lin: LinearMap) -> int:
    if not lin.domain or not lin.codomain:
        return 0
    return Span(lin.base, len(lin.codomain), [lin.column(j) for j in range(len(lin.domain))]).rank


def _blockwise(f: Sequence[Any], n: int, width: int, fn: Callable) -> list:
    return [x for g in range(n) for x in fn(list(f[g * width : (g + 1) * width]))]


def theta_reduction_rank(action: ConstantAction, N: int, N_big: int) -> int:
    """Rank of H^1(G, Θ/t^N_big) -> H^1(G, Θ/t^N)."""
    big, small = theta_module(action, N_big), theta_module(action, N)
    n = action.group.order
    lin = _cocycle_map(h_one(big), h_one(small), lambda f: _blockwise(f, n, N_big, lambda v: v[:N]))
    return _rank(lin)


@dataclass
class StabilityReport:
    N: int
    raw: dict
    lifted: dict
    stable: bool

    @property
    def dimension(self) -> int:
        return self.lifted[max(self.lifted)]

    def describe(self) -> dict:
        return {
            "N": self.N,
            "raw": {str(k): v for k, v in self.raw.items()},
            "lifted": {str(k): v for k, v in self.lifted.items()},
            "dimension": self.dimension,
            "stable": self.stable,
        }


def default_margin(group: ConstantGroup) -> int:
    return 2 * group.order


def h1_stability(action: ConstantAction, N: int, margin: int | None = None) -> StabilityReport:
    """Raw dim H^1(G, Θ/t^N) and the number of classes lifting ``margin`` and ``margin+1`` degrees."""
    margin = default_margin(action.group) if margin is None else margin
    raw = {M: h_one(theta_module(action, M)).dimension for M in (N, N + 1)}
    lifted = {N + s: theta_reduction_rank(action, N, N + s) for s in (margin, margin + 1)}
    return StabilityReport(N, raw, lifted, len(set(lifted.values())) == 1)


@dataclass
class StableComposite:
    N: int
    N_big: int
    composite: InductionComposite
    domain_dim: int
    codomain_dim: int
    rank: int

    def describe(self) -> dict:
        return {
            "N": self.N,
            "N_big": self.N_big,
            "Y": self.composite.Y,
            "raw_domain_dim": self.composite.domain.dimension,
            "raw_codomain_dim": self.composite.codomain.dimension,
            "domain_dim": self.domain_dim,
            "codomain_dim": self.codomain_dim,
            "rank": self.rank,
        }

    def signature(self) -> tuple[int, int, int]:
        return (self.domain_dim, self.codomain_dim, self.rank)


def stable_composite(action: ConstantAction, H: Sequence[int], N: int, margin: int | None = None) -> StableComposite:
    """The composite at N, restricted to classes that lift to precision N + margin."""
    margin = default_margin(action.group) if margin is None else margin
    small = induction_differential_composite(action, H, N)
    big = induction_differential_composite(action, H, N + margin)
    R = action.algebra.base
    q = small.theta_T_H.group.order
    fixed_span = Span(R, N, small.fixed_basis)

    def reduce_fixed(v):
        full = [R.zero] * (N + margin)
        for c, b in zip(v, big.fixed_basis):
            if c:
                full = [R.add(x, R.mul(c, y)) for x, y in zip(full, b)]
        coords = fixed_span.solve(full[:N])
        if coords is None:
            raise ActionError("reduction does not preserve the H-invariants")
        return coords

    e_big, K_big, K = big.theta_T_H.dim, big.theta_Y.dim, small.theta_Y.dim
    rho_dom = _cocycle_map(big.domain, small.domain, lambda f: _blockwise(f, q, e_big, reduce_fixed))
    rho_cod = _cocycle_map(big.codomain, small.codomain, lambda f: _blockwise(f, q, K_big, lambda v: v[:K]))
    # the composite at N applied to the classes that lift
    cols = []
    for j in range(len(rho_dom.domain)):
        image = [R.zero] * len(small.map.codomain)
        col = rho_dom.column(j)
        for i, c in enumerate(col):
            if c:
                image = [R.add(x, R.mul(c, y)) for x, y in zip(image, small.map.column(i))]
        cols.append(image)
    restricted = LinearMap.from_columns(R, rho_dom.domain, small.map.codomain, cols)
    return StableComposite(N, N + margin, small, _rank(rho_dom), _rank(rho_cod), _rank(restricted))
