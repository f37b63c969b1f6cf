"""Local models of curves: a smooth point k[[t]] and a node k[[x,y]]/(xy).

Power series rings are truncated at total degree N.  Norms multiply
valuations by up to |G|, so ring equalities are only certified below the
degree ``N - |G| + 1``; every report states the degree it certifies.
"""

from __future__ import annotations

from dataclasses import dataclass

from .actions import ConstantAction, GroupAction, norm, sigma
from .algebra import AlgebraElement, NormalFormAlgebra
from .errors import ActionError, PreconditionError, StructuralError
from .invariants import compare, invariant_subring, subalgebra


def degree_guard(algebra: NormalFormAlgebra, order: int) -> int:
    N = algebra.effective_truncation if algebra.truncation is None else algebra.truncation
    return N - order + 1


# -- smooth points ---------------------------------------------------------------


@dataclass
class SmoothPointModel:
    action: GroupAction

    def __post_init__(self):
        A = self.action.algebra
        if not isinstance(A, NormalFormAlgebra) or len(A.variables) != 1:
            raise StructuralError("a smooth-point model lives on k[t]/(t^N)")
        self.t = A.generator(A.variables[0])

    @property
    def algebra(self) -> NormalFormAlgebra:
        return self.action.algebra

    def norm_of_t(self) -> AlgebraElement:
        return norm(self.action, self.t)

    def check_generically_free(self) -> AlgebraElement:
        Nt = self.norm_of_t()
        if Nt.valuation() != self.action.order:
            raise ActionError(
                f"action not generically free: N(t) has valuation {Nt.valuation()}, expected {self.action.order}"
            )
        return Nt


@dataclass
class SmoothReport:
    equal: bool
    norm: str
    valuation: int
    certified_degree: int
    invariant_generators: list

    def describe(self) -> dict:
        return {
            "equal": self.equal,
            "norm": self.norm,
            "valuation": self.valuation,
            "certified_degree": self.certified_degree,
            "invariant_generators": self.invariant_generators,
        }


def smooth_invariants_check(model: SmoothPointModel) -> SmoothReport:
    """A^G against the subalgebra generated by N(t), below the degree guard."""
    Nt = model.check_generically_free()
    A = model.algebra
    d = degree_guard(A, model.action.order)
    inv = invariant_subring(model.action).truncated(d)
    gen = subalgebra(A, [Nt]).truncated(d)
    return SmoothReport(
        inv.same_as(gen), str(Nt), Nt.valuation(), d, [str(g) for g in invariant_subring(model.action).generators]
    )


# -- nodes ---------------------------------------------------------------------


@dataclass
class NodeModel:
    action: ConstantAction

    def __post_init__(self):
        A = self.action.algebra
        if not isinstance(A, NormalFormAlgebra) or len(A.variables) != 2:
            raise StructuralError("a node model lives on k[x,y]/(xy)")
        xy = (1, 1)
        if xy not in A.relations:
            raise StructuralError("the node algebra must contain the relation x*y")
        self.xname, self.yname = A.variables
        self.x = A.generator(self.xname)
        self.y = A.generator(self.yname)
        self.classes = [self._classify(g) for g in range(self.action.group.order)]

    @property
    def algebra(self) -> NormalFormAlgebra:
        return self.action.algebra

    def _in_branch(self, a: AlgebraElement, var: int) -> bool:
        """a lies in the ideal generated by the given variable."""
        A = self.algebra
        return all(A.basis[i][var] > 0 for i in a.c)

    def _classify(self, g: int) -> str:
        aut = self.action.auts[g]
        gx, gy = aut.images[self.xname], aut.images[self.yname]
        if self._in_branch(gx, 0) and self._in_branch(gy, 1):
            return "fix"
        if self._in_branch(gx, 1) and self._in_branch(gy, 0):
            return "swap"
        raise ActionError(f"{self.action.group.labels[g]} maps (x) into neither branch ideal")


@dataclass
class NodeGroupData:
    G0: tuple
    H: list  # distinct images of x under G0
    K: list  # distinct images of y under G0
    delta_x: tuple
    delta_y: tuple
    psi: int | None
    labels: tuple

    def describe(self) -> dict:
        name = lambda S: [self.labels[g] for g in S]
        return {
            "G0": name(self.G0),
            "H": [str(h) for h in self.H],
            "K": [str(k) for k in self.K],
            "delta_x": name(self.delta_x),
            "delta_y": name(self.delta_y),
            "psi": None if self.psi is None else self.labels[self.psi],
        }


def node_decompose(model: NodeModel, psi: int | None = None) -> NodeGroupData:
    act = model.action
    G = act.group
    G0 = tuple(g for g in range(G.order) if model.classes[g] == "fix")
    index = G.order // len(G0)
    if index not in (1, 2) or G.order % len(G0):
        raise ActionError("the branch-fixing subgroup must have index 1 or 2")
    H, K = [], []
    for g in G0:
        gx = act.auts[g].images[model.xname]
        gy = act.auts[g].images[model.yname]
        if gx not in H:
            H.append(gx)
        if gy not in K:
            K.append(gy)
    dx = tuple(g for g in G0 if act.auts[g].images[model.xname] == model.x)
    dy = tuple(g for g in G0 if act.auts[g].images[model.yname] == model.y)
    swaps = [g for g in range(G.order) if model.classes[g] == "swap"]
    if psi is None:
        psi = swaps[0] if swaps else None
    elif psi not in swaps:
        raise ActionError("the chosen ψ does not exchange the branches")
    return NodeGroupData(G0, H, K, dx, dy, psi, G.labels)


def _require_tame_kernels(model: NodeModel, data: NodeGroupData) -> None:
    R = model.algebra.base
    for name, D in (("Δ_x", data.delta_x), ("Δ_y", data.delta_y)):
        if not R.is_unit(R.from_int(len(D))):
            raise PreconditionError(f"|{name}| = {len(D)} is not invertible in the base")


def branch_norms(model: NodeModel, data: NodeGroupData) -> tuple[AlgebraElement, AlgebraElement]:
    A = model.algebra
    u, v = A.one, A.one
    for h in data.H:
        u = u * h
    for k in data.K:
        v = v * k
    return u, v


@dataclass
class NodeReport:
    fixed_part_ok: bool
    swap_part_ok: bool | None
    quotient_type: str
    u: str
    v: str
    invariant_generator: str | None
    certified_degree: int

    @property
    def ok(self) -> bool:
        return self.fixed_part_ok and self.swap_part_ok is not False and self.quotient_type in ("node", "smooth")

    def describe(self) -> dict:
        return {
            "fixed_part_ok": self.fixed_part_ok,
            "swap_part_ok": self.swap_part_ok,
            "quotient_type": self.quotient_type,
            "u": self.u,
            "v": self.v,
            "invariant_generator": self.invariant_generator,
            "certified_degree": self.certified_degree,
        }


def node_invariants_check(model: NodeModel, psi: int | None = None) -> NodeReport:
    data = node_decompose(model, psi)
    _require_tame_kernels(model, data)
    A = model.algebra
    act = model.action
    d = degree_guard(A, act.group.order)
    u, v = branch_norms(model, data)
    sub0 = act.restrict(data.G0)
    inv0 = invariant_subring(sub0).truncated(d)
    fixed_ok = inv0.same_as(subalgebra(A, [u, v]).truncated(d)) and not (u * v)
    inv = invariant_subring(act).truncated(d)
    if data.psi is not None:
        w = u + act.act(data.psi, u)
        swap_ok = inv.same_as(subalgebra(A, [w]).truncated(d))
        quotient_type = "smooth" if swap_ok else "unknown"
        gen = str(w)
    else:
        swap_ok = None
        gen = None
        # the quotient is k[[u,v]]/(uv): two branches meeting transversally
        quotient_type = "node" if (u and v and not u * v and inv.same_as(inv0)) else "unknown"
    return NodeReport(fixed_ok, swap_ok, quotient_type, str(u), str(v), gen, d)


def node_sigma_check(model: NodeModel, psi: int | None = None) -> bool:
    """σ_ℓ(x) = Nm_{G0}(x) + ψ(Nm_{G0}(x)) with ℓ = |G0|.

    Without a branch exchange G0 = G and the identity reads σ_|G|(x) = Nm_G(x).
    """
    data = node_decompose(model, psi)
    act = model.action
    A = model.algebra
    ell = len(data.G0)
    nm = A.one
    for g in data.G0:
        nm = nm * act.act(g, model.x)
    if data.psi is None:
        return sigma(act, model.x)[ell] == nm
    return sigma(act, model.x)[ell] == nm + act.act(data.psi, nm)


def cogenerated_check(model: NodeModel | SmoothPointModel) -> bool:
    """A^G = Σ below the degree guard, under the hypotheses that guarantee it."""
    if isinstance(model, NodeModel):
        data = node_decompose(model)
        _require_tame_kernels(model, data)
    else:
        model.check_generically_free()
    d = degree_guard(model.algebra, model.action.order)
    return compare(model.action, degree=d).equal
