"""Scenario files: parse, build the objects they describe, run their tasks.

A scenario is a YAML mapping::

    name: swap-node
    tags: [node, base-change]
    base: {kind: prime_field, p: 5}
    algebra: {variables: [x, y], relations: ["x*y"], truncation: 8}
    action: {kind: constant, group: {cyclic: 2}, images: {g: {x: y, y: x}}}
    tasks:
      - op: compare
        expect: {equal: true}
        provenance: derived

Every task yields ``pass``, ``fail`` or ``gated`` (a hypothesis of the
underlying statement does not hold, so no claim is made).
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Any, Callable

import yaml

from . import basechange as bcm
from . import cohomology as coh
from . import curves
from . import invariants as inv
from . import polarization as pol
from .actions import (
    ConstantAction,
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
from .algebra import AlgebraElement, NormalFormAlgebra, UniPoly
from .errors import PreconditionError, QuotlabError
from .rings import ring_from_spec

_Loader = getattr(yaml, "CSafeLoader", yaml.SafeLoader)

SCHEMA_VERSION = 1
PROVENANCE = ("paper", "trivial", "derived")
CORPUS_DIR = Path(__file__).parent / "corpus"


class ScenarioParseError(QuotlabError):
    """A scenario file is malformed; ``location`` is ``file:line:column`` when known."""

    def __init__(self, message: str, location: str | None = None):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location
        self.detail = message


# -- parsing -------------------------------------------------------------------------


@dataclass
class Task:
    op: str
    params: dict
    expect: dict
    provenance: str | None
    expect_outcome: str | None
    index: int


@dataclass
class Scenario:
    name: str
    tags: list
    description: str
    base: dict | None
    algebra: dict | None
    action: dict | None
    tasks: list
    source: str = "<string>"


def _node_at(root: yaml.Node | None, path: list) -> yaml.Node | None:
    """The node at ``path``, or the deepest enclosing node when a key is missing."""
    node = root
    for key in path:
        if isinstance(node, yaml.MappingNode):
            child = next((v for k, v in node.value if k.value == key), None)
        elif isinstance(node, yaml.SequenceNode) and isinstance(key, int) and key < len(node.value):
            child = node.value[key]
        else:
            child = None
        if child is None:
            return node
        node = child
    return node


class _Validator:
    def __init__(self, source: str, root: yaml.Node | None):
        self.source = source
        self.root = root

    def fail(self, message: str, path: list) -> None:
        node = _node_at(self.root, path)
        where = self.source
        if node is not None:
            where = f"{self.source}:{node.start_mark.line + 1}:{node.start_mark.column + 1}"
        dotted = ".".join(str(p) for p in path)
        raise ScenarioParseError(f"{dotted}: {message}" if dotted else message, where)


KNOWN_KEYS = {"name", "tags", "description", "base", "algebra", "action", "tasks"}
TASK_KEYS = {"op", "params", "expect", "provenance", "expect_outcome"}


def parse_scenario(text: str, source: str = "<string>") -> Scenario:
    try:
        loader = _Loader(text)
        try:
            root = loader.get_single_node()
            data = loader.construct_document(root) if root is not None else None
        finally:
            loader.dispose()
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        loc = f"{source}:{mark.line + 1}:{mark.column + 1}" if mark else source
        raise ScenarioParseError(f"invalid YAML: {getattr(exc, 'problem', exc)}", loc) from None
    v = _Validator(source, root)
    if not isinstance(data, dict):
        v.fail("a scenario must be a mapping", [])
    for key in data:
        if key not in KNOWN_KEYS:
            v.fail(f"unknown key {key!r}", [key])
    name = data.get("name")
    if not isinstance(name, str) or not name:
        v.fail("a non-empty scenario name is required", ["name"])
    tags = data.get("tags", []) or []
    if not isinstance(tags, list) or not all(isinstance(t, str) for t in tags):
        v.fail("tags must be a list of strings", ["tags"])
    for key in ("base", "algebra", "action"):
        if key in data and not isinstance(data[key], dict):
            v.fail("must be a mapping", [key])
    if "algebra" in data and "base" not in data:
        v.fail("an algebra needs a base ring", ["algebra"])
    if "action" in data and "base" not in data:
        v.fail("an action needs a base ring", ["action"])
    raw_tasks = data.get("tasks", []) or []
    if not isinstance(raw_tasks, list):
        v.fail("tasks must be a list", ["tasks"])
    tasks = []
    for i, t in enumerate(raw_tasks):
        if not isinstance(t, dict):
            v.fail("a task must be a mapping", ["tasks", i])
        for key in t:
            if key not in TASK_KEYS:
                v.fail(f"unknown task key {key!r}", ["tasks", i, key])
        op = t.get("op")
        if op not in OPERATIONS:
            v.fail(f"unknown operation {op!r}", ["tasks", i, "op"])
        params = t.get("params", {}) or {}
        expect = t.get("expect", {}) or {}
        if not isinstance(params, dict):
            v.fail("params must be a mapping", ["tasks", i, "params"])
        if not isinstance(expect, dict):
            v.fail("expect must be a mapping", ["tasks", i, "expect"])
        prov = t.get("provenance")
        if expect and prov not in PROVENANCE:
            v.fail(f"expected values need a provenance in {PROVENANCE}", ["tasks", i, "provenance"])
        eo = t.get("expect_outcome")
        if eo is not None and eo not in ("pass", "fail", "gated"):
            v.fail("expect_outcome must be pass, fail or gated", ["tasks", i, "expect_outcome"])
        needs = OPERATIONS[op].needs
        if needs == "action" and "action" not in data:
            v.fail(f"operation {op!r} needs an action", ["tasks", i, "op"])
        if needs == "algebra" and "algebra" not in data and "action" not in data:
            v.fail(f"operation {op!r} needs an algebra", ["tasks", i, "op"])
        tasks.append(Task(op, params, expect, prov, eo, i))
    return Scenario(
        name, list(tags), str(data.get("description", "")), data.get("base"), data.get("algebra"),
        data.get("action"), tasks, source,
    )


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ScenarioParseError(f"cannot read scenario: {exc.strerror}", str(path)) from None
    return parse_scenario(text, str(path))


def corpus_paths() -> list[Path]:
    return sorted(CORPUS_DIR.glob("*.yaml"))


def load_corpus(tag: str | None = None) -> list[Scenario]:
    out = [load_scenario(p) for p in corpus_paths()]
    if tag is not None:
        out = [s for s in out if tag in s.tags]
    return sorted(out, key=lambda s: s.name)


def find_scenario(name_or_path: str) -> Scenario:
    p = Path(name_or_path)
    if p.suffix in (".yaml", ".yml") or p.exists():
        return load_scenario(p)
    direct = CORPUS_DIR / f"{name_or_path}.yaml"
    if direct.exists():
        s = load_scenario(direct)
        if s.name == name_or_path:
            return s
    for s in load_corpus():
        if s.name == name_or_path:
            return s
    raise ScenarioParseError(f"no corpus scenario named {name_or_path!r}")


# -- building ----------------------------------------------------------------------------


def build_group(spec: Any) -> ConstantGroup:
    if spec in (None, "trivial"):
        return ConstantGroup.trivial()
    if isinstance(spec, dict):
        if "cyclic" in spec:
            return ConstantGroup.cyclic(int(spec["cyclic"]), spec.get("name", "g"))
        if "product" in spec:
            factors = [build_group(f) for f in spec["product"]]
            G = factors[0]
            for F in factors[1:]:
                G = ConstantGroup.product(G, F)
            return G
        if "table" in spec:
            return ConstantGroup(spec["labels"], spec["table"], [spec["labels"].index(g) for g in spec.get("generators", [])])
    if isinstance(spec, int):
        return ConstantGroup.cyclic(spec)
    raise QuotlabError(f"unknown group description {spec!r}")


def build_algebra(base, spec: dict, truncation_override: int | None = None) -> NormalFormAlgebra:
    trunc = spec.get("truncation", None)
    if truncation_override is not None and trunc is not None:
        trunc = truncation_override
    return NormalFormAlgebra(base, spec["variables"], spec.get("relations", []), trunc)


def _labels(G: ConstantGroup, items) -> list[int]:
    return [G.element(x) for x in items]


class Context:
    """Lazily built objects of a scenario."""

    def __init__(self, scenario: Scenario, truncation: int | None = None):
        self.scenario = scenario
        self.truncation = truncation
        self.induced: inv.InducedData | None = None

    @cached_property
    def base(self):
        return ring_from_spec(self.scenario.base)

    @cached_property
    def action(self):
        spec = self.scenario.action
        if spec is None:
            return None
        return self._build_action(spec, self.scenario.algebra)

    @cached_property
    def algebra(self):
        if self.scenario.action is not None:
            return self.action.algebra
        return build_algebra(self.base, self.scenario.algebra, self.truncation)

    def _build_action(self, spec: dict, alg_spec: dict | None):
        kind = spec.get("kind", "constant")
        if kind == "induced":
            G = build_group(spec["group"])
            H = sorted(_labels(G, spec["subgroup"]))
            inner = spec["inner"]
            C = build_algebra(self.base, inner["algebra"], self.truncation)
            sub = inv.subgroup_group(G, H)
            C_action = build_constant_action(sub, C, inner.get("images", {}))
            self.induced = inv.induced_action(G, H, C_action)
            return self.induced.action
        A = build_algebra(self.base, alg_spec, self.truncation)
        if kind == "constant":
            return build_constant_action(build_group(spec.get("group")), A, spec.get("images", {}))
        if kind == "alpha_p":
            return build_alpha_p_action(A, spec["derivation"])
        if kind == "product":
            inf_act = build_alpha_p_action(A, spec["derivation"])
            et = build_constant_action(build_group(spec.get("group")), A, spec.get("images", {}))
            return ProductAction(inf_act, et)
        raise QuotlabError(f"unknown action kind {kind!r}")

    def element(self, text: Any) -> AlgebraElement:
        return self.algebra.parse(text)

    def rng(self, params: dict) -> random.Random:
        return random.Random(int(params.get("seed", 0)))

    def samples(self, params: dict, default: int) -> list[AlgebraElement]:
        rng = self.rng(params)
        return [self.algebra.random_element(rng) for _ in range(int(params.get("samples", default)))]


# -- task results ----------------------------------------------------------------------


@dataclass
class Check:
    name: str
    ok: bool
    expected: Any = None
    computed: Any = None

    def describe(self) -> dict:
        out: dict = {"name": self.name, "ok": self.ok}
        if self.expected is not None:
            out["expected"] = self.expected
        if self.computed is not None:
            out["computed"] = self.computed
        return out


@dataclass
class Outcome:
    """What a runner returns: artifacts, intrinsic checks and typed values for expectations."""

    artifacts: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    elements: dict = field(default_factory=dict)  # key -> element or list of elements
    spans: dict = field(default_factory=dict)  # key -> (algebra, SubalgebraSpan, degree)
    certified_degree: int | None = None


@dataclass
class TaskResult:
    op: str
    outcome: str
    artifacts: dict
    checks: list
    message: str | None = None
    certified_degree: int | None = None
    provenance: str | None = None
    seconds: float = 0.0

    def describe(self, timing: bool = True) -> dict:
        out: dict = {"op": self.op, "outcome": self.outcome}
        if self.provenance:
            out["provenance"] = self.provenance
        if self.certified_degree is not None:
            out["certified_degree"] = self.certified_degree
        if self.message:
            out["message"] = self.message
        out["artifacts"] = self.artifacts
        out["checks"] = [c.describe() for c in self.checks]
        if timing:
            out["seconds"] = round(self.seconds, 4)
        return out


@dataclass
class Report:
    scenario: str
    tags: list
    tasks: list
    error: str | None = None
    seconds: float = 0.0

    @property
    def outcome(self) -> str:
        if self.error or any(t.outcome == "fail" for t in self.tasks):
            return "fail"
        if self.tasks and all(t.outcome == "gated" for t in self.tasks):
            return "gated"
        return "pass"

    def describe(self, timing: bool = True) -> dict:
        out: dict = {"schema": SCHEMA_VERSION, "scenario": self.scenario, "tags": self.tags, "outcome": self.outcome}
        if self.error:
            out["error"] = self.error
        out["tasks"] = [t.describe(timing) for t in self.tasks]
        if timing:
            out["seconds"] = round(self.seconds, 4)
        return out


# -- expectations -------------------------------------------------------------------------


def _compare_expected(ctx: Context, key: str, expected: Any, res: Outcome) -> Check:
    if key in res.elements:
        computed = res.elements[key]
        try:
            if isinstance(computed, list):
                want = [ctx.element(x) for x in expected]
                ok = len(want) == len(computed) and all(a == b for a, b in zip(want, computed))
                shown = [str(c) for c in computed]
            elif computed is None:
                ok, shown = expected is None, None
            else:
                ok = expected is not None and ctx.element(expected) == computed
                shown = str(computed)
        except QuotlabError as exc:
            return Check(f"expect.{key}", False, expected, f"unparseable expectation: {exc}")
        return Check(f"expect.{key}", ok, expected, shown)
    if key in res.spans:
        A, span, degree = res.spans[key]
        gens = [A.parse(x) for x in expected]
        target = inv.subalgebra(A, gens)
        if degree is not None:
            ok = target.truncated(degree).same_as(span.truncated(degree))
        else:
            ok = target.same_as(span)
        return Check(f"expect.{key}", ok, expected, [str(g) for g in span.generators])
    if key in res.artifacts:
        computed = res.artifacts[key]
        return Check(f"expect.{key}", _plain(expected) == computed, expected, computed)
    return Check(f"expect.{key}", False, expected, "no such artifact")


def _plain(x: Any) -> Any:
    if isinstance(x, tuple):
        return [_plain(y) for y in x]
    if isinstance(x, list):
        return [_plain(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    return x


# -- operations -----------------------------------------------------------------------------


@dataclass
class Operation:
    fn: Callable[[Context, dict], Outcome]
    needs: str  # "action", "algebra" or "none"


OPERATIONS: dict[str, Operation] = {}


def operation(name: str, needs: str = "action"):
    def deco(fn):
        OPERATIONS[name] = Operation(fn, needs)
        return fn

    return deco


def _poly_str(P: UniPoly) -> str:
    return str(P)


@operation("validate")
def _op_validate(ctx: Context, params: dict) -> Outcome:
    act = ctx.action
    A = act.algebra
    basis = [A.basis_element(i) for i in range(A.dim)]
    checks = [
        Check("algebra_map", act.algebra_map_check()),
        Check("counit", all(act.counit_check(b) for b in basis)),
        Check("coassociative", act.coassociativity_check(basis[: int(params.get("limit", 12))])),
        Check("rank", act.hopf.rank == act.order, act.order, act.hopf.rank),
    ]
    return Outcome({"order": act.order, "algebra_dim": A.dim, "action": act.describe()}, checks)


@operation("norm")
def _op_norm(ctx: Context, params: dict) -> Outcome:
    a = ctx.element(params["element"])
    n = norm(ctx.action, a)
    out = Outcome({"norm": str(n)}, elements={"norm": n})
    if isinstance(ctx.action, ConstantAction):
        out.checks.append(Check("orbit_product", ctx.action.orbit_norm(a) == n))
    return out


@operation("char_poly")
def _op_char_poly(ctx: Context, params: dict) -> Outcome:
    a = ctx.element(params["element"])
    sv = sigma(ctx.action, a)
    P = char_poly(ctx.action, a)
    sig = [ctx.algebra.one] + [sv[i] for i in range(1, ctx.action.order + 1)]
    return Outcome(
        {"char_poly": _poly_str(P), "sigma": [str(s) for s in sig]},
        [Check("cayley_hamilton", P(a).is_zero())],
        elements={"sigma": sig},
    )


@operation("cayley_hamilton")
def _op_cayley_hamilton(ctx: Context, params: dict) -> Outcome:
    xs = ctx.samples(params, 20)
    held = sum(1 for a in xs if cayley_hamilton_check(ctx.action, a))
    return Outcome({"samples": len(xs), "held": held}, [Check("all_hold", held == len(xs), len(xs), held)])


@operation("orbit_oracle")
def _op_orbit_oracle(ctx: Context, params: dict) -> Outcome:
    act = ctx.action
    if not isinstance(act, ConstantAction):
        raise PreconditionError("the orbit product exists for constant groups only")
    xs = ctx.samples(params, 20)
    agree = sum(1 for a in xs if char_poly(act, a) == act.orbit_char_poly(a))
    return Outcome({"samples": len(xs), "agree": agree}, [Check("all_agree", agree == len(xs), len(xs), agree)])


@operation("power_identity")
def _op_power_identity(ctx: Context, params: dict) -> Outcome:
    xs = ctx.samples(params, 10)
    if "element" in params:
        xs = [ctx.element(params["element"])] + xs
    held = sum(1 for a in xs if etale_power_identity_check(ctx.action, a))
    return Outcome({"samples": len(xs), "held": held}, [Check("all_hold", held == len(xs), len(xs), held)])


@operation("is_invariant")
def _op_is_invariant(ctx: Context, params: dict) -> Outcome:
    a = ctx.element(params["element"])
    return Outcome({"invariant": is_invariant(ctx.action, a)})


def _span_outcome(key: str, S: inv.SubalgebraSpan, A, degree=None) -> Outcome:
    return Outcome(
        {key: [str(g) for g in S.generators], "rank": S.rank, "length": S.length},
        spans={key: (A, S, degree)},
    )


@operation("invariants")
def _op_invariants(ctx: Context, params: dict) -> Outcome:
    return _span_outcome("generators", inv.invariant_subring(ctx.action), ctx.algebra, params.get("degree"))


@operation("kl_algebra")
def _op_kl(ctx: Context, params: dict) -> Outcome:
    return _span_outcome("generators", inv.kl_subalgebra(ctx.action), ctx.algebra, params.get("degree"))


@operation("compare")
def _op_compare(ctx: Context, params: dict) -> Outcome:
    rep = inv.compare(ctx.action, params.get("degree"))
    art = rep.describe()
    out = Outcome(art, elements={"witness": rep.witness}, certified_degree=rep.certified_degree)
    if rep.witness is not None:
        out.checks.append(Check("witness_outside_sigma", not inv.kl_subalgebra(ctx.action).contains(rep.witness)))
        out.checks.append(Check("witness_invariant", is_invariant(ctx.action, rep.witness)))
    return out


@operation("gabber")
def _op_gabber(ctx: Context, params: dict) -> Outcome:
    if "elements" in params:
        xs = [ctx.element(e) for e in params["elements"]]
    else:
        xs = list(inv.invariant_subring(ctx.action).generators)
    results = {str(a): inv.gabber_power_check(ctx.action, a) for a in xs}
    return Outcome({"results": results}, [Check("all_hold", all(results.values()))])


@operation("extraction")
def _op_extraction(ctx: Context, params: dict) -> Outcome:
    act = ctx.action
    H = _labels(act.group, params["subgroup"])
    res = inv.quotient_extraction(act, H, ctx.element(params["element"]))
    top = list(reversed(res.alphas))
    return Outcome(
        {"alphas": [str(a) for a in top], "chi_G": _poly_str(res.chi_G), "chi_quotient": _poly_str(res.chi_quotient), "m": res.m},
        [Check("power_identity", res.power_identity), Check("matches_direct", res.matches_direct)],
        elements={"alphas": top},
    )


@operation("induced")
def _op_induced(ctx: Context, params: dict) -> Outcome:
    _ = ctx.action  # building the action records the induction data
    data = ctx.induced
    if data is None:
        raise QuotlabError("the induced operation needs an induced action")
    f = data.C.parse(params["element"])
    rep = inv.induced_identities_check(data, f)
    return Outcome(
        {"chi_G": _poly_str(rep.chi_G), "coset_product": _poly_str(rep.coset_product), "cosets": len(data.cosets)},
        [
            Check("coset_product_identity", rep.equation_holds),
            Check("phi_invariants", rep.phi_invariants),
            Check("phi_sigma", rep.phi_sigma),
        ],
    )


@operation("free_points")
def _op_free_points(ctx: Context, params: dict) -> Outcome:
    free = inv.free_points_check(ctx.action)
    out = Outcome({"free": free})
    if free:
        out.checks.append(Check("sigma_equals_invariants", inv.compare(ctx.action).equal))
    return out


@operation("smooth_invariants")
def _op_smooth(ctx: Context, params: dict) -> Outcome:
    model = curves.SmoothPointModel(ctx.action)
    rep = curves.smooth_invariants_check(model)
    Nt = model.norm_of_t()
    return Outcome(
        rep.describe(),
        [Check("equal", rep.equal), Check("valuation", rep.valuation == ctx.action.order, ctx.action.order, rep.valuation)],
        elements={"norm": Nt},
        certified_degree=rep.certified_degree,
    )


@operation("node")
def _op_node(ctx: Context, params: dict) -> Outcome:
    model = curves.NodeModel(ctx.action)
    psi = params.get("psi")
    psi = None if psi is None else ctx.action.group.element(psi)
    data = curves.node_decompose(model, psi)
    rep = curves.node_invariants_check(model, psi)
    art = {"classes": model.classes, **data.describe(), **rep.describe()}
    checks = [
        Check("fixed_part", rep.fixed_part_ok),
        Check("quotient_type", rep.quotient_type in ("node", "smooth"), None, rep.quotient_type),
        Check("cogenerated", curves.cogenerated_check(model)),
        Check("sigma_identity", curves.node_sigma_check(model, psi)),
    ]
    if rep.swap_part_ok is not None:
        checks.append(Check("swap_part", rep.swap_part_ok))
    u, v = curves.branch_norms(model, data)
    elements = {"u": u, "v": v}
    if data.psi is not None:
        elements["invariant_generator"] = u + ctx.action.act(data.psi, u)
    return Outcome(art, checks, elements=elements, certified_degree=rep.certified_degree)


@operation("cogenerated")
def _op_cogenerated(ctx: Context, params: dict) -> Outcome:
    A = ctx.algebra
    model = curves.NodeModel(ctx.action) if len(A.variables) == 2 else curves.SmoothPointModel(ctx.action)
    ok = curves.cogenerated_check(model)
    return Outcome({"cogenerated": ok}, [Check("cogenerated", ok)])


def _change(ctx: Context, spec) -> bcm.BaseChange:
    return bcm.base_change_from_spec(ctx.base, spec)


@operation("base_change")
def _op_base_change(ctx: Context, params: dict) -> Outcome:
    bc = _change(ctx, params["change"])
    maps = bcm.comparison_maps(ctx.action, bc)
    art = maps.describe()
    return Outcome(art, [Check("phi_surjective", maps.phi.surjective), Check("consistent", maps.consistent)])


@operation("radicial")
def _op_radicial(ctx: Context, params: dict) -> Outcome:
    bc = _change(ctx, params.get("change", "residue"))
    rep = bcm.radicial_shadow_check(ctx.action, bc, int(params.get("samples", 12)))
    return Outcome(rep.describe(), [Check("radicial", rep.ok)])


@operation("exchange")
def _op_exchange(ctx: Context, params: dict) -> Outcome:
    rep = bcm.exchange_criterion(ctx.action)
    return Outcome(rep.describe(), [Check("no_framework_bug", not rep.framework_bug)])


@operation("quotient_commutes")
def _op_quotient_commutes(ctx: Context, params: dict) -> Outcome:
    A = ctx.algebra
    model = curves.NodeModel(ctx.action) if len(A.variables) == 2 else curves.SmoothPointModel(ctx.action)
    changes = params.get("changes", "stock")
    bcs = bcm.stock_artinian_changes(ctx.base) if changes == "stock" else [_change(ctx, c) for c in changes]
    reports = [bcm.quotient_commutes(model, bc) for bc in bcs]
    return Outcome(
        {"results": {r.bc: r.bijective for r in reports}},
        [Check(f"bijective[{r.bc}]", r.bijective) for r in reports],
    )


# polarized symmetric functions


def _index(params: dict) -> tuple:
    return tuple(int(a) for a in params["alpha"])


@operation("polarization", needs="none")
def _op_polarization(ctx: Context, params: dict) -> Outcome:
    P = pol.partial_polarization(_index(params), int(params["n"]), int(params["q"]))
    return Outcome({"polynomial": str(P), "terms": len(P)})


@operation("express", needs="none")
def _op_express(ctx: Context, params: dict) -> Outcome:
    alpha, n, q = _index(params), int(params["n"]), int(params["q"])
    E = pol.express_in_power_products(alpha, n, q)
    checks = [
        Check("integral", E.integral()),
        Check("symbolic", pol.verify_symbolically(E, alpha)),
        Check("corrupted_control_fails", not pol.verify_symbolically(pol.corrupted(E), alpha)),
    ]
    art: dict = {"expression": str(E), "patterns": [list(p) for p in E.patterns_used()]}
    if "assignment" in params:
        assignment = params["assignment"]
        art["value"] = E.evaluate(assignment)
        checks.append(Check("assignment", pol.verify_identity(E, alpha, assignment)))
        checks.append(Check("corrupted_assignment_fails", not pol.verify_identity(pol.corrupted(E), alpha, assignment)))
    return Outcome(art, checks)


@operation("sum_expansion", needs="none")
def _op_sum_expansion(ctx: Context, params: dict) -> Outcome:
    S = pol.sum_expansion(int(params["k"]), int(params["q"]), int(params["n"]))
    return Outcome(S.describe(), [Check("holds", S.holds)])


@operation("appendix_sweep", needs="none")
def _op_appendix_sweep(ctx: Context, params: dict) -> Outcome:
    n, q = int(params["n"]), int(params["q"])
    rep = pol.appendix_sweep(n, q)
    sums = all(pol.sum_expansion(k, q, n).holds for k in range(n + 1))
    return Outcome(rep.describe(), [Check("inversions", rep.ok), Check("sum_identities", sums)])


# tangent spaces


def _theta(ctx: Context, params: dict) -> coh.GModule:
    return coh.theta_module(ctx.action, params.get("N"))


@operation("theta_h1")
def _op_theta_h1(ctx: Context, params: dict) -> Outcome:
    M = _theta(ctx, params)
    H1 = coh.h_one(M)
    G = ctx.action.group
    art = {"N": M.dim, "h0": coh.h_zero(M).dimension, "h1": H1.dimension}
    checks = [Check("d1_d0_zero", coh.d1_d0_vanishes(M))]
    if any(G.element_order(g) == G.order for g in range(G.order)):
        cyc = coh.cyclic_h1_dimension(M)
        art["h1_cyclic"] = cyc
        checks.append(Check("cyclic_oracle", cyc == H1.dimension, cyc, H1.dimension))
    R = ctx.base
    if R.is_unit(R.from_int(G.order)):
        checks.append(Check("tame_vanishing", H1.dimension == 0, 0, H1.dimension))
    return Outcome(art, checks)


@operation("h1_stability")
def _op_h1_stability(ctx: Context, params: dict) -> Outcome:
    rep = coh.h1_stability(ctx.action, int(params["N"]), params.get("margin"))
    return Outcome(rep.describe(), [Check("stable", rep.stable)])


@operation("res_inf")
def _op_res_inf(ctx: Context, params: dict) -> Outcome:
    M = _theta(ctx, params)
    H = _labels(ctx.action.group, params["subgroup"])
    res = coh.restriction_h1(M, H)
    infl = coh.inflation_h1(M, H)
    fmt = lambda L: [[ctx.base.format(x) for x in row] for row in L.matrix]
    return Outcome(
        {"restriction": fmt(res), "inflation": fmt(infl), "dims": [len(infl.domain), len(res.domain), len(res.codomain)]},
        [Check("res_after_inf_zero", coh.compose_is_zero(res, infl))],
    )


@operation("composite")
def _op_composite(ctx: Context, params: dict) -> Outcome:
    H = _labels(ctx.action.group, params["subgroup"])
    sc = coh.stable_composite(ctx.action, H, int(params["N"]), params.get("margin"))
    comp = sc.composite
    art = {**sc.describe(), "matrix": comp.describe()["matrix"]}
    checks = []
    Q = comp.theta_T_H.group
    if any(Q.element_order(g) == Q.order for g in range(Q.order)):
        checks.append(Check("cyclic_oracle_rank", coh.cyclic_composite_rank(comp) == comp.rank))
    return Outcome(art, checks)


# -- running -----------------------------------------------------------------------------------


def run_task(ctx: Context, task: Task) -> TaskResult:
    start = time.perf_counter()
    message = None
    try:
        res = OPERATIONS[task.op].fn(ctx, task.params)
        checks = list(res.checks)
        for key, expected in task.expect.items():
            checks.append(_compare_expected(ctx, key, expected, res))
        outcome = "pass" if all(c.ok for c in checks) else "fail"
        artifacts = _plain(res.artifacts)
        certified = res.certified_degree
    except PreconditionError as exc:
        outcome, artifacts, checks, certified, message = "gated", {}, [], None, str(exc)
    except QuotlabError as exc:
        outcome, artifacts, checks, certified = "fail", {}, [], None
        message = f"{type(exc).__name__}: {exc}"
    except KeyError as exc:
        outcome, artifacts, checks, certified = "fail", {}, [], None
        message = f"missing parameter {exc}"
    if task.expect_outcome is not None and outcome != task.expect_outcome:
        checks.append(Check("expected_outcome", False, task.expect_outcome, outcome))
        outcome = "fail"
    elif task.expect_outcome == "fail":
        # an expected failure is the desired result
        outcome = "pass"
    return TaskResult(task.op, outcome, artifacts, checks, message, certified, task.provenance, time.perf_counter() - start)


def run_scenario(scenario: Scenario, truncation: int | None = None) -> Report:
    start = time.perf_counter()
    ctx = Context(scenario, truncation)
    results = []
    error = None
    try:
        for task in scenario.tasks:
            results.append(run_task(ctx, task))
    except QuotlabError as exc:
        error = f"{type(exc).__name__}: {exc}"
    return Report(scenario.name, scenario.tags, results, error, time.perf_counter() - start)
