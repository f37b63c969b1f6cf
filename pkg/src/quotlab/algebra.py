"""Finite free algebras with monomial bases, their elements, and A[T].

Two algebra shapes are supported:

* :class:`NormalFormAlgebra` -- ``R[x_1..x_k] / (monomial relations, total degree >= N)``.
  This models the truncated complete local rings ``k[[t]]``, ``k[[x,y]]/(xy)``,
  ``k[X]/(X^p) ⊗ B`` and so on.
* :class:`ProductAlgebra` -- a finite product of normal-form algebras, used for
  induced algebras and free actions that permute factors.

In both, the product of two basis elements is either zero or another basis
element with coefficient one, so multiplication is a table lookup.
"""

from __future__ import annotations

import ast
import itertools
from functools import cached_property
from typing import Any, Iterable, Mapping, Sequence

from .errors import StructuralError
from .rings import BaseRing, ResidueRing

DEFAULT_TRUNCATION = 16


def parse_monomial(text: str, variables: Sequence[str]) -> tuple[int, ...]:
    """Parse ``"x^2*y"`` (or ``"1"``) into an exponent tuple."""
    exps = [0] * len(variables)
    text = text.replace("**", "^").replace(" ", "")
    if text in ("", "1"):
        return tuple(exps)
    for piece in text.split("*"):
        name, _, power = piece.partition("^")
        if name not in variables:
            raise StructuralError(f"unknown variable {name!r} in monomial {text!r}")
        exps[variables.index(name)] += int(power) if power else 1
    return tuple(exps)


def format_monomial(exps: Sequence[int], variables: Sequence[str]) -> str:
    parts = []
    for v, e in zip(variables, exps):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts) if parts else "1"


class FiniteAlgebra:
    """Shared machinery: a base ring, a basis, and a basis multiplication table."""

    base: BaseRing
    dim: int
    degrees: list[int]
    generator_names: list[str]

    def _build_table(self) -> list[list[int]]:
        raise NotImplementedError

    @cached_property
    def table(self) -> list[list[int]]:
        return self._build_table()

    @cached_property
    def _fast_modulus(self) -> int | None:
        R = self.base
        if isinstance(R, ResidueRing):
            return R.n
        return None

    def element(self, coeffs: Mapping[int, Any]) -> "AlgebraElement":
        R = self.base
        c = {}
        for i, v in coeffs.items():
            if not 0 <= i < self.dim:
                raise StructuralError(f"basis index {i} out of range")
            v = R.convert(v)
            if v:
                c[i] = v
        return AlgebraElement(self, c)

    def from_vector(self, vec: Sequence[Any]) -> "AlgebraElement":
        return AlgebraElement(self, {i: v for i, v in enumerate(vec) if v})

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def scalar(self, c: Any) -> "AlgebraElement":
        return self.one * self.base.convert(c)

    @property
    def one(self) -> "AlgebraElement":
        raise NotImplementedError

    def basis_element(self, i: int) -> "AlgebraElement":
        return AlgebraElement(self, {i: self.base.one})

    def generator(self, name: str) -> "AlgebraElement":
        raise NotImplementedError

    def gens(self) -> list["AlgebraElement"]:
        return [self.generator(n) for n in self.generator_names]

    def basis_word(self, i: int) -> list[tuple[int, int]]:
        """Basis element ``i`` as a product of generators: ``[(gen index, exponent)]``."""
        raise NotImplementedError

    def format_basis(self, i: int) -> str:
        raise NotImplementedError

    def format_element(self, a: "AlgebraElement") -> str:
        raise NotImplementedError

    def parse(self, text: str | int) -> "AlgebraElement":
        """Parse an expression such as ``"x^2 - 3*x*y + (1+t)^-1"``."""
        return _ExprParser(self).parse(str(text))

    def random_element(self, rng, density: float = 0.6) -> "AlgebraElement":
        R = self.base
        return self.element({i: R.random(rng) for i in range(self.dim) if rng.random() < density})

    def with_base(self, base: BaseRing) -> "FiniteAlgebra":
        raise NotImplementedError

    def key(self) -> tuple:
        raise NotImplementedError

    def __eq__(self, other: object) -> bool:
        return self is other or (isinstance(other, FiniteAlgebra) and self.key() == other.key())

    def __hash__(self) -> int:
        return hash(self.key())

    def describe(self) -> dict:
        raise NotImplementedError


class NormalFormAlgebra(FiniteAlgebra):
    """``base[variables] / (relations) + (total degree >= truncation)``.

    ``relations`` are monomials declared zero, given as exponent tuples or
    strings like ``"x*y"``.  ``truncation=None`` means no degree cut-off, which
    is only allowed when every variable has a pure-power relation.
    """

    def __init__(
        self,
        base: BaseRing,
        variables: Sequence[str],
        relations: Iterable[str | Sequence[int]] = (),
        truncation: int | None = DEFAULT_TRUNCATION,
    ):
        self.base = base
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise StructuralError("duplicate variable names")
        for v in self.variables:
            if not v.isidentifier():
                raise StructuralError(f"variable name {v!r} is not an identifier")
            if v == base.generator:
                raise StructuralError(f"variable {v!r} clashes with the base-ring generator")
        rels = []
        for r in relations:
            exps = parse_monomial(r, self.variables) if isinstance(r, str) else tuple(int(e) for e in r)
            if len(exps) != len(self.variables):
                raise StructuralError(f"relation {r!r} has the wrong arity")
            if sum(exps) == 0:
                raise StructuralError("the relation 1 = 0 is not allowed")
            rels.append(exps)
        self.relations = tuple(sorted(set(rels)))
        if truncation is not None and truncation < 1:
            raise StructuralError("truncation must be >= 1")
        self.truncation = truncation
        self._bounds = []
        for i in range(len(self.variables)):
            pure = [r[i] for r in self.relations if sum(r) == r[i]]
            bound = min(pure) if pure else None
            if truncation is not None:
                bound = truncation if bound is None else min(bound, truncation)
            if bound is None:
                raise StructuralError(
                    f"variable {self.variables[i]!r} is not nilpotent; give a truncation degree"
                )
            self._bounds.append(bound)
        self.basis = self._enumerate_basis()
        self.dim = len(self.basis)
        self.index = {m: i for i, m in enumerate(self.basis)}
        self.degrees = [sum(m) for m in self.basis]
        self.generator_names = list(self.variables)

    def _divisible(self, m: Sequence[int]) -> bool:
        return any(all(a >= b for a, b in zip(m, r)) for r in self.relations)

    def _enumerate_basis(self) -> list[tuple[int, ...]]:
        out = []
        for m in itertools.product(*(range(b) for b in self._bounds)):
            if self.truncation is not None and sum(m) >= self.truncation:
                continue
            if self._divisible(m):
                continue
            out.append(m)
        out.sort(key=lambda m: (sum(m), tuple(-e for e in m)))
        return out

    @cached_property
    def effective_truncation(self) -> int:
        """Smallest N such that every monomial of degree >= N vanishes."""
        return max(self.degrees) + 1

    def _build_table(self):
        idx = self.index
        basis = self.basis
        table = []
        for a in basis:
            row = []
            for b in basis:
                row.append(idx.get(tuple(x + y for x, y in zip(a, b)), -1))
            table.append(row)
        return table

    @cached_property
    def one(self):
        return AlgebraElement(self, {self.index[(0,) * len(self.variables)]: self.base.one})

    def monomial(self, exps: Sequence[int], coeff: Any = 1) -> "AlgebraElement":
        exps = tuple(exps)
        if len(exps) != len(self.variables):
            raise StructuralError("monomial arity mismatch")
        if any(e < 0 for e in exps):
            raise StructuralError("negative exponent")
        i = self.index.get(exps)
        if i is None:
            return self.zero()
        return self.element({i: coeff})

    def generator(self, name):
        if name not in self.variables:
            raise StructuralError(f"unknown variable {name!r}")
        i = self.variables.index(name)
        return self.monomial(tuple(1 if j == i else 0 for j in range(len(self.variables))))

    def basis_word(self, i):
        return [(j, e) for j, e in enumerate(self.basis[i]) if e]

    def format_basis(self, i):
        return format_monomial(self.basis[i], self.variables)

    def format_element(self, a):
        if not a.c:
            return "0"
        R = self.base
        terms = []
        deg = self.degrees
        for i in sorted(a.c, key=lambda i: (-deg[i], i)):
            cs = R.format(a.c[i])
            mon = self.format_basis(i)
            if mon == "1":
                terms.append(cs)
            elif cs == "1":
                terms.append(mon)
            elif cs == "-1":
                terms.append("-" + mon)
            else:
                terms.append(f"{cs}*{mon}")
        text = " + ".join(terms)
        return text.replace("+ -", "- ")

    def with_base(self, base):
        return NormalFormAlgebra(base, self.variables, self.relations, self.truncation)

    def with_truncation(self, truncation):
        return NormalFormAlgebra(self.base, self.variables, self.relations, truncation)

    def key(self):
        return ("nf", self.base.key(), self.variables, self.relations, self.truncation)

    def describe(self):
        return {
            "base": self.base.describe(),
            "variables": list(self.variables),
            "relations": [format_monomial(r, self.variables) for r in self.relations],
            "truncation": self.truncation,
            "dimension": self.dim,
        }

    def __repr__(self):
        rels = ", ".join(format_monomial(r, self.variables) for r in self.relations)
        return f"{self.base.name}[{','.join(self.variables)}]/({rels}; deg>={self.truncation})"


class ProductAlgebra(FiniteAlgebra):
    """``C_0 × C_1 × …`` over a common base.

    Generators are the factor idempotents ``e_a`` and the factor variables
    ``v_a`` (variable ``v`` of factor ``a``).
    """

    def __init__(self, factors: Sequence[NormalFormAlgebra]):
        if not factors:
            raise StructuralError("a product needs at least one factor")
        base = factors[0].base
        if any(f.base != base for f in factors):
            raise StructuralError("factors must share a base ring")
        self.base = base
        self.factors = tuple(factors)
        self.offsets = []
        off = 0
        for f in factors:
            self.offsets.append(off)
            off += f.dim
        self.dim = off
        self.degrees = [d for f in factors for d in f.degrees]
        self.generator_names = [f"e_{a}" for a in range(len(factors))] + [
            f"{v}_{a}" for a, f in enumerate(factors) for v in f.variables
        ]
        self._gen_lookup = {name: i for i, name in enumerate(self.generator_names)}

    def locate(self, i: int) -> tuple[int, int]:
        for a in range(len(self.factors) - 1, -1, -1):
            if i >= self.offsets[a]:
                return a, i - self.offsets[a]
        raise StructuralError("index out of range")

    def _build_table(self):
        table = [[-1] * self.dim for _ in range(self.dim)]
        for a, f in enumerate(self.factors):
            off = self.offsets[a]
            ft = f.table
            for i in range(f.dim):
                row = table[off + i]
                fr = ft[i]
                for j in range(f.dim):
                    k = fr[j]
                    if k >= 0:
                        row[off + j] = off + k
        return table

    @cached_property
    def one(self):
        c = {}
        for a, f in enumerate(self.factors):
            c[self.offsets[a] + f.one_index] = self.base.one
        return AlgebraElement(self, c)

    def embed(self, a: int, x: "AlgebraElement") -> "AlgebraElement":
        if x.parent != self.factors[a]:
            raise StructuralError("element does not belong to that factor")
        off = self.offsets[a]
        return AlgebraElement(self, {off + i: v for i, v in x.c.items()})

    def project(self, a: int, x: "AlgebraElement") -> "AlgebraElement":
        f = self.factors[a]
        off = self.offsets[a]
        return AlgebraElement(f, {i - off: v for i, v in x.c.items() if off <= i < off + f.dim})

    def generator(self, name):
        if name not in self._gen_lookup:
            raise StructuralError(f"unknown generator {name!r}")
        head, _, a = name.rpartition("_")
        a = int(a)
        f = self.factors[a]
        if head == "e":
            return self.embed(a, f.one)
        return self.embed(a, f.generator(head))

    def basis_word(self, i):
        a, j = self.locate(i)
        f = self.factors[a]
        word = [(self._gen_lookup[f"e_{a}"], 1)]
        for k, e in f.basis_word(j):
            word.append((self._gen_lookup[f"{f.variables[k]}_{a}"], e))
        return word

    def format_basis(self, i):
        a, j = self.locate(i)
        return f"[{a}]{self.factors[a].format_basis(j)}"

    def format_element(self, x):
        parts = [self.factors[a].format_element(self.project(a, x)) for a in range(len(self.factors))]
        return "(" + ", ".join(parts) + ")"

    def with_base(self, base):
        return ProductAlgebra([f.with_base(base) for f in self.factors])

    def key(self):
        return ("prod", tuple(f.key() for f in self.factors))

    def describe(self):
        return {"product": [f.describe() for f in self.factors], "dimension": self.dim}

    def __repr__(self):
        return " × ".join(repr(f) for f in self.factors)


# cached index of 1 in a normal-form basis (always the first basis element)
NormalFormAlgebra.one_index = 0


class AlgebraElement:
    """An element in canonical form: basis index -> nonzero coefficient."""

    __slots__ = ("parent", "c")

    def __init__(self, parent: FiniteAlgebra, c: dict[int, Any]):
        self.parent = parent
        self.c = c

    # -- structure ---------------------------------------------------------
    def _check(self, other: "AlgebraElement") -> None:
        if other.parent is not self.parent and other.parent != self.parent:
            raise StructuralError("operands belong to different algebras")

    def _coerce(self, other: Any) -> "AlgebraElement":
        if isinstance(other, AlgebraElement):
            self._check(other)
            return other
        return self.parent.scalar(other)

    def __bool__(self) -> bool:
        return bool(self.c)

    def is_zero(self) -> bool:
        return not self.c

    def __eq__(self, other: object) -> bool:
        if isinstance(other, AlgebraElement):
            return self.parent == other.parent and self.c == other.c
        if isinstance(other, int):
            return self == self.parent.scalar(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.c.items()))

    def __repr__(self) -> str:
        return self.parent.format_element(self)

    __str__ = __repr__

    def to_vector(self) -> list[Any]:
        R = self.parent.base
        return [self.c.get(i, R.zero) for i in range(self.parent.dim)]

    def coefficient(self, i: int) -> Any:
        return self.c.get(i, self.parent.base.zero)

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        R = self.parent.base
        c = dict(self.c)
        for i, v in other.c.items():
            s = R.add(c[i], v) if i in c else v
            if s:
                c[i] = s
            else:
                c.pop(i, None)
        return AlgebraElement(self.parent, c)

    __radd__ = __add__

    def __neg__(self):
        R = self.parent.base
        return AlgebraElement(self.parent, {i: R.neg(v) for i, v in self.c.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, s: Any) -> "AlgebraElement":
        R = self.parent.base
        s = R.convert(s)
        if not s:
            return self.parent.zero()
        out = {}
        for i, v in self.c.items():
            w = R.mul(s, v)
            if w:
                out[i] = w
        return AlgebraElement(self.parent, out)

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            return self.scale(other)
        self._check(other)
        P = self.parent
        table = P.table
        n = P._fast_modulus
        out: dict[int, Any] = {}
        if n is not None:
            for i, a in self.c.items():
                row = table[i]
                for j, b in other.c.items():
                    k = row[j]
                    if k >= 0:
                        out[k] = out.get(k, 0) + a * b
            return AlgebraElement(P, {k: v % n for k, v in out.items() if v % n})
        R = P.base
        for i, a in self.c.items():
            row = table[i]
            for j, b in other.c.items():
                k = row[j]
                if k >= 0:
                    v = R.mul(a, b)
                    out[k] = R.add(out[k], v) if k in out else v
        return AlgebraElement(P, {k: v for k, v in out.items() if v})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.parent.one
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, AlgebraElement):
            return self * other.inverse()
        R = self.parent.base
        return self.scale(R.inv(R.convert(other)))

    def inverse(self) -> "AlgebraElement":
        """Inverse of a unit: constant part invertible, remainder nilpotent."""
        P = self.parent
        if isinstance(P, ProductAlgebra):
            out = P.zero()
            for a in range(len(P.factors)):
                out = out + P.embed(a, P.project(a, self).inverse())
            return out
        R = P.base
        c0 = self.c.get(0, R.zero)
        if not R.is_unit(c0):
            raise StructuralError(f"{self} is not a unit")
        c0inv = R.inv(c0)
        # a = c0 (1 + n), 1/a = c0^-1 * sum (-n)^k
        n = self.scale(c0inv) - P.one
        term = P.one
        total = P.one
        for _ in range(P.effective_truncation + 1):
            term = term * (-n)
            if not term:
                break
            total = total + term
        return total.scale(c0inv)

    # -- degree structure ------------------------------------------------------
    def valuation(self) -> int | None:
        """Smallest degree in the support (``None`` for zero)."""
        if not self.c:
            return None
        deg = self.parent.degrees
        return min(deg[i] for i in self.c)

    def truncate(self, d: int) -> "AlgebraElement":
        """Drop all terms of degree >= d."""
        deg = self.parent.degrees
        return AlgebraElement(self.parent, {i: v for i, v in self.c.items() if deg[i] < d})

    def constant_coefficient(self) -> Any:
        return self.c.get(0, self.parent.base.zero)

    def map_coefficients(self, f, parent: FiniteAlgebra) -> "AlgebraElement":
        """Apply a base-ring map coefficientwise into an algebra with the same basis."""
        return parent.element({i: f(v) for i, v in self.c.items()})


def nf_reduce(raw: Mapping[Any, Any], algebra: NormalFormAlgebra) -> AlgebraElement:
    """Reduce a formal monomial -> coefficient map to canonical form.

    Monomials may be exponent tuples, ``{variable: exponent}`` dicts or strings
    such as ``"x^2*y"``.  Monomials divisible by a relation or of degree at
    least the truncation vanish; coefficients are reduced in the base ring.
    """
    R = algebra.base
    out: dict[int, Any] = {}
    for mon, coeff in raw.items():
        if isinstance(mon, str):
            exps = parse_monomial(mon, algebra.variables)
        elif isinstance(mon, Mapping):
            unknown = set(mon) - set(algebra.variables)
            if unknown:
                raise StructuralError(f"unknown variables {sorted(unknown)}")
            exps = tuple(int(mon.get(v, 0)) for v in algebra.variables)
        else:
            exps = tuple(mon)
            if len(exps) != len(algebra.variables):
                raise StructuralError("monomial arity mismatch")
        i = algebra.index.get(exps)
        if i is None:
            continue
        c = R.convert(coeff)
        out[i] = R.add(out[i], c) if i in out else c
    return AlgebraElement(algebra, {i: v for i, v in out.items() if v})


class _ExprParser:
    """Safe arithmetic-expression parser built on :mod:`ast`."""

    def __init__(self, algebra: FiniteAlgebra):
        self.A = algebra

    def parse(self, text: str) -> AlgebraElement:
        try:
            tree = ast.parse(text.replace("^", "**"), mode="eval")
        except SyntaxError as exc:
            raise StructuralError(f"cannot parse {text!r}: {exc.msg}") from None
        return self._to_element(self._eval(tree.body))

    def _to_element(self, v):
        if isinstance(v, AlgebraElement):
            return v
        return self.A.scalar(v)

    def _scalar(self, node):
        """Evaluate a node that must be a plain integer (exponents)."""
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -self._scalar(node.operand)
        raise StructuralError("exponents must be integer literals")

    def _eval(self, node):
        A = self.A
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, int):
                raise StructuralError(f"unsupported constant {node.value!r}")
            return A.scalar(node.value)
        if isinstance(node, ast.Name):
            if node.id in A.generator_names:
                return A.generator(node.id)
            if node.id == A.base.generator:
                return A.scalar(A.base.gen())
            raise StructuralError(f"unknown variable {node.id!r}")
        if isinstance(node, ast.Tuple):
            if not isinstance(A, ProductAlgebra) or len(node.elts) != len(A.factors):
                raise StructuralError("tuple syntax needs a product algebra with matching factor count")
            out = A.zero()
            for a, elt in enumerate(node.elts):
                sub = _ExprParser(A.factors[a])
                out = out + A.embed(a, sub._to_element(sub._eval(elt)))
            return out
        if isinstance(node, ast.UnaryOp):
            if isinstance(node.op, ast.USub):
                return -self._eval(node.operand)
            if isinstance(node.op, ast.UAdd):
                return self._eval(node.operand)
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                return self._eval(node.left) ** self._scalar(node.right)
            left = self._eval(node.left)
            right = self._eval(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                return left * right.inverse()
        raise StructuralError(f"unsupported syntax: {ast.dump(node)[:60]}")


class UniPoly:
    """A polynomial in T with coefficients in a finite algebra (low degree first)."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: FiniteAlgebra, coeffs: Sequence[AlgebraElement]):
        coeffs = list(coeffs)
        for c in coeffs:
            if c.parent != algebra:
                raise StructuralError("UniPoly coefficients must share the algebra")
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.algebra = algebra
        self.coeffs = coeffs

    @classmethod
    def T(cls, algebra: FiniteAlgebra) -> "UniPoly":
        return cls(algebra, [algebra.zero(), algebra.one])

    @classmethod
    def constant(cls, c: AlgebraElement) -> "UniPoly":
        return cls(c.parent, [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> AlgebraElement:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.algebra.zero()

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.algebra.one

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            if other.algebra != self.algebra:
                raise StructuralError("polynomials over different algebras")
            return other
        if isinstance(other, AlgebraElement):
            return UniPoly.constant(other)
        return UniPoly.constant(self.algebra.scalar(other))

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.algebra, [self.coefficient(i) + other.coefficient(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(self.algebra, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly(self.algebra, [])
        out = [self.algebra.zero() for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return UniPoly(self.algebra, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise StructuralError("negative powers of polynomials")
        result = UniPoly(self.algebra, [self.algebra.one])
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.algebra == other.algebra and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __call__(self, a: AlgebraElement) -> AlgebraElement:
        """Evaluate at an element of the coefficient algebra (Horner)."""
        acc = self.algebra.zero()
        for c in reversed(self.coeffs):
            acc = acc * a + c
        return acc

    def map_coefficients(self, f) -> "UniPoly":
        new = [f(c) for c in self.coeffs]
        algebra = new[0].parent if new else self.algebra
        return UniPoly(algebra, new)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mon = "" if k == 0 else ("T" if k == 1 else f"T^{k}")
            cs = str(c)
            if not mon:
                terms.append(cs if " " not in cs.strip("()") or cs.startswith("(") else f"({cs})")
            elif c == self.algebra.one:
                terms.append(mon)
            elif c == -self.algebra.one:
                terms.append("-" + mon)
            elif " " in cs and not cs.startswith("("):
                terms.append(f"({cs})*{mon}")
            else:
                terms.append(f"{cs}*{mon}")
        return " + ".join(terms).replace("+ -", "- ")

    __str__ = __repr__
