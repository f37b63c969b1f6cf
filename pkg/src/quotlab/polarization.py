"""Partial polarizations of elementary symmetric functions.

There are ``q`` families of ``n`` variables, ``x^(1) .. x^(q)``.  For an index
``α = (α_1, .., α_q)`` with ``Σ α_ℓ <= n`` the polarization ``s_α`` sums, over
pairwise disjoint index sets ``S_1, .., S_q`` with ``|S_ℓ| = α_ℓ``, the
monomial ``Π_ℓ Π_{i in S_ℓ} x^(ℓ)_i``.

``express_in_power_products`` rewrites ``s_α`` as an integer polynomial in the
symbols ``s_j(M)``: the j-th elementary symmetric function of the variable-wise
products ``y_i = Π_ℓ (x^(ℓ)_i)^{r_ℓ}`` for a pattern ``M = (r_1, .., r_q)``.

The rewriting is triangular.  Expanding a product ``Π_a s_{β_a}(M_a)`` and
grouping index tuples by which factors share an index gives ``s_β`` itself plus
polarizations of strictly smaller total degree whose families carry summed
patterns.  Identical patterns merge with a binomial coefficient, so every
coefficient stays an integer.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .errors import StructuralError

FAMILY_NAMES = "xyzwuv"


def family_name(ell: int) -> str:
    return FAMILY_NAMES[ell] if ell < len(FAMILY_NAMES) else f"x{ell + 1}_"


def _check_index(alpha: Sequence[int], n: int, q: int) -> tuple:
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != q:
        raise StructuralError(f"index {alpha} does not have {q} entries")
    if any(a < 0 for a in alpha):
        raise StructuralError(f"index {alpha} has a negative entry")
    if sum(alpha) > n:
        raise StructuralError(f"constraint violation: sum of {alpha} exceeds n = {n}")
    return alpha


# -- formal polynomials ---------------------------------------------------------


@dataclass
class FormalPoly:
    """Integer polynomial in ``q*n`` variables; exponent slot ``ℓ*n + i`` is ``x^(ℓ)_i``."""

    n: int
    q: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {e: c for e, c in self.terms.items() if c}

    @classmethod
    def constant(cls, n: int, q: int, c: int = 1) -> "FormalPoly":
        return cls(n, q, {(0,) * (n * q): c})

    @classmethod
    def variable(cls, n: int, q: int, ell: int, i: int) -> "FormalPoly":
        e = [0] * (n * q)
        e[ell * n + i] = 1
        return cls(n, q, {tuple(e): 1})

    def _same(self, other: "FormalPoly") -> None:
        if (self.n, self.q) != (other.n, other.q):
            raise StructuralError("polynomials over different variable sets")

    def __add__(self, other: "FormalPoly") -> "FormalPoly":
        self._same(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return FormalPoly(self.n, self.q, out)

    def __neg__(self) -> "FormalPoly":
        return FormalPoly(self.n, self.q, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "FormalPoly") -> "FormalPoly":
        return self + (-other)

    def __mul__(self, other) -> "FormalPoly":
        if isinstance(other, int):
            return FormalPoly(self.n, self.q, {e: c * other for e, c in self.terms.items()})
        self._same(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return FormalPoly(self.n, self.q, out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalPoly):
            return NotImplemented
        return (self.n, self.q) == (other.n, other.q) and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def sorted_terms(self) -> list[tuple[tuple, int]]:
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))

    def evaluate(self, assignment: Sequence[Sequence[int]]) -> int:
        flat = [v for fam in assignment for v in fam]
        if len(flat) != self.n * self.q:
            raise StructuralError(f"assignment supplies {len(flat)} of {self.n * self.q} variables")
        total = 0
        for e, c in self.terms.items():
            m = c
            for v, k in zip(flat, e):
                if k:
                    m *= v**k
            total += m
        return total

    def _format_monomial(self, e: tuple) -> str:
        parts = []
        for idx, k in enumerate(e):
            if k:
                ell, i = divmod(idx, self.n)
                name = f"{family_name(ell)}{i + 1}"
                parts.append(name if k == 1 else f"{name}^{k}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for e, c in self.sorted_terms():
            mon = self._format_monomial(e)
            mag = abs(c)
            body = mon if mag == 1 and mon else (f"{mag}*{mon}" if mon else str(mag))
            if not out:
                out = body if c > 0 else f"-{body}"
            else:
                out += f" + {body}" if c > 0 else f" - {body}"
        return out

    __repr__ = __str__


def elementary_of_pattern(j: int, pattern: Sequence[int], n: int) -> FormalPoly:
    """``s_j`` of the variable-wise products ``y_i = Π_ℓ (x^(ℓ)_i)^{r_ℓ}``."""
    q = len(pattern)
    if j < 0 or j > n:
        return FormalPoly(n, q)
    total: dict = {}
    for S in itertools.combinations(range(n), j):
        e = [0] * (n * q)
        for i in S:
            for ell, r in enumerate(pattern):
                e[ell * n + i] += r
        total[tuple(e)] = total.get(tuple(e), 0) + 1
    return FormalPoly(n, q, total)


def partial_polarization(alpha: Sequence[int], n: int, q: int) -> FormalPoly:
    """Sum over disjoint index sets of the corresponding monomials, coefficient 1 each."""
    alpha = _check_index(alpha, n, q)
    terms: dict = {}

    def rec(ell: int, used: frozenset, e: list) -> None:
        if ell == q:
            terms[tuple(e)] = terms.get(tuple(e), 0) + 1
            return
        free = [i for i in range(n) if i not in used]
        for S in itertools.combinations(free, alpha[ell]):
            for i in S:
                e[ell * n + i] += 1
            rec(ell + 1, used | frozenset(S), e)
            for i in S:
                e[ell * n + i] -= 1

    rec(0, frozenset(), [0] * (n * q))
    return FormalPoly(n, q, terms)


def valid_indices(n: int, q: int, total: int | None = None) -> list[tuple]:
    """All α with Σα <= n (or Σα == total), in lexicographic order."""
    out = []
    for alpha in itertools.product(range(n + 1), repeat=q):
        s = sum(alpha)
        if (total is None and s <= n) or s == total:
            out.append(alpha)
    return out


# -- the sum identity -------------------------------------------------------------


@dataclass
class SumIdentity:
    k: int
    q: int
    n: int
    lhs: FormalPoly
    rhs: FormalPoly
    indices: list

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    def describe(self) -> dict:
        return {
            "k": self.k,
            "q": self.q,
            "n": self.n,
            "holds": self.holds,
            "terms": len(self.lhs),
            "indices": [list(a) for a in self.indices],
        }


def sum_expansion(k: int, q: int, n: int) -> SumIdentity:
    """``s_k(x^(1) + .. + x^(q))`` expanded directly and as ``Σ_{|α|=k} s_α``."""
    if k > n:
        raise StructuralError(f"k = {k} exceeds n = {n}")
    summed = []
    for i in range(n):
        z = FormalPoly(n, q)
        for ell in range(q):
            z = z + FormalPoly.variable(n, q, ell, i)
        summed.append(z)
    lhs = FormalPoly(n, q)
    for S in itertools.combinations(range(n), k):
        m = FormalPoly.constant(n, q)
        for i in S:
            m = m * summed[i]
        lhs = lhs + m
    indices = valid_indices(n, q, total=k)
    rhs = FormalPoly(n, q)
    for alpha in indices:
        rhs = rhs + partial_polarization(alpha, n, q)
    return SumIdentity(k, q, n, lhs, rhs, indices)


# -- symbolic expressions in s_j(M) -------------------------------------------------


Symbol = tuple  # (j, pattern)
Monomial = tuple  # sorted tuple of symbols, repeated by multiplicity


@dataclass
class SymExpr:
    """Integer polynomial in the symbols ``s_j(M)``."""

    n: int
    q: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {m: c for m, c in self.terms.items() if c}

    @classmethod
    def one(cls, n: int, q: int) -> "SymExpr":
        return cls(n, q, {(): 1})

    @classmethod
    def symbol(cls, n: int, q: int, j: int, pattern: Sequence[int]) -> "SymExpr":
        if j == 0:
            return cls.one(n, q)
        if j > n:
            return cls(n, q)
        return cls(n, q, {((j, tuple(pattern)),): 1})

    def __add__(self, other: "SymExpr") -> "SymExpr":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return SymExpr(self.n, self.q, out)

    def __neg__(self) -> "SymExpr":
        return SymExpr(self.n, self.q, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "SymExpr") -> "SymExpr":
        return self + (-other)

    def __mul__(self, other) -> "SymExpr":
        if isinstance(other, int):
            return SymExpr(self.n, self.q, {m: c * other for m, c in self.terms.items()})
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(sorted(m1 + m2))
                out[m] = out.get(m, 0) + c1 * c2
        return SymExpr(self.n, self.q, out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymExpr):
            return NotImplemented
        return (self.n, self.q, self.terms) == (other.n, other.q, other.terms)

    def symbols(self) -> set:
        return {s for m in self.terms for s in m}

    def patterns_used(self) -> list[tuple]:
        return sorted({s[1] for s in self.symbols()})

    def max_exponent(self) -> int:
        return max((r for p in self.patterns_used() for r in p), default=0)

    def integral(self) -> bool:
        return all(isinstance(c, int) for c in self.terms.values())

    def expand(self) -> FormalPoly:
        cache: dict = {}
        total = FormalPoly(self.n, self.q)
        for m, c in self.terms.items():
            p = FormalPoly.constant(self.n, self.q, c)
            for j, pattern in m:
                if (j, pattern) not in cache:
                    cache[(j, pattern)] = elementary_of_pattern(j, pattern, self.n)
                p = p * cache[(j, pattern)]
            total = total + p
        return total

    def evaluate(self, assignment: Sequence[Sequence[int]]) -> int:
        n = self.n
        memo: dict = {}

        def sym(j: int, pattern: tuple) -> int:
            if (j, pattern) not in memo:
                ys = []
                for i in range(n):
                    y = 1
                    for ell, r in enumerate(pattern):
                        y *= assignment[ell][i] ** r
                    ys.append(y)
                # coefficients of Π (1 + y_i T)
                e = [1] + [0] * n
                for y in ys:
                    for d in range(n, 0, -1):
                        e[d] += e[d - 1] * y
                memo[(j, pattern)] = e[j]
            return memo[(j, pattern)]

        total = 0
        for m, c in self.terms.items():
            v = c
            for j, pattern in m:
                v *= sym(j, pattern)
            total += v
        return total

    def format_symbol(self, sym: Symbol) -> str:
        j, pattern = sym
        parts = []
        for ell, r in enumerate(pattern):
            if r:
                name = family_name(ell)
                parts.append(name if r == 1 else f"{name}^{r}")
        return f"s_{j}({''.join(parts)})"

    def _format_monomial(self, m: Monomial) -> str:
        ordered = sorted(m, key=lambda s: (sum(s[1]), tuple(-r for r in s[1]), s[0]))
        return "*".join(self.format_symbol(s) for s in ordered)

    def sorted_terms(self) -> list:
        def key(item):
            m, _ = item
            return (-sum(j for j, _ in m), -len(m), m)

        return sorted(self.terms.items(), key=key)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for m, c in self.sorted_terms():
            mon = self._format_monomial(m)
            mag = abs(c)
            body = mon if mag == 1 and mon else (f"{mag}*{mon}" if mon else str(mag))
            if not out:
                out = body if c > 0 else f"-{body}"
            else:
                out += f" + {body}" if c > 0 else f" - {body}"
        return out

    __repr__ = __str__


def _normalise(families: Iterable[tuple[tuple, int]], n: int) -> tuple[int, tuple] | None:
    """Merge equal patterns; returns (integer multiplier, sorted families) or None if zero."""
    merged: dict = {}
    mult = 1
    for pattern, c in families:
        if c == 0:
            continue
        prev = merged.get(pattern, 0)
        mult *= comb(prev + c, c)
        merged[pattern] = prev + c
    if sum(merged.values()) > n:
        return None
    return mult, tuple(sorted(merged.items()))


def _overlap_configurations(counts: Sequence[int]):
    """Ways to split the factors' index sets by which factors share each index.

    Yields dicts ``{P: c_P}`` over non-empty subsets P of factor positions with
    ``Σ_{P ∋ a} c_P = counts[a]``, excluding the all-singletons configuration.
    """
    k = len(counts)
    subsets = [P for r in range(2, k + 1) for P in itertools.combinations(range(k), r)]

    def rec(idx: int, remaining: list, chosen: dict):
        if idx == len(subsets):
            if chosen:
                yield dict(chosen)
            return
        P = subsets[idx]
        top = min(remaining[a] for a in P)
        for c in range(top + 1):
            if c:
                chosen[P] = c
                for a in P:
                    remaining[a] -= c
            yield from rec(idx + 1, remaining, chosen)
            if c:
                del chosen[P]
                for a in P:
                    remaining[a] += c

    yield from rec(0, list(counts), {})


@lru_cache(maxsize=None)
def _express_families(families: tuple, n: int, q: int) -> SymExpr:
    """``s_β(M_1, .., M_k)`` for sorted families ``((M_a, β_a), ..)`` with distinct M_a."""
    if not families:
        return SymExpr.one(n, q)
    if len(families) == 1:
        (pattern, c), = families
        return SymExpr.symbol(n, q, c, pattern)
    patterns = [p for p, _ in families]
    counts = [c for _, c in families]
    product = SymExpr.one(n, q)
    for p, c in families:
        product = product * SymExpr.symbol(n, q, c, p)
    result = product
    for config in _overlap_configurations(counts):
        singles = [(patterns[a], counts[a] - sum(c for P, c in config.items() if a in P)) for a in range(len(counts))]
        shared = [(tuple(map(sum, zip(*(patterns[a] for a in P)))), c) for P, c in config.items()]
        norm = _normalise(singles + shared, n)
        if norm is None:
            continue
        mult, fam = norm
        result = result - _express_families(fam, n, q) * mult
    return result


def express_in_power_products(alpha: Sequence[int], n: int, q: int) -> SymExpr:
    """Integer polynomial in the symbols ``s_j(M)`` equal to ``s_α``."""
    alpha = _check_index(alpha, n, q)
    fams = []
    for ell, a in enumerate(alpha):
        pattern = tuple(1 if m == ell else 0 for m in range(q))
        fams.append((pattern, a))
    mult, fam = _normalise(fams, n)
    return _express_families(fam, n, q) * mult


def verify_identity(expr: SymExpr, alpha: Sequence[int], assignment: Sequence[Sequence[int]]) -> bool:
    """Integer evaluation of ``expr`` against that of ``s_α`` at the assignment."""
    n, q = expr.n, expr.q
    if len(assignment) != q or any(len(f) != n for f in assignment):
        raise StructuralError(f"assignment must supply {q} families of {n} values")
    return expr.evaluate(assignment) == partial_polarization(alpha, n, q).evaluate(assignment)


def verify_symbolically(expr: SymExpr, alpha: Sequence[int]) -> bool:
    return expr.expand() == partial_polarization(alpha, expr.n, expr.q)


def corrupted(expr: SymExpr) -> SymExpr:
    """A falsification control: the first term's coefficient bumped by one."""
    if not expr.terms:
        return SymExpr.one(expr.n, expr.q)
    m, _ = expr.sorted_terms()[0]
    out = dict(expr.terms)
    out[m] += 1
    return SymExpr(expr.n, expr.q, out)


@dataclass
class AppendixReport:
    n: int
    q: int
    checked: int
    failures: list
    patterns: dict

    @property
    def ok(self) -> bool:
        return not self.failures

    def describe(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "checked": self.checked,
            "failures": [list(a) for a in self.failures],
            "max_exponent": max((r for ps in self.patterns.values() for p in ps for r in p), default=0),
        }


def appendix_sweep(n: int, q: int) -> AppendixReport:
    """Symbolic verification of every valid α for the given n and q."""
    failures = []
    patterns = {}
    indices = valid_indices(n, q)
    for alpha in indices:
        e = express_in_power_products(alpha, n, q)
        patterns[alpha] = e.patterns_used()
        if not (e.integral() and verify_symbolically(e, alpha)):
            failures.append(alpha)
    return AppendixReport(n, q, len(indices), failures, patterns)
