"""Exact linear algebra over the base rings and over finite algebras.

Module computations (spans, membership, kernels) run over *chain rings*:
fields, ``ZZ/p^k`` and ``K[eps]/(eps^m)``.  Every ideal of such a ring is a
power of the uniformiser π, so a Howell normal form exists and is unique.  It
reduces to reduced row echelon form over a field.

Determinants of matrices with entries in a finite algebra (which has zero
divisors) use the division-free Berkowitz algorithm; a Laplace expansion is
kept as an independent oracle and Bareiss elimination covers domains.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Callable, Sequence

from .errors import StructuralError
from .rings import BaseRing

Vector = list
Matrix = list


# -- Howell normal form ------------------------------------------------------


def _axpy(R: BaseRing, y: list, q: Any, x: list) -> None:
    """y -= q*x in place."""
    for i, xi in enumerate(x):
        if xi:
            y[i] = R.sub(y[i], R.mul(q, xi))


def _scale(R: BaseRing, q: Any, x: list) -> list:
    return [R.mul(q, xi) if xi else R.zero for xi in x]


def howell_form(R: BaseRing, rows: Sequence[Sequence[Any]], ncols: int) -> list[tuple[int, int, list]]:
    """Howell form of the row module of ``rows``: ``[(pivot column, valuation, row)]``.

    Pivot entries are exactly ``π^v``; entries above a pivot are reduced modulo
    ``π^v``.  Rows with zeros in the first ``c`` columns span exactly the
    elements of the module with that property (the Howell property).
    """
    R.require_chain()
    k = R.nilpotency
    work = [[R.convert(x) for x in r] for r in rows]
    for r in work:
        if len(r) != ncols:
            raise StructuralError("row length mismatch")
    work = [r for r in work if any(r)]
    pivots: list[tuple[int, int, list]] = []
    for col in range(ncols):
        best = None
        best_v = None
        for idx, r in enumerate(work):
            if r[col]:
                v = R.valuation(r[col])
                if best_v is None or v < best_v:
                    best, best_v = idx, v
                    if v == 0:
                        break
        if best is None:
            continue
        piv = work.pop(best)
        piv = _scale(R, R.unit_normaliser(piv[col]), piv)
        for r in work:
            if r[col]:
                _axpy(R, r, R.divide_pi_power(r[col], best_v), piv)
        work = [r for r in work if any(r)]
        if best_v > 0:
            extra = _scale(R, R.pi_power(k - best_v), piv)
            if any(extra):
                work.append(extra)
        pivots.append((col, best_v, piv))
    # reduce entries above each pivot
    for i, (col, v, row) in enumerate(pivots):
        for j in range(i):
            rj = pivots[j][2]
            if rj[col]:
                _, q = R.reduce_pi_power(rj[col], v)
                if q:
                    _axpy(R, rj, q, row)
    return pivots


def reduce_vector(R: BaseRing, pivots, vec: Sequence[Any]) -> tuple[list, list]:
    """Reduce ``vec`` by a Howell form; returns (remainder, multipliers used)."""
    w = [R.convert(x) for x in vec]
    used = []
    for col, v, row in pivots:
        e = w[col]
        if not e:
            used.append(R.zero)
            continue
        if R.valuation(e) < v:
            used.append(R.zero)
            continue
        q = R.divide_pi_power(e, v)
        _axpy(R, w, q, row)
        used.append(q)
    return w, used


class Span:
    """The R-submodule of ``R^n`` generated by some vectors."""

    def __init__(self, base: BaseRing, n: int, vectors: Sequence[Sequence[Any]] = ()):
        self.base = base
        self.n = n
        self.generators = [[base.convert(x) for x in v] for v in vectors]
        for v in self.generators:
            if len(v) != n:
                raise StructuralError(f"vector of length {len(v)} in a span of R^{n}")

    @cached_property
    def howell(self) -> list[tuple[int, int, list]]:
        return howell_form(self.base, self.generators, self.n)

    @cached_property
    def _augmented(self):
        R = self.base
        g = len(self.generators)
        rows = []
        for i, v in enumerate(self.generators):
            rows.append(list(v) + [R.one if j == i else R.zero for j in range(g)])
        return howell_form(R, rows, self.n + g)

    def basis(self) -> list[list]:
        return [list(row) for _, _, row in self.howell]

    @property
    def rank(self) -> int:
        """Number of Howell rows (the dimension over a field)."""
        return len(self.howell)

    @property
    def length(self) -> int:
        """Composition length as an R-module."""
        k = self.base.nilpotency
        return sum(k - v for _, v, _ in self.howell)

    def contains(self, vec: Sequence[Any]) -> bool:
        rem, _ = reduce_vector(self.base, self.howell, vec)
        return not any(rem)

    def solve(self, vec: Sequence[Any]) -> list | None:
        """Coefficients c with ``sum c_i * generators[i] == vec``, or None."""
        R = self.base
        g = len(self.generators)
        w = list(vec) + [R.zero] * g
        pivots = [(c, v, r) for c, v, r in self._augmented if c < self.n]
        rem, _ = reduce_vector(R, pivots, w)
        if any(rem[: self.n]):
            return None
        return [R.neg(x) for x in rem[self.n :]]

    def syzygies(self) -> list[list]:
        """Generators of the relation module among ``generators``."""
        return [r[self.n :] for c, _, r in self._augmented if c >= self.n]

    def __le__(self, other: "Span") -> bool:
        return all(other.contains(r) for r in self.basis())

    def same_as(self, other: "Span") -> bool:
        return self <= other and other <= self

    def __add__(self, other: "Span") -> "Span":
        return Span(self.base, self.n, self.basis() + other.basis())


def kernel(R: BaseRing, M: Sequence[Sequence[Any]], ncols: int | None = None) -> list[list]:
    """Generators of ``{v : M v = 0}`` for an m×n matrix over a chain ring."""
    R.require_chain()
    m = len(M)
    n = ncols if ncols is not None else (len(M[0]) if M else 0)
    rows = []
    for j in range(n):
        rows.append([M[i][j] for i in range(m)] + [R.one if jj == j else R.zero for jj in range(n)])
    form = howell_form(R, rows, m + n)
    return [r[m:] for c, _, r in form if c >= m]


def mat_vec(R: BaseRing, M: Sequence[Sequence[Any]], v: Sequence[Any]) -> list:
    out = []
    for row in M:
        acc = R.zero
        for a, b in zip(row, v):
            if a and b:
                acc = R.add(acc, R.mul(a, b))
        out.append(acc)
    return out


@dataclass(frozen=True)
class LinearMap:
    """A matrix with labelled domain and codomain bases (rows index the codomain)."""

    base: BaseRing
    domain: tuple
    codomain: tuple
    matrix: tuple

    def __post_init__(self):
        if len(self.matrix) != len(self.codomain):
            raise StructuralError("matrix row count does not match the codomain")
        for row in self.matrix:
            if len(row) != len(self.domain):
                raise StructuralError("matrix column count does not match the domain")

    @classmethod
    def from_columns(cls, base, domain, codomain, columns):
        m = len(codomain)
        matrix = tuple(tuple(col[i] for col in columns) for i in range(m))
        return cls(base, tuple(domain), tuple(codomain), matrix)

    def __call__(self, v):
        return mat_vec(self.base, self.matrix, v)

    def column(self, j):
        return [row[j] for row in self.matrix]

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self ∘ other."""
        if tuple(other.codomain) != tuple(self.domain):
            raise StructuralError("bases do not align for composition")
        cols = [self(other.column(j)) for j in range(len(other.domain))]
        return LinearMap.from_columns(self.base, other.domain, self.codomain, cols)

    def kernel(self) -> list[list]:
        return kernel(self.base, self.matrix, len(self.domain))

    def image(self) -> Span:
        return Span(self.base, len(self.codomain), [self.column(j) for j in range(len(self.domain))])

    def is_zero(self) -> bool:
        return not any(x for row in self.matrix for x in row)


# -- determinants ---------------------------------------------------------------


def berkowitz(M: Sequence[Sequence[Any]], one: Any, zero: Any) -> list:
    """Coefficients of ``det(T·I - M)``, highest degree first, division free.

    Entries may live in any commutative ring whose elements support ``+ - *``.
    """
    n = len(M)
    for row in M:
        if len(row) != n:
            raise StructuralError("characteristic polynomial of a non-square matrix")
    poly = [one]
    for r in range(n):
        # leading (r+1)x(r+1) block = [[A_r, C], [Rw, a]]
        a = M[r][r]
        C = [M[i][r] for i in range(r)]
        Rw = [M[r][j] for j in range(r)]
        t = [one, zero - a]
        vec = C
        for _ in range(r):
            s = zero
            for x, y in zip(Rw, vec):
                s = s + x * y
            t.append(zero - s)
            vec = [_dot(M[i][:r], vec, zero) for i in range(r)]
        new = []
        for i in range(r + 2):
            s = zero
            for j in range(max(0, i - len(t) + 1), min(i, r) + 1):
                s = s + t[i - j] * poly[j]
            new.append(s)
        poly = new
    return poly


def _dot(xs, ys, zero):
    s = zero
    for x, y in zip(xs, ys):
        s = s + x * y
    return s


def determinant(M: Sequence[Sequence[Any]], one: Any, zero: Any) -> Any:
    """Division-free determinant (Berkowitz)."""
    n = len(M)
    c = berkowitz(M, one, zero)[-1]
    return c if n % 2 == 0 else zero - c


def cofactor_determinant(M: Sequence[Sequence[Any]], one: Any, zero: Any) -> Any:
    """Laplace expansion along the first row; exponential, used as an oracle."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise StructuralError("determinant of a non-square matrix")
    if n == 0:
        return one
    if n == 1:
        return M[0][0]
    total = zero
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in M[1:]]
        term = M[0][j] * cofactor_determinant(minor, one, zero)
        total = total + term if j % 2 == 0 else total - term
    return total


def bareiss_determinant(M: Sequence[Sequence[Any]]) -> Any:
    """Fraction-free Bareiss elimination for ``int`` or ``Fraction`` entries."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise StructuralError("determinant of a non-square matrix")
    if n == 0:
        return 1
    A = [list(row) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[i][j] * A[k][k] - A[i][k] * A[k][j]
                A[i][j] = num / prev if not isinstance(num, int) else num // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


class RingOps:
    """Wrap base-ring elements so that generic algorithms can use operators."""

    __slots__ = ("R", "v")

    def __init__(self, R: BaseRing, v: Any):
        self.R = R
        self.v = R.convert(v)

    def __add__(self, o):
        return RingOps(self.R, self.R.add(self.v, o.v))

    def __sub__(self, o):
        return RingOps(self.R, self.R.sub(self.v, o.v))

    def __rsub__(self, o):
        return RingOps(self.R, self.R.sub(o.v, self.v))

    def __mul__(self, o):
        return RingOps(self.R, self.R.mul(self.v, o.v))

    def __eq__(self, o):
        return isinstance(o, RingOps) and self.v == o.v

    def __hash__(self):
        return hash(self.v)


def base_determinant(R: BaseRing, M: Sequence[Sequence[Any]]) -> Any:
    wrapped = [[RingOps(R, x) for x in row] for row in M]
    return determinant(wrapped, RingOps(R, 1), RingOps(R, 0)).v


def map_matrix(M, f: Callable) -> list:
    return [[f(x) for x in row] for row in M]
