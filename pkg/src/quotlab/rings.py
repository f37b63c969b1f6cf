"""Exact coefficient rings.

Every ring here represents its elements by plain hashable Python values whose
falsiness coincides with being zero: ``int`` for the integers and residue
rings, :class:`fractions.Fraction` for the rationals, and trailing-zero-stripped
tuples for simple extensions ``K[z]/(f)``.  That convention lets the linear
algebra and polynomial code test ``if c:`` without going through the ring.

Rings that support exact linear algebra are *chain rings*: local rings whose
ideals form a single chain ``R ⊃ (π) ⊃ (π²) ⊃ … ⊃ (π^k) = 0``.  Fields are the
case ``k = 1``.  For them the ring exposes a valuation, a normalising unit and
division by powers of the uniformiser.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from random import Random
from typing import Any, Sequence

from .errors import StructuralError, UnsupportedBaseError


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, k) with n = p**k, or None."""
    for p in range(2, n + 1):
        if n % p == 0:
            k = 0
            m = n
            while m % p == 0:
                m //= p
                k += 1
            return (p, k) if m == 1 else None
    return None


class BaseRing:
    """Common interface; subclasses fill in the arithmetic."""

    name: str = "ring"
    characteristic: int = 0
    is_field: bool = False
    #: number k with π^k = 0; ``None`` when the ring is not a chain ring
    nilpotency: int | None = None
    #: generator symbol for extension rings (used by the expression parser)
    generator: str | None = None

    zero: Any = 0
    one: Any = 1

    # -- arithmetic -------------------------------------------------------
    def from_int(self, n: int) -> Any:
        raise NotImplementedError

    def add(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def sub(self, a: Any, b: Any) -> Any:
        return self.add(a, self.neg(b))

    def neg(self, a: Any) -> Any:
        raise NotImplementedError

    def mul(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def pow(self, a: Any, e: int) -> Any:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def is_unit(self, a: Any) -> bool:
        raise NotImplementedError

    def inv(self, a: Any) -> Any:
        raise NotImplementedError

    def convert(self, value: Any) -> Any:
        """Coerce an int (or an element of this ring) into canonical form."""
        if isinstance(value, bool):
            raise StructuralError("booleans are not ring elements")
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, Fraction):
            if value.denominator == 1:
                return self.from_int(value.numerator)
            return self.mul(self.from_int(value.numerator), self.inv(self.from_int(value.denominator)))
        return value

    def random(self, rng: Random) -> Any:
        raise NotImplementedError

    def format(self, a: Any) -> str:
        return str(a)

    def elements(self) -> list[Any]:
        """All elements (finite rings only)."""
        raise UnsupportedBaseError(f"{self.name} is infinite")

    # -- chain-ring structure --------------------------------------------
    def require_chain(self) -> None:
        if self.nilpotency is None:
            raise UnsupportedBaseError(f"unsupported base for kernel: {self.name}")

    def valuation(self, a: Any) -> int:
        """Order of ``a`` in the π-adic filtration; ``nilpotency`` for zero."""
        raise UnsupportedBaseError(f"unsupported base for kernel: {self.name}")

    def unit_normaliser(self, a: Any) -> Any:
        """A unit u with ``u * a == π^valuation(a)``."""
        raise UnsupportedBaseError(f"unsupported base for kernel: {self.name}")

    def pi_power(self, v: int) -> Any:
        raise UnsupportedBaseError(f"unsupported base for kernel: {self.name}")

    def divide_pi_power(self, a: Any, v: int) -> Any:
        """q with ``q * π^v == a``; requires valuation(a) >= v."""
        raise UnsupportedBaseError(f"unsupported base for kernel: {self.name}")

    def reduce_pi_power(self, a: Any, v: int) -> tuple[Any, Any]:
        """Split ``a = r + q*π^v`` with r the canonical residue mod π^v."""
        raise UnsupportedBaseError(f"unsupported base for kernel: {self.name}")

    def residue_field(self) -> "BaseRing":
        raise UnsupportedBaseError(f"{self.name} is not local")

    def to_residue(self, a: Any) -> Any:
        raise UnsupportedBaseError(f"{self.name} is not local")

    # -- identity ---------------------------------------------------------
    def key(self) -> tuple:
        raise NotImplementedError

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BaseRing) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return self.name

    def describe(self) -> dict:
        raise NotImplementedError


class Integers(BaseRing):
    name = "ZZ"
    characteristic = 0

    def from_int(self, n):
        return int(n)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def is_unit(self, a):
        return a in (1, -1)

    def inv(self, a):
        if a not in (1, -1):
            raise StructuralError(f"{a} is not a unit in ZZ")
        return a

    def random(self, rng):
        return rng.randint(-5, 5)

    def key(self):
        return ("ZZ",)

    def describe(self):
        return {"kind": "integers"}


class Rationals(BaseRing):
    name = "QQ"
    characteristic = 0
    is_field = True
    nilpotency = 1
    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def convert(self, value):
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            return Fraction(value)
        raise StructuralError(f"cannot convert {value!r} to QQ")

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def is_unit(self, a):
        return a != 0

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 is not invertible")
        return 1 / a

    def random(self, rng):
        return Fraction(rng.randint(-6, 6), rng.randint(1, 3))

    def format(self, a):
        return str(a)

    # field as a chain ring with k = 1
    def valuation(self, a):
        return 0 if a else 1

    def unit_normaliser(self, a):
        return 1 / a

    def pi_power(self, v):
        return Fraction(1) if v == 0 else Fraction(0)

    def divide_pi_power(self, a, v):
        return a

    def reduce_pi_power(self, a, v):
        return Fraction(0), a

    def residue_field(self):
        return self

    def to_residue(self, a):
        return a

    def key(self):
        return ("QQ",)

    def describe(self):
        return {"kind": "rationals"}


class ResidueRing(BaseRing):
    """Integers modulo n.  A chain ring exactly when n is a prime power."""

    def __init__(self, n: int):
        if n < 2:
            raise StructuralError("ResidueRing needs n >= 2")
        self.n = n
        pk = _prime_power(n)
        self.prime, self.exponent = pk if pk else (None, None)
        self.name = f"ZZ/{n}"
        self.characteristic = n
        self.is_field = _is_prime(n)
        self.nilpotency = self.exponent

    def from_int(self, k):
        return k % self.n

    def add(self, a, b):
        return (a + b) % self.n

    def neg(self, a):
        return -a % self.n

    def sub(self, a, b):
        return (a - b) % self.n

    def mul(self, a, b):
        return a * b % self.n

    def is_unit(self, a):
        return gcd(a, self.n) == 1

    def inv(self, a):
        if gcd(a, self.n) != 1:
            raise ZeroDivisionError(f"{a} is not a unit mod {self.n}")
        return pow(a, -1, self.n)

    def random(self, rng):
        return rng.randrange(self.n)

    def elements(self):
        return list(range(self.n))

    def format(self, a):
        # balanced residues read better: x - y rather than x + 4*y
        return str(a - self.n if a > self.n // 2 else a)

    def valuation(self, a):
        self.require_chain()
        if a == 0:
            return self.exponent
        v = 0
        while a % self.prime == 0:
            a //= self.prime
            v += 1
        return v

    def unit_normaliser(self, a):
        v = self.valuation(a)
        u = (a // self.prime**v) % self.n
        return pow(u, -1, self.n)

    def pi_power(self, v):
        self.require_chain()
        return pow(self.prime, v, self.n) if v < self.exponent else 0

    def divide_pi_power(self, a, v):
        self.require_chain()
        return (a // self.prime**v) % self.n

    def reduce_pi_power(self, a, v):
        self.require_chain()
        m = self.prime**v
        r = a % m
        return r, ((a - r) // m) % self.n

    def residue_field(self):
        self.require_chain()
        return PrimeField(self.prime)

    def to_residue(self, a):
        self.require_chain()
        return a % self.prime

    def key(self):
        return ("ZZ/n", self.n)

    def describe(self):
        return {"kind": "residue_ring", "n": self.n}


class PrimeField(ResidueRing):
    def __init__(self, p: int):
        if not _is_prime(p):
            raise StructuralError(f"PrimeField needs a prime, got {p}")
        super().__init__(p)
        self.name = f"GF({p})"
        self.p = p

    def elements(self):
        return list(range(self.p))

    def residue_field(self):
        return self

    def to_residue(self, a):
        return a

    def key(self):
        return ("GF", self.p)

    def describe(self):
        return {"kind": "prime_field", "p": self.p}


class SimpleExtension(BaseRing):
    """``K[z]/(f)`` for a field K and a monic modulus f.

    Only two shapes are admitted, because only they are local chain rings:
    ``f = z^m`` (an artinian extension with nilpotent generator) and f
    irreducible (a finite field extension).  Use :func:`ArtinianExtension` or
    :func:`GaloisField` to build them.
    """

    def __init__(self, base: BaseRing, modulus: Sequence[Any], generator: str, kind: str):
        if not base.is_field:
            raise StructuralError(f"extension base must be a field, got {base.name}")
        coeffs = [base.convert(c) for c in modulus]
        if coeffs[-1] != base.one:
            raise StructuralError("modulus must be monic")
        self.base = base
        self.modulus = tuple(coeffs)
        self.degree = len(coeffs) - 1
        self.generator = generator
        self.kind = kind
        self.characteristic = base.characteristic
        self.zero = ()
        self.one = (base.one,)
        if kind == "artinian":
            self.is_field = self.degree == 1
            self.nilpotency = self.degree
            self.name = f"{base.name}[{generator}]/({generator}^{self.degree})"
        else:
            self.is_field = True
            self.nilpotency = 1
            self.name = f"{base.name}[{generator}]/({self._format_modulus()})"

    def _format_modulus(self) -> str:
        terms = []
        for i in range(len(self.modulus) - 1, -1, -1):
            c = self.modulus[i]
            if not c:
                continue
            mon = "" if i == 0 else self.generator if i == 1 else f"{self.generator}^{i}"
            cs = self.base.format(c)
            terms.append(cs if not mon else mon if cs == "1" else f"{cs}*{mon}")
        return " + ".join(terms).replace("+ -", "- ")

    @staticmethod
    def _strip(c: list) -> tuple:
        while c and not c[-1]:
            c.pop()
        return tuple(c)

    def gen(self) -> tuple:
        if self.degree == 1:
            # z ≡ -f0 in degree-one extensions
            return self._strip([self.base.neg(self.modulus[0])])
        return self._strip([self.base.zero, self.base.one])

    def from_int(self, n):
        return self._strip([self.base.from_int(n)])

    def convert(self, value):
        if isinstance(value, tuple):
            return self._strip([self.base.convert(c) for c in value])
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            return self._strip([self.base.convert(value)])
        raise StructuralError(f"cannot convert {value!r} to {self.name}")

    def embed(self, c: Any) -> tuple:
        return self._strip([c])

    def add(self, a, b):
        B = self.base
        n = max(len(a), len(b))
        out = []
        for i in range(n):
            x = a[i] if i < len(a) else B.zero
            y = b[i] if i < len(b) else B.zero
            out.append(B.add(x, y))
        return self._strip(out)

    def neg(self, a):
        return tuple(self.base.neg(c) for c in a)

    def mul(self, a, b):
        if not a or not b:
            return ()
        B = self.base
        prod = [B.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    prod[i + j] = B.add(prod[i + j], B.mul(x, y))
        d = self.degree
        f = self.modulus
        for k in range(len(prod) - 1, d - 1, -1):
            c = prod[k]
            if not c:
                continue
            prod[k] = B.zero
            for i in range(d):
                if f[i]:
                    prod[k - d + i] = B.sub(prod[k - d + i], B.mul(c, f[i]))
        return self._strip(prod[:d])

    def is_unit(self, a):
        if self.kind == "artinian":
            return bool(a) and bool(a[0])
        return bool(a)

    def inv(self, a):
        if not self.is_unit(a):
            raise ZeroDivisionError(f"{self.format(a)} is not a unit in {self.name}")
        B = self.base
        if self.kind == "artinian":
            # power-series inverse truncated at z^m
            m = self.degree
            a0inv = B.inv(a[0])
            out = [a0inv] + [B.zero] * (m - 1)
            for k in range(1, m):
                s = B.zero
                for i in range(1, min(k, len(a) - 1) + 1):
                    s = B.add(s, B.mul(a[i], out[k - i]))
                out[k] = B.neg(B.mul(s, a0inv))
            return self._strip(out)
        # finite field: a^(q-2)
        q = B.characteristic**self.degree
        return self.pow(a, q - 2)

    def random(self, rng):
        return self._strip([self.base.random(rng) for _ in range(self.degree)])

    def elements(self):
        from itertools import product

        return [self._strip(list(c)) for c in product(self.base.elements(), repeat=self.degree)]

    def format(self, a):
        if not a:
            return "0"
        terms = []
        for i, c in enumerate(a):
            if not c:
                continue
            cs = self.base.format(c)
            if i == 0:
                terms.append(cs)
            else:
                mon = self.generator if i == 1 else f"{self.generator}^{i}"
                terms.append(mon if cs == "1" else f"-{mon}" if cs == "-1" else f"{cs}*{mon}")
        text = " + ".join(terms).replace("+ -", "- ")
        return f"({text})" if len(terms) > 1 else text

    # chain structure: the uniformiser is z for artinian extensions
    def valuation(self, a):
        if self.kind != "artinian":
            return 0 if a else 1
        for i, c in enumerate(a):
            if c:
                return i
        return self.degree

    def unit_normaliser(self, a):
        if self.kind != "artinian":
            return self.inv(a)
        v = self.valuation(a)
        return self.inv(tuple(a[v:]))

    def pi_power(self, v):
        if self.kind != "artinian":
            return self.one if v == 0 else ()
        if v >= self.degree:
            return ()
        return self._strip([self.base.zero] * v + [self.base.one])

    def divide_pi_power(self, a, v):
        if self.kind != "artinian":
            return a
        return self._strip(list(a[v:]))

    def reduce_pi_power(self, a, v):
        if self.kind != "artinian":
            return (), a
        return self._strip(list(a[:v])), self._strip(list(a[v:]))

    def residue_field(self):
        return self.base if self.kind == "artinian" else self

    def to_residue(self, a):
        if self.kind == "artinian":
            return a[0] if a else self.base.zero
        return a

    def key(self):
        return ("ext", self.base.key(), self.modulus, self.kind)

    def describe(self):
        if self.kind == "artinian":
            return {"kind": "artinian", "base": self.base.describe(), "order": self.degree, "generator": self.generator}
        return {"kind": "galois_field", "p": self.base.characteristic, "degree": self.degree, "generator": self.generator}


def ArtinianExtension(base: BaseRing, order: int, generator: str = "eps") -> SimpleExtension:
    """``base[ε]/(ε^order)``."""
    if order < 1:
        raise StructuralError("nilpotency order must be >= 1")
    return SimpleExtension(base, [base.zero] * order + [base.one], generator, "artinian")


def _conway_like(p: int, e: int) -> list[int]:
    """Smallest monic irreducible of degree e over GF(p), in lexicographic order."""
    from itertools import product

    F = PrimeField(p)
    for tail in product(range(p), repeat=e):
        coeffs = list(reversed(tail)) + [1]
        if coeffs[0] == 0:
            continue
        if _irreducible(F, coeffs):
            return coeffs
    raise StructuralError(f"no irreducible of degree {e} over GF({p})")


def _poly_mod(F: BaseRing, a: list, f: list) -> list:
    a = list(a)
    d = len(f) - 1
    for k in range(len(a) - 1, d - 1, -1):
        c = a[k]
        if c:
            for i in range(d + 1):
                a[k - d + i] = F.sub(a[k - d + i], F.mul(c, f[i]))
    while a and not a[-1]:
        a.pop()
    return a


def _irreducible(F: BaseRing, f: list) -> bool:
    from itertools import product

    d = len(f) - 1
    for deg in range(1, d // 2 + 1):
        for tail in product(F.elements(), repeat=deg):
            g = list(tail) + [F.one]
            if not _poly_mod(F, f, g):
                return False
    return True


def GaloisField(p: int, e: int, generator: str = "z") -> BaseRing:
    """GF(p^e) as ``GF(p)[z]/(f)`` with a deterministic irreducible f."""
    F = PrimeField(p)
    if e == 1:
        return F
    return SimpleExtension(F, _conway_like(p, e), generator, "galois")


def ring_from_spec(spec: dict) -> BaseRing:
    """Build a ring from its ``describe()``-style dictionary."""
    kind = spec.get("kind")
    if kind == "integers":
        return Integers()
    if kind == "rationals":
        return Rationals()
    if kind == "prime_field":
        return PrimeField(int(spec["p"]))
    if kind == "residue_ring":
        return ResidueRing(int(spec["n"]))
    if kind == "artinian":
        return ArtinianExtension(ring_from_spec(spec["base"]), int(spec["order"]), spec.get("generator", "eps"))
    if kind == "galois_field":
        return GaloisField(int(spec["p"]), int(spec["degree"]), spec.get("generator", "z"))
    raise StructuralError(f"unknown base ring kind {kind!r}")
