"""Finite groups and finite group schemes acting on finite algebras.

Every action exposes the same dual description: a coordinate algebra ``H``
(free of rank n over the base) and a coaction ``A -> H ⊗ A``, returned as the
list of A-coefficients on the basis of H.  Norms and characteristic
polynomials are determinants of multiplication by the coaction on the free
A-module ``H ⊗ A``.

Conventions: a constant group acts through automorphisms with
``image(g*h) = image(g) ∘ image(h)``; its coordinate algebra is ``k^G`` with
the basis of point indicators δ_g and ``μ*(a) = Σ_g δ_g ⊗ g⁻¹(a)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import comb, factorial
from typing import Any, Callable, Mapping, Sequence

from .algebra import AlgebraElement, format_monomial, FiniteAlgebra, NormalFormAlgebra, ProductAlgebra, UniPoly
from .errors import ActionError, StructuralError
from .linalg import Span, berkowitz, determinant
from .rings import BaseRing


def linear_combination(parent: FiniteAlgebra, terms) -> AlgebraElement:
    """Σ coeff * element for (coeff, element) pairs, accumulated in one pass."""
    R = parent.base
    out: dict[int, Any] = {}
    for coeff, elem in terms:
        if not coeff:
            continue
        for i, v in elem.c.items():
            w = R.mul(coeff, v)
            out[i] = R.add(out[i], w) if i in out else w
    return AlgebraElement(parent, {i: v for i, v in out.items() if v})


# -- groups -------------------------------------------------------------------


class ConstantGroup:
    """A finite group given by its multiplication table; element 0 is the identity."""

    def __init__(self, labels: Sequence[str], table: Sequence[Sequence[int]], generators: Sequence[int] = ()):
        n = len(labels)
        self.labels = tuple(str(x) for x in labels)
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise ActionError("multiplication table has the wrong shape")
        if len(set(self.labels)) != n:
            raise ActionError("group labels must be distinct")
        if any(not 0 <= x < n for row in self.table for x in row):
            raise ActionError("table entry out of range")
        if self.table[0] != tuple(range(n)) or any(self.table[g][0] != g for g in range(n)):
            raise ActionError("element 0 must be the identity")
        for a, b, c in itertools.product(range(n), repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                raise ActionError(f"table is not associative at ({self.labels[a]}, {self.labels[b]}, {self.labels[c]})")
        inv = []
        for g in range(n):
            h = [h for h in range(n) if self.table[g][h] == 0]
            if len(h) != 1:
                raise ActionError(f"{self.labels[g]} has no unique inverse")
            inv.append(h[0])
        self.inverse = tuple(inv)
        self.generators = tuple(generators) if generators else tuple(range(1, n))
        if self.subgroup(self.generators) != tuple(range(n)):
            raise ActionError("declared generators do not generate the group")

    # constructors
    @classmethod
    def trivial(cls) -> "ConstantGroup":
        return cls(["e"], [[0]])

    @classmethod
    def cyclic(cls, n: int, name: str = "g") -> "ConstantGroup":
        if n < 1:
            raise ActionError("cyclic group order must be positive")
        labels = ["e"] + [name if i == 1 else f"{name}^{i}" for i in range(1, n)]
        table = [[(i + j) % n for j in range(n)] for i in range(n)]
        return cls(labels, table, [1] if n > 1 else [])

    @classmethod
    def product(cls, G: "ConstantGroup", H: "ConstantGroup") -> "ConstantGroup":
        pairs = [(a, b) for a in range(G.order) for b in range(H.order)]
        index = {p: i for i, p in enumerate(pairs)}
        labels = [f"({G.labels[a]},{H.labels[b]})" for a, b in pairs]
        table = [[index[(G.table[a][c], H.table[b][d])] for c, d in pairs] for a, b in pairs]
        gens = [index[(g, 0)] for g in G.generators] + [index[(0, h)] for h in H.generators]
        return cls(labels, table, gens)

    @property
    def order(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return self.order

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def element(self, label: str | int) -> int:
        if isinstance(label, int):
            if not 0 <= label < self.order:
                raise ActionError(f"no group element {label}")
            return label
        if label not in self.labels:
            raise ActionError(f"unknown group element {label!r}")
        return self.labels.index(label)

    def power(self, g: int, k: int) -> int:
        out = 0
        for _ in range(k):
            out = self.table[out][g]
        return out

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.table[x][g]
            k += 1
        return k

    def subgroup(self, gens: Sequence[int]) -> tuple[int, ...]:
        members = {0}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.table[x][g]
                if y not in members:
                    members.add(y)
                    frontier.append(y)
        return tuple(sorted(members))

    def is_subgroup(self, H: Sequence[int]) -> bool:
        S = set(H)
        return 0 in S and all(self.table[a][self.inverse[b]] in S for a in S for b in S)

    def is_normal(self, H: Sequence[int]) -> bool:
        S = set(H)
        return self.is_subgroup(H) and all(
            self.table[self.table[g][h]][self.inverse[g]] in S for g in range(self.order) for h in S
        )

    def left_cosets(self, H: Sequence[int]) -> list[tuple[int, ...]]:
        """Cosets gH ordered by their smallest element; the first is H itself."""
        seen = set()
        out = []
        for g in range(self.order):
            if g in seen:
                continue
            coset = tuple(sorted(self.table[g][h] for h in H))
            seen.update(coset)
            out.append(coset)
        return out

    def quotient(self, H: Sequence[int]) -> tuple["ConstantGroup", list[int]]:
        """G/H for normal H, together with the projection G -> G/H."""
        if not self.is_normal(H):
            raise ActionError("quotient by a non-normal subgroup")
        cosets = self.left_cosets(H)
        proj = [0] * self.order
        for i, c in enumerate(cosets):
            for g in c:
                proj[g] = i
        table = [[proj[self.table[c[0]][d[0]]] for d in cosets] for c in cosets]
        labels = [f"{self.labels[c[0]]}H" if i else "H" for i, c in enumerate(cosets)]
        gens = sorted({proj[g] for g in self.generators if proj[g]})
        return ConstantGroup(labels, table, gens), proj

    def __eq__(self, other):
        return isinstance(other, ConstantGroup) and self.table == other.table and self.labels == other.labels

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"ConstantGroup(order={self.order})"


# -- automorphisms and derivations ---------------------------------------------------


class AlgebraAutomorphism:
    """An algebra endomorphism determined by generator images, checked to be bijective."""

    def __init__(self, algebra: FiniteAlgebra, images: Mapping[str, AlgebraElement | str], check: bool = True):
        self.algebra = algebra
        imgs = {}
        for name in algebra.generator_names:
            if name not in images:
                if isinstance(algebra, ProductAlgebra):
                    raise ActionError(f"missing image for generator {name!r}")
                imgs[name] = algebra.generator(name)
                continue
            v = images[name]
            v = algebra.parse(v) if isinstance(v, (str, int)) else v
            if v.parent != algebra:
                raise StructuralError(f"image of {name!r} lives in another algebra")
            imgs[name] = v
        extra = set(images) - set(algebra.generator_names)
        if extra:
            raise StructuralError(f"images given for unknown generators {sorted(extra)}")
        self.images = imgs
        if check:
            self.validate()

    @classmethod
    def identity(cls, algebra: FiniteAlgebra) -> "AlgebraAutomorphism":
        return cls(algebra, {n: algebra.generator(n) for n in algebra.generator_names}, check=False)

    @cached_property
    def basis_images(self) -> list[AlgebraElement]:
        A = self.algebra
        gens = [self.images[n] for n in A.generator_names]
        cache: dict[tuple, AlgebraElement] = {(): A.one}
        out = []
        for i in range(A.dim):
            word = tuple(A.basis_word(i))
            out.append(self._word_image(word, gens, cache))
        return out

    def _word_image(self, word, gens, cache):
        if word in cache:
            return cache[word]
        g, e = word[-1]
        shorter = word[:-1] + (((g, e - 1),) if e > 1 else ())
        val = self._word_image(shorter, gens, cache) * gens[g]
        cache[word] = val
        return val

    def apply(self, a: AlgebraElement) -> AlgebraElement:
        if a.parent != self.algebra:
            raise StructuralError("automorphism applied to a foreign element")
        imgs = self.basis_images
        return linear_combination(self.algebra, ((c, imgs[i]) for i, c in a.c.items()))

    __call__ = apply

    def compose(self, other: "AlgebraAutomorphism") -> "AlgebraAutomorphism":
        """``self ∘ other``."""
        return AlgebraAutomorphism(self.algebra, {n: self.apply(v) for n, v in other.images.items()}, check=False)

    def matrix_columns(self) -> list[list]:
        return [img.to_vector() for img in self.basis_images]

    def validate(self) -> None:
        A = self.algebra
        if isinstance(A, NormalFormAlgebra):
            for name, img in self.images.items():
                if img.constant_coefficient():
                    raise ActionError(f"image of {name} has a nonzero constant term; the augmentation ideal must be preserved")
            for rel in A.relations:
                img = A.one
                for name, e in zip(A.variables, rel):
                    img = img * self.images[name] ** e
                if img:
                    raise ActionError(
                        f"relation {format_monomial(rel, A.variables)} is not respected: its image is {img}"
                    )
        else:
            imgs = self.basis_images
            table = A.table
            for i in range(A.dim):
                for j in range(i, A.dim):
                    k = table[i][j]
                    lhs = imgs[k] if k >= 0 else A.zero()
                    if imgs[i] * imgs[j] != lhs:
                        raise ActionError(
                            f"not multiplicative on {A.format_basis(i)} * {A.format_basis(j)}"
                        )
            if self.apply(A.one) != A.one:
                raise ActionError("unit is not preserved")
        if not self.is_bijective():
            raise ActionError("the induced linear map is not invertible")

    def is_bijective(self) -> bool:
        A = self.algebra
        if A.base.nilpotency is None:
            # no chain structure: test invertibility through the determinant
            from .linalg import base_determinant

            cols = self.matrix_columns()
            M = [[cols[j][i] for j in range(A.dim)] for i in range(A.dim)]
            return A.base.is_unit(base_determinant(A.base, M))
        span = Span(A.base, A.dim, self.matrix_columns())
        return span.length == A.dim * A.base.nilpotency

    def __eq__(self, other):
        return isinstance(other, AlgebraAutomorphism) and self.algebra == other.algebra and self.images == other.images

    def __hash__(self):
        return hash(tuple(sorted((k, hash(v)) for k, v in self.images.items())))

    def __repr__(self):
        return "{" + ", ".join(f"{k} -> {v}" for k, v in self.images.items()) + "}"


class Derivation:
    """A derivation of a normal-form algebra, given by the images of the variables.

    It is applied monomialwise through the Leibniz rule on the basis
    representatives.  Derivations that lower degree (such as ∂/∂x) are then
    exact in every degree below the truncation.
    """

    def __init__(self, algebra: NormalFormAlgebra, images: Mapping[str, AlgebraElement | str]):
        if not isinstance(algebra, NormalFormAlgebra):
            raise StructuralError("derivations are supported on normal-form algebras")
        self.algebra = algebra
        imgs = {}
        for v in algebra.variables:
            x = images.get(v, 0)
            x = algebra.parse(x) if isinstance(x, (str, int)) else x
            imgs[v] = x
        extra = set(images) - set(algebra.variables)
        if extra:
            raise StructuralError(f"derivation images for unknown variables {sorted(extra)}")
        self.images = imgs

    @cached_property
    def basis_images(self) -> list[AlgebraElement]:
        A = self.algebra
        out = []
        for m in A.basis:
            terms = []
            for k, e in enumerate(m):
                if e:
                    rest = list(m)
                    rest[k] -= 1
                    terms.append((A.base.from_int(e), A.monomial(rest) * self.images[A.variables[k]]))
            out.append(linear_combination(A, terms))
        return out

    def apply(self, a: AlgebraElement) -> AlgebraElement:
        imgs = self.basis_images
        return linear_combination(self.algebra, ((c, imgs[i]) for i, c in a.c.items()))

    __call__ = apply

    def power(self, a: AlgebraElement, k: int) -> AlgebraElement:
        for _ in range(k):
            a = self.apply(a)
        return a

    def nilpotency_index(self, bound: int) -> int | None:
        """Smallest k <= bound with D^k = 0 on every basis element."""
        A = self.algebra
        current = [A.basis_element(i) for i in range(A.dim)]
        for k in range(bound + 1):
            if not any(current):
                return k
            current = [self.apply(x) for x in current]
        return None

    def __repr__(self):
        return " + ".join(f"({v})*d/d{k}" for k, v in self.images.items() if v) or "0"


# -- coordinate algebras --------------------------------------------------------


class CoordinateAlgebra:
    """A finite free commutative Hopf-type algebra H over the base ring.

    ``mult[i][j]`` is a sparse dict ``k -> c`` for ``h_i h_j = Σ c h_k``;
    ``comult[i]`` maps ``(j, k) -> c`` for ``Δ(h_i) = Σ c h_j ⊗ h_k``.
    """

    def __init__(self, base: BaseRing, labels, mult, unit, counit, comult):
        self.base = base
        self.labels = tuple(labels)
        self.mult = mult
        self.unit = unit
        self.counit = counit
        self.comult = comult

    @property
    def rank(self) -> int:
        return len(self.labels)

    @classmethod
    def functions_on(cls, base: BaseRing, G: ConstantGroup) -> "CoordinateAlgebra":
        n = G.order
        one = base.one
        mult = [[({i: one} if i == j else {}) for j in range(n)] for i in range(n)]
        unit = [one] * n
        counit = [one if i == 0 else base.zero for i in range(n)]
        comult = []
        for g in range(n):
            d = {}
            for x in range(n):
                y = G.table[G.inverse[x]][g]
                d[(x, y)] = one
            comult.append(d)
        return cls(base, [f"δ[{lab}]" for lab in G.labels], mult, unit, counit, comult)

    @classmethod
    def truncated_polynomial(cls, base: BaseRing, p: int, name: str = "X") -> "CoordinateAlgebra":
        """``k[X]/(X^p)`` with X primitive: the coordinate algebra of α_p."""
        one = base.one
        mult = [[({i + j: one} if i + j < p else {}) for j in range(p)] for i in range(p)]
        unit = [one] + [base.zero] * (p - 1)
        counit = [one] + [base.zero] * (p - 1)
        comult = []
        for k in range(p):
            comult.append({(i, k - i): base.from_int(comb(k, i)) for i in range(k + 1)})
        labels = ["1"] + [name if i == 1 else f"{name}^{i}" for i in range(1, p)]
        return cls(base, labels, mult, unit, counit, comult)

    def tensor(self, other: "CoordinateAlgebra") -> "CoordinateAlgebra":
        R = self.base
        pairs = [(i, j) for i in range(self.rank) for j in range(other.rank)]
        idx = {p: n for n, p in enumerate(pairs)}
        mult = []
        for i, j in pairs:
            row = []
            for k, l in pairs:
                d = {}
                for a, c in self.mult[i][k].items():
                    for b, e in other.mult[j][l].items():
                        d[idx[(a, b)]] = R.mul(c, e)
                row.append(d)
            mult.append(row)
        unit = [R.mul(self.unit[i], other.unit[j]) for i, j in pairs]
        counit = [R.mul(self.counit[i], other.counit[j]) for i, j in pairs]
        comult = []
        for i, j in pairs:
            d = {}
            for (a, b), c in self.comult[i].items():
                for (a2, b2), e in other.comult[j].items():
                    key = (idx[(a, a2)], idx[(b, b2)])
                    d[key] = R.add(d.get(key, R.zero), R.mul(c, e))
            comult.append(d)
        labels = [f"{self.labels[i]}⊗{other.labels[j]}" for i, j in pairs]
        return CoordinateAlgebra(R, labels, mult, unit, counit, comult)

    def mul_matrix(self, coeffs: Sequence[AlgebraElement]) -> list[list[AlgebraElement]]:
        """Matrix over A of multiplication by ``Σ h_i ⊗ coeffs[i]`` on ``H ⊗ A``."""
        A = coeffs[0].parent
        n = self.rank
        M = [[A.zero() for _ in range(n)] for _ in range(n)]
        for i, c in enumerate(coeffs):
            if not c:
                continue
            for j in range(n):
                for k, s in self.mult[i][j].items():
                    M[k][j] = M[k][j] + c.scale(s)
        return M

    def tensor_mul(self, u: Sequence[AlgebraElement], v: Sequence[AlgebraElement]) -> list[AlgebraElement]:
        """Product in ``H ⊗ A`` of two coefficient lists."""
        A = u[0].parent
        out = [A.zero() for _ in range(self.rank)]
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, s in self.mult[i][j].items():
                    out[k] = out[k] + ab.scale(s)
        return out

    def unit_tensor(self, a: AlgebraElement) -> list[AlgebraElement]:
        return [a.scale(u) for u in self.unit]

    def apply_counit(self, coeffs: Sequence[AlgebraElement]) -> AlgebraElement:
        A = coeffs[0].parent
        return linear_combination(A, zip(self.counit, coeffs))

    def format_tensor(self, coeffs: Sequence[AlgebraElement]) -> str:
        terms = []
        for lab, c in zip(self.labels, coeffs):
            if c:
                cs = str(c)
                terms.append(f"{lab}⊗{cs}" if " " not in cs else f"{lab}⊗({cs})")
        return " + ".join(terms) or "0"


# -- actions -----------------------------------------------------------------


class GroupAction:
    """Common interface; subclasses provide ``hopf`` and ``coaction``."""

    algebra: FiniteAlgebra
    hopf: CoordinateAlgebra

    @property
    def order(self) -> int:
        return self.hopf.rank

    def coaction(self, a: AlgebraElement) -> list[AlgebraElement]:
        raise NotImplementedError

    def coaction_matrix(self, a: AlgebraElement) -> list[list[AlgebraElement]]:
        return self.hopf.mul_matrix(self.coaction(a))

    def is_invariant(self, a: AlgebraElement) -> bool:
        return self.coaction(a) == self.hopf.unit_tensor(a)

    def counit_check(self, a: AlgebraElement) -> bool:
        return self.hopf.apply_counit(self.coaction(a)) == a

    def algebra_map_check(self) -> bool:
        """μ*(xy) = μ*(x)μ*(y) on generator pairs and μ*(1) = 1⊗1."""
        A = self.algebra
        H = self.hopf
        if self.coaction(A.one) != H.unit_tensor(A.one):
            return False
        gens = A.gens()
        for i, x in enumerate(gens):
            for y in gens[i:]:
                if self.coaction(x * y) != H.tensor_mul(self.coaction(x), self.coaction(y)):
                    return False
        return True

    def coassociativity_check(self, elements: Sequence[AlgebraElement]) -> bool:
        """(Δ ⊗ 1) μ* = (1 ⊗ μ*) μ* on the given elements."""
        H = self.hopf
        for a in elements:
            co = self.coaction(a)
            lhs: dict[tuple[int, int], AlgebraElement] = {}
            for i, c in enumerate(co):
                for (j, k), s in H.comult[i].items():
                    if c and s:
                        lhs[(j, k)] = lhs.get((j, k), a.parent.zero()) + c.scale(s)
            rhs: dict[tuple[int, int], AlgebraElement] = {}
            for j, c in enumerate(co):
                for k, d in enumerate(self.coaction(c)):
                    if d:
                        rhs[(j, k)] = d
            lhs = {k: v for k, v in lhs.items() if v}
            if lhs != rhs:
                return False
        return True

    def change_base(self, new_algebra: FiniteAlgebra, elem_map: Callable[[AlgebraElement], AlgebraElement],
                    scalar_map: Callable[[Any], Any]) -> "GroupAction":
        raise NotImplementedError

    def describe(self) -> dict:
        raise NotImplementedError


class ConstantAction(GroupAction):
    def __init__(self, group: ConstantGroup, algebra: FiniteAlgebra, automorphisms: Sequence[AlgebraAutomorphism],
                 check: bool = True):
        if len(automorphisms) != group.order:
            raise ActionError("need one automorphism per group element")
        self.group = group
        self.algebra = algebra
        self.auts = list(automorphisms)
        self.hopf = CoordinateAlgebra.functions_on(algebra.base, group)
        if check:
            self.verify_homomorphism()

    def verify_homomorphism(self) -> None:
        G = self.group
        A = self.algebra
        ident = AlgebraAutomorphism.identity(A)
        if self.auts[0].images != ident.images:
            raise ActionError("the identity element must act trivially")
        for g in range(G.order):
            for h in range(G.order):
                gh = G.table[g][h]
                for name, img in self.auts[h].images.items():
                    if self.auts[g].apply(img) != self.auts[gh].images[name]:
                        raise ActionError(
                            f"image({G.labels[g]}*{G.labels[h]}) != image({G.labels[g]})∘image({G.labels[h]}) on {name}"
                        )

    def act(self, g: int, a: AlgebraElement) -> AlgebraElement:
        return self.auts[g].apply(a)

    def coaction(self, a):
        G = self.group
        return [self.auts[G.inverse[g]].apply(a) for g in range(G.order)]

    def orbit_char_poly(self, a: AlgebraElement) -> UniPoly:
        """Π_g (T - g(a)), the brute-force oracle for the determinant path."""
        A = self.algebra
        out = UniPoly(A, [A.one])
        for g in range(self.group.order):
            out = out * UniPoly(A, [-self.act(g, a), A.one])
        return out

    def orbit_norm(self, a: AlgebraElement) -> AlgebraElement:
        out = self.algebra.one
        for g in range(self.group.order):
            out = out * self.act(g, a)
        return out

    def kernel_of_action(self) -> tuple[int, ...]:
        ident = AlgebraAutomorphism.identity(self.algebra)
        return tuple(g for g in range(self.group.order) if self.auts[g].images == ident.images)

    def is_faithful(self) -> bool:
        return self.kernel_of_action() == (0,)

    def restrict(self, H: Sequence[int]) -> "ConstantAction":
        """The action of a subgroup H (relabelled in the order given)."""
        G = self.group
        H = list(H)
        pos = {g: i for i, g in enumerate(H)}
        table = [[pos[G.table[a][b]] for b in H] for a in H]
        sub = ConstantGroup([G.labels[h] for h in H], table)
        return ConstantAction(sub, self.algebra, [self.auts[h] for h in H], check=False)

    def quotient_action(self, H: Sequence[int]) -> "ConstantAction":
        """The action of G/H, for a normal subgroup H acting trivially."""
        G = self.group
        ident = AlgebraAutomorphism.identity(self.algebra)
        for h in H:
            if self.auts[h].images != ident.images:
                raise ActionError(f"{G.labels[h]} does not act trivially")
        Q, proj = G.quotient(H)
        reps = {}
        for g in range(G.order):
            reps.setdefault(proj[g], g)
        return ConstantAction(Q, self.algebra, [self.auts[reps[q]] for q in range(Q.order)], check=False)

    def change_base(self, new_algebra, elem_map, scalar_map):
        auts = [
            AlgebraAutomorphism(new_algebra, {n: elem_map(v) for n, v in aut.images.items()}, check=False)
            for aut in self.auts
        ]
        out = ConstantAction(self.group, new_algebra, auts, check=False)
        return out

    def describe(self):
        return {
            "kind": "constant",
            "order": self.group.order,
            "generators": {
                self.group.labels[g]: {k: str(v) for k, v in self.auts[g].images.items()} for g in self.group.generators
            },
        }


def build_constant_action(group: ConstantGroup, algebra: FiniteAlgebra,
                          generator_images: Mapping[str | int, Mapping[str, Any]]) -> ConstantAction:
    """Extend images of generating elements to the whole group and verify."""
    gens = {}
    for g, imgs in generator_images.items():
        gens[group.element(g)] = AlgebraAutomorphism(algebra, imgs)
    if group.subgroup(list(gens)) != tuple(range(group.order)):
        raise ActionError("the given elements do not generate the group")
    auts: dict[int, AlgebraAutomorphism] = {0: AlgebraAutomorphism.identity(algebra)}
    frontier = [0]
    while frontier:
        x = frontier.pop(0)
        for s, aut in sorted(gens.items()):
            y = group.table[x][s]
            if y not in auts:
                auts[y] = auts[x].compose(aut)
                frontier.append(y)
    return ConstantAction(group, algebra, [auts[g] for g in range(group.order)])


class HopfAction(GroupAction):
    """An infinitesimal group scheme acting through a p-nilpotent derivation.

    The coordinate algebra is ``k[X]/(X^p)`` and ``μ*(a) = Σ_i X^i ⊗ D^i(a)/i!``.
    """

    def __init__(self, algebra: NormalFormAlgebra, derivation: Derivation, p: int):
        self.algebra = algebra
        self.derivation = derivation
        self.p = p
        self.hopf = CoordinateAlgebra.truncated_polynomial(algebra.base, p)
        R = algebra.base
        self._inv_fact = [R.inv(R.from_int(factorial(i))) for i in range(p)]

    def coaction(self, a):
        out = []
        cur = a
        for i in range(self.p):
            out.append(cur.scale(self._inv_fact[i]))
            cur = self.derivation.apply(cur)
        return out

    def change_base(self, new_algebra, elem_map, scalar_map):
        D = Derivation(new_algebra, {k: elem_map(v) for k, v in self.derivation.images.items()})
        return HopfAction(new_algebra, D, self.p)

    def describe(self):
        return {"kind": "alpha_p", "p": self.p, "derivation": {k: str(v) for k, v in self.derivation.images.items()}}


def _prime_characteristic(R: BaseRing) -> int:
    from .rings import _is_prime

    p = R.characteristic
    if not p or not _is_prime(p):
        raise StructuralError(f"α_p actions need a base of prime characteristic, got {R.name}")
    return p


def build_alpha_p_action(algebra: NormalFormAlgebra, derivation: Derivation | Mapping[str, Any]) -> HopfAction:
    if not isinstance(derivation, Derivation):
        derivation = Derivation(algebra, derivation)
    p = _prime_characteristic(algebra.base)
    if derivation.nilpotency_index(p) is None:
        raise ActionError("derivation is not p-nilpotent")
    act = HopfAction(algebra, derivation, p)
    for rel in algebra.relations:
        # the relation monomial is zero in A, so its Leibniz image must vanish too
        if _formal_relation_image(algebra, derivation, rel):
            raise ActionError(f"derivation does not preserve the relation {format_monomial(rel, algebra.variables)}")
    if not act.algebra_map_check():
        raise ActionError("coaction is not multiplicative on generator pairs")
    return act


def _formal_relation_image(A: NormalFormAlgebra, D: Derivation, rel) -> AlgebraElement:
    """Leibniz image of a relation monomial computed from its factors."""
    terms = []
    for k, e in enumerate(rel):
        if e:
            rest = list(rel)
            rest[k] -= 1
            terms.append((A.base.from_int(e), A.monomial(rest) * D.images[A.variables[k]]))
    return linear_combination(A, terms)


class ProductAction(GroupAction):
    """The direct product of an infinitesimal action and a constant action."""

    def __init__(self, infinitesimal: GroupAction, etale: ConstantAction):
        if infinitesimal.algebra != etale.algebra:
            raise ActionError("both factors must act on the same algebra")
        self.algebra = etale.algebra
        self.infinitesimal = infinitesimal
        self.etale = etale
        self.hopf = infinitesimal.hopf.tensor(etale.hopf)
        A = self.algebra
        for i in range(A.dim):
            b = A.basis_element(i)
            left = [etale.coaction(c) for c in infinitesimal.coaction(b)]
            right = [infinitesimal.coaction(c) for c in etale.coaction(b)]
            for x in range(infinitesimal.order):
                for y in range(etale.order):
                    if left[x][y] != right[y][x]:
                        raise ActionError("the two factors do not commute")

    def coaction(self, a):
        out = []
        for c in self.infinitesimal.coaction(a):
            out.extend(self.etale.coaction(c))
        return out

    def change_base(self, new_algebra, elem_map, scalar_map):
        return ProductAction(
            self.infinitesimal.change_base(new_algebra, elem_map, scalar_map),
            self.etale.change_base(new_algebra, elem_map, scalar_map),
        )

    def describe(self):
        return {"kind": "product", "factors": [self.infinitesimal.describe(), self.etale.describe()]}


# -- norms and symmetric functions -----------------------------------------------------


def norm(action: GroupAction, a: AlgebraElement) -> AlgebraElement:
    """Determinant of multiplication by μ*(a) on H ⊗ A."""
    A = action.algebra
    return determinant(action.coaction_matrix(a), A.one, A.zero())


def char_poly(action: GroupAction, a: AlgebraElement) -> UniPoly:
    """χ_a(T) = N(T - a), as the characteristic polynomial of the multiplication matrix."""
    A = action.algebra
    coeffs = berkowitz(action.coaction_matrix(a), A.one, A.zero())
    return UniPoly(A, list(reversed(coeffs)))


@dataclass
class SigmaVector:
    action: GroupAction
    element: AlgebraElement
    sigmas: list

    def char_poly(self) -> UniPoly:
        A = self.element.parent
        n = len(self.sigmas)
        coeffs = [A.zero() for _ in range(n + 1)]
        coeffs[n] = A.one
        for i, s in enumerate(self.sigmas, start=1):
            coeffs[n - i] = s if i % 2 == 0 else -s
        return UniPoly(A, coeffs)

    def __getitem__(self, i: int) -> AlgebraElement:
        """σ_i for 1 <= i <= n."""
        return self.sigmas[i - 1]


def sigma(action: GroupAction, a: AlgebraElement) -> SigmaVector:
    chi = char_poly(action, a)
    n = action.order
    sig = []
    for i in range(1, n + 1):
        c = chi.coefficient(n - i)
        sig.append(c if i % 2 == 0 else -c)
    return SigmaVector(action, a, sig)


def cayley_hamilton_check(action: GroupAction, a: AlgebraElement) -> bool:
    return not char_poly(action, a)(a)


def is_invariant(action: GroupAction, a: AlgebraElement) -> bool:
    return action.is_invariant(a)


def etale_power_identity_check(action: GroupAction, a: AlgebraElement) -> bool:
    """χ_G = χ_{G_red}^{p^r} for a product of an infinitesimal and a constant action."""
    A = action.algebra
    if isinstance(action, ProductAction):
        reduced = char_poly(action.etale, a)
        pr = action.infinitesimal.order
    elif isinstance(action, HopfAction):
        reduced = UniPoly(A, [-a, A.one])
        pr = action.order
    elif isinstance(action, ConstantAction):
        reduced = char_poly(action, a)
        pr = 1
    else:
        raise ActionError("unsupported composite shape")
    return char_poly(action, a) == reduced**pr
