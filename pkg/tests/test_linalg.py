from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quotlab.linalg import (
    Span,
    base_determinant,
    bareiss_determinant,
    berkowitz,
    cofactor_determinant,
    determinant,
    howell_form,
    kernel,
    mat_vec,
)
from quotlab.rings import GaloisField, PrimeField, ResidueRing

small_ints = st.integers(min_value=-6, max_value=6)


def square(n):
    return st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=n, max_size=n)


@given(st.integers(min_value=1, max_value=4).flatmap(square))
def test_determinant_paths_agree_over_integers(M):
    d = cofactor_determinant(M, 1, 0)
    assert determinant(M, 1, 0) == d
    assert bareiss_determinant(M) == d
    assert bareiss_determinant([[Fraction(x) for x in row] for row in M]) == d


@given(st.integers(min_value=1, max_value=4).flatmap(square))
def test_berkowitz_constant_term_is_signed_determinant(M):
    n = len(M)
    cp = berkowitz(M, 1, 0)
    assert cp[0] == 1
    assert cp[-1] == (-1) ** n * cofactor_determinant(M, 1, 0)
    assert cp[1] == -sum(M[i][i] for i in range(n))


def test_berkowitz_two_by_two():
    assert berkowitz([[1, 2], [3, 4]], 1, 0) == [1, -5, -2]


def _all_vectors(R, n):
    return itertools.product(R.elements(), repeat=n)


@pytest.mark.parametrize("n", [4, 8, 9])
def test_kernel_matches_brute_force_over_chain_rings(n):
    R = ResidueRing(n)
    rng = random.Random(n)
    for _ in range(5):
        M = [[R.from_int(rng.randrange(n)) for _ in range(3)] for _ in range(2)]
        gens = kernel(R, M, 3)
        brute = [list(v) for v in _all_vectors(R, 3) if not any(mat_vec(R, M, v))]
        S = Span(R, 3, gens)
        assert all(S.contains(v) for v in brute)
        assert all(not any(mat_vec(R, M, g)) for g in gens)


@given(st.lists(st.lists(st.integers(0, 7), min_size=3, max_size=3), max_size=4))
def test_span_length_counts_elements(rows):
    R = ResidueRing(8)
    S = Span(R, 3, rows)
    members = {tuple(v) for v in _all_vectors(R, 3) if S.contains(v)}
    assert len(members) == 2 ** S.length


@given(st.lists(st.lists(st.integers(0, 8), min_size=3, max_size=3), min_size=1, max_size=4), st.data())
def test_solve_reconstructs_members(rows, data):
    R = ResidueRing(9)
    S = Span(R, 3, rows)
    coeffs = data.draw(st.lists(st.integers(0, 8), min_size=len(rows), max_size=len(rows)))
    target = [sum(c * r[j] for c, r in zip(coeffs, rows)) % 9 for j in range(3)]
    sol = S.solve(target)
    assert sol is not None
    assert [sum(c * r[j] for c, r in zip(sol, S.generators)) % 9 for j in range(3)] == target
    for syz in S.syzygies():
        assert all(sum(c * r[j] for c, r in zip(syz, S.generators)) % 9 == 0 for j in range(3))


def test_howell_form_over_z4():
    R = ResidueRing(4)
    form = howell_form(R, [[2, 2]], 2)
    S = Span(R, 2, [[2, 2]])
    assert S.length == 1
    assert S.contains([2, 2]) and not S.contains([2, 0])
    assert form


def test_base_determinant_over_galois_field():
    F = GaloisField(2, 2)
    z = F.gen()
    M = [[z, F.one], [F.one, z]]
    assert base_determinant(F, M) == F.add(F.mul(z, z), F.one)


def test_span_equality_ignores_generating_set():
    R = PrimeField(5)
    assert Span(R, 2, [[1, 1], [0, 1]]).same_as(Span(R, 2, [[1, 0], [0, 3]]))
