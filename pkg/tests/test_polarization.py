from __future__ import annotations

import itertools
from math import prod

import pytest
from hypothesis import given, strategies as st

from quotlab import polarization as pol
from quotlab.errors import StructuralError


def polarization_by_subsets(alpha, families):
    """Sum over disjoint index sets S_1, ..., S_q with |S_l| = alpha_l."""
    n = len(families[0])

    def rec(ell, free):
        if ell == len(alpha):
            return [1]
        out = []
        for S in itertools.combinations(sorted(free), alpha[ell]):
            head = prod(families[ell][i] for i in S)
            for rest in rec(ell + 1, free - set(S)):
                out.append(head * rest)
        return out

    return sum(rec(0, set(range(n))))


@st.composite
def index_and_assignment(draw):
    n = draw(st.integers(1, 4))
    q = draw(st.integers(1, 3))
    alpha = draw(st.sampled_from(pol.valid_indices(n, q)))
    families = draw(st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=q, max_size=q))
    return alpha, n, q, families


@given(index_and_assignment())
def test_partial_polarization_matches_subset_sum(data):
    alpha, n, q, families = data
    assert pol.partial_polarization(alpha, n, q).evaluate(families) == polarization_by_subsets(alpha, families)


@given(index_and_assignment())
def test_expression_evaluates_to_polarization(data):
    alpha, n, q, families = data
    E = pol.express_in_power_products(alpha, n, q)
    assert E.integral()
    assert E.evaluate(families) == polarization_by_subsets(alpha, families)
    assert pol.verify_identity(E, alpha, families)


@pytest.mark.parametrize(
    "alpha,n,q,text",
    [
        ((1, 1), 2, 2, "s_1(x)*s_1(y) - s_1(xy)"),
        ((2, 1), 3, 2, "s_2(x)*s_1(y) - s_1(x)*s_1(xy) + s_1(x^2y)"),
        ((1, 1, 1), 3, 3, "s_1(x)*s_1(y)*s_1(z) - s_1(z)*s_1(xy) - s_1(y)*s_1(xz) - s_1(x)*s_1(yz) + 2*s_1(xyz)"),
    ],
)
def test_small_expressions(alpha, n, q, text):
    E = pol.express_in_power_products(alpha, n, q)
    assert str(E) == text
    assert pol.verify_symbolically(E, alpha)


def test_polarization_printing():
    assert str(pol.partial_polarization((1, 1), 2, 2)) == "x1*y2 + x2*y1"


def test_corrupted_expression_is_rejected():
    E = pol.express_in_power_products((2, 1), 3, 2)
    bad = pol.corrupted(E)
    assert not pol.verify_symbolically(bad, (2, 1))
    assert not pol.verify_identity(bad, (2, 1), [[1, 2, 3], [5, 7, 11]])


def test_index_sum_may_not_exceed_n():
    with pytest.raises(StructuralError):
        pol.partial_polarization((3, 1), 3, 2)


def test_valid_indices_count():
    # compositions of at most n into q parts
    assert len(pol.valid_indices(3, 2)) == 10
    assert len(pol.valid_indices(4, 3)) == 35


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("q", [1, 2, 3])
def test_sum_identities(n, q):
    for k in range(n + 1):
        assert pol.sum_expansion(k, q, n).holds


def test_sum_expansion_term_count():
    assert len(pol.sum_expansion(2, 2, 3).lhs) == 12


def test_sweep_exponent_bound():
    rep = pol.appendix_sweep(4, 3)
    assert rep.ok
    assert rep.describe()["max_exponent"] == 3


def test_symbolic_algebra():
    x = pol.SymExpr.symbol(2, 2, 1, (1, 0))
    y = pol.SymExpr.symbol(2, 2, 1, (0, 1))
    assert str(x * y - y * x) == "0"
    assert (x + y) * (x - y) == x * x - y * y
