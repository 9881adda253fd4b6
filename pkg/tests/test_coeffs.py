"""
Test coefficients, formal sums and F2 linear algebra
"""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from app.core.exceptions import ChainComplexError, InvalidInputError
from app.services.coeffs import (
    ONE,
    ZERO,
    F2Matrix,
    LinearCombination,
    Monomial,
    Polynomial,
    chain_complex_dims,
    complex_homology_dims,
    f2_rank,
    in_span,
    lc_rank,
)

monomials = st.dictionaries(st.integers(1, 3), st.integers(0, 2), max_size=3).map(Monomial.of)
polynomials = st.frozensets(monomials, max_size=4).map(Polynomial)
sums = st.dictionaries(st.sampled_from("abcd"), polynomials, max_size=4).map(LinearCombination)


@given(polynomials, polynomials, polynomials)
def test_polynomial_ring_axioms(p: Polynomial, q: Polynomial, r: Polynomial):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p * ONE == p
    assert p + ZERO == p


@given(polynomials)
def test_characteristic_two(p: Polynomial):
    assert (p + p).is_zero


@given(sums, sums)
def test_linear_combination_addition(a: LinearCombination[str], b: LinearCombination[str]):
    assert a + b == b + a
    assert (a + a).is_zero
    assert (a + b) + b == a


def test_from_keys_cancels_pairs():
    assert LinearCombination.from_keys(["a", "b", "a"]) == LinearCombination.basis("b")


def test_map_keys_drops_none():
    lc = LinearCombination.from_keys(["a", "b"])
    assert lc.map_keys(lambda k: None if k == "a" else k.upper()) == LinearCombination.basis("B")


def test_scale_by_u():
    lc = LinearCombination.basis("x").scale(Polynomial.u(1))
    assert lc.coefficient("x") == Polynomial.u(1)
    assert str(lc) == "U1*x"


def test_monomial_rejects_bad_index():
    with pytest.raises(InvalidInputError):
        Monomial.of({0: 1})
    with pytest.raises(InvalidInputError):
        Monomial.of({1: -1})


def test_monomial_rejects_index_beyond_the_ring():
    with pytest.raises(InvalidInputError):
        Monomial.of({3: 1}, variables=2)
    with pytest.raises(InvalidInputError):
        Polynomial.u(4, variables=3)
    assert Monomial.of({2: 1}, variables=2).degree == 1
    # the unbounded form stays available for ring-free arithmetic
    assert Monomial.of({7: 1}).exponent(7) == 1


def test_monomial_degree():
    m = Monomial.of({1: 2, 3: 1})
    assert m.degree == 3
    assert str(m) == "U1^2*U3"


def test_f2_rank():
    assert f2_rank(F2Matrix.identity(4)) == 4
    assert f2_rank(F2Matrix.from_rows([[1, 1, 0], [0, 1, 1], [1, 0, 1]])) == 2
    assert f2_rank(F2Matrix(0, 3)) == 0


def test_matrix_entry_bounds():
    with pytest.raises(InvalidInputError):
        F2Matrix(2, 2, frozenset({(2, 0)}))


def test_complex_homology_of_an_interval():
    # one edge between two vertices: H_0 = 1, H_1 = 0
    boundary = F2Matrix.from_rows([[1], [1]])
    assert complex_homology_dims([F2Matrix(0, 2), boundary]) == [1, 0]


def test_chain_complex_dims():
    basis = {0: ["v", "w"], 1: ["e"]}
    diff = {"e": LinearCombination.from_keys(["v", "w"])}
    dims = chain_complex_dims(basis, lambda key: diff.get(key, LinearCombination.zero()))
    assert dims == {0: 1, 1: 0}


def test_chain_complex_rejects_nonzero_square():
    basis = {0: ["a"], 1: ["b"], 2: ["c"]}
    diff = {"c": LinearCombination.basis("b"), "b": LinearCombination.basis("a")}
    with pytest.raises(ChainComplexError):
        chain_complex_dims(basis, lambda key: diff.get(key, LinearCombination.zero()))


def test_chain_complex_rejects_u_coefficients():
    basis = {0: ["a"], 1: ["b"]}
    diff = {"b": LinearCombination.basis("a", Polynomial.u(1))}
    with pytest.raises(ChainComplexError):
        chain_complex_dims(basis, lambda key: diff.get(key, LinearCombination.zero()))


def test_span():
    a, b = LinearCombination.from_keys(["x", "y"]), LinearCombination.from_keys(["y", "z"])
    assert lc_rank([a, b]) == 2
    assert in_span(LinearCombination.from_keys(["x", "z"]), [a, b])
    assert not in_span(LinearCombination.basis("x"), [a, b])
