"""Sparse GF(2) polynomials: mask semantics, vectorized signs, sampling."""
import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from qgalab.gf2poly import (
    SparsePolyF2,
    monomial_count,
    poly_from_json,
    poly_to_json,
    sample_sparse_poly,
)
from qgalab.rng import stream


def test_validation():
    with pytest.raises(ValueError):
        SparsePolyF2(0, frozenset(), 1, 1)
    with pytest.raises(ValueError):
        SparsePolyF2(3, frozenset(), 0, 1)
    with pytest.raises(ValueError):
        SparsePolyF2(3, frozenset(), 4, 1)
    with pytest.raises(ValueError):
        SparsePolyF2(3, frozenset(), 1, 0)
    with pytest.raises(ValueError):
        SparsePolyF2(3, frozenset({1, 2, 4}), 3, 2)  # 3 terms over bound 2
    with pytest.raises(ValueError):
        SparsePolyF2(3, frozenset({0}), 1, 1)  # constant term excluded
    with pytest.raises(ValueError):
        SparsePolyF2(3, frozenset({8}), 3, 1)  # mask out of range
    with pytest.raises(ValueError):
        SparsePolyF2(3, frozenset({7}), 2, 1)  # degree 3 over bound 2


def test_empty_polynomial_is_zero():
    poly = SparsePolyF2(2, frozenset(), 1, 1)
    assert all(poly.evaluate(a) == 0 for a in range(4))
    assert np.array_equal(poly.sign_vector(), np.ones(4))


def test_evaluate_mask_semantics():
    # f = x1 x2 + x3 on three variables: masks 0b011 and 0b100
    poly = SparsePolyF2(3, frozenset({0b011, 0b100}), 2, 2)
    assert poly.evaluate(0b000) == 0
    assert poly.evaluate(0b011) == 1
    assert poly.evaluate(0b100) == 1
    assert poly.evaluate(0b111) == 0  # both monomials fire, xor cancels
    with pytest.raises(ValueError):
        poly.evaluate(8)
    with pytest.raises(ValueError):
        poly.evaluate(-1)


def test_vanishes_at_zero_always(rng):
    for _ in range(20):
        poly = sample_sparse_poly(5, 3, 6, rng)
        assert poly.evaluate(0) == 0
        assert poly.sign_vector()[0] == 1.0


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_evaluate_matches_reference(data):
    num_vars = data.draw(st.integers(min_value=1, max_value=6))
    masks = data.draw(
        st.sets(st.integers(min_value=1, max_value=2**num_vars - 1), max_size=8)
    )
    degree = max((m.bit_count() for m in masks), default=1)
    poly = SparsePolyF2(num_vars, frozenset(masks), degree, max(len(masks), 1))
    for assignment in range(2**num_vars):
        bits = [(assignment >> j) & 1 for j in range(num_vars)]
        assert poly.evaluate(assignment) == oracles.poly_eval_reference(poly, bits)


def test_sign_vector_matches_per_index_evaluation(rng):
    # sign at amplitude index z uses qubit j (index bit n-1-j) as variable x_{j+1}
    for _ in range(10):
        n = 4
        poly = sample_sparse_poly(n, 3, 5, rng)
        signs = poly.sign_vector()
        for z in range(2**n):
            bits = [(z >> (n - 1 - j)) & 1 for j in range(n)]
            expected = -1.0 if oracles.poly_eval_reference(poly, bits) else 1.0
            assert signs[z] == expected


def test_sign_vector_is_cached_and_read_only(rng):
    poly = sample_sparse_poly(4, 2, 4, rng)
    first = poly.sign_vector()
    assert poly.sign_vector() is first
    with pytest.raises(ValueError):
        first[0] = 5.0


def test_monomial_count():
    assert monomial_count(3, 1) == 3
    assert monomial_count(3, 2) == 6
    assert monomial_count(3, 3) == 7
    assert monomial_count(5, 2) == 15
    # brute force cross-check
    brute = sum(1 for m in range(1, 2**5) if m.bit_count() <= 2)
    assert monomial_count(5, 2) == brute


def test_sampler_respects_bounds(rng):
    for _ in range(25):
        poly = sample_sparse_poly(5, 2, 7, rng)
        assert 1 <= len(poly.terms) <= 7
        assert all(1 <= m < 32 and m.bit_count() <= 2 for m in poly.terms)


def test_sampler_is_deterministic():
    a = sample_sparse_poly(6, 3, 8, stream(9, "poly"))
    b = sample_sparse_poly(6, 3, 8, stream(9, "poly"))
    assert a == b


def test_sampler_is_uniform_over_admissible_masks(rng):
    # term_bound=1 draws a single monomial; its law is uniform on the 6
    # admissible masks at (v=3, d=2)
    counts = {}
    draws = 6000
    for _ in range(draws):
        (mask,) = sample_sparse_poly(3, 2, 1, rng).terms
        counts[mask] = counts.get(mask, 0) + 1
    assert set(counts) == {1, 2, 3, 4, 5, 6}
    from scipy.stats import chisquare

    _, p = chisquare(list(counts.values()))
    assert p > 0.01


def test_sampler_validation(rng):
    with pytest.raises(ValueError):
        sample_sparse_poly(3, 0, 2, rng)
    with pytest.raises(ValueError):
        sample_sparse_poly(3, 4, 2, rng)
    with pytest.raises(ValueError):
        sample_sparse_poly(3, 2, 0, rng)


def test_json_round_trip(rng):
    poly = sample_sparse_poly(6, 3, 9, rng)
    obj = json.loads(json.dumps(poly_to_json(poly)))
    assert obj["terms"] == sorted(obj["terms"], key=lambda h: int(h, 16))
    back = poly_from_json(obj, 6)
    assert back == poly
