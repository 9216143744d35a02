from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modisom import linalg
from modisom.errors import InputError


def enumerate_span(p, rows, n):
    """All vectors in the span of ``rows`` (brute force)."""
    rows = np.asarray(rows, dtype=np.int64).reshape(-1, n)
    out = set()
    for coeffs in itertools.product(range(p), repeat=rows.shape[0]):
        v = (np.asarray(coeffs, dtype=np.int64) @ rows) % p if rows.shape[0] else np.zeros(n, dtype=np.int64)
        out.add(tuple(int(x) for x in v))
    return out


matrices = st.integers(min_value=0, max_value=3).flatmap(
    lambda r: st.lists(st.lists(st.integers(0, 2), min_size=4, max_size=4), min_size=r, max_size=r)
)


@settings(max_examples=60, deadline=None)
@given(matrices, matrices)
def test_sum_intersection_dimension_formula(a, b):
    u = linalg.span(3, 4, np.array(a, dtype=np.int64).reshape(-1, 4))
    v = linalg.span(3, 4, np.array(b, dtype=np.int64).reshape(-1, 4))
    s = linalg.subspace_sum(u, v)
    i = linalg.subspace_intersect(u, v)
    assert s.dim + i.dim == u.dim + v.dim
    su, sv = enumerate_span(3, a, 4), enumerate_span(3, b, 4)
    assert enumerate_span(3, i.basis, 4) == su & sv
    assert len(enumerate_span(3, s.basis, 4)) == 3**s.dim == len({tuple((np.array(x) + np.array(y)) % 3) for x in su for y in sv})


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_span_matches_enumeration(a):
    u = linalg.span(3, 4, np.array(a, dtype=np.int64).reshape(-1, 4))
    assert enumerate_span(3, u.basis, 4) == enumerate_span(3, a, 4)
    for v in itertools.product(range(3), repeat=4):
        assert (v in u) == (v in enumerate_span(3, a, 4))


def test_rref_is_canonical():
    rng = np.random.default_rng(1)
    m = rng.integers(0, 5, size=(6, 9))
    r1, k = linalg.rref(m, 5)
    r2, _ = linalg.rref(m[::-1], 5)
    assert np.array_equal(r1, r2)
    assert k == linalg.rank(m.T, 5)


def test_chunked_span_equals_plain_span():
    rng = np.random.default_rng(2)
    rows = rng.integers(0, 3, size=(200, 40))
    rows[:, 5] = 0
    assert linalg.span(3, 40, rows, chunk=7) == linalg.span(3, 40, rows)


def test_inverse_and_coordinates():
    rng = np.random.default_rng(3)
    while True:
        m = rng.integers(0, 7, size=(5, 5))
        if linalg.rank(m, 7) == 5:
            break
    inv = linalg.inverse_mod(m, 7)
    assert np.array_equal(linalg.matmul_mod(m, inv, 7), np.eye(5, dtype=np.int64))
    u = linalg.span(7, 5, m[:3])
    c = linalg.coordinates(u, m[:3])
    assert np.array_equal(linalg.matmul_mod(c, u.basis, 7), m[:3] % 7)


def test_independent_rows_and_subset():
    m = np.array([[1, 0, 0], [2, 0, 0], [0, 1, 0], [1, 1, 0]])
    assert linalg.independent_rows(m, 3) == [0, 2]
    small = linalg.span(3, 3, m[:2])
    big = linalg.span(3, 3, m)
    assert small <= big and not big <= small
    assert linalg.zero_subspace(3, 3) <= small
    assert linalg.full_space(3, 3).dim == 3


def test_shape_errors():
    with pytest.raises(InputError):
        linalg.span(3, 4, np.zeros((2, 5), dtype=np.int64))
    with pytest.raises(InputError):
        linalg.subspace_sum(linalg.zero_subspace(3, 4), linalg.zero_subspace(5, 4))


def test_large_prime_product_is_exact():
    p = 2**31 - 1
    a = np.full((3, 3), p - 1, dtype=np.int64)
    assert np.array_equal(linalg.matmul_mod(a, a, p), np.full((3, 3), 3 % p))
