import itertools
import random
from fractions import Fraction
from functools import reduce
from math import gcd, isqrt

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from spherepoly import linalg
from spherepoly.errors import DomainError

import corpus

small_ints = st.integers(min_value=-6, max_value=6)


def square(n):
    return st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=n, max_size=n)


def leibniz_det(A):
    n = len(A)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inv % 2 else 1
        for i in range(n):
            term *= A[i][perm[i]]
        total += term
    return total


def brute_minors_gcd(C):
    k, L = len(C), len(C[0])
    return reduce(gcd, (abs(leibniz_det([[row[c] for c in cols] for row in C])) for cols in itertools.combinations(range(L), k)), 0)


@given(st.integers(1, 4).flatmap(square))
def test_det_matches_leibniz(A):
    assert linalg.det(A) == leibniz_det(A)


@given(st.integers(1, 4).flatmap(square))
def test_det_with_rational_entries(A):
    scaled = [[Fraction(x, 3) for x in r] for r in A]
    assert linalg.det(scaled) == Fraction(leibniz_det(A), 3 ** len(A))


@given(st.integers(1, 4).flatmap(square))
def test_leading_minors(A):
    S = [[A[i][j] + A[j][i] for j in range(len(A))] for i in range(len(A))]
    minors = linalg.leading_principal_minors(S)
    for k, m in enumerate(minors, 1):
        assert m == leibniz_det([r[:k] for r in S[:k]])
    if len(minors) < len(S):
        assert minors[-1] == 0


@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_rank_and_kernel(r, c, data):
    A = data.draw(st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=r, max_size=r))
    rk = linalg.rank(A)
    assert rk == np.linalg.matrix_rank(np.array(A, dtype=float))
    ker = linalg.kernel_basis(A, c)
    assert len(ker) == c - rk
    for k in ker:
        assert linalg.matvec(A, k) == [0] * r


@given(st.integers(1, 3), st.integers(2, 5), st.data())
def test_minors_gcd_matches_brute_force(k, L, data):
    if k > L:
        k = L
    C = data.draw(st.lists(st.lists(small_ints, min_size=L, max_size=L), min_size=k, max_size=k))
    if linalg.rank(C) < k:
        return
    assert linalg.minors_gcd(C) == brute_minors_gcd(C)


def test_hnf_is_canonical_under_unimodular_change():
    rng = random.Random(11)
    for _ in range(30):
        n, L = rng.randint(1, 4), rng.randint(4, 6)
        C = corpus.full_rank_vectors(rng, n, L, 5)
        U = corpus.unimodular(rng, n)
        C2 = [[sum(U[i][t] * C[t][j] for t in range(n)) for j in range(L)] for i in range(n)]
        H = linalg.hnf(C)
        assert H == linalg.hnf(C2)
        # row-echelon with positive pivots and reduced entries above them
        pivots = [next(j for j, x in enumerate(r) if x) for r in H]
        assert pivots == sorted(pivots) and len(set(pivots)) == len(pivots)
        for i, p in enumerate(pivots):
            assert H[i][p] > 0
            assert all(0 <= H[t][p] < H[i][p] for t in range(i))
        # same lattice both ways
        lat = linalg.IntegerLattice(L, tuple(tuple(r) for r in H))
        assert all(lat.contains(r) for r in C)
        lat2 = linalg.IntegerLattice(L, tuple(tuple(r) for r in C))
        assert all(lat2.contains(r) for r in H)


def test_hnf_drops_dependent_rows():
    assert linalg.hnf([[2, 4], [1, 2], [3, 6]]) == [[1, 2]]
    assert linalg.hnf([[0, 0]]) == []


def test_integer_kernel_is_saturated():
    rng = random.Random(5)
    for _ in range(30):
        r, c = rng.randint(1, 3), rng.randint(4, 6)
        A = corpus.int_matrix(rng, r, c, 6)
        K = linalg.integer_kernel(A, c)
        assert len(K) == c - linalg.rank(A)
        for k in K:
            assert all(isinstance(x, int) for x in k)
            assert linalg.matvec(A, k) == [0] * r
        if K:
            assert linalg.minors_gcd(K) == 1


def test_saturation_of_rational_span():
    lat = linalg.integer_lattice_basis([[Fraction(1, 2), Fraction(1, 2), 0], [0, 2, 2]])
    # V = span{(1,1,0), (0,1,1)}; V ∩ Z^3 is generated by those two vectors
    assert lat.same_lattice(linalg.IntegerLattice(3, ((1, 1, 0), (0, 1, 1))))
    assert lat.contains([1, 2, 1]) and not lat.contains([1, 0, 0])


def test_lll_reduces_and_preserves_lattice():
    rng = random.Random(2)
    delta = Fraction(3, 4)
    for _ in range(25):
        n, L = rng.randint(2, 4), rng.randint(4, 6)
        C = corpus.full_rank_vectors(rng, n, L, 30)
        lat = linalg.IntegerLattice(L, tuple(tuple(r) for r in C))
        red = linalg.lll_reduce(lat, delta)
        assert red.hnf() == lat.hnf()
        norms, mu = linalg.gram_schmidt(red.basis)
        for i in range(n):
            for j in range(i):
                assert abs(mu[i][j]) <= Fraction(1, 2)
        for k in range(1, n):
            assert norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]


def box_scan(lat, bound):
    out = set()
    for v in itertools.product(range(-bound, bound + 1), repeat=lat.dim):
        if any(v) and lat.contains(v):
            out.add(linalg.canonical_sign(v))
    return sorted(out)


def test_enumeration_matches_box_scan():
    rng = random.Random(9)
    for _ in range(12):
        L = rng.randint(2, 4)
        n = rng.randint(1, L)
        lat = linalg.integer_lattice_basis(corpus.full_rank_vectors(rng, n, L, 4))
        for bound in (1, 2, 3):
            assert linalg.enumerate_short_vectors(lat, bound) == box_scan(lat, bound)


def test_enumeration_cap():
    from spherepoly.errors import SearchCapExceeded

    lat = linalg.IntegerLattice(4, tuple(tuple(int(i == j) for j in range(4)) for i in range(4)))
    with pytest.raises(SearchCapExceeded):
        linalg.enumerate_short_vectors(lat, 5, max_nodes=50)


def test_primitivize_and_sign():
    w, scale = linalg.primitivize([Fraction(-2, 3), Fraction(4, 3), 0])
    assert w == [1, -2, 0]
    assert [scale * x for x in w] == [Fraction(-2, 3), Fraction(4, 3), 0]
    assert linalg.canonical_sign([0, -1, 2]) == (0, 1, -2)
    with pytest.raises(DomainError):
        linalg.primitivize([0, 0])


@given(st.fractions(min_value=0, max_value=10_000))
def test_floor_sqrt(q):
    k = linalg.floor_sqrt(q)
    assert k * k <= q < (k + 1) ** 2


def test_intersect_spans_dimension_formula():
    rng = random.Random(3)
    for _ in range(20):
        L = rng.randint(3, 6)
        U = corpus.full_rank_vectors(rng, rng.randint(1, L), L)
        W = corpus.full_rank_vectors(rng, rng.randint(1, L), L)
        X = linalg.intersect_spans(U, W)
        assert len(X) == len(U) + len(W) - linalg.rank(U + W)
        for x in X:
            assert linalg.in_span(x, U) and linalg.in_span(x, W)


def test_short_vectors_of_small_lattices():
    Z2 = linalg.IntegerLattice(2, ((1, 0), (0, 1)))
    assert linalg.enumerate_short_vectors(Z2, 1) == [(0, 1), (1, -1), (1, 0), (1, 1)]
    assert linalg.enumerate_short_vectors(linalg.IntegerLattice(2, ((1, 2),)), 1) == []
