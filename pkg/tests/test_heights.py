import random
from fractions import Fraction

import pytest

from spherepoly import Polynomial, Subspace, coordinate_hyperplane, dual_hyperplane_height, subspace_degree, subspace_height
from spherepoly import linalg
from spherepoly.errors import DegenerateFormError, DomainError, RankDeficiencyError
from spherepoly.heights import intersection

import corpus


def test_line_height_is_length_of_primitive_vector():
    assert subspace_height([[2, 4]]).value == 5
    assert subspace_height([[Fraction(1, 3), Fraction(-2, 3), 1]]).value == 1 + 4 + 9


def test_plane_fixture():
    assert subspace_height([[1, 1, 0], [0, 1, 1]]).value == 3
    assert str(subspace_height([[1, 1, 0], [0, 1, 1]])) == "3"


def test_whole_space_and_coordinate_hyperplanes():
    assert subspace_height([[int(i == j) for j in range(4)] for i in range(4)]).value == 1
    assert subspace_height(coordinate_hyperplane(2, 5)).value == 1


def test_invariance_under_basis_change_and_scaling():
    rng = random.Random(12)
    for _ in range(20):
        L = rng.randint(3, 7)
        n = rng.randint(1, L - 1)
        C = corpus.full_rank_vectors(rng, n, L, 4, rational_entries=True)
        h = subspace_height(C)
        U = corpus.unimodular(rng, n)
        C2 = [[sum(U[i][t] * C[t][j] for t in range(n)) for j in range(L)] for i in range(n)]
        assert subspace_height(C2) == h
        scales = [Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 9)) for _ in C]
        C3 = [[a * x for x in v] for a, v in zip(scales, C)]
        assert subspace_height(C3) == h


def test_height_equals_height_of_orthogonal_complement():
    rng = random.Random(13)
    for _ in range(25):
        L = rng.randint(2, 7)
        n = rng.randint(1, L - 1)
        C = corpus.full_rank_vectors(rng, n, L, 5)
        assert subspace_height(C) == subspace_height(linalg.kernel_basis(C, L))


def test_dual_hyperplane_height_agrees_with_kernel():
    rng = random.Random(14)
    for _ in range(25):
        L = rng.randint(2, 6)
        f = [rng.randint(-4, 4) for _ in range(L)]
        A = corpus.int_matrix(rng, L, L, 4)
        row = linalg.vecmat(f, A)
        if not any(row):
            continue
        assert dual_hyperplane_height(f, A) == subspace_height(linalg.kernel_basis([row], L))


def test_dual_hyperplane_degenerate():
    with pytest.raises(DegenerateFormError):
        dual_hyperplane_height([1, -1], [[1, 1], [1, 1]])


def test_intersection():
    U = Subspace.from_vectors([[1, 0, 0], [0, 1, 0]])
    W = Subspace.from_vectors([[0, 1, 0], [0, 0, 1]])
    X = intersection(U, W)
    assert X.dim == 1 and linalg.in_span([0, 1, 0], X.vectors)


def test_subspace_validation_and_degree():
    with pytest.raises(RankDeficiencyError):
        Subspace.from_vectors([[1, 2], [2, 4]])
    with pytest.raises(DomainError):
        Subspace.from_vectors([[1, 2], [1, 2, 3]])
    V = Subspace.from_polynomials([Polynomial.monomial((1, 0)), Polynomial.monomial((0, 0))], M=3)
    assert V.L == 10 and subspace_degree(V) == 1
    small = V.truncated(1)
    assert small.L == 3 and small.polynomials() == V.polynomials()
    with pytest.raises(DomainError):
        Subspace.from_polynomials([Polynomial.monomial((2, 0))]).truncated(1)
