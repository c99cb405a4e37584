"""Heights of rational subspaces.

The height of a subspace V of Q^L is the covolume of the lattice V ∩ Z^L:
for any integer basis matrix C it equals sqrt(det(C^t C)) / D with D the gcd
of the maximal minors of C.  Heights are usually irrational, so everything
here works with exact squares.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import sqrt
from typing import Sequence

from . import linalg
from .combinatorics import IndexBasis, enumerate_multiindices
from .errors import DegenerateFormError, DomainError, RankDeficiencyError
from .polynomial import Polynomial, coefficient_vector


@dataclass(frozen=True)
class Subspace:
    """Span of linearly independent coefficient vectors.

    ``ambient`` is the monomial basis the coordinates refer to; it is None for
    a plain subspace of Q^L with no polynomial interpretation.
    """

    vectors: tuple[tuple[Fraction, ...], ...]
    ambient: IndexBasis | None = None

    def __post_init__(self):
        if self.vectors:
            L = len(self.vectors[0])
            if any(len(v) != L for v in self.vectors):
                raise DomainError("vectors have different lengths")
            if self.ambient is not None and len(self.ambient) != L:
                raise DomainError(f"vector length {L} != ambient dimension {len(self.ambient)}")
            if linalg.rank(self.vectors) != len(self.vectors):
                raise RankDeficiencyError("basis vectors are linearly dependent")

    @classmethod
    def from_vectors(cls, vectors: Sequence[Sequence], ambient: IndexBasis | None = None) -> "Subspace":
        return cls(tuple(tuple(Fraction(x) for x in v) for v in vectors), ambient)

    @classmethod
    def from_polynomials(cls, polys: Sequence[Polynomial], M: int | None = None) -> "Subspace":
        if not polys:
            raise DomainError("need at least one polynomial")
        N = polys[0].N
        if M is None:
            M = max(P.degree() for P in polys)
        basis = enumerate_multiindices(M, N)
        return cls(tuple(tuple(coefficient_vector(P, basis)) for P in polys), basis)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def L(self) -> int:
        if self.vectors:
            return len(self.vectors[0])
        return len(self.ambient) if self.ambient is not None else 0

    def polynomials(self) -> list[Polynomial]:
        if self.ambient is None:
            raise DomainError("subspace has no monomial basis attached")
        return [Polynomial.from_vector(v, self.ambient) for v in self.vectors]

    def with_vectors(self, vectors: Sequence[Sequence]) -> "Subspace":
        return Subspace.from_vectors(vectors, self.ambient)

    def truncated(self, M: int) -> "Subspace":
        """Re-express in the smaller basis of degree ``M`` (rows above M must be zero)."""
        if self.ambient is None:
            raise DomainError("subspace has no monomial basis attached")
        small = self.ambient.truncate(M)
        keep = [self.ambient.position[m] for m in small.indices]
        kept = set(keep)
        for v in self.vectors:
            if any(v[i] for i in range(len(v)) if i not in kept):
                raise DomainError(f"subspace has terms of degree > {M}")
        return Subspace(tuple(tuple(v[i] for i in keep) for v in self.vectors), small)


@dataclass(frozen=True, order=True)
class SquaredHeight:
    value: Fraction

    @property
    def height(self) -> float:
        return sqrt(self.value)

    def __str__(self) -> str:
        v = self.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _as_vectors(V) -> list[list[Fraction]]:
    if isinstance(V, Subspace):
        return [list(v) for v in V.vectors]
    return [[Fraction(x) for x in v] for v in V]


def subspace_degree(V: Subspace) -> int:
    if V.ambient is None:
        raise DomainError("degree needs a monomial basis")
    if not V.vectors:
        raise DomainError("degree of the zero subspace")
    return max(
        (sum(V.ambient[i]) for i in range(V.L) if any(v[i] for v in V.vectors)),
        default=0,
    )


def subspace_height(V) -> SquaredHeight:
    """Squared height of a subspace (``Subspace`` or a list of basis vectors)."""
    vecs = _as_vectors(V)
    if not vecs:
        return SquaredHeight(Fraction(1))
    C = [linalg.integer_vector(v) for v in vecs]
    D = linalg.minors_gcd(C)
    gram = [[linalg.dot(u, w) for w in C] for u in C]
    g = linalg.det(gram)
    if g == 0:
        raise RankDeficiencyError("basis vectors are linearly dependent")
    return SquaredHeight(Fraction(abs(g)) / (D * D))


def dual_hyperplane_height(f: Sequence, A: Sequence[Sequence]) -> SquaredHeight:
    """Squared height of ``{t : f^t A t = 0}``.

    The hyperplane's integer points are cut out by the primitive normal
    vector ``w`` proportional to ``f^t A``, and its height is ``|w|``.
    """
    row = linalg.vecmat([Fraction(x) for x in f], A)
    if not any(row):
        raise DegenerateFormError("f^t A vanishes; the hyperplane is undefined")
    w, _ = linalg.primitivize(row)
    return SquaredHeight(Fraction(sum(x * x for x in w)))


def coordinate_hyperplane(j: int, basis: IndexBasis | int) -> Subspace:
    """Polynomials whose coefficient at basis position ``j`` vanishes."""
    L = basis if isinstance(basis, int) else len(basis)
    if not 0 <= j < L:
        raise DomainError(f"index {j} out of range for L = {L}")
    vecs = [[Fraction(int(i == k)) for i in range(L)] for k in range(L) if k != j]
    return Subspace.from_vectors(vecs, None if isinstance(basis, int) else basis)


def intersection(U: Subspace, W: Subspace) -> Subspace:
    return Subspace.from_vectors(linalg.intersect_spans(U.vectors, W.vectors), U.ambient)
