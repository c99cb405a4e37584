"""Exact rational and integer linear algebra.

Matrices are lists of rows; entries are ``Fraction`` (rational routines) or
``int`` (lattice routines).  A subspace or lattice is described by a list of
vectors, which are the *columns* of the usual basis matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import floor, gcd, isqrt, lcm, sqrt
from typing import Iterable, Sequence

from .errors import DomainError, RankDeficiencyError, SearchCapExceeded

Vector = list
Matrix = list  # list of rows


def as_fraction_rows(rows: Iterable[Iterable]) -> list[list[Fraction]]:
    return [[Fraction(x) for x in r] for r in rows]


def transpose(rows: Sequence[Sequence]) -> list[list]:
    return [list(c) for c in zip(*rows)]


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), 0)


def matvec(A: Sequence[Sequence], v: Sequence) -> list:
    return [dot(r, v) for r in A]


def vecmat(v: Sequence, A: Sequence[Sequence]) -> list:
    """Row vector times matrix: ``v^T A``."""
    ncols = len(A[0]) if A else 0
    out = [Fraction(0)] * ncols
    for vi, row in zip(v, A):
        if vi:
            for j, a in enumerate(row):
                if a:
                    out[j] += vi * a
    return out


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    Bt = transpose(B)
    return [[dot(r, c) for c in Bt] for r in A]


def bilinear(u: Sequence, A: Sequence[Sequence], v: Sequence) -> Fraction:
    return dot(vecmat(u, A), v)


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    R = as_fraction_rows(rows)
    if not R:
        return R, []
    nrows, ncols = len(R), len(R[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(nrows):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def kernel_basis(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel ``{x : A x = 0}``; returned as a list of vectors."""
    if not rows:
        if ncols is None:
            raise DomainError("need ncols for an empty matrix")
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref(rows)
    n = len(R[0])
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for r, p in enumerate(pivots):
            x[p] = -R[r][f]
        basis.append(x)
    return basis


def span_basis(vectors: Sequence[Sequence]) -> list[list[Fraction]]:
    """Reduced echelon basis of the span of ``vectors``."""
    R, pivots = rref(vectors)
    return R[: len(pivots)]


def in_span(v: Sequence, vectors: Sequence[Sequence]) -> bool:
    if not vectors:
        return not any(v)
    return rank(list(vectors) + [list(v)]) == rank(vectors)


def intersect_spans(U: Sequence[Sequence], W: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of span(U) ∩ span(W)."""
    if not U or not W:
        return []
    p = len(U)
    cols = [list(u) for u in U] + [[-x for x in w] for w in W]
    A = transpose(cols)
    ker = kernel_basis(A)
    vecs = [[sum((k[i] * U[i][r] for i in range(p)), Fraction(0)) for r in range(len(U[0]))] for k in ker]
    return span_basis(vecs) if vecs else []


def _bareiss(A: list[list[int]], pivoting: bool):
    """Fraction-free elimination of an integer matrix, in place.

    Without pivoting the k-th pivot is the k-th leading principal minor.
    Returns (pivots, sign); stops early on a zero pivot.
    """
    n = len(A)
    prev = 1
    sign = 1
    pivots = []
    for k in range(n):
        if A[k][k] == 0:
            if not pivoting:
                pivots.append(A[k][k])
                return pivots, sign
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                pivots.append(0)
                return pivots, sign
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        pk = A[k][k]
        pivots.append(pk)
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = (pk * row_i[j] - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pk
    return pivots, sign


def _integerize(rows: Sequence[Sequence]) -> tuple[list[list[int]], int]:
    """Scale a rational matrix to integers; return (matrix, scale)."""
    den = 1
    for r in rows:
        for x in r:
            den = lcm(den, Fraction(x).denominator)
    return [[int(Fraction(x) * den) for x in r] for r in rows], den


def det(rows: Sequence[Sequence]) -> Fraction:
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if any(len(r) != n for r in rows):
        raise DomainError("determinant of a non-square matrix")
    A, den = _integerize(rows)
    pivots, sign = _bareiss(A, pivoting=True)
    if len(pivots) < n or pivots[-1] == 0:
        return Fraction(0)
    return Fraction(sign * pivots[-1], den**n)


def leading_principal_minors(rows: Sequence[Sequence]) -> list[Fraction]:
    """Leading principal minors, stopping after the first zero one."""
    n = len(rows)
    A, den = _integerize(rows)
    pivots, _ = _bareiss(A, pivoting=False)
    return [Fraction(p, den ** (k + 1)) for k, p in enumerate(pivots)]


# --- integer vectors ---------------------------------------------------------

def integer_vector(v: Sequence) -> list[int]:
    """Clear denominators (no gcd division)."""
    den = reduce(lcm, (Fraction(x).denominator for x in v), 1)
    return [int(Fraction(x) * den) for x in v]


def primitivize(v: Sequence) -> tuple[list[int], Fraction]:
    """Split a nonzero rational vector as ``scale * w`` with ``w`` primitive.

    The first nonzero entry of ``w`` is positive; ``scale`` carries the sign.
    """
    fr = [Fraction(x) for x in v]
    if not any(fr):
        raise DomainError("cannot primitivize the zero vector")
    num_gcd = reduce(gcd, (x.numerator for x in fr), 0)
    den_lcm = reduce(lcm, (x.denominator for x in fr), 1)
    scale = Fraction(num_gcd, den_lcm)
    if next(x for x in fr if x) < 0:
        scale = -scale
    return [int(x / scale) for x in fr], scale


def sup_norm(v: Sequence):
    return max((abs(x) for x in v), default=0)


def hnf(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row Hermite normal form; zero rows are dropped.

    Pivots are positive and entries above each pivot lie in ``[0, pivot)``,
    which makes the result a canonical basis of the row lattice.
    """
    A = [[int(x) for x in r] for r in rows]
    m = len(A)
    if m == 0:
        return []
    n = len(A[0])
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if A[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(A[i][c]))
            A[r], A[p] = A[p], A[r]
            clean = True
            for i in range(r + 1, m):
                if A[i][c]:
                    q = A[i][c] // A[r][c]
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                    if A[i][c]:
                        clean = False
            if clean:
                break
        if A[r][c] == 0:
            continue
        if A[r][c] < 0:
            A[r] = [-a for a in A[r]]
        for i in range(r):
            q = A[i][c] // A[r][c]
            if q:
                A[i] = [a - q * b for a, b in zip(A[i], A[r])]
        r += 1
    return A[:r]


def minors_gcd(vectors: Sequence[Sequence[int]]) -> int:
    """gcd of all maximal minors of the matrix whose columns are ``vectors``.

    Left-multiplying the L x k matrix by a unimodular matrix leaves this gcd
    unchanged; its Hermite form has a single nonzero maximal minor.
    """
    k = len(vectors)
    if k == 0:
        return 1
    if any(Fraction(x).denominator != 1 for v in vectors for x in v):
        raise DomainError("minors_gcd needs integer entries")
    H = hnf(transpose([[int(x) for x in v] for v in vectors]))
    if len(H) < k:
        raise RankDeficiencyError(f"rank {len(H)} < {k}")
    D = 1
    for i in range(k):
        D *= H[i][i]
    return abs(D)


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of ``{x in Z^ncols : A x = 0}`` via the Hermite form of ``[A^t | I]``."""
    r = len(rows)
    if r == 0:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    At = transpose(rows)
    aug = [list(At[i]) + [int(i == j) for j in range(ncols)] for i in range(ncols)]
    H = hnf(aug)
    return [h[r:] for h in H if not any(h[:r])]


@dataclass(frozen=True)
class IntegerLattice:
    """Lattice in Z^dim spanned by linearly independent integer vectors."""

    dim: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def hnf(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(r) for r in hnf(self.basis))

    def same_lattice(self, other: "IntegerLattice") -> bool:
        return self.dim == other.dim and self.hnf() == other.hnf()

    def coordinates(self, v: Sequence) -> list[Fraction] | None:
        """Rational coordinates of ``v`` in the basis, or None if outside the span."""
        if not self.basis:
            return [] if not any(v) else None
        cols = [list(b) for b in self.basis]
        A = transpose(cols)
        aug = [row + [Fraction(x)] for row, x in zip(A, v)]
        R, pivots = rref(aug)
        n = len(self.basis)
        if n in pivots:
            return None
        x = [Fraction(0)] * n
        for r, p in enumerate(pivots):
            x[p] = R[r][n]
        return x

    def contains(self, v: Sequence) -> bool:
        x = self.coordinates(v)
        return x is not None and all(c.denominator == 1 for c in x)


def integer_lattice_basis(vectors: Sequence[Sequence]) -> IntegerLattice:
    """All integer points of span(vectors), as a lattice in Hermite form."""
    if not vectors:
        raise DomainError("need at least one spanning vector")
    L = len(vectors[0])
    ints = [integer_vector(v) for v in vectors]
    if rank(ints) != len(ints):
        raise RankDeficiencyError("spanning vectors are dependent")
    perp = [integer_vector(w) for w in kernel_basis(ints)]
    ker = integer_kernel(perp, L) if perp else [[int(i == j) for i in range(L)] for j in range(L)]
    return IntegerLattice(L, tuple(tuple(r) for r in hnf(ker)))


# --- lattice reduction -------------------------------------------------------

def gram_schmidt(basis: Sequence[Sequence[int]]) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Squared norms of the Gram-Schmidt vectors and the mu coefficients."""
    n = len(basis)
    bstar: list[list[Fraction]] = []
    norms: list[Fraction] = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i, b in enumerate(basis):
        v = [Fraction(x) for x in b]
        for j in range(i):
            mu[i][j] = dot([Fraction(x) for x in b], bstar[j]) / norms[j]
            v = [a - mu[i][j] * c for a, c in zip(v, bstar[j])]
        bstar.append(v)
        norms.append(dot(v, v))
        mu[i][i] = Fraction(1)
    return norms, mu


def _round(x: Fraction) -> int:
    return floor(x + Fraction(1, 2))


def lll_reduce(lat: IntegerLattice, delta: Fraction = Fraction(3, 4)) -> IntegerLattice:
    """Exact LLL reduction (size-reduced, Lovász condition with ``delta``)."""
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta <= 1:
        raise DomainError("delta must lie in (1/4, 1]")
    b = [list(v) for v in lat.basis]
    n = len(b)
    if n <= 1:
        return lat
    norms, mu = gram_schmidt(b)
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = _round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                for i in range(j + 1):
                    mu[k][i] -= q * mu[j][i]
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            norms, mu = gram_schmidt(b)
            k = max(k - 1, 1)
    return IntegerLattice(lat.dim, tuple(tuple(v) for v in b))


def canonical_sign(v: Sequence[int]) -> tuple[int, ...]:
    first = next((x for x in v if x), 0)
    return tuple(-x for x in v) if first < 0 else tuple(v)


def enumerate_short_vectors(
    lat: IntegerLattice, sup_norm_bound, max_nodes: int = 200_000
) -> list[tuple[int, ...]]:
    """Every nonzero lattice vector with sup-norm <= bound, one of each ±v pair.

    Runs Fincke-Pohst enumeration over the Euclidean ball of radius
    ``bound * sqrt(dim)``, which contains the sup-norm box, then filters.
    Results are sign-normalized (first nonzero entry positive) and sorted.
    """
    bound = Fraction(sup_norm_bound)
    if bound < 0:
        raise DomainError("bound must be nonnegative")
    if lat.rank == 0 or bound < 1:
        return []
    red = lll_reduce(lat)
    basis = [list(v) for v in red.basis]
    n = len(basis)
    norms, mu = gram_schmidt(basis)
    radius2 = bound * bound * lat.dim
    found: set[tuple[int, ...]] = set()
    x = [0] * n
    nodes = 0

    def visit(i: int, remaining: Fraction) -> None:
        nonlocal nodes
        c = sum((mu[j][i] * x[j] for j in range(i + 1, n)), Fraction(0))
        q = remaining / norms[i]
        # float window with slack, then exact test
        s = sqrt(float(q)) if q > 0 else 0.0
        lo = floor(float(-c) - s) - 1
        hi = floor(float(-c) + s) + 2
        for xi in range(lo, hi + 1):
            t = xi + c
            used = norms[i] * t * t
            if used > remaining:
                continue
            nodes += 1
            if nodes > max_nodes:
                raise SearchCapExceeded(f"enumeration exceeded {max_nodes} nodes")
            x[i] = xi
            if i == 0:
                if any(x):
                    v = [sum(x[j] * basis[j][r] for j in range(n)) for r in range(lat.dim)]
                    if sup_norm(v) <= bound:
                        found.add(canonical_sign(v))
            else:
                visit(i - 1, remaining - used)
        x[i] = 0

    visit(n - 1, radius2)
    return sorted(found)


def floor_sqrt(q: Fraction) -> int:
    """Largest integer k with k*k <= q."""
    q = Fraction(q)
    if q < 0:
        raise DomainError("negative argument")
    return isqrt(q.numerator // q.denominator)
