"""Multi-index bookkeeping for monomial bases of bounded total degree.

A multi-index is a plain tuple of nonnegative ints ``(m_1, ..., m_N)``
standing for the monomial ``X_1**m_1 * ... * X_N**m_N``.  Bases are listed in
ascending lexicographic order with the first coordinate most significant;
every dense vector and matrix in the package uses this order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterator

from .errors import DomainError

MultiIndex = tuple[int, ...]


def weight(m: MultiIndex) -> int:
    return sum(m)


def _check_dims(M: int, N: int) -> None:
    if not isinstance(M, int) or M < 0:
        raise DomainError(f"degree bound M must be a nonnegative integer, got {M!r}")
    if not isinstance(N, int) or N < 2:
        raise DomainError(f"variable count N must be an integer >= 2, got {N!r}")


def _lex_indices(N: int, budget: int) -> Iterator[MultiIndex]:
    if N == 1:
        for k in range(budget + 1):
            yield (k,)
        return
    for first in range(budget + 1):
        for rest in _lex_indices(N - 1, budget - first):
            yield (first,) + rest


@dataclass(frozen=True)
class IndexBasis:
    """All multi-indices of weight at most ``M`` in ``N`` variables, lex-ordered."""

    M: int
    N: int
    indices: tuple[MultiIndex, ...] = field(repr=False)
    position: dict[MultiIndex, int] = field(repr=False, compare=False, hash=False)

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __getitem__(self, i: int) -> MultiIndex:
        return self.indices[i]

    def __contains__(self, m) -> bool:
        return tuple(m) in self.position

    def truncate(self, M: int) -> "IndexBasis":
        """Basis for a smaller degree bound; its order is a subsequence of ours."""
        return enumerate_multiindices(M, self.N)


@lru_cache(maxsize=64)
def enumerate_multiindices(M: int, N: int) -> IndexBasis:
    _check_dims(M, N)
    indices = tuple(_lex_indices(N, M))
    return IndexBasis(M, N, indices, {m: i for i, m in enumerate(indices)})


def dimension(M: int, N: int) -> int:
    """Number of monomials of degree <= M in N variables."""
    _check_dims(M, N)
    return sum(comb(N + k - 1, k) for k in range(M + 1))


def double_factorial(m: int) -> int:
    if m < -1:
        raise DomainError(f"double factorial undefined for {m}")
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def even_pair_half(m1: MultiIndex, m2: MultiIndex) -> MultiIndex | None:
    """Return ``(m1 + m2) / 2`` if every coordinate of the sum is even, else None.

    Parity is all that needs checking: if both indices have weight <= M then
    the half-sum has weight (w(m1) + w(m2)) / 2 <= M as well.
    """
    if len(m1) != len(m2):
        raise DomainError(f"dimension mismatch: {len(m1)} vs {len(m2)}")
    half = []
    for a, b in zip(m1, m2):
        s = a + b
        if s & 1:
            return None
        half.append(s >> 1)
    return tuple(half)


def parity_class(m: MultiIndex) -> tuple[int, ...]:
    return tuple(x & 1 for x in m)
