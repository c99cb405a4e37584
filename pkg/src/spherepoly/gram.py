"""The sphere Gram matrix on monomials of degree <= M.

Entry ``(i, j)`` is the sphere average of ``X^(m_i + m_j)``, i.e.
``P((m_i + m_j) / 2)`` when the two indices agree mod 2, and zero otherwise.
Indices therefore split into ``2**N`` parity classes and the matrix is block
diagonal after permuting each class together; storage follows that layout.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from . import linalg
from .combinatorics import IndexBasis, enumerate_multiindices, even_pair_half, parity_class
from .errors import SizeCapExceeded
from .moments import moment_coeff, sample_mean, sphere_samples
from .polynomial import Polynomial, coefficient_vector, format_rational

DEFAULT_SIZE_CAP = 5000


@dataclass(frozen=True)
class GramForm:
    basis: IndexBasis
    # parity class -> ascending basis positions in that class
    classes: dict[tuple[int, ...], tuple[int, ...]] = field(repr=False)
    # (i, j) with i <= j -> nonzero entry
    entries: dict[tuple[int, int], Fraction] = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.basis)

    def entry(self, i: int, j: int) -> Fraction:
        if i > j:
            i, j = j, i
        return self.entries.get((i, j), Fraction(0))

    def dense(self) -> list[list[Fraction]]:
        L = self.size
        A = [[Fraction(0)] * L for _ in range(L)]
        for (i, j), v in self.entries.items():
            A[i][j] = v
            A[j][i] = v
        return A

    def blocks(self) -> Iterator[tuple[tuple[int, ...], list[list[Fraction]]]]:
        for cls, pos in sorted(self.classes.items()):
            yield pos, [[self.entry(i, j) for j in pos] for i in pos]

    def bilinear(self, a: Sequence, b: Sequence) -> Fraction:
        total = Fraction(0)
        for (i, j), v in self.entries.items():
            if i == j:
                total += v * a[i] * b[i]
            else:
                total += v * (a[i] * b[j] + a[j] * b[i])
        return total

    def to_dict(self) -> dict:
        return {
            "M": self.basis.M,
            "N": self.basis.N,
            "order": "lex",
            "entries": [
                {"i": i, "j": j, "v": format_rational(v)} for (i, j), v in sorted(self.entries.items())
            ],
        }


def build_form(M: int, N: int, size_cap: int = DEFAULT_SIZE_CAP) -> GramForm:
    basis = enumerate_multiindices(M, N)
    if len(basis) > size_cap:
        raise SizeCapExceeded(f"L({M},{N}) = {len(basis)} exceeds cap {size_cap}")
    classes: dict[tuple[int, ...], list[int]] = defaultdict(list)
    for i, m in enumerate(basis.indices):
        classes[parity_class(m)].append(i)
    entries = {}
    for pos in classes.values():
        for a, i in enumerate(pos):
            for j in pos[a:]:
                half = even_pair_half(basis[i], basis[j])
                entries[(i, j)] = moment_coeff(half, N)
    return GramForm(basis, {k: tuple(v) for k, v in classes.items()}, entries)


def inner_product(F: Polynomial, G: Polynomial, form: GramForm) -> Fraction:
    """Sphere inner product of two polynomials through the Gram matrix."""
    a = coefficient_vector(F, form.basis)
    b = coefficient_vector(G, form.basis)
    return form.bilinear(a, b)


@dataclass(frozen=True)
class DefinitenessCertificate:
    minors: tuple[Fraction, ...]
    first_failure: int | None  # 0-based index of the first non-positive minor

    @property
    def positive_definite(self) -> bool:
        return self.first_failure is None


def check_positive_definite(form: GramForm, cap: int = 200) -> DefinitenessCertificate:
    """Exact leading principal minors of the Gram matrix.

    The k-th leading submatrix meets each parity block in a leading
    submatrix of that block, so its determinant is the product of the
    corresponding block minors.  Each block is eliminated once.
    """
    L = form.size
    if L > cap:
        raise SizeCapExceeded(f"L = {L} exceeds the exact determinant cap {cap}")
    block_minors: dict[tuple[int, ...], list[Fraction]] = {}
    for pos, block in form.blocks():
        block_minors[pos] = linalg.leading_principal_minors(block)
    owner = {}
    for pos in block_minors:
        for rank_in_block, i in enumerate(pos):
            owner[i] = (pos, rank_in_block)
    minors = []
    value = Fraction(1)
    for k in range(L):
        pos, r = owner[k]
        mins = block_minors[pos]
        if r >= len(mins):
            # block elimination stopped at an earlier zero minor
            return DefinitenessCertificate(tuple(minors), k)
        prev = mins[r - 1] if r else Fraction(1)
        if prev == 0:
            return DefinitenessCertificate(tuple(minors), k)
        value = value / prev * mins[r]
        minors.append(value)
        if value <= 0:
            return DefinitenessCertificate(tuple(minors), k)
    return DefinitenessCertificate(tuple(minors), None)


def form_height(form: GramForm) -> Fraction:
    return max((abs(v) for v in form.entries.values()), default=Fraction(0))


def monte_carlo_inner_product(
    F: Polynomial, G: Polynomial, samples: int, seed: int
) -> tuple[float, float]:
    """Sampled sphere average of ``F * G`` with its standard error."""
    x = sphere_samples(F.N, samples, seed)
    vals = F.evaluate_many(x) * G.evaluate_many(x)
    return sample_mean(np.asarray(vals))
