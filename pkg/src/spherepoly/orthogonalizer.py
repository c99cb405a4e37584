"""Small-height integer bases and orthogonal integer bases of rational subspaces.

``siegel_basis`` finds integer vectors v_1..v_n spanning V with
prod sup|v_i| <= H(V).  Such vectors always exist: the sup-norm successive
minima of V ∩ Z^L have product at most H(V).  We try the LLL basis first and
fall back to exact short-vector enumeration, which finds the successive
minima themselves.

``orthogonal_basis`` builds a B-orthogonal basis one vector at a time: a
short vector f is taken from the current subspace and the recursion
continues in its B-orthogonal complement (or, for radical f, in a
coordinate hyperplane through which f does not pass).  Every result carries
a certificate that ``verify_certificate`` rechecks from scratch.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from functools import reduce
from typing import Sequence

from . import linalg
from .errors import DomainError, SearchCapExceeded
from .gram import build_form
from .heights import Subspace, subspace_degree, subspace_height
from .polynomial import Polynomial, format_rational, polynomial_to_dict

DEFAULT_MAX_NODES = 200_000


@dataclass(frozen=True)
class SiegelResult:
    vectors: tuple[tuple[int, ...], ...]
    certified: bool  # product of squared sup-norms <= H(V)^2
    method: str  # "lll" or "enumeration"
    height_sq: Fraction  # H(V)^2
    product_sq: int
    lattice_basis: bool  # the vectors generate all of V ∩ Z^L


def _height_key(v: Sequence[int]):
    return (linalg.sup_norm(v), tuple(v))


def _product_sq(vectors) -> int:
    out = 1
    for v in vectors:
        out *= linalg.sup_norm(v) ** 2
    return out


def _greedy_independent(candidates: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    chosen: list[tuple[int, ...]] = []
    for v in sorted(candidates, key=_height_key):
        if linalg.rank(chosen + [v]) > len(chosen):
            chosen.append(tuple(v))
            if len(chosen) == n:
                break
    return chosen


def siegel_basis(V, max_nodes: int = DEFAULT_MAX_NODES, strategy: str = "auto") -> SiegelResult:
    """Integer basis of V whose sup-norm heights multiply to at most H(V).

    ``strategy`` is "auto" (LLL, enumeration only if needed) or "enumerate"
    (always enumerate).  When enumeration hits ``max_nodes`` the LLL basis is
    returned with ``certified=False``.
    """
    if strategy not in ("auto", "enumerate"):
        raise DomainError(f"unknown strategy {strategy!r}")
    vecs = V.vectors if isinstance(V, Subspace) else V
    if not vecs:
        raise DomainError("siegel_basis of the zero subspace")
    n = len(vecs)
    h2 = subspace_height(vecs).value
    lattice = linalg.integer_lattice_basis(vecs)
    reduced = linalg.lll_reduce(lattice)
    lll_vecs = sorted((linalg.canonical_sign(v) for v in reduced.basis), key=_height_key)
    lll_prod = _product_sq(lll_vecs)
    if strategy == "auto" and lll_prod <= h2:
        return SiegelResult(tuple(lll_vecs), True, "lll", h2, lll_prod, True)

    bound = min(linalg.floor_sqrt(h2), max(linalg.sup_norm(v) for v in lll_vecs))
    try:
        short = linalg.enumerate_short_vectors(lattice, bound, max_nodes=max_nodes)
    except SearchCapExceeded:
        return SiegelResult(tuple(lll_vecs), lll_prod <= h2, "lll", h2, lll_prod, True)
    chosen = _greedy_independent(short, n)
    if len(chosen) < n:
        # unreachable when the enumeration is complete; keep the LLL basis
        return SiegelResult(tuple(lll_vecs), lll_prod <= h2, "lll", h2, lll_prod, True)
    prod = _product_sq(chosen)
    if prod > lll_prod:
        return SiegelResult(tuple(lll_vecs), lll_prod <= h2, "lll", h2, lll_prod, True)
    gram_det = linalg.det([[linalg.dot(u, w) for w in chosen] for u in chosen])
    return SiegelResult(tuple(chosen), prod <= h2, "enumeration", h2, prod, gram_det == h2)


def radical(V, B: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of ``{t in V : B(t, v) = 0 for all v in V}`` (empty list if zero)."""
    vecs = [list(v) for v in (V.vectors if isinstance(V, Subspace) else V)]
    if not vecs:
        return []
    images = [linalg.vecmat(v, B) for v in vecs]
    restricted = [[linalg.dot(bu, w) for w in vecs] for bu in images]
    ker = linalg.kernel_basis(restricted)
    L = len(vecs[0])
    out = [[sum((k[i] * vecs[i][r] for i in range(len(vecs))), Fraction(0)) for r in range(L)] for k in ker]
    return linalg.span_basis(out) if out else []


def _restrict(vecs: Sequence[Sequence[Fraction]], functional: Sequence[Fraction]) -> list[list[Fraction]]:
    """Basis of ``{t in span(vecs) : functional . t = 0}``."""
    vals = [linalg.dot(functional, v) for v in vecs]
    ker = linalg.kernel_basis([vals])
    L = len(vecs[0])
    out = [[sum((k[i] * vecs[i][r] for i in range(len(vecs))), Fraction(0)) for r in range(L)] for k in ker]
    return linalg.span_basis(out) if out else []


def _symmetric(B: Sequence[Sequence]) -> list[list[Fraction]]:
    Bf = linalg.as_fraction_rows(B)
    L = len(Bf)
    if any(len(r) != L for r in Bf):
        raise DomainError("form matrix must be square")
    for i in range(L):
        for j in range(i):
            if Bf[i][j] != Bf[j][i]:
                raise DomainError("form matrix must be symmetric")
    return Bf


def matrix_height(B: Sequence[Sequence]) -> Fraction:
    return max((abs(Fraction(x)) for r in B for x in r), default=Fraction(0))


def squared_height_bound(L: int, n: int, form_h: Fraction, h2: Fraction) -> Fraction:
    """Square of (L^3 H(B))^(n(n+1)/2) * H(V)^n."""
    return (Fraction(L) ** 3 * form_h) ** (n * (n + 1)) * Fraction(h2) ** n


@dataclass(frozen=True)
class OrthogonalCertificate:
    fingerprint: tuple[tuple[int, ...], ...]  # Hermite basis of V ∩ Z^L
    vectors: tuple[tuple[int, ...], ...]
    form_values: tuple[tuple[Fraction, ...], ...]
    heights: tuple[int, ...]
    subspace_height_sq: Fraction
    form_height: Fraction
    L: int
    bound_sq: Fraction
    siegel_certified: bool
    steps: tuple[str, ...] = field(default=())  # "anisotropic" | "pair" | "radical"

    @property
    def n(self) -> int:
        return len(self.vectors)

    @property
    def product_sq(self) -> int:
        out = 1
        for h in self.heights:
            out *= h * h
        return out

    @property
    def orthogonal(self) -> bool:
        return all(
            self.form_values[i][j] == 0 for i in range(self.n) for j in range(self.n) if i != j
        )

    @property
    def bound_ok(self) -> bool:
        return self.product_sq <= self.bound_sq

    @property
    def verdict(self) -> bool:
        return self.orthogonal and self.bound_ok

    def to_dict(self, ambient=None) -> dict:
        doc = {
            "L": self.L,
            "n": self.n,
            "fingerprint_hnf": [list(r) for r in self.fingerprint],
            "vectors": [list(v) for v in self.vectors],
            "form_values": [[format_rational(x) for x in row] for row in self.form_values],
            "heights": list(self.heights),
            "height_product_sq": str(self.product_sq),
            "subspace_height_sq": format_rational(self.subspace_height_sq),
            "form_height": format_rational(self.form_height),
            "bound_sq": format_rational(self.bound_sq),
            "steps": list(self.steps),
            "siegel_certified": self.siegel_certified,
            "orthogonal": self.orthogonal,
            "bound_ok": self.bound_ok,
            "verdict": self.verdict,
        }
        if ambient is not None:
            doc["M"] = ambient.M
            doc["N"] = ambient.N
            doc["polynomials"] = [
                polynomial_to_dict(Polynomial.from_vector(v, ambient)) for v in self.vectors
            ]
        return doc


def _pick_anisotropic(cands, B) -> tuple[tuple[int, ...], str] | None:
    for v in sorted(cands, key=_height_key):
        if linalg.bilinear(v, B, v) != 0:
            return tuple(v), "anisotropic"
    # every candidate is isotropic; some f_i ± f_j is not, as B is nondegenerate on V
    pairs = []
    for a in range(len(cands)):
        for b in range(a + 1, len(cands)):
            for s in (1, -1):
                w, _ = linalg.primitivize([x + s * y for x, y in zip(cands[a], cands[b])])
                if linalg.bilinear(w, B, w) != 0:
                    pairs.append(w)
    if not pairs:
        return None
    return tuple(min(pairs, key=_height_key)), "pair"


def orthogonal_basis(V: Subspace, B: Sequence[Sequence], max_nodes: int = DEFAULT_MAX_NODES) -> OrthogonalCertificate:
    """B-orthogonal basis of V of primitive integer vectors, with certificate."""
    if not V.vectors:
        raise DomainError("orthogonal_basis of the zero subspace")
    Bf = _symmetric(B)
    L = V.L
    if len(Bf) != L:
        raise DomainError(f"form is {len(Bf)}x{len(Bf)}, subspace lives in Q^{L}")
    current = [list(v) for v in V.vectors]
    out: list[tuple[int, ...]] = []
    steps: list[str] = []
    certified = True
    while current:
        rad = radical(current, Bf)
        if rad:
            sb = siegel_basis(rad, max_nodes=max_nodes)
            f1 = min(sb.vectors, key=_height_key)
            j = next(i for i, x in enumerate(f1) if x)
            unit = [Fraction(int(i == j)) for i in range(L)]
            current = _restrict(current, unit)
            step = "radical"
        else:
            sb = siegel_basis(current, max_nodes=max_nodes)
            picked = _pick_anisotropic(list(sb.vectors), Bf)
            if picked is None:
                raise AssertionError("nondegenerate form without anisotropic vectors")
            f1, step = picked
            current = _restrict(current, linalg.vecmat(f1, Bf))
        certified = certified and sb.certified
        out.append(tuple(f1))
        steps.append(step)

    h2 = subspace_height(V).value
    fh = matrix_height(Bf)
    values = tuple(tuple(linalg.bilinear(u, Bf, w) for w in out) for u in out)
    return OrthogonalCertificate(
        fingerprint=linalg.integer_lattice_basis(V.vectors).hnf(),
        vectors=tuple(out),
        form_values=values,
        heights=tuple(linalg.sup_norm(v) for v in out),
        subspace_height_sq=h2,
        form_height=fh,
        L=L,
        bound_sq=squared_height_bound(L, len(out), fh, h2),
        siegel_certified=certified,
        steps=tuple(steps),
    )


def sphere_setup(V: Subspace) -> tuple[Subspace, list[list[Fraction]]]:
    """Truncate V to its own degree and build the matching sphere Gram matrix."""
    d = subspace_degree(V)
    Vd = V.truncated(d)
    return Vd, build_form(d, Vd.ambient.N).dense()


def orthogonal_basis_sphere(V: Subspace, max_nodes: int = DEFAULT_MAX_NODES) -> OrthogonalCertificate:
    Vd, gram = sphere_setup(V)
    return orthogonal_basis(Vd, gram, max_nodes=max_nodes)


@dataclass
class VerificationReport:
    checks: dict[str, bool]
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_certificate(cert: OrthogonalCertificate, V: Subspace, B: Sequence[Sequence]) -> VerificationReport:
    """Recheck a certificate against V and B, trusting none of its stored values."""
    Bf = linalg.as_fraction_rows(B)
    vecs = [list(v) for v in cert.vectors]
    failures: list[str] = []
    checks: dict[str, bool] = {}

    def record(name: str, ok: bool, msg: str) -> None:
        checks[name] = ok
        if not ok:
            failures.append(msg)

    integral = all(isinstance(x, int) for v in vecs for x in v)
    record("integral", integral, "output vectors are not all integer")
    primitive = integral and all(reduce(gcd, v, 0) == 1 for v in vecs)
    record("primitive", primitive, "an output vector is not primitive")

    n = V.dim
    independent = len(vecs) == n and linalg.rank(vecs) == n
    same_span = independent and (
        linalg.integer_lattice_basis(vecs).hnf() == linalg.integer_lattice_basis(V.vectors).hnf()
    )
    record("span", same_span, "output does not span V")

    orth = all(linalg.bilinear(vecs[i], Bf, vecs[j]) == 0 for i in range(len(vecs)) for j in range(i + 1, len(vecs)))
    record("orthogonal", orth, "some pair of output vectors is not B-orthogonal")

    heights = [linalg.sup_norm(v) for v in vecs]
    record("heights", list(cert.heights) == heights, "stored heights disagree with the vectors")
    prod = 1
    for h in heights:
        prod *= h * h
    bound = squared_height_bound(V.L, n, matrix_height(Bf), subspace_height(V).value)
    record("bound", prod <= bound, f"height product^2 {prod} exceeds bound^2 {bound}")
    return VerificationReport(checks, failures)
