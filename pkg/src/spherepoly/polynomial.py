"""Sparse polynomials with exact rational coefficients."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .combinatorics import IndexBasis, MultiIndex
from .errors import DegreeOverflowError, DomainError, ParseError


def parse_rational(text) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` (ints are accepted too; floats are not)."""
    if isinstance(text, bool) or isinstance(text, float):
        raise ParseError(f"rationals must be given as strings or ints, got {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"not a rational literal: {text!r}")
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ParseError(f"malformed rational {text!r}") from None
    if q == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class Polynomial:
    """Immutable polynomial in ``N`` variables: a map multi-index -> nonzero Fraction."""

    __slots__ = ("N", "_terms")

    def __init__(self, N: int, terms: Mapping[Sequence[int], object] | None = None):
        if N < 1:
            raise DomainError("N must be positive")
        clean: dict[MultiIndex, Fraction] = {}
        for m, c in (terms or {}).items():
            m = tuple(int(e) for e in m)
            if len(m) != N:
                raise DomainError(f"multi-index {m} has length {len(m)}, expected {N}")
            if any(e < 0 for e in m):
                raise DomainError(f"negative exponent in {m}")
            c = Fraction(c)
            if c:
                clean[m] = clean.get(m, Fraction(0)) + c
                if not clean[m]:
                    del clean[m]
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def monomial(cls, m: Sequence[int], coeff=1) -> "Polynomial":
        return cls(len(m), {tuple(m): coeff})

    @classmethod
    def constant(cls, N: int, c=1) -> "Polynomial":
        return cls(N, {(0,) * N: c})

    @classmethod
    def from_vector(cls, vec: Sequence, basis: IndexBasis) -> "Polynomial":
        if len(vec) != len(basis):
            raise DomainError(f"vector length {len(vec)} != basis size {len(basis)}")
        return cls(basis.N, {m: c for m, c in zip(basis.indices, vec) if c})

    @property
    def terms(self) -> dict[MultiIndex, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def degree(self) -> int:
        return max((sum(m) for m in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, m: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(m), Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.N == other.N and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.N, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"Polynomial({self.N}, {dict(sorted(self._terms.items()))})"

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if self.N != other.N:
            raise DomainError("variable count mismatch")
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(self.N, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.N, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, a) -> "Polynomial":
        a = Fraction(a)
        return Polynomial(self.N, {m: a * c for m, c in self._terms.items()})

    def __rmul__(self, a) -> "Polynomial":
        return self.scale(a)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        if self.N != other.N:
            raise DomainError("variable count mismatch")
        out: dict[MultiIndex, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(self.N, out)

    def __call__(self, point: Sequence) -> Fraction:
        """Exact evaluation at a point with rational (or int) coordinates."""
        total = Fraction(0)
        for m, c in self._terms.items():
            term = c
            for x, e in zip(point, m):
                term *= Fraction(x) ** e
            total += term
        return total

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in sorted(self._terms.items(), key=lambda t: (-sum(t[0]), tuple(-e for e in t[0]))):
            mono = "*".join(f"X{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(m) if e)
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            else:
                body = f"{format_rational(mag)}*{mono}" if mono else format_rational(mag)
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        """Float evaluation at each row of a ``k x N`` array."""
        points = np.asarray(points, dtype=float)
        top = self.degree()
        # pw[i][e] = points[:, i] ** e
        pw = []
        for i in range(self.N):
            col = [np.ones(points.shape[0]), points[:, i]]
            for _ in range(2, top + 1):
                col.append(col[-1] * points[:, i])
            pw.append(col)
        out = np.zeros(points.shape[0])
        for m, c in self._terms.items():
            term = np.full(points.shape[0], float(c))
            for i, e in enumerate(m):
                if e:
                    term *= pw[i][e]
            out += term
        return out


def coefficient_vector(F: Polynomial, basis: IndexBasis) -> list[Fraction]:
    if F.N != basis.N:
        raise DomainError(f"polynomial has {F.N} variables, basis has {basis.N}")
    vec = [Fraction(0)] * len(basis)
    for m, c in F.items():
        pos = basis.position.get(m)
        if pos is None:
            raise DegreeOverflowError(f"term X^{list(m)} has weight {sum(m)} > {basis.M}")
        vec[pos] = c
    return vec


def height(F: Polynomial) -> Fraction:
    """Largest absolute coefficient (0 for the zero polynomial)."""
    return max((abs(c) for _, c in F.items()), default=Fraction(0))


def polynomial_to_dict(F: Polynomial) -> dict:
    return {
        "N": F.N,
        "terms": [{"m": list(m), "c": format_rational(c)} for m, c in sorted(F.items())],
    }


def polynomial_from_dict(doc, N: int | None = None) -> Polynomial:
    if not isinstance(doc, dict) or "terms" not in doc:
        raise ParseError("polynomial document needs a 'terms' list")
    if "N" in doc:
        N_doc = doc["N"]
        if not isinstance(N_doc, int) or isinstance(N_doc, bool):
            raise ParseError(f"N must be an integer, got {N_doc!r}")
        if N is not None and N_doc != N:
            raise ParseError(f"polynomial has N={N_doc}, expected {N}")
        N = N_doc
    if N is None:
        raise ParseError("polynomial document is missing 'N'")
    terms: dict[MultiIndex, Fraction] = {}
    if not isinstance(doc["terms"], list):
        raise ParseError("'terms' must be a list")
    for t in doc["terms"]:
        if not isinstance(t, dict) or "m" not in t or "c" not in t:
            raise ParseError(f"bad term {t!r}")
        m = t["m"]
        if not isinstance(m, list) or not all(isinstance(e, int) and not isinstance(e, bool) for e in m):
            raise ParseError(f"exponents must be a list of ints: {m!r}")
        if len(m) != N:
            raise ParseError(f"exponent array {m} has length {len(m)}, expected {N}")
        if any(e < 0 for e in m):
            raise ParseError(f"negative exponent in {m}")
        key = tuple(m)
        if key in terms:
            raise ParseError(f"duplicate multi-index {m}")
        terms[key] = parse_rational(t["c"])
    return Polynomial(N, terms)


def serialize_polynomial(F: Polynomial) -> str:
    return json.dumps(polynomial_to_dict(F), sort_keys=True)


def parse_polynomial(text: str) -> Polynomial:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return polynomial_from_dict(doc)


def linear_combination(coeffs: Iterable, polys: Iterable[Polynomial]) -> Polynomial:
    polys = list(polys)
    out = Polynomial(polys[0].N)
    for a, P in zip(coeffs, polys):
        out = out + P.scale(a)
    return out
