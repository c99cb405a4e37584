"""Spherical design checks by monomial power sums.

A finite set S of k points on the unit sphere is an M-design exactly when,
for every multi-index m of weight <= M, the power sum over S of x^m equals
k * P(m/2) if all entries of m are even, and 0 otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence

import numpy as np

from .combinatorics import MultiIndex, enumerate_multiindices
from .errors import DomainError, OffSphereError, ParseError
from .moments import moment_coeff
from .polynomial import Polynomial, parse_rational

DEFAULT_TOL = 1e-9
SPHERE_TOL = 1e-12


@dataclass(frozen=True)
class PointSet:
    N: int
    points: tuple[tuple, ...]
    mode: str  # "exact" or "float"

    def __post_init__(self):
        if self.mode not in ("exact", "float"):
            raise DomainError(f"unknown mode {self.mode!r}")
        if not self.points:
            raise DomainError("empty point set")
        for idx, p in enumerate(self.points):
            if len(p) != self.N:
                raise DomainError(f"point {idx} has {len(p)} coordinates, expected {self.N}")
            if self.mode == "exact":
                if not all(isinstance(x, Fraction) for x in p):
                    raise DomainError(f"point {idx} mixes float and exact coordinates")
                defect = sum(x * x for x in p) - 1
                if defect != 0:
                    raise OffSphereError(idx, defect)
            else:
                if not all(isinstance(x, float) for x in p):
                    raise DomainError(f"point {idx} mixes float and exact coordinates")

    def validate_sphere(self, sphere_tol: float = SPHERE_TOL) -> None:
        if self.mode == "float":
            for idx, p in enumerate(self.points):
                defect = sum(x * x for x in p) - 1.0
                if abs(defect) > sphere_tol:
                    raise OffSphereError(idx, defect)

    @classmethod
    def exact(cls, points: Sequence[Sequence]) -> "PointSet":
        pts = tuple(tuple(Fraction(x) for x in p) for p in points)
        return cls(len(pts[0]), pts, "exact")

    @classmethod
    def floating(cls, points: Sequence[Sequence], sphere_tol: float = SPHERE_TOL) -> "PointSet":
        pts = tuple(tuple(float(x) for x in p) for p in points)
        out = cls(len(pts[0]), pts, "float")
        out.validate_sphere(sphere_tol)
        return out

    def __len__(self) -> int:
        return len(self.points)

    def to_dict(self) -> dict:
        conv = (lambda x: str(x)) if self.mode == "exact" else float
        return {"N": self.N, "mode": self.mode, "points": [[conv(x) for x in p] for p in self.points]}


def points_from_dict(doc, sphere_tol: float = SPHERE_TOL) -> PointSet:
    if not isinstance(doc, dict) or "points" not in doc:
        raise ParseError("points document needs a 'points' list")
    mode = doc.get("mode", "exact")
    pts = doc["points"]
    if not isinstance(pts, list) or not pts:
        raise ParseError("'points' must be a nonempty list")
    N = doc.get("N", len(pts[0]))
    if mode == "exact":
        if any(isinstance(x, float) for p in pts for x in p):
            raise ParseError("float coordinate in an exact-mode point set")
        parsed = [[parse_rational(x) for x in p] for p in pts]
        out = PointSet(N, tuple(tuple(p) for p in parsed), "exact")
    elif mode == "float":
        if any(isinstance(x, str) for p in pts for x in p):
            raise ParseError("string coordinate in a float-mode point set")
        out = PointSet(N, tuple(tuple(float(x) for x in p) for p in pts), "float")
        out.validate_sphere(sphere_tol)
    else:
        raise ParseError(f"unknown mode {mode!r}")
    return out


@dataclass(frozen=True)
class DesignReport:
    M: int
    passed: bool
    residuals: dict[MultiIndex, object]  # lex-ordered; Fraction or float
    failing: tuple[MultiIndex, ...]
    max_abs_residual: object
    mode: str


def _target(m: MultiIndex, N: int, k: int) -> Fraction:
    if any(e & 1 for e in m):
        return Fraction(0)
    return k * moment_coeff(tuple(e >> 1 for e in m), N)


def design_check(S: PointSet, M: int, tol: float = DEFAULT_TOL) -> DesignReport:
    if M < 1:
        raise DomainError("strength M must be >= 1")
    basis = enumerate_multiindices(M, S.N)
    k = len(S)
    residuals: dict[MultiIndex, object] = {}
    if S.mode == "exact":
        # powers[j][i][e] = x_j[i] ** e
        powers = [[[x**e for e in range(M + 1)] for x in p] for p in S.points]
        for m in basis:
            total = Fraction(0)
            for pw in powers:
                term = Fraction(1)
                for i, e in enumerate(m):
                    term *= pw[i][e]
                total += term
            residuals[m] = total - _target(m, S.N, k)
        failing = tuple(m for m, r in residuals.items() if r != 0)
        worst = max((abs(r) for r in residuals.values()), default=Fraction(0))
    else:
        X = np.array(S.points, dtype=float)
        for m in basis:
            total = float(np.prod(X ** np.asarray(m, dtype=float), axis=1).sum())
            residuals[m] = total - float(_target(m, S.N, k))
        failing = tuple(m for m, r in residuals.items() if abs(r) > tol)
        worst = max(abs(r) for r in residuals.values())
    return DesignReport(M, not failing, residuals, failing, worst, S.mode)


def design_defect(S: PointSet, M: int) -> float:
    return float(design_check(S, M).max_abs_residual)


def integrate_over_sphere(F: Polynomial) -> Fraction:
    """Normalized sphere average of F."""
    total = Fraction(0)
    for m, c in F.items():
        if not any(e & 1 for e in m):
            total += c * moment_coeff(tuple(e >> 1 for e in m), F.N)
    return total


def _signed_combinations(N: int):
    for bits in range(2**N):
        yield tuple(-1 if bits >> (N - 1 - i) & 1 else 1 for i in range(N))


def reference_configuration(name: str, N: int, n: int | None = None) -> PointSet:
    """Standard point sets: cross-polytope, hypercube, regular-ngon, simplex."""
    if N < 2:
        raise DomainError("N must be >= 2")
    if name == "cross-polytope":
        pts = []
        for i in range(N):
            for s in (1, -1):
                pts.append([Fraction(s if j == i else 0) for j in range(N)])
        return PointSet.exact(pts)
    if name == "hypercube":
        r = isqrt(N)
        if r * r == N:
            return PointSet.exact([[Fraction(s, r) for s in signs] for signs in _signed_combinations(N)])
        c = 1.0 / np.sqrt(N)
        return PointSet.floating([[s * c for s in signs] for signs in _signed_combinations(N)])
    if name == "regular-ngon":
        if N != 2:
            raise DomainError("regular-ngon lives in N = 2")
        if n is None or n < 3:
            raise DomainError("regular-ngon needs n >= 3")
        t = 2 * np.pi * np.arange(n) / n
        return PointSet.floating(np.column_stack([np.cos(t), np.sin(t)]).tolist())
    if name == "simplex":
        # centered standard basis of R^(N+1), written in an orthonormal basis of its hyperplane
        E = np.eye(N + 1) - 1.0 / (N + 1)
        Q, _ = np.linalg.qr(E[:, :N])
        pts = E @ Q
        pts /= np.linalg.norm(pts, axis=1, keepdims=True)
        return PointSet.floating(pts.tolist())
    raise DomainError(f"unsupported configuration {name!r}")
