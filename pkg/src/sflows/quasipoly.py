"""Quasipolynomial fitting of flow-count sequences by exact interpolation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .errors import InsufficientData, NoFit

Poly = tuple[Fraction, ...]  # coefficients, constant term first


def poly_eval(p: Sequence[Fraction], x) -> Fraction:
    acc = Fraction(0)
    for a in reversed(p):
        acc = acc * x + a
    return acc


def _trim(p: list[Fraction]) -> Poly:
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def interpolate(points: Sequence[tuple[int, int | Fraction]]) -> Poly:
    """Lagrange interpolation over Q; returns coefficients, constant first."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        # basis polynomial prod_{j != i} (x - xj) / (xi - xj)
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        scale = Fraction(yi) / denom
        for k, b in enumerate(basis):
            coeffs[k] += scale * b
    return _trim(coeffs)


@dataclass(frozen=True)
class Quasipolynomial:
    period: int
    constituents: tuple[Poly, ...]  # constituents[j] applies when q = j mod period

    def __call__(self, q: int) -> Fraction:
        return poly_eval(self.constituents[q % self.period], q)

    def degree(self, j: int) -> Optional[int]:
        p = self.constituents[j]
        return len(p) - 1 if p else None


def evaluate(qp: Quasipolynomial, q: int) -> Fraction:
    if q < 1:
        raise ValueError("q must be positive")
    return qp(q)


@dataclass(frozen=True)
class FitResult:
    quasipolynomial: Quasipolynomial
    samples_used: int
    verified_points: int


def _try_period(samples: dict[int, Fraction], k: int, max_degree: int) -> Optional[tuple[list[Poly], int]]:
    constituents = []
    verified = 0
    for j in range(k):
        pts = sorted((q, v) for q, v in samples.items() if q % k == j)
        need = max_degree + 2
        if len(pts) < need:
            raise InsufficientData(f"period {k}, class {j}: {len(pts)} samples, need {need}")
        p = interpolate(pts[: max_degree + 1])
        rest = pts[max_degree + 1:]
        if any(poly_eval(p, q) != v for q, v in rest):
            return None
        verified += len(rest)
        constituents.append(p)
    return constituents, verified


def fit(values: Iterable[tuple[int, int]], max_period: int = 6, max_degree: int = 3) -> FitResult:
    """Minimal-period quasipolynomial through all samples.

    Periods are tried in increasing order and the first that reproduces every
    held-out sample wins.  Each residue class is interpolated through its
    first ``max_degree + 1`` samples; the remainder verify the fit.
    """
    samples = {int(q): Fraction(v) for q, v in values}
    if not samples:
        raise InsufficientData("no samples")
    for k in range(1, max_period + 1):
        got = _try_period(samples, k, max_degree)
        if got is not None:
            constituents, verified = got
            return FitResult(Quasipolynomial(k, tuple(constituents)), len(samples), verified)
    raise NoFit(f"no period <= {max_period} with degree <= {max_degree} fits the samples")


def default_sample_range(max_period: int, max_degree: int) -> range:
    return range(2, 2 * (max_degree + 2) * max_period + 2)


def is_minimal(qp: Quasipolynomial, samples: Iterable[tuple[int, int]], max_degree: int) -> bool:
    """True when no proper divisor of the period reproduces the samples."""
    data = {int(q): Fraction(v) for q, v in samples}
    for k in range(1, qp.period):
        if qp.period % k == 0 and _try_period(data, k, max_degree) is not None:
            return False
    return True


@dataclass(frozen=True)
class AgreementReport:
    checked: tuple[int, ...]
    mismatches: tuple[tuple[int, Fraction, int], ...]  # (q, quasipolynomial value, polynomial value)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def coprime_agreement(qp: Quasipolynomial, poly: Callable[[int], int], qs: Iterable[int]) -> AgreementReport:
    checked = []
    bad = []
    for q in qs:
        if math.gcd(q, qp.period) != 1:
            continue
        checked.append(q)
        a, b = qp(q), poly(q)
        if a != b:
            bad.append((q, a, b))
    return AgreementReport(tuple(checked), tuple(bad))


def format_fraction(x: Fraction) -> int | str:
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
