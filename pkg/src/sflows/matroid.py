"""Column matroids over Q and their Tutte polynomials.

The Tutte polynomial is computed by deletion-contraction.  Every minor is
stored as the integer-scaled reduced row echelon form of its columns, which
doubles as the memo key: two minors with the same column space relations
share one entry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Hashable, Mapping, Optional, Sequence

from .errors import GroundSetTooLarge, LabelMismatch, LoopContraction, UnknownElement, ZeroSigmaTau
from .linalg import ExactMatrix, rank_rational, rref_rational

DEFAULT_GROUND_LIMIT = 24


class BivariatePolynomial:
    """Integer polynomial in x and y, stored sparsely as {(i, j): coeff}."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Optional[Mapping[tuple[int, int], int]] = None):
        self.coeffs = {k: int(v) for k, v in (coeffs or {}).items() if v}

    @classmethod
    def constant(cls, c: int) -> "BivariatePolynomial":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c: int = 1) -> "BivariatePolynomial":
        return cls({(i, j): c})

    def __add__(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return BivariatePolynomial(out)

    def __mul__(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        out: dict[tuple[int, int], int] = {}
        for (a, b), u in self.coeffs.items():
            for (c, d), v in other.coeffs.items():
                out[(a + c, b + d)] = out.get((a + c, b + d), 0) + u * v
        return BivariatePolynomial(out)

    def shift(self, i: int, j: int) -> "BivariatePolynomial":
        """Multiply by x^i y^j."""
        return BivariatePolynomial({(a + i, b + j): v for (a, b), v in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, BivariatePolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self) -> str:
        return f"BivariatePolynomial({self.to_string()})"

    def coefficient(self, i: int, j: int) -> int:
        return self.coeffs.get((i, j), 0)

    def evaluate(self, x, y):
        return sum(c * x**i * y**j for (i, j), c in self.coeffs.items())

    def to_records(self) -> list[tuple[int, int, int]]:
        """(x_deg, y_deg, coefficient) sorted by total degree, then x degree."""
        return [(i, j, c) for (i, j), c in sorted(self.coeffs.items(), key=lambda kv: (sum(kv[0]), kv[0][0]))]

    def to_string(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, j, c in reversed(self.to_records()):
            mono = "*".join(p for p in (_power("x", i), _power("y", j)) if p)
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")


def _power(var: str, k: int) -> str:
    return "" if k == 0 else var if k == 1 else f"{var}^{k}"


@dataclass(frozen=True)
class ColumnMatroid:
    """Linear matroid on the columns of an integer matrix."""

    matrix: ExactMatrix
    labels: tuple[Hashable, ...]
    _rank_cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def ground_set(self) -> tuple[Hashable, ...]:
        return self.labels

    def __len__(self) -> int:
        return len(self.labels)

    def _index(self, e) -> int:
        try:
            return self.labels.index(e)
        except ValueError:
            raise UnknownElement(f"{e!r} is not in the ground set") from None

    def rank(self, subset: Optional[Sequence[Hashable]] = None) -> int:
        idx = tuple(range(len(self.labels))) if subset is None else tuple(sorted(self._index(e) for e in subset))
        if idx not in self._rank_cache:
            self._rank_cache[idx] = rank_rational(self.matrix.select_columns(idx))
        return self._rank_cache[idx]

    def is_loop(self, e) -> bool:
        return self.rank([e]) == 0

    def is_coloop(self, e) -> bool:
        self._index(e)
        rest = [x for x in self.labels if x != e]
        return self.rank(rest) == self.rank() - 1

    def delete(self, e) -> "ColumnMatroid":
        j = self._index(e)
        keep = [k for k in range(len(self.labels)) if k != j]
        return ColumnMatroid(self.matrix.select_columns(keep), tuple(self.labels[k] for k in keep))

    def contract(self, e) -> "ColumnMatroid":
        j = self._index(e)
        if self.is_loop(e):
            raise LoopContraction(f"{e!r} is a loop; contracting a loop is deleting it")
        rows = _quotient([list(r) for r in self.matrix.entries], j)
        keep = [k for k in range(len(self.labels)) if k != j]
        return ColumnMatroid(ExactMatrix.from_rows(rows, len(keep)), tuple(self.labels[k] for k in keep))


def column_matroid(m: ExactMatrix, labels: Optional[Sequence[Hashable]] = None) -> ColumnMatroid:
    if labels is None:
        labels = range(m.ncols)
    labels = tuple(labels)
    if len(labels) != m.ncols:
        raise LabelMismatch(f"{len(labels)} labels for {m.ncols} columns")
    if len(set(labels)) != len(labels):
        raise LabelMismatch("labels must be distinct")
    return ColumnMatroid(m, labels)


def _quotient(rows: list[list[int]], j: int) -> list[list[int]]:
    """Quotient the column space by column j, then drop column j.

    Uses the first row where column j is nonzero as the pivot; the pivot row
    disappears.  Rows are kept primitive to stop coefficient growth.
    """
    i = next(k for k, r in enumerate(rows) if r[j])
    piv = rows[i]
    a = piv[j]
    out = []
    for k, r in enumerate(rows):
        if k == i:
            continue
        b = r[j]
        new = [a * x - b * y for x, y in zip(r, piv)] if b else list(r)
        del new[j]
        out.append(_primitive(new))
    return out


def _primitive(row: list[int]) -> list[int]:
    g = math.gcd(*row)
    return [x // g for x in row] if g > 1 else row


# -- deletion-contraction ----------------------------------------------------

Key = tuple[int, tuple[tuple[int, ...], ...]]


def _canonical(rows: Sequence[Sequence[int]], ncols: int) -> Key:
    """Integer-scaled RREF: primitive rows, positive pivots, zero rows dropped."""
    if not rows or ncols == 0:
        return ncols, ()
    red, _ = rref_rational(ExactMatrix.from_rows(rows, ncols))
    out = []
    for r in red:
        den = math.lcm(*(x.denominator for x in r))
        out.append(tuple(_primitive([int(x * den) for x in r])))
    return ncols, tuple(out)


def _drop_column(key: Key, j: int) -> Key:
    n, rows = key
    return _canonical([r[:j] + r[j + 1:] for r in rows], n - 1)


def _contract_key(key: Key, j: int) -> Key:
    n, rows = key
    return _canonical(_quotient([list(r) for r in rows], j), n - 1)


def _classify(key: Key) -> tuple[list[int], list[int]]:
    """Loops and coloops of the canonical form, by column index."""
    n, rows = key
    loops = [j for j in range(n) if all(r[j] == 0 for r in rows)]
    coloops = []
    for r in rows:
        nz = [j for j, x in enumerate(r) if x]
        if len(nz) == 1:
            coloops.append(nz[0])
    return loops, coloops


def _strip(key: Key) -> tuple[Key, int, int]:
    """Remove every loop and coloop; returns (key, #coloops, #loops)."""
    n, rows = key
    loops, coloops = _classify(key)
    if not loops and not coloops:
        return key, 0, 0
    gone = set(loops) | set(coloops)
    keep = [j for j in range(n) if j not in gone]
    # rows with a single nonzero are exactly the coloop rows; what remains is
    # still a canonical reduced echelon form
    kept_rows = [tuple(r[j] for j in keep) for r in rows if sum(1 for x in r if x) > 1]
    return (len(keep), tuple(kept_rows)), len(coloops), len(loops)


def _tutte_rec(key: Key, memo: dict[Key, BivariatePolynomial]) -> BivariatePolynomial:
    key, nc, nl = _strip(key)
    hit = memo.get(key)
    if hit is None:
        if key[0] == 0:
            hit = BivariatePolynomial.constant(1)
        else:
            # after stripping, column 0 is neither a loop nor a coloop
            hit = _tutte_rec(_drop_column(key, 0), memo) + _tutte_rec(_contract_key(key, 0), memo)
        memo[key] = hit
    return hit.shift(nc, nl) if nc or nl else hit


def tutte(M: ColumnMatroid, limit: int = DEFAULT_GROUND_LIMIT, order: Optional[Sequence[Hashable]] = None) -> BivariatePolynomial:
    """Tutte polynomial by memoized deletion-contraction.

    ``order`` permutes the ground set before the recursion (the pivot is
    always the first remaining element); the result does not depend on it.
    """
    if len(M) > limit:
        raise GroundSetTooLarge(f"ground set has {len(M)} elements, limit is {limit}")
    m = M.matrix
    if order is not None:
        m = m.select_columns([M._index(e) for e in order])
    return _tutte_rec(_canonical(m.entries, m.ncols), {})


def corank_nullity_polynomial(M: ColumnMatroid) -> BivariatePolynomial:
    """Tutte polynomial straight from the subset sum; exponential in |E|."""
    n = len(M)
    r_full = rank_rational(M.matrix)
    total = BivariatePolynomial()
    # expand (x-1)^a (y-1)^b with binomials
    for k in range(n + 1):
        for subset in combinations(range(n), k):
            r = rank_rational(M.matrix.select_columns(subset))
            a, b = r_full - r, k - r
            total = total + BivariatePolynomial(
                {(i, j): math.comb(a, i) * math.comb(b, j) * (-1) ** (a - i + b - j) for i in range(a + 1) for j in range(b + 1)}
            )
    return total


def tg_evaluate(M: ColumnMatroid, sigma, tau, x, y, limit: int = DEFAULT_GROUND_LIMIT) -> Fraction:
    """Generalized Tutte-Grothendieck invariant with weights sigma, tau.

    Equals sigma^(|E|-r) * tau^r * T(x/tau, y/sigma).
    """
    sigma, tau = Fraction(sigma), Fraction(tau)
    if sigma == 0 or tau == 0:
        raise ZeroSigmaTau("sigma and tau must be nonzero")
    r = M.rank()
    t = tutte(M, limit)
    return sigma ** (len(M) - r) * tau**r * t.evaluate(Fraction(x) / tau, Fraction(y) / sigma)


def count_bases(M: ColumnMatroid) -> int:
    r = M.rank()
    return sum(1 for s in combinations(range(len(M)), r) if rank_rational(M.matrix.select_columns(s)) == r)
