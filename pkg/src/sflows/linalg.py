"""Exact linear algebra over Q, F_p and Z.

Everything here works on Python integers (and ``Fraction`` where a field is
needed); there is no floating point.  Matrices are small and dense.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .errors import NotPrime


@dataclass(frozen=True)
class ExactMatrix:
    """Dense integer matrix; ``ncols`` is explicit so 0-row matrices work."""

    entries: tuple[tuple[int, ...], ...]
    ncols: int

    def __post_init__(self):
        for row in self.entries:
            if len(row) != self.ncols:
                raise ValueError(f"row of length {len(row)} in a matrix with {self.ncols} columns")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], ncols: Optional[int] = None) -> "ExactMatrix":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix without rows")
            ncols = len(rows[0])
        return cls(rows, ncols)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]], nrows: int) -> "ExactMatrix":
        return cls(tuple(tuple(int(c[i]) for c in cols) for i in range(nrows)), len(cols))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "ExactMatrix":
        return cls(tuple((0,) * ncols for _ in range(nrows)), ncols)

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.ncols)]

    def select_columns(self, idx: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix(tuple(tuple(row[j] for j in idx) for row in self.entries), len(idx))

    def select_rows(self, idx: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix(tuple(self.entries[i] for i in idx), self.ncols)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(tuple(self.columns()), self.nrows)

    def matvec(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(a * b for a, b in zip(row, x)) for row in self.entries)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def _as_matrix(m) -> ExactMatrix:
    return m if isinstance(m, ExactMatrix) else ExactMatrix.from_rows(m)


# -- rational rank ---------------------------------------------------------

def _bareiss(rows: list[list[int]], ncols: int) -> tuple[int, list[list[int]], list[int]]:
    """Fraction-free forward elimination in place.

    Returns (rank, rows, pivot_columns); the first ``rank`` rows are the
    echelon rows.
    """
    nrows = len(rows)
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, nrows):
            a = rows[i][c]
            row_i = rows[i]
            row_r = rows[r]
            for k in range(c, ncols):
                row_i[k] = (piv * row_i[k] - a * row_r[k]) // prev
        prev = piv
        pivots.append(c)
        r += 1
    return r, rows, pivots


def rank_rational(m) -> int:
    m = _as_matrix(m)
    if m.nrows == 0 or m.ncols == 0:
        return 0
    return _bareiss([list(r) for r in m.entries], m.ncols)[0]


def determinant(m) -> int:
    m = _as_matrix(m)
    n = m.nrows
    if n != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    rows = [list(r) for r in m.entries]
    sign = 1
    prev = 1
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            sign = -sign
        piv = rows[c][c]
        for i in range(c + 1, n):
            a = rows[i][c]
            for k in range(c, n):
                rows[i][k] = (piv * rows[i][k] - a * rows[c][k]) // prev
        prev = piv
    return sign * rows[n - 1][n - 1]


def rref_rational(m) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q with zero rows dropped."""
    m = _as_matrix(m)
    rows = [[Fraction(x) for x in r] for r in m.entries]
    pivots = []
    r = 0
    for c in range(m.ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                a = rows[i][c]
                rows[i] = [x - a * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


# -- prime fields ----------------------------------------------------------

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_between(lo: int, hi: int) -> list[int]:
    """Primes p with lo < p <= hi."""
    return [p for p in range(max(lo + 1, 2), hi + 1) if is_prime(p)]


def _rref_mod_p(m: ExactMatrix, p: int) -> tuple[list[list[int]], list[int]]:
    rows = [[x % p for x in r] for r in m.entries]
    pivots = []
    r = 0
    for c in range(m.ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            a = rows[i][c]
            if i != r and a:
                rows[i] = [(x - a * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rank_mod_p(m, p: int) -> int:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    return len(_rref_mod_p(_as_matrix(m), p)[1])


def kernel_basis_mod_p(m, p: int) -> list[tuple[int, ...]]:
    """Basis of {x : m x = 0 mod p}, one vector per free column.

    Each basis vector has a 1 in its free column and zeros in the other free
    columns (reduced echelon parameterization).
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    m = _as_matrix(m)
    rows, pivots = _rref_mod_p(m, p)
    free = [j for j in range(m.ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * m.ncols
        v[f] = 1
        for row, pc in zip(rows, pivots):
            v[pc] = (-row[f]) % p
        basis.append(tuple(v))
    return basis


# -- Smith normal form -----------------------------------------------------

@dataclass(frozen=True)
class SmithForm:
    """Nonzero invariant factors d_1 | d_2 | ... | d_r.

    When requested, ``left`` and ``right`` are unimodular with
    ``left * m * right`` diagonal.
    """

    diagonal: tuple[int, ...]
    left: Optional[ExactMatrix] = None
    right: Optional[ExactMatrix] = None

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d > 1)


def smith_normal_form(m, transforms: bool = False) -> SmithForm:
    m = _as_matrix(m)
    a = [list(r) for r in m.entries]
    nr, nc = m.nrows, m.ncols
    left = [[int(i == j) for j in range(nr)] for i in range(nr)] if transforms else None
    right = [[int(i == j) for j in range(nc)] for i in range(nc)] if transforms else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if left is not None:
            left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        if right is not None:
            for row in right:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst -= k * row_src
        a[dst] = [x - k * y for x, y in zip(a[dst], a[src])]
        if left is not None:
            left[dst] = [x - k * y for x, y in zip(left[dst], left[src])]

    def add_col(dst, src, k):  # col_dst -= k * col_src
        for row in a:
            row[dst] -= k * row[src]
        if right is not None:
            for row in right:
                row[dst] -= k * row[src]

    diag = []
    t = 0
    while t < min(nr, nc):
        # smallest |entry| in the trailing block, ties broken row-major
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                x = a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            piv = a[t][t]
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    add_row(i, t, a[i][t] // piv)
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, nc):
                if a[t][j]:
                    add_col(j, t, a[t][j] // piv)
                    if a[t][j]:
                        dirty = True
            if not dirty:
                # pivot must divide the whole trailing block
                bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % piv), None)
                if bad is None:
                    break
                for k in range(nc):
                    a[t][k] += a[bad[0]][k]
                if left is not None:
                    left[t] = [x + y for x, y in zip(left[t], left[bad[0]])]
                continue
            # move the smallest remainder in row/column t to the pivot
            cands = [(abs(a[i][t]), i, t) for i in range(t, nr) if a[i][t]]
            cands += [(abs(a[t][j]), t, j) for j in range(t, nc) if a[t][j]]
            _, i, j = min(cands)
            swap_rows(t, i)
            swap_cols(t, j)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if left is not None:
                left[t] = [-x for x in left[t]]
        diag.append(a[t][t])
        t += 1
    sf = SmithForm(tuple(diag))
    if transforms:
        sf = SmithForm(tuple(diag), ExactMatrix.from_rows(left, nr), ExactMatrix.from_rows(right, nc))
    return sf


def kernel_count_from_factors(ncols: int, factors: Sequence[int], q: int) -> int:
    """|ker mod q| for a matrix with ``ncols`` columns and these invariant factors."""
    count = q ** (ncols - len(factors))
    for d in factors:
        count *= math.gcd(d, q)
    return count


def kernel_count_mod_q(m, q: int) -> int:
    if q < 2:
        raise ValueError("q must be at least 2")
    m = _as_matrix(m)
    return kernel_count_from_factors(m.ncols, smith_normal_form(m).diagonal, q)


# -- subdeterminant bounds -------------------------------------------------

def hadamard_bound(m) -> int:
    """Upper bound on |det| of every square submatrix.

    For each size k up to the rank, a k x k minor is bounded by the product of
    its column norms and by the product of its row norms; each norm is taken
    over the k largest squared entries of that line and the k largest lines
    are used.  The result is the ceiling of the largest bound.
    """
    m = _as_matrix(m)
    r = rank_rational(m)
    if r == 0:
        return 0

    def line_norms_sq(lines, k):
        return sorted((sum(sorted((x * x for x in ln), reverse=True)[:k]) for ln in lines), reverse=True)[:k]

    cols = m.columns()
    rows = list(m.entries)
    best = 1
    for k in range(1, r + 1):
        by_cols = math.prod(line_norms_sq(cols, k))
        by_rows = math.prod(line_norms_sq(rows, k))
        best = max(best, math.isqrt(min(by_cols, by_rows) - 1) + 1)
    return best


def dimension_bound(d: int) -> int:
    """The coarse static bound ceil((d+1)^((d+1)/2)) for a d-dimensional complex."""
    n = d + 1
    sq = n ** n  # bound squared
    return math.isqrt(sq - 1) + 1


def max_subdeterminant(m, limit: int = 20000) -> Optional[int]:
    """Exact max |det| over all square submatrices, or None past ``limit`` minors."""
    m = _as_matrix(m)
    r = rank_rational(m)
    total = sum(math.comb(m.nrows, k) * math.comb(m.ncols, k) for k in range(1, r + 1))
    if total > limit:
        return None
    best = 0
    for k in range(1, r + 1):
        for cs in combinations(range(m.ncols), k):
            sub = m.select_columns(cs)
            for rs in combinations(range(m.nrows), k):
                rows = [sub.entries[i] for i in rs]
                if any(not any(row) for row in rows):
                    continue
                best = max(best, abs(determinant(ExactMatrix(tuple(rows), k))))
    return best


# -- incremental lattice (column span over Z) ------------------------------

class ColumnLattice:
    """Integer span of a growing set of vectors, kept in echelon form.

    ``add`` returns a new lattice, so branches of a search can share state.
    """

    __slots__ = ("dim", "basis", "unit_pivots")

    def __init__(self, dim: int, basis: Optional[dict[int, tuple[int, ...]]] = None, unit_pivots: bool = True):
        self.dim = dim
        self.basis = basis or {}
        self.unit_pivots = unit_pivots

    @property
    def rank(self) -> int:
        return len(self.basis)

    def add(self, v: Sequence[int]) -> "ColumnLattice":
        basis = dict(self.basis)
        unit = self.unit_pivots
        v = list(v)
        i = 0
        n = self.dim
        while True:
            while i < n and v[i] == 0:
                i += 1
            if i == n:
                break
            b = basis.get(i)
            if b is None:
                if v[i] < 0:
                    v = [-x for x in v]
                basis[i] = tuple(v)
                if v[i] != 1:
                    unit = False
                break
            bi, vi = b[i], v[i]
            if vi % bi == 0:
                k = vi // bi
                v = [x - k * y for x, y in zip(v, b)]
                continue
            g, s, t = _ext_gcd(bi, vi)
            new_b = [s * x + t * y for x, y in zip(b, v)]
            v = [(vi // g) * x - (bi // g) * y for x, y in zip(b, v)]
            if new_b[i] < 0:
                new_b = [-x for x in new_b]
            basis[i] = tuple(new_b)
            if new_b[i] != 1:
                unit = False
        return ColumnLattice(n, basis, unit)

    def invariant_factors(self) -> tuple[int, ...]:
        if not self.basis:
            return ()
        if self.unit_pivots:
            return (1,) * len(self.basis)
        return smith_normal_form(ExactMatrix(tuple(self.basis.values()), self.dim)).diagonal


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) > 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        k, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - k * s1
        t0, t1 = t1, t0 - k * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0
