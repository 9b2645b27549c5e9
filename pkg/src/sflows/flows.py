"""Nowhere-zero Z_q-flows: verification, counting and the flow polynomial.

Three independent counting routes:

* ``brute_force_count``   exhaustive search over residue vectors (ground truth);
* ``inclusion_exclusion_count``  signed sum of kernel sizes over facet subsets,
  valid for every modulus;
* ``flow_polynomial``  signed Tutte evaluation, certified at safe primes.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, Optional, Sequence

from .boundary import BoundaryMatrix, boundary_matrix
from .complex import Face, SimplicialComplex
from .homology import betti_top
from .errors import IndexMismatch, NotPrime, WorkLimitExceeded
from .linalg import ColumnLattice, ExactMatrix, hadamard_bound, is_prime, kernel_basis_mod_p, kernel_count_from_factors, max_subdeterminant
from .matroid import DEFAULT_GROUND_LIMIT, column_matroid, tutte

DEFAULT_WORK_LIMIT = 2_000_000


@dataclass(frozen=True)
class FlowVector:
    values: tuple[int, ...]
    q: int
    labels: tuple[Face, ...]

    def as_dict(self) -> dict[Face, int]:
        return dict(zip(self.labels, self.values))


@dataclass(frozen=True)
class FlowReport:
    ok: bool
    bad_ridges: tuple[Face, ...]
    zero_facets: tuple[Face, ...]


@dataclass(frozen=True)
class FlowCount:
    q: int
    count: int
    method: str
    flows: Optional[tuple[tuple[int, ...], ...]] = None


def verify_flow(c: SimplicialComplex, q: int, values: Sequence[int] | FlowVector) -> FlowReport:
    if isinstance(values, FlowVector):
        if values.labels != c.facets:
            raise IndexMismatch("flow labels do not match the facets")
        values = values.values
    if q < 2:
        raise ValueError("q must be at least 2")
    if len(values) != len(c.facets):
        raise IndexMismatch(f"{len(values)} values for {len(c.facets)} facets")
    bm = boundary_matrix(c)
    bad = tuple(r for r, row in zip(bm.rows, bm.entries) if sum(a * x for a, x in zip(row, values)) % q)
    zeros = tuple(f for f, x in zip(c.facets, values) if x % q == 0)
    return FlowReport(not bad and not zeros, bad, zeros)


# -- brute force -------------------------------------------------------------

def _closing_rows(bm: BoundaryMatrix) -> list[list[tuple[int, ...]]]:
    """For each column j, the rows whose last nonzero column is j."""
    out: list[list[tuple[int, ...]]] = [[] for _ in bm.cols]
    for row in bm.entries:
        nz = [j for j, a in enumerate(row) if a]
        if nz:
            out[nz[-1]].append(row)
    return out


def _search(bm: BoundaryMatrix, q: int, prefix: list[int], budget: list[int], keep: bool) -> tuple[int, list]:
    """Depth-first scan of nowhere-zero vectors in lexicographic order.

    A partial vector is abandoned as soon as some row has all its columns
    assigned and a nonzero sum mod q; when a row has one column left, that
    column's value is forced (entries are +-1, hence units).
    """
    n = len(bm.cols)
    closing = _closing_rows(bm)
    values = list(prefix) + [0] * (n - len(prefix))
    found: list[tuple[int, ...]] = []
    count = 0

    def forced(j):
        # value the rows closing at j demand for column j, or None if free
        need = None
        for row in closing[j]:
            s = sum(row[k] * values[k] for k in range(j)) % q
            want = (-s * row[j]) % q  # row[j] is +-1, its own inverse
            if need is None:
                need = want
            elif need != want:
                return -1
        return need

    def rec(j):
        nonlocal count
        budget[0] -= 1
        if budget[0] < 0:
            raise WorkLimitExceeded("brute-force search exceeded the work limit")
        if j == n:
            count += 1
            if keep:
                found.append(tuple(values))
            return
        need = forced(j)
        if need == -1 or need == 0:
            return
        choices = range(1, q) if need is None else (need,)
        for x in choices:
            values[j] = x
            rec(j + 1)
        values[j] = 0

    start = len(prefix)
    # the prefix must itself be consistent
    for j in range(start):
        need = forced(j)
        if need is not None and need != values[j]:
            return 0, []
    rec(start)
    return count, found


def brute_force_count(
    c: SimplicialComplex,
    q: int,
    enumerate_flows: bool = False,
    work_limit: int = DEFAULT_WORK_LIMIT,
    strategy: str = "search",
    threads: int = 1,
) -> FlowCount:
    """Count nowhere-zero Z_q-flows directly from the definition.

    ``strategy="search"`` scans residue vectors with early rejection (any q);
    ``strategy="kernel"`` walks all p^k combinations of a kernel basis mod a
    prime p.  Work beyond ``work_limit`` visited nodes raises.
    """
    if q < 2:
        raise ValueError("q must be at least 2")
    bm = boundary_matrix(c)
    if strategy == "kernel":
        return _kernel_scan(bm, q, enumerate_flows, work_limit)
    if strategy != "search":
        raise ValueError(f"unknown strategy {strategy!r}")
    n = len(bm.cols)
    if threads <= 1 or n == 0:
        count, found = _search(bm, q, [], [work_limit], enumerate_flows)
    else:
        # partition on the first facet's value; each branch gets the full budget
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda x: _search(bm, q, [x], [work_limit], enumerate_flows), range(1, q)))
        count = sum(p[0] for p in parts)
        found = [f for p in parts for f in p[1]]
    return FlowCount(q, count, "brute", tuple(found) if enumerate_flows else None)


def _kernel_scan(bm: BoundaryMatrix, p: int, keep: bool, work_limit: int) -> FlowCount:
    if not is_prime(p):
        raise NotPrime(f"the kernel scan needs a prime modulus, got {p}")
    basis = kernel_basis_mod_p(bm.matrix, p)
    if p ** len(basis) > work_limit:
        raise WorkLimitExceeded(f"{p}^{len(basis)} kernel elements exceed the work limit")
    n = len(bm.cols)
    found = []
    for coeffs in product(range(p), repeat=len(basis)):
        v = [0] * n
        for a, b in zip(coeffs, basis):
            if a:
                for k in range(n):
                    v[k] += a * b[k]
        v = tuple(x % p for x in v)
        if all(v):
            found.append(v)
    found.sort()
    return FlowCount(p, len(found), "brute", tuple(found) if keep else None)


def iter_flows(c: SimplicialComplex, q: int, work_limit: int = DEFAULT_WORK_LIMIT) -> Iterator[tuple[int, ...]]:
    yield from brute_force_count(c, q, enumerate_flows=True, work_limit=work_limit).flows


# -- inclusion-exclusion -----------------------------------------------------

@dataclass(frozen=True)
class KernelProfile:
    """Signed census of facet subsets for inclusion-exclusion.

    ``terms`` maps (|S|, invariant factors of the columns S) to the signed
    multiplicity sum of (-1)^(n-|S|).  The flow count at any q is then a
    finite sum, so a single pass over the 2^n subsets serves every modulus.
    """

    nfacets: int
    terms: tuple[tuple[int, tuple[int, ...], int], ...]

    def count(self, q: int) -> int:
        return sum(mult * kernel_count_from_factors(size, factors, q) for size, factors, mult in self.terms)


def matrix_profile(m: ExactMatrix) -> KernelProfile:
    """Walk all column subsets, tracking the integer span incrementally."""
    cols = m.columns()
    n = len(cols)
    census: dict[tuple[int, tuple[int, ...]], int] = {}

    def walk(j: int, lattice: ColumnLattice, size: int):
        if j == n:
            key = (size, lattice.invariant_factors())
            census[key] = census.get(key, 0) + (-1 if (n - size) % 2 else 1)
            return
        walk(j + 1, lattice, size)
        walk(j + 1, lattice.add(cols[j]), size + 1)

    walk(0, ColumnLattice(m.nrows), 0)
    terms = tuple(sorted((s, f, k) for (s, f), k in census.items() if k))
    return KernelProfile(n, terms)


@lru_cache(maxsize=64)
def _profile(c: SimplicialComplex) -> KernelProfile:
    return matrix_profile(boundary_matrix(c).matrix)


def kernel_profile(c: SimplicialComplex, work_limit: int = DEFAULT_WORK_LIMIT) -> KernelProfile:
    if 2 ** len(c.facets) > work_limit:
        raise WorkLimitExceeded(f"2^{len(c.facets)} subsets exceed the work limit {work_limit}")
    return _profile(c)


def inclusion_exclusion_count(c: SimplicialComplex, q: int, work_limit: int = DEFAULT_WORK_LIMIT) -> FlowCount:
    """Sum over facet subsets S of (-1)^(n-|S|) * #{Z_q-flows supported in S}."""
    if q < 2:
        raise ValueError("q must be at least 2")
    return FlowCount(q, kernel_profile(c, work_limit).count(q), "incl-excl")


# -- flow polynomial ---------------------------------------------------------

@dataclass(frozen=True)
class FlowPolynomial:
    """Integer coefficients, constant term first; ``threshold`` bounds every
    subdeterminant of the boundary matrix, so primes above it are safe."""

    coefficients: tuple[int, ...]
    threshold: int
    threshold_exact: bool

    @property
    def degree(self) -> Optional[int]:
        return len(self.coefficients) - 1 if self.coefficients else None

    def __call__(self, q):
        return sum(a * q**k for k, a in enumerate(self.coefficients))

    def to_string(self, var: str = "q") -> str:
        terms = []
        for k in range(len(self.coefficients) - 1, -1, -1):
            a = self.coefficients[k]
            if not a:
                continue
            mono = "" if k == 0 else var if k == 1 else f"{var}^{k}"
            if not mono:
                terms.append(str(a))
            else:
                terms.append(mono if a == 1 else f"-{mono}" if a == -1 else f"{a}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _trim(p: list[int]) -> tuple[int, ...]:
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def safe_prime_threshold(bm: BoundaryMatrix, minor_limit: int = 20000) -> tuple[int, bool]:
    """(bound, exact): the exact largest |minor| when cheap, else the Hadamard bound."""
    exact = max_subdeterminant(bm.matrix, minor_limit)
    if exact is not None:
        return exact, True
    return hadamard_bound(bm.matrix), False


def flow_polynomial(c: SimplicialComplex, limit: int = DEFAULT_GROUND_LIMIT) -> FlowPolynomial:
    """(-1)^(|E|-r) * T(0, 1-q) expanded in q."""
    bm = boundary_matrix(c)
    M = column_matroid(bm.matrix, bm.cols)
    t = tutte(M, limit)
    sign = -1 if (len(M) - M.rank()) % 2 else 1
    poly = [0]
    one_minus_q = [1, -1]
    for (i, j), a in t.coeffs.items():
        if i:
            continue
        term = [a]
        for _ in range(j):
            term = _poly_mul(term, one_minus_q)
        poly = [x + y for x, y in zip(poly + [0] * (len(term) - len(poly)), term + [0] * (len(poly) - len(term)))]
    threshold, exact = safe_prime_threshold(bm)
    return FlowPolynomial(_trim([sign * a for a in poly]), threshold, exact)


def tutte_count(c: SimplicialComplex, q: int, limit: int = DEFAULT_GROUND_LIMIT) -> FlowCount:
    """Flow count from the flow polynomial; only certified for primes above the threshold."""
    return FlowCount(q, flow_polynomial(c, limit)(q), "tutte")


@dataclass(frozen=True)
class DegreeCheck:
    degree: Optional[int]
    betti: int
    equal: bool


def degree_check(c: SimplicialComplex, limit: int = DEFAULT_GROUND_LIMIT) -> DegreeCheck:
    p = flow_polynomial(c, limit)
    beta = betti_top(c)
    # the zero polynomial pairs with beta = 0 (no flows at all)
    equal = p.degree == beta if p.degree is not None else beta == 0
    return DegreeCheck(p.degree, beta, equal)
