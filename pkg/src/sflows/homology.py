"""Top-dimensional homology and pseudomanifold classification."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .boundary import boundary_matrix
from .complex import SimplicialComplex
from .linalg import is_prime, kernel_count_mod_q, rank_mod_p, rank_rational


def betti_top(c: SimplicialComplex) -> int:
    """dim ker of the top boundary map over Q (there are no (d+1)-faces)."""
    return len(c.facets) - rank_rational(boundary_matrix(c).matrix)


def top_homology_Z(c: SimplicialComplex) -> tuple[int, list[int]]:
    """(free rank, torsion) of H_d(c; Z).

    H_d is a subgroup of a free group, so the torsion list is always empty.
    """
    return betti_top(c), []


@dataclass(frozen=True)
class TopCycles:
    q: int
    count: int
    dimension: Optional[int]  # only for prime q


def top_homology_mod_q(c: SimplicialComplex, q: int) -> TopCycles:
    if q < 2:
        raise ValueError("q must be at least 2")
    m = boundary_matrix(c).matrix
    dim = len(c.facets) - rank_mod_p(m, q) if is_prime(q) else None
    return TopCycles(q, kernel_count_mod_q(m, q), dim)


@dataclass(frozen=True)
class ManifoldClass:
    pseudomanifold: bool
    closed: bool
    connected: bool
    orientable_over_Z: Optional[bool]
    betti_top: int

    def as_dict(self) -> dict:
        return {
            "pseudomanifold": self.pseudomanifold,
            "closed": self.closed,
            "connected": self.connected,
            "orientable": self.orientable_over_Z,
            "betti_top": self.betti_top,
        }


def ridge_degrees(c: SimplicialComplex) -> dict[tuple[int, ...], int]:
    deg: dict[tuple[int, ...], int] = {}
    for f in c.facets:
        for k in range(len(f)):
            r = f[:k] + f[k + 1:]
            deg[r] = deg.get(r, 0) + 1
    return deg


def is_strongly_connected(c: SimplicialComplex) -> bool:
    """Connectivity of the facet graph, facets adjacent when sharing a ridge."""
    by_ridge: dict[tuple[int, ...], list[int]] = {}
    for i, f in enumerate(c.facets):
        for k in range(len(f)):
            by_ridge.setdefault(f[:k] + f[k + 1:], []).append(i)
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        f = c.facets[i]
        for k in range(len(f)):
            for j in by_ridge[f[:k] + f[k + 1:]]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
    return len(seen) == len(c.facets)


def classify_manifold(c: SimplicialComplex) -> ManifoldClass:
    deg = ridge_degrees(c).values()
    pseudo = all(x <= 2 for x in deg)
    closed = pseudo and all(x == 2 for x in deg)
    connected = is_strongly_connected(c)
    beta = betti_top(c)
    orientable = (beta == 1) if closed and connected else None
    return ManifoldClass(pseudo, closed, connected, orientable, beta)


def manifold_flow_count(mc: ManifoldClass, q: int) -> Optional[int]:
    """Closed-form flow count for a connected pseudomanifold, else None.

    A closed non-orientable one carries exactly one nowhere-zero flow
    (all entries q/2) when q is even and none when q is odd.
    """
    if not (mc.pseudomanifold and mc.connected):
        return None
    if not mc.closed:
        return 0
    if mc.orientable_over_Z:
        return q - 1
    return 1 if q % 2 == 0 else 0


def flow_formula(mc: ManifoldClass) -> Optional[str]:
    """Human-readable form of ``manifold_flow_count`` for reports."""
    if not (mc.pseudomanifold and mc.connected):
        return None
    if not mc.closed:
        return "0"
    if mc.orientable_over_Z:
        return "q-1"
    return "1 if q even else 0"
