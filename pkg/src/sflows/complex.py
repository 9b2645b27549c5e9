"""Pure simplicial complexes given by their facets.

Faces are plain tuples of strictly increasing vertex ids.  Only facets are
stored; lower faces (ridges, links) are derived on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Iterable, Optional

from .errors import ConeApex, DuplicateVertexInFacet, EmptyInput, MixedDimension, ParseError, UnknownVertex

Face = tuple[int, ...]


def face_label(face: Face) -> str:
    """Compact label used in tables and JSON: ``(1, 2, 4) -> "1-2-4"``."""
    return "-".join(str(v) for v in face)


@dataclass(frozen=True)
class SimplicialComplex:
    facets: tuple[Face, ...]

    def __post_init__(self):
        if not self.facets:
            raise EmptyInput("a complex needs at least one facet")
        canon = []
        for f in self.facets:
            f = tuple(int(v) for v in f)
            if len(set(f)) != len(f):
                raise DuplicateVertexInFacet(f"facet {f} repeats a vertex")
            if any(v < 0 for v in f):
                raise ParseError(f"facet {f} has a negative vertex id")
            canon.append(tuple(sorted(f)))
        sizes = {len(f) for f in canon}
        if len(sizes) != 1:
            raise MixedDimension(f"facets have differing sizes {sorted(sizes)}")
        if 0 in sizes:
            raise EmptyInput("facets must be nonempty")
        object.__setattr__(self, "facets", tuple(sorted(set(canon))))

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[int]]) -> "SimplicialComplex":
        return cls(tuple(tuple(f) for f in facets))

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for f in self.facets for v in f}))

    @property
    def dimension(self) -> int:
        return len(self.facets[0]) - 1

    def to_text(self) -> str:
        return "".join(" ".join(map(str, f)) + "\n" for f in self.facets)

    def __len__(self) -> int:
        return len(self.facets)

    def __hash__(self) -> int:
        return hash(self.facets)


def parse_complex(text: str) -> SimplicialComplex:
    """Parse the facet-list format: one facet per line, '#' starts a comment."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer token in {raw!r}") from None
    if not rows:
        raise EmptyInput("no facets found")
    for lineno, row in enumerate(rows, 1):
        if len(set(row)) != len(row):
            raise DuplicateVertexInFacet(f"facet {row} repeats a vertex")
    if len({len(r) for r in rows}) != 1:
        raise MixedDimension(f"facet sizes differ: {sorted({len(r) for r in rows})}")
    return SimplicialComplex.from_facets(rows)


def load_complex(path: str | Path) -> SimplicialComplex:
    return parse_complex(Path(path).read_text())


def ridges(c: SimplicialComplex) -> list[Face]:
    out = {r for f in c.facets for r in combinations(f, len(f) - 1)}
    return sorted(out)


def _check_vertex(c: SimplicialComplex, v: int) -> None:
    if v not in c.vertices:
        raise UnknownVertex(f"vertex {v} is not in the complex")


def link(c: SimplicialComplex, v: int) -> SimplicialComplex:
    _check_vertex(c, v)
    return SimplicialComplex(tuple(tuple(x for x in f if x != v) for f in c.facets if v in f))


def deletion(c: SimplicialComplex, v: int) -> SimplicialComplex:
    _check_vertex(c, v)
    rest = tuple(f for f in c.facets if v not in f)
    if not rest:
        raise ConeApex(f"every facet contains {v}; the deletion has no facets")
    return SimplicialComplex(rest)


def cone_apex(c: SimplicialComplex) -> Optional[int]:
    common = set(c.facets[0]).intersection(*c.facets[1:])
    return min(common) if common else None


def cone_over(c: SimplicialComplex, apex: Optional[int] = None) -> SimplicialComplex:
    """Cone with a fresh apex (default: one more than the largest vertex)."""
    if apex is None:
        apex = c.vertices[-1] + 1
    elif apex in c.vertices:
        raise ParseError(f"apex {apex} already a vertex")
    return SimplicialComplex(tuple(f + (apex,) for f in c.facets))


def relabel_to_max(c: SimplicialComplex, v: int) -> tuple[SimplicialComplex, dict[int, int]]:
    """Rename ``v`` so that it becomes the largest vertex; other ids are kept.

    Returns the relabelled complex and the old -> new vertex map.
    """
    _check_vertex(c, v)
    top = c.vertices[-1]
    mapping = {u: u for u in c.vertices}
    if v != top:
        mapping[v] = top + 1
    return SimplicialComplex(tuple(tuple(mapping[u] for u in f) for f in c.facets)), mapping
