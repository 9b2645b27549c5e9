"""Signed boundary matrix of a pure complex and its block layout around a cone vertex."""

from __future__ import annotations

from dataclasses import dataclass

from .complex import Face, SimplicialComplex, deletion, face_label, link, ridges
from .errors import NotMaxVertex, UnknownVertex
from .linalg import ExactMatrix


@dataclass(frozen=True)
class BoundaryMatrix:
    rows: tuple[Face, ...]
    cols: tuple[Face, ...]
    entries: tuple[tuple[int, ...], ...]

    @property
    def matrix(self) -> ExactMatrix:
        return ExactMatrix(self.entries, len(self.cols))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def entry(self, ridge: Face, facet: Face) -> int:
        return self.entries[self.rows.index(tuple(ridge))][self.cols.index(tuple(facet))]

    def block(self, rows: range, cols: range) -> list[list[int]]:
        return [[self.entries[i][j] for j in cols] for i in rows]

    def dump(self) -> str:
        """Tab-separated dump: header of facet labels, then one line per ridge."""
        lines = ["\t" + "\t".join(face_label(f) for f in self.cols)]
        for r, row in zip(self.rows, self.entries):
            lines.append(face_label(r) + "\t" + "\t".join(str(x) for x in row))
        return "\n".join(lines) + "\n"


def boundary_sign(facet: Face, ridge: Face) -> int:
    """(-1)^j where ridge is facet with its j-th vertex removed, else 0."""
    if len(ridge) != len(facet) - 1:
        return 0
    for j in range(len(facet)):
        if facet[:j] + facet[j + 1:] == ridge:
            return -1 if j % 2 else 1
    return 0


def _build(row_faces: list[Face], col_faces: list[Face]) -> BoundaryMatrix:
    index = {r: i for i, r in enumerate(row_faces)}
    grid = [[0] * len(col_faces) for _ in row_faces]
    for j, f in enumerate(col_faces):
        for k in range(len(f)):
            grid[index[f[:k] + f[k + 1:]]][j] = -1 if k % 2 else 1
    return BoundaryMatrix(tuple(row_faces), tuple(col_faces), tuple(tuple(r) for r in grid))


def boundary_matrix(c: SimplicialComplex) -> BoundaryMatrix:
    return _build(ridges(c), list(c.facets))


@dataclass(frozen=True)
class BlockDescriptor:
    """Index ranges of the block layout around a cone vertex.

    Rows: ``with_v`` (ridges containing v), ``in_link`` (ridges of the link),
    ``rest``.  Columns: ``star`` (facets containing v), ``away`` (the others).
    """

    vertex: int
    dimension: int
    with_v: range
    in_link: range
    rest: range
    star: range
    away: range


def cone_ordering(c: SimplicialComplex, v: int) -> tuple[BoundaryMatrix, BlockDescriptor]:
    if v not in c.vertices:
        raise UnknownVertex(f"vertex {v} is not in the complex")
    if v != c.vertices[-1]:
        raise NotMaxVertex(f"vertex {v} is not the largest vertex {c.vertices[-1]}; relabel first")
    all_ridges = ridges(c)
    star = [f for f in c.facets if v in f]
    link_faces = {f[:-1] for f in star}  # v is the last vertex of every facet containing it
    a = [r for r in all_ridges if v in r]
    b = [r for r in all_ridges if v not in r and r in link_faces]
    rest = [r for r in all_ridges if v not in r and r not in link_faces]
    away = [f for f in c.facets if v not in f]
    bm = _build(a + b + rest, star + away)
    na, nb = len(a), len(b)
    desc = BlockDescriptor(
        vertex=v,
        dimension=c.dimension,
        with_v=range(0, na),
        in_link=range(na, na + nb),
        rest=range(na + nb, len(all_ridges)),
        star=range(0, len(star)),
        away=range(len(star), len(c.facets)),
    )
    return bm, desc


def check_cone_blocks(c: SimplicialComplex, v: int) -> list[str]:
    """Check the block layout entry by entry; returns a list of violations."""
    bm, desc = cone_ordering(c, v)
    problems = []
    top_left = bm.block(desc.with_v, desc.star)
    lk = link(c, v)
    if c.dimension >= 1:
        expected = [list(r) for r in boundary_matrix(lk).entries]
        if top_left != expected:
            problems.append("top-left block differs from the link's boundary matrix")
    if any(any(r) for r in bm.block(desc.with_v, desc.away)):
        problems.append("top-right block is not zero")
    sign = -1 if desc.dimension % 2 else 1
    band = bm.block(desc.in_link, desc.star)
    ident = [[sign * int(i == j) for j in range(len(desc.star))] for i in range(len(desc.in_link))]
    if band != ident:
        problems.append("middle-left block is not (-1)^d * I")
    if any(any(r) for r in bm.block(desc.rest, desc.star)):
        problems.append("bottom-left block is not zero")
    if len(desc.away):
        dl = boundary_matrix(deletion(c, v))
        if bm.block(range(desc.in_link.start, desc.rest.stop), desc.away) != _restrict(dl, bm.rows[desc.in_link.start:]):
            problems.append("bottom-right block differs from the deletion's boundary matrix")
    return problems


def _restrict(dl: BoundaryMatrix, row_faces) -> list[list[int]]:
    # the deletion's rows may be a subset of the lower rows; absent rows are zero
    idx = {r: i for i, r in enumerate(dl.rows)}
    width = len(dl.cols)
    return [list(dl.entries[idx[r]]) if r in idx else [0] * width for r in row_faces]
