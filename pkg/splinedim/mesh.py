"""Tetrahedral partitions: TETMESH parsing, face lattice, interior/boundary split.

Faces are keyed by sorted vertex-index tuples; every numbering downstream
derives from the lexicographic order of these keys.
"""
import logging
import re
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import MeshSyntaxError, MeshValidationError

log = logging.getLogger("mesh")

Point = Tuple[Fraction, Fraction, Fraction]
Tet = Tuple[int, int, int, int]
Face = Tuple[int, ...]

_RATIONAL = re.compile(r"^[+-]?\d+(/[+-]?\d+)?$")
_INDEX = re.compile(r"^\d+$")


def _sub(p: Point, q: Point) -> Point:
    return (p[0] - q[0], p[1] - q[1], p[2] - q[2])


def cross(u: Point, v: Point) -> Point:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def dot(u: Point, v: Point) -> Fraction:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def orientation(p0: Point, p1: Point, p2: Point, p3: Point) -> Fraction:
    """det[p1-p0, p2-p0, p3-p0]; zero iff the four points are coplanar."""
    return dot(cross(_sub(p1, p0), _sub(p2, p0)), _sub(p3, p0))


@dataclass(frozen=True)
class SimplicialComplex3:
    vertices: Tuple[Point, ...]
    tets: Tuple[Tet, ...]

    @classmethod
    def build(cls, vertices: Sequence[Sequence], tets: Sequence[Sequence[int]]) -> "SimplicialComplex3":
        verts = tuple(tuple(Fraction(c) for c in v) for v in vertices)
        for i, v in enumerate(verts):
            if len(v) != 3:
                raise MeshValidationError(f"vertex {i} has {len(v)} coordinates", category="syntax")
        ts = tuple(tuple(int(x) for x in t) for t in tets)
        seen: Dict[Tuple[int, ...], int] = {}
        n = len(verts)
        for ti, t in enumerate(ts):
            if len(t) != 4:
                raise MeshValidationError(f"tet {ti} has {len(t)} vertices", category="syntax")
            for x in t:
                if x < 0 or x >= n:
                    raise MeshValidationError(
                        f"tet {ti} references vertex {x}, only {n} vertices",
                        category="index_out_of_range",
                    )
            if len(set(t)) != 4:
                raise MeshValidationError(f"tet {ti} repeats a vertex: {t}", category="degenerate_tet")
            key = tuple(sorted(t))
            if key in seen:
                raise MeshValidationError(
                    f"tet {ti} duplicates tet {seen[key]}: {key}", category="duplicate_tet"
                )
            seen[key] = ti
            if orientation(*(verts[x] for x in t)) == 0:
                raise MeshValidationError(f"tet {ti} is degenerate (coplanar vertices)", category="degenerate_tet")
        return cls(vertices=verts, tets=ts)


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _parse_rational(tok: str, lineno: int) -> Fraction:
    if not _RATIONAL.match(tok):
        raise MeshSyntaxError(f"not an integer or p/q rational: {tok!r}", lineno)
    if "/" in tok:
        num, den = tok.split("/")
        if int(den) == 0:
            raise MeshSyntaxError(f"zero denominator in {tok!r}", lineno)
        return Fraction(int(num), int(den))
    return Fraction(int(tok))


def _header(lines: List[Tuple[int, str]], pos: int, word: str) -> Tuple[int, int]:
    if pos >= len(lines):
        last = lines[-1][0] if lines else 1
        raise MeshSyntaxError(f"expected '{word} <count>', got end of input", last)
    lineno, text = lines[pos]
    parts = text.split()
    if len(parts) != 2 or parts[0] != word or not _INDEX.match(parts[1]):
        raise MeshSyntaxError(f"expected '{word} <count>', got {text!r}", lineno)
    return int(parts[1]), pos + 1


def parse_mesh(text: str) -> SimplicialComplex3:
    """Parse TETMESH text into a validated complex; coordinates stay exact."""
    lines = [(i + 1, _strip(raw)) for i, raw in enumerate(text.splitlines())]
    lines = [(n, s) for n, s in lines if s]

    if not lines or lines[0][1].split() != ["tetmesh", "1"]:
        raise MeshSyntaxError("first line must be 'tetmesh 1'", lines[0][0] if lines else 1)

    nv, pos = _header(lines, 1, "vertices")
    vertices: List[Point] = []
    for _ in range(nv):
        if pos >= len(lines):
            raise MeshSyntaxError(f"expected {nv} vertex lines", lines[-1][0])
        lineno, s = lines[pos]
        toks = s.split()
        if len(toks) != 3:
            raise MeshSyntaxError(f"vertex line needs 3 coordinates, got {len(toks)}", lineno)
        vertices.append(tuple(_parse_rational(t, lineno) for t in toks))
        pos += 1

    nt, pos = _header(lines, pos, "tets")
    tets: List[Tet] = []
    for _ in range(nt):
        if pos >= len(lines):
            raise MeshSyntaxError(f"expected {nt} tet lines", lines[-1][0])
        lineno, s = lines[pos]
        toks = s.split()
        if len(toks) != 4 or not all(_INDEX.match(t) for t in toks):
            raise MeshSyntaxError(f"tet line needs 4 non-negative indices, got {s!r}", lineno)
        tets.append(tuple(int(t) for t in toks))
        pos += 1

    if pos < len(lines):
        raise MeshSyntaxError(f"unexpected trailing content {lines[pos][1]!r}", lines[pos][0])

    c = SimplicialComplex3.build(vertices, tets)
    log.debug("mesh_parsed", extra={"vertices": len(c.vertices), "tets": len(c.tets)})
    return c


def format_mesh(c: SimplicialComplex3, comment: str = "") -> str:
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append("tetmesh 1")
    out.append(f"vertices {len(c.vertices)}")
    for v in c.vertices:
        out.append(" ".join(str(x) for x in v))
    out.append(f"tets {len(c.tets)}")
    for t in c.tets:
        out.append(" ".join(str(x) for x in t))
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class FaceTables:
    complex: SimplicialComplex3
    tets: Tuple[Face, ...]
    triangles: Tuple[Face, ...]
    edges: Tuple[Face, ...]
    vertices: Tuple[int, ...]

    triangle_tets: Dict[Face, Tuple[int, ...]]
    edge_triangles: Dict[Face, Tuple[Face, ...]]
    vertex_edges: Dict[int, Tuple[Face, ...]]

    interior_triangle_set: frozenset
    interior_edge_set: frozenset
    interior_vertex_set: frozenset

    boundary_triangles: Tuple[Face, ...] = field(default=())

    @property
    def interior_triangles(self) -> Tuple[Face, ...]:
        return tuple(t for t in self.triangles if t in self.interior_triangle_set)

    @property
    def interior_edges(self) -> Tuple[Face, ...]:
        return tuple(e for e in self.edges if e in self.interior_edge_set)

    @property
    def interior_vertices(self) -> Tuple[int, ...]:
        return tuple(v for v in self.vertices if v in self.interior_vertex_set)

    @property
    def f(self) -> Tuple[int, int, int, int]:
        return (len(self.vertices), len(self.edges), len(self.triangles), len(self.tets))

    @property
    def f_interior(self) -> Tuple[int, int, int, int]:
        return (
            len(self.interior_vertex_set),
            len(self.interior_edge_set),
            len(self.interior_triangle_set),
            len(self.tets),
        )

    def is_interior(self, face) -> bool:
        if isinstance(face, int):
            return face in self.interior_vertex_set
        n = len(face)
        if n == 1:
            return face[0] in self.interior_vertex_set
        if n == 2:
            return face in self.interior_edge_set
        if n == 3:
            return face in self.interior_triangle_set
        return True

    def interior_triangles_of_edge(self, e: Face) -> Tuple[Face, ...]:
        return tuple(t for t in self.edge_triangles.get(e, ()) if t in self.interior_triangle_set)

    def interior_triangles_of_vertex(self, v: int) -> Tuple[Face, ...]:
        tris = set()
        for e in self.vertex_edges.get(v, ()):
            tris.update(self.interior_triangles_of_edge(e))
        return tuple(sorted(tris))

    def interior_edges_of_vertex(self, v: int) -> Tuple[Face, ...]:
        return tuple(e for e in self.vertex_edges.get(v, ()) if e in self.interior_edge_set)


def triangle_edges(t: Face) -> Tuple[Face, Face, Face]:
    """Edges of a sorted triangle (a,b,c) as (b,c), (a,c), (a,b): boundary signs +, -, +."""
    a, b, c = t
    return ((b, c), (a, c), (a, b))


def build_face_tables(c: SimplicialComplex3) -> FaceTables:
    tets = tuple(tuple(sorted(t)) for t in c.tets)

    tri_tets: Dict[Face, List[int]] = defaultdict(list)
    for ti, t in enumerate(tets):
        for tri in combinations(t, 3):
            tri_tets[tri].append(ti)

    for tri, owners in tri_tets.items():
        if len(owners) > 2:
            raise MeshValidationError(
                f"triangle {tri} lies in {len(owners)} tets {owners}", category="non_pseudomanifold"
            )

    triangles = tuple(sorted(tri_tets))
    edge_tris: Dict[Face, List[Face]] = defaultdict(list)
    for tri in triangles:
        for e in combinations(tri, 2):
            edge_tris[e].append(tri)
    edges = tuple(sorted(edge_tris))

    vert_edges: Dict[int, List[Face]] = defaultdict(list)
    for e in edges:
        for v in e:
            vert_edges[v].append(e)
    vertices = tuple(sorted(vert_edges))

    unused = len(c.vertices) - len(vertices)
    if unused:
        log.warning("unused_vertices", extra={"count": unused})

    boundary = tuple(t for t in triangles if len(tri_tets[t]) == 1)
    boundary_edges = set()
    boundary_verts = set()
    for t in boundary:
        boundary_edges.update(combinations(t, 2))
        boundary_verts.update(t)

    tables = FaceTables(
        complex=c,
        tets=tets,
        triangles=triangles,
        edges=edges,
        vertices=vertices,
        triangle_tets={t: tuple(v) for t, v in tri_tets.items()},
        edge_triangles={e: tuple(v) for e, v in edge_tris.items()},
        vertex_edges={v: tuple(es) for v, es in vert_edges.items()},
        interior_triangle_set=frozenset(t for t in triangles if len(tri_tets[t]) == 2),
        interior_edge_set=frozenset(e for e in edges if e not in boundary_edges),
        interior_vertex_set=frozenset(v for v in vertices if v not in boundary_verts),
        boundary_triangles=boundary,
    )
    f, f0 = tables.f, tables.f_interior
    log.info(
        "faces_built",
        extra={"f": f, "f_interior": f0},
    )
    return tables


@dataclass(frozen=True)
class BallDiagnostics:
    euler: int
    euler_ok: bool
    boundary_closed: bool
    ok: bool
    messages: Tuple[str, ...]


def _link_connected(v: int, tris: Sequence[Face]) -> bool:
    # link of v in the boundary surface: one edge per boundary triangle
    adj: Dict[int, set] = defaultdict(set)
    for t in tris:
        a, b = [x for x in t if x != v]
        adj[a].add(b)
        adj[b].add(a)
    if not adj:
        return True
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(adj)


def check_ball_hypothesis(t: FaceTables) -> BallDiagnostics:
    """Necessary conditions for |Δ| to be a 3-ball: χ = 1 and a closed 2-manifold boundary.

    Failures are reported and logged, never raised.
    """
    f0, f1, f2, f3 = t.f
    euler = f0 - f1 + f2 - f3
    msgs: List[str] = []
    if euler != 1:
        msgs.append(f"Euler characteristic is {euler}, expected 1")

    per_edge: Dict[Face, int] = defaultdict(int)
    per_vertex: Dict[int, List[Face]] = defaultdict(list)
    for tri in t.boundary_triangles:
        for e in combinations(tri, 2):
            per_edge[e] += 1
        for v in tri:
            per_vertex[v].append(tri)

    closed = True
    bad_edges = sorted(e for e, n in per_edge.items() if n != 2)
    if bad_edges:
        closed = False
        msgs.append(f"{len(bad_edges)} boundary edges not in exactly 2 boundary triangles, e.g. {bad_edges[0]}")
    pinched = sorted(v for v, tris in per_vertex.items() if not _link_connected(v, tris))
    if pinched:
        closed = False
        msgs.append(f"boundary is pinched at vertices {pinched}")
    if not t.boundary_triangles:
        closed = False
        msgs.append("complex has no boundary triangles")

    ok = euler == 1 and closed
    diag = BallDiagnostics(euler=euler, euler_ok=euler == 1, boundary_closed=closed, ok=ok, messages=tuple(msgs))
    if not ok:
        log.warning("ball_hypothesis_failed", extra={"euler": euler, "boundary_closed": closed, "issues": list(msgs)})
    return diag


def face_key(text: str) -> Optional[Face]:
    """Parse an edge written as 'a-b' into its canonical key."""
    parts = text.strip().split("-")
    if len(parts) != 2 or not all(p.strip().isdigit() for p in parts):
        return None
    a, b = int(parts[0]), int(parts[1])
    return (min(a, b), max(a, b))
