"""Upper and lower bounds on dim C^r_k from local plane counts.

upper_bound: ordered edge count s̃ (valid for every numbering)
upper_bound_free: local formula, a bound only when the spline module is free
lower_bound: ζ = min(3, t̃) forms per interior vertex
"""
import logging
import random
from dataclasses import dataclass, field
from itertools import permutations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import InvalidArgumentError
from .forms import LinearForm, binom, distinct_forms
from .ideals import ResolutionData, edge_ideal_dim_closed, froberg_sum, resolution_data
from .mesh import Face, FaceTables

log = logging.getLogger("bounds")

Forms = Mapping[Face, LinearForm]

EXHAUSTIVE_LIMIT = 8


@dataclass(frozen=True)
class EdgeProfile:
    edge: Face
    index: int
    s: int
    s_tilde: int
    res: Optional[ResolutionData]
    res_tilde: Optional[ResolutionData]


@dataclass(frozen=True)
class VertexProfile:
    vertex: int
    index: int
    t: int
    t_tilde: int
    zeta: int


@dataclass(frozen=True)
class BoundResult:
    k: int
    r: int
    lower: int
    upper_ordered: int
    upper_free: int
    free_certified: bool
    free_formula_exact: bool
    edge_ordering: Tuple[Face, ...]
    vertex_ordering: Tuple[int, ...]
    edge_orderings_tried: int = 0
    vertex_orderings_tried: int = 0
    notes: Tuple[str, ...] = field(default=())


def _check_ordering(ordering: Sequence, expected: Sequence, what: str) -> Tuple:
    ordering = tuple(ordering)
    if len(ordering) != len(expected) or set(ordering) != set(expected):
        raise InvalidArgumentError(
            f"{what} ordering must be a permutation of the {len(expected)} interior {what}s, got {list(ordering)}"
        )
    return ordering


def lex_edge_ordering(tables: FaceTables) -> Tuple[Face, ...]:
    return tables.interior_edges


def lex_vertex_ordering(tables: FaceTables) -> Tuple[int, ...]:
    return tables.interior_vertices


def input_edge_ordering(tables: FaceTables) -> Tuple[Face, ...]:
    """Interior edges by first appearance in the tet list."""
    out: List[Face] = []
    seen = set()
    for tet in tables.complex.tets:
        for a in range(4):
            for b in range(a + 1, 4):
                e = tuple(sorted((tet[a], tet[b])))
                if e in tables.interior_edge_set and e not in seen:
                    seen.add(e)
                    out.append(e)
    return tuple(out)


def _other_edges(tri: Face, e: Face) -> List[Face]:
    rest = [v for v in tri if v not in e]
    x = rest[0]
    return [tuple(sorted((e[0], x))), tuple(sorted((e[1], x)))]


def edge_profiles(tables: FaceTables, forms: Forms, ordering: Sequence[Face], r: int = None) -> List[EdgeProfile]:
    """s and s̃ per interior edge under `ordering`.

    s̃_i counts the distinct planes of interior triangles through τ_i whose
    two other edges are on the boundary or numbered before τ_i.
    """
    ordering = _check_ordering(ordering, tables.interior_edges, "edge")
    pos = {e: i for i, e in enumerate(ordering)}
    out = []
    for i, e in enumerate(ordering):
        tris = tables.interior_triangles_of_edge(e)
        s = len(distinct_forms(forms[t] for t in tris))
        qualifying = [
            t for t in tris
            if all(o not in pos or pos[o] < i for o in _other_edges(t, e))
        ]
        st = len(distinct_forms(forms[t] for t in qualifying))
        if s < 2:
            log.warning("edge_single_plane", extra={"edge": e, "s": s})
        out.append(
            EdgeProfile(
                edge=e,
                index=i,
                s=s,
                s_tilde=st,
                res=resolution_data(s, r) if (r is not None and s >= 1) else None,
                res_tilde=resolution_data(st, r) if (r is not None and st >= 1) else None,
            )
        )
    return out


def m_tilde_triangles(tables: FaceTables, ordering: Sequence[int]) -> Dict[int, Tuple[Face, ...]]:
    """Interior triangles through an edge of M̃(γ_i), per interior vertex.

    M̃(γ_i): interior edges from γ_i to a boundary vertex or to an earlier
    interior vertex.
    """
    ordering = _check_ordering(ordering, tables.interior_vertices, "vertex")
    pos = {v: i for i, v in enumerate(ordering)}
    out: Dict[int, Tuple[Face, ...]] = {}
    for i, v in enumerate(ordering):
        m_tilde = []
        for e in tables.interior_edges_of_vertex(v):
            other = e[0] if e[1] == v else e[1]
            if other not in pos or pos[other] < i:
                m_tilde.append(e)
        out[v] = tuple(sorted({tri for e in m_tilde for tri in tables.interior_triangles_of_edge(e)}))
    return out


def vertex_profiles(tables: FaceTables, forms: Forms, ordering: Sequence[int]) -> List[VertexProfile]:
    """t, t̃ and ζ per interior vertex under `ordering`."""
    ordering = _check_ordering(ordering, tables.interior_vertices, "vertex")
    restricted = m_tilde_triangles(tables, ordering)
    out = []
    for i, v in enumerate(ordering):
        t = len(distinct_forms(forms[tri] for tri in tables.interior_triangles_of_vertex(v)))
        tt = len(distinct_forms(forms[tri] for tri in restricted[v]))
        out.append(VertexProfile(vertex=v, index=i, t=t, t_tilde=tt, zeta=min(3, tt)))
    return out


def _base(tables: FaceTables, r: int, k: int) -> int:
    return binom(k + 3, 3) + tables.f_interior[2] * binom(k + 2 - r, 3)


def _edge_sum(tables: FaceTables, forms: Forms, r: int, k: int) -> int:
    total = 0
    for e in tables.interior_edges:
        s = len(distinct_forms(forms[t] for t in tables.interior_triangles_of_edge(e)))
        total += edge_ideal_dim_closed(s, r, k)
    return total


def _check_rk(r: int, k: int) -> None:
    if r < 0 or k < 0:
        raise InvalidArgumentError(f"need r >= 0 and k >= 0, got r={r}, k={k}")


def upper_bound_from_profiles(tables: FaceTables, profiles: Sequence[EdgeProfile], r: int, k: int) -> int:
    sub = sum(edge_ideal_dim_closed(p.s_tilde, r, k) for p in profiles)
    return _base(tables, r, k) - sub


def upper_bound(tables: FaceTables, forms: Forms, r: int, k: int, ordering: Sequence[Face] = None) -> int:
    _check_rk(r, k)
    if ordering is None:
        ordering = lex_edge_ordering(tables)
    return upper_bound_from_profiles(tables, edge_profiles(tables, forms, ordering, r), r, k)


def upper_bound_free(tables: FaceTables, forms: Forms, r: int, k: int) -> int:
    _check_rk(r, k)
    total = _base(tables, r, k) - _edge_sum(tables, forms, r, k)
    for v in tables.interior_vertices:
        t = len(distinct_forms(forms[tri] for tri in tables.interior_triangles_of_vertex(v)))
        total += binom(k + 3, 3) - froberg_sum(t, r + 1, k)
    return total


def lower_bound_from_profiles(
    tables: FaceTables, forms: Forms, profiles: Sequence[VertexProfile], r: int, k: int
) -> int:
    tail = tables.f_interior[2] * binom(k + 2 - r, 3) - _edge_sum(tables, forms, r, k)
    for p in profiles:
        tail += binom(k + 3, 3) - froberg_sum(p.zeta, r + 1, k)
    return binom(k + 3, 3) + max(0, tail)


def lower_bound(tables: FaceTables, forms: Forms, r: int, k: int, ordering: Sequence[int] = None) -> int:
    _check_rk(r, k)
    if ordering is None:
        ordering = lex_vertex_ordering(tables)
    return lower_bound_from_profiles(tables, forms, vertex_profiles(tables, forms, ordering), r, k)


def free_formula_exact(tables: FaceTables, forms: Forms) -> bool:
    """True when every interior vertex meets at most 3 planes (Fröberg count is exact there)."""
    return all(
        len(distinct_forms(forms[tri] for tri in tables.interior_triangles_of_vertex(v))) <= 3
        for v in tables.interior_vertices
    )


def _candidates(items: Tuple, budget: int, seed: int, greedy: Tuple) -> List[Tuple]:
    if len(items) <= EXHAUSTIVE_LIMIT:
        return list(permutations(items))
    rng = random.Random(seed)
    out = [greedy, items]
    seen = set(out)
    attempts = 0
    while len(out) < budget and attempts < budget * 4:
        attempts += 1
        cand = list(items)
        rng.shuffle(cand)
        cand = tuple(cand)
        if cand not in seen:
            seen.add(cand)
            out.append(cand)
    return out[:max(budget, 1)]


def _greedy_edges(tables: FaceTables, forms: Forms) -> Tuple[Face, ...]:
    # repeatedly place the edge whose s̃ is largest given what is already placed
    remaining = list(tables.interior_edges)
    placed: set = set()
    order: List[Face] = []
    while remaining:
        best, best_val = None, -1
        for e in remaining:
            tris = tables.interior_triangles_of_edge(e)
            ok = [
                t for t in tris
                if all(o not in tables.interior_edge_set or o in placed for o in _other_edges(t, e))
            ]
            val = len(distinct_forms(forms[t] for t in ok))
            if val > best_val:
                best, best_val = e, val
        order.append(best)
        placed.add(best)
        remaining.remove(best)
    return tuple(order)


def _greedy_vertices(tables: FaceTables) -> Tuple[int, ...]:
    # boundary-adjacent vertices first, then by number of placed neighbours
    remaining = list(tables.interior_vertices)
    placed: set = set()
    order: List[int] = []
    while remaining:
        def score(v):
            n = 0
            for e in tables.interior_edges_of_vertex(v):
                other = e[0] if e[1] == v else e[1]
                if other not in tables.interior_vertex_set or other in placed:
                    n += 1
            return n
        best = max(remaining, key=lambda v: (score(v), -v))
        order.append(best)
        placed.add(best)
        remaining.remove(best)
    return tuple(order)


def search_orderings(
    tables: FaceTables,
    forms: Forms,
    r: int,
    k: int,
    budget: int = 720,
    seed: int = 0,
) -> BoundResult:
    """Tightest ordered upper bound and vertex lower bound over candidate numberings.

    Exhaustive up to EXHAUSTIVE_LIMIT interior edges (vertices); otherwise a
    greedy numbering plus seeded random restarts, `budget` candidates in all.
    Ties go to the lexicographically smallest numbering.
    """
    _check_rk(r, k)
    if budget < 1:
        raise InvalidArgumentError(f"budget must be >= 1, got {budget}")

    edges = tables.interior_edges
    edge_cands = _candidates(edges, budget, seed, _greedy_edges(tables, forms)) if edges else [()]
    best_up, best_eo = None, None
    for cand in edge_cands:
        val = upper_bound(tables, forms, r, k, cand)
        if best_up is None or val < best_up or (val == best_up and cand < best_eo):
            best_up, best_eo = val, cand

    verts = tables.interior_vertices
    vert_cands = _candidates(verts, budget, seed, _greedy_vertices(tables)) if verts else [()]
    best_low, best_vo = None, None
    for cand in vert_cands:
        val = lower_bound(tables, forms, r, k, cand)
        if best_low is None or val > best_low or (val == best_low and cand < best_vo):
            best_low, best_vo = val, cand

    log.debug(
        "orderings_searched",
        extra={"k": k, "r": r, "edge_candidates": len(edge_cands), "vertex_candidates": len(vert_cands)},
    )
    return BoundResult(
        k=k,
        r=r,
        lower=best_low,
        upper_ordered=best_up,
        upper_free=upper_bound_free(tables, forms, r, k),
        free_certified=False,
        free_formula_exact=free_formula_exact(tables, forms),
        edge_ordering=tuple(best_eo),
        vertex_ordering=tuple(best_vo),
        edge_orderings_tried=len(edge_cands) if edges else 0,
        vertex_orderings_tried=len(vert_cands) if verts else 0,
    )


def evaluate_bounds(
    tables: FaceTables,
    forms: Forms,
    r: int,
    k: int,
    edge_ordering: Sequence[Face] = None,
    vertex_ordering: Sequence[int] = None,
) -> BoundResult:
    """All three bounds under fixed numberings (lexicographic by default)."""
    eo = tuple(edge_ordering) if edge_ordering is not None else lex_edge_ordering(tables)
    vo = tuple(vertex_ordering) if vertex_ordering is not None else lex_vertex_ordering(tables)
    return BoundResult(
        k=k,
        r=r,
        lower=lower_bound(tables, forms, r, k, vo),
        upper_ordered=upper_bound(tables, forms, r, k, eo),
        upper_free=upper_bound_free(tables, forms, r, k),
        free_certified=False,
        free_formula_exact=free_formula_exact(tables, forms),
        edge_ordering=eo,
        vertex_ordering=vo,
    )


@dataclass(frozen=True)
class OrderingChoice:
    """How numberings are picked: input | lex | search | explicit."""

    strategy: str = "lex"
    edge_order: Optional[Tuple[Face, ...]] = None
    vertex_order: Optional[Tuple[int, ...]] = None
    budget: int = 720
    seed: int = 0


def compute_bounds(tables: FaceTables, forms: Forms, r: int, k: int, choice: OrderingChoice) -> BoundResult:
    if choice.strategy == "search" and choice.edge_order is None and choice.vertex_order is None:
        return search_orderings(tables, forms, r, k, budget=choice.budget, seed=choice.seed)
    if choice.strategy == "input":
        eo, vo = input_edge_ordering(tables), lex_vertex_ordering(tables)
    else:
        eo, vo = lex_edge_ordering(tables), lex_vertex_ordering(tables)
    if choice.edge_order is not None:
        eo = choice.edge_order
    if choice.vertex_order is not None:
        vo = choice.vertex_order
    return evaluate_bounds(tables, forms, r, k, eo, vo)
