"""Degree-k slices of the chain complex of ideals and their homology.

Each simplex is oriented by increasing vertex index. Boundary faces are
dropped, so the matrices below are those of the complex relative to the
boundary. Boundary maps act on row vectors: a row of ∂₂ is the image of one
basis element of 𝒥(σ)_k written in ⊕_τ R_k (one block of monomial
coefficients per interior edge), and likewise for ∂₁ into ⊕_γ R_k.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Sequence, Tuple

from .bounds import lex_vertex_ordering, m_tilde_triangles
from .errors import InvalidArgumentError
from .forms import LinearForm, RationalMatrix, binom, distinct_forms, monomial_basis, power_multiples
from .ideals import ideal_span
from .mesh import Face, FaceTables, triangle_edges

log = logging.getLogger("homology")

Forms = Mapping[Face, LinearForm]

_TRIANGLE_SIGNS = (1, -1, 1)


@dataclass(frozen=True)
class GradedChainSlice:
    k: int
    r: int
    block: int
    triangles: Tuple[Face, ...]
    edges: Tuple[Face, ...]
    vertices: Tuple[int, ...]
    sigma_bases: Dict[Face, RationalMatrix]
    tau_bases: Dict[Face, RationalMatrix]
    gamma_bases: Dict[int, RationalMatrix]
    d2: RationalMatrix
    d1: RationalMatrix
    vertex_index: Dict[int, int]

    def edge_incidence(self) -> RationalMatrix:
        """∂₁ ⊗ id on ⊕_τ R_k → ⊕_γ R_k."""
        n = self.block
        rows: List[Dict[int, int]] = []
        for e in self.edges:
            a, b = e
            for j in range(n):
                row = {}
                if b in self.vertex_index:
                    row[self.vertex_index[b] * n + j] = 1
                if a in self.vertex_index:
                    row[self.vertex_index[a] * n + j] = -1
                rows.append(row)
        return RationalMatrix(rows, len(self.vertices) * n)

    def composition_is_zero(self) -> bool:
        return self.d2.matmul(self.edge_incidence()).is_zero()


@dataclass(frozen=True)
class HomologyDims:
    k: int
    r: int
    h0: int
    h1: int
    h2: int
    sigma_total: int
    tau_total: int
    gamma_total: int
    rank_d1: int
    rank_d2: int

    @property
    def spline_dim(self) -> int:
        """dim R_k + Σ dim 𝒥(σ)_k − dim W₁, i.e. dim R_k + h2."""
        return binom(self.k + 3, 3) + self.sigma_total - self.rank_d2

    @property
    def free_in_degree(self) -> bool:
        return self.h0 == 0 and self.h1 == 0


def _power_basis(forms: Sequence[LinearForm], r: int, k: int) -> RationalMatrix:
    if k < r + 1 or not forms:
        return RationalMatrix((), len(monomial_basis(k)))
    return ideal_span(distinct_forms(forms), r + 1, k).row_basis()


def assemble_slice(tables: FaceTables, forms: Forms, r: int, k: int) -> GradedChainSlice:
    if r < 0 or k < 0:
        raise InvalidArgumentError(f"need r >= 0 and k >= 0, got r={r}, k={k}")
    n = len(monomial_basis(k))
    tris = tables.interior_triangles
    edges = tables.interior_edges
    verts = tables.interior_vertices
    e_idx = {e: i for i, e in enumerate(edges)}
    v_idx = {v: i for i, v in enumerate(verts)}

    sigma: Dict[Face, RationalMatrix] = {}
    for t in tris:
        # ℓ^{r+1}·m for distinct m are independent already
        sigma[t] = RationalMatrix(power_multiples(forms[t], r + 1, k), n)
    tau = {e: _power_basis([forms[t] for t in tables.interior_triangles_of_edge(e)], r, k) for e in edges}
    gamma = {v: _power_basis([forms[t] for t in tables.interior_triangles_of_vertex(v)], r, k) for v in verts}

    d2_rows: List[Dict[int, object]] = []
    for t in tris:
        for g in sigma[t].sparse_rows():
            row: Dict[int, object] = {}
            for e, sign in zip(triangle_edges(t), _TRIANGLE_SIGNS):
                if e not in e_idx:
                    continue
                off = e_idx[e] * n
                for j, v in g.items():
                    row[off + j] = sign * v
            d2_rows.append(row)
    d2 = RationalMatrix(d2_rows, len(edges) * n)

    d1_rows: List[Dict[int, object]] = []
    for e in edges:
        a, b = e
        for g in tau[e].sparse_rows():
            row = {}
            if b in v_idx:
                off = v_idx[b] * n
                for j, v in g.items():
                    row[off + j] = v
            if a in v_idx:
                off = v_idx[a] * n
                for j, v in g.items():
                    row[off + j] = -v
            d1_rows.append(row)
    d1 = RationalMatrix(d1_rows, len(verts) * n)

    return GradedChainSlice(
        k=k,
        r=r,
        block=n,
        triangles=tris,
        edges=edges,
        vertices=verts,
        sigma_bases=sigma,
        tau_bases=tau,
        gamma_bases=gamma,
        d2=d2,
        d1=d1,
        vertex_index=v_idx,
    )


def homology_dims(sl: GradedChainSlice) -> HomologyDims:
    sig = sum(m.nrows for m in sl.sigma_bases.values())
    tau = sum(m.nrows for m in sl.tau_bases.values())
    gam = sum(m.nrows for m in sl.gamma_bases.values())
    rk2 = sl.d2.rank()
    rk1 = sl.d1.rank()
    dims = HomologyDims(
        k=sl.k,
        r=sl.r,
        h0=gam - rk1,
        h1=tau - rk1 - rk2,
        h2=sig - rk2,
        sigma_total=sig,
        tau_total=tau,
        gamma_total=gam,
        rank_d1=rk1,
        rank_d2=rk2,
    )
    if min(dims.h0, dims.h1, dims.h2) < 0:
        raise RuntimeError(f"negative homology dimension in degree {sl.k}: {dims}")
    log.debug("homology_slice", extra={"k": sl.k, "r": sl.r, "h0": dims.h0, "h1": dims.h1, "h2": dims.h2})
    return dims


def compute_homology(tables: FaceTables, forms: Forms, r: int, k: int) -> HomologyDims:
    return homology_dims(assemble_slice(tables, forms, r, k))


def spline_dim_via_h2(tables: FaceTables, forms: Forms, r: int, k: int) -> int:
    return binom(k + 3, 3) + compute_homology(tables, forms, r, k).h2


@dataclass(frozen=True)
class EulerCheck:
    ok: bool
    residual: int
    identity_value: int
    oracle_dim: int


def euler_identity_value(tables: FaceTables, dims: HomologyDims) -> int:
    """Alternating sum of dim R/𝒥(β)_k over interior faces, plus h1 − h0."""
    n = binom(dims.k + 3, 3)
    f0, f1, f2, f3 = tables.f_interior
    total = f3 * n
    total -= f2 * n - dims.sigma_total
    total += f1 * n - dims.tau_total
    total -= f0 * n - dims.gamma_total
    return total + dims.h1 - dims.h0


def euler_identity_check(
    tables: FaceTables, forms: Forms, r: int, k: int, oracle_dim: int, dims: HomologyDims = None
) -> EulerCheck:
    if dims is None:
        dims = compute_homology(tables, forms, r, k)
    value = euler_identity_value(tables, dims)
    residual = oracle_dim - value
    if residual:
        log.warning("euler_identity_mismatch", extra={"k": k, "r": r, "oracle": oracle_dim, "identity": value})
    return EulerCheck(ok=residual == 0, residual=residual, identity_value=value, oracle_dim=oracle_dim)


def h0_upper_estimate(tables: FaceTables, forms: Forms, r: int, k: int, ordering: Sequence[int] = None) -> int:
    """Σ_γ dim 𝒥(γ)_k − dim Σ_γ 𝒥̃(γ)_k; the second sum is block-diagonal over vertices."""
    if ordering is None:
        ordering = lex_vertex_ordering(tables)
    restricted = m_tilde_triangles(tables, ordering)
    total = 0
    for v in tables.interior_vertices:
        full = _power_basis([forms[t] for t in tables.interior_triangles_of_vertex(v)], r, k).nrows
        part = _power_basis([forms[t] for t in restricted[v]], r, k).nrows
        total += full - part
    return total


def freeness_through(tables: FaceTables, forms: Forms, r: int, k: int, dims: Sequence[HomologyDims] = None) -> int:
    """Largest k′ ≤ k with h0_j = h1_j = 0 for all j ≤ k′; -1 if degree 0 already fails."""
    by_k = {d.k: d for d in (dims or ())}
    last = -1
    for j in range(k + 1):
        d = by_k.get(j) or compute_homology(tables, forms, r, j)
        if not d.free_in_degree:
            break
        last = j
    return last
