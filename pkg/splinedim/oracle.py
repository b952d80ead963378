"""Exact dim C^r_k(Δ) from the smoothness conditions themselves.

Unknowns are one polynomial f_T of degree ≤ k per tet and one cofactor g_σ of
degree ≤ k−r−1 per interior triangle; each interior triangle σ = T ∩ T′ gives
the coefficient equations f_T − f_T′ − ℓ_σ^{r+1}·g_σ = 0. Polynomials are
stored homogenized (degree-k monomials in x, y, z, w), which is the same
coefficient space as degree ≤ k in x, y, z after setting w = 1.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Tuple

from .errors import InvalidArgumentError
from .forms import LinearForm, RationalMatrix, binom, monomial_basis, power_multiples
from .mesh import Face, FaceTables

log = logging.getLogger("oracle")

Forms = Mapping[Face, LinearForm]


@dataclass(frozen=True)
class SmoothnessSystem:
    k: int
    r: int
    block: int
    cofactor_block: int
    tet_offsets: Tuple[int, ...]
    cofactor_offsets: Dict[Face, int]
    matrix: RationalMatrix

    @property
    def n_f(self) -> int:
        return len(self.tet_offsets) * self.block

    @property
    def n_g(self) -> int:
        return len(self.cofactor_offsets) * self.cofactor_block

    def cofactor_columns(self) -> RationalMatrix:
        # columns n_f.. of the constraint matrix, as rows
        cols = self.matrix.transpose().sparse_rows()[self.n_f:]
        return RationalMatrix(cols, self.matrix.nrows)

    def cofactors_injective(self) -> bool:
        """ℓ^{r+1}·g = 0 forces g = 0, so the solution space projects 1:1 onto f."""
        if self.n_g == 0:
            return True
        return self.cofactor_columns().rank() == self.n_g

    def nullity(self) -> int:
        return self.matrix.nullity()


def build_system(tables: FaceTables, forms: Forms, r: int, k: int) -> SmoothnessSystem:
    if r < 0 or k < 0:
        raise InvalidArgumentError(f"need r >= 0 and k >= 0, got r={r}, k={k}")
    n = len(monomial_basis(k))
    gdeg = k - r - 1
    gn = binom(gdeg + 3, 3) if gdeg >= 0 else 0

    n_tets = len(tables.tets)
    tet_offsets = tuple(i * n for i in range(n_tets))
    tris = tables.interior_triangles
    g_off = {t: n_tets * n + i * gn for i, t in enumerate(tris)}
    ncols = n_tets * n + len(tris) * gn

    rows: List[Dict[int, int]] = [dict() for _ in range(len(tris) * n)]
    for i, t in enumerate(tris):
        lo, hi = sorted(tables.triangle_tets[t])
        base = i * n
        for m in range(n):
            rows[base + m][tet_offsets[lo] + m] = 1
            rows[base + m][tet_offsets[hi] + m] = -1
        # column q of g_σ is ℓ^{r+1}·(q-th monomial of degree k-r-1)
        for q, prod in enumerate(power_multiples(forms[t], r + 1, k)):
            for m, c in prod.items():
                rows[base + m][g_off[t] + q] = -c

    system = SmoothnessSystem(
        k=k,
        r=r,
        block=n,
        cofactor_block=gn,
        tet_offsets=tet_offsets,
        cofactor_offsets=g_off,
        matrix=RationalMatrix(rows, ncols),
    )
    log.debug("system_built", extra={"k": k, "r": r, "rows": len(rows), "cols": ncols})
    return system


def spline_dim(tables: FaceTables, forms: Forms, r: int, k: int) -> int:
    """dim C^r_k(Δ) as the nullity of the smoothness system."""
    system = build_system(tables, forms, r, k)
    dim = system.nullity()
    log.info("oracle_done", extra={"k": k, "r": r, "dim": dim})
    return dim
