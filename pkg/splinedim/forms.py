"""Exact substrate: linear forms in x, y, z, w, monomial bases and rational matrices."""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb, factorial, gcd, lcm
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix

from .errors import GeometryError
from .mesh import FaceTables, Point, cross, dot

log = logging.getLogger("forms")

VARS = ("x", "y", "z", "w")
Exponent = Tuple[int, ...]


def binom(u: int, m: int) -> int:
    """C(u, m), zero whenever u < m (negative u included)."""
    if m < 0 or u < m:
        return 0
    return comb(u, m)


@dataclass(frozen=True, order=True)
class LinearForm:
    """a*x + b*y + c*z + d*w, primitive with a positive leading coefficient."""

    coeffs: Tuple[int, int, int, int]

    @classmethod
    def canonical(cls, a, b, c, d) -> "LinearForm":
        vals = [Fraction(v) for v in (a, b, c, d)]
        if not any(vals):
            raise GeometryError("zero linear form", category="zero_form")
        den = lcm(*(v.denominator for v in vals))
        ints = [int(v * den) for v in vals]
        g = 0
        for v in ints:
            g = gcd(g, v)
        ints = [v // g for v in ints]
        lead = next(v for v in ints if v)
        if lead < 0:
            ints = [-v for v in ints]
        return cls(tuple(ints))

    def canon(self) -> "LinearForm":
        return LinearForm.canonical(*self.coeffs)

    def __str__(self) -> str:
        parts = []
        for c, name in zip(self.coeffs, VARS):
            if c == 0:
                continue
            mag = "" if abs(c) == 1 else str(abs(c))
            sign = "-" if c < 0 else "+"
            parts.append((sign, f"{mag}{name}"))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, term in parts[1:]:
            out += f" {sign} {term}"
        return out


def plane_of_triangle(p0: Point, p1: Point, p2: Point) -> LinearForm:
    """Canonical homogeneous form vanishing at (p, 1) for the three points."""
    p0, p1, p2 = (tuple(Fraction(c) for c in p) for p in (p0, p1, p2))
    n = cross(
        (p1[0] - p0[0], p1[1] - p0[1], p1[2] - p0[2]),
        (p2[0] - p0[0], p2[1] - p0[1], p2[2] - p0[2]),
    )
    if not any(n):
        raise GeometryError(f"collinear points {p0}, {p1}, {p2}", category="collinear_points")
    return LinearForm.canonical(n[0], n[1], n[2], -dot(n, p0))


def distinct_forms(forms: Iterable[LinearForm]) -> List[LinearForm]:
    out: List[LinearForm] = []
    seen = set()
    for f in forms:
        c = f.canon()
        if c not in seen:
            seen.add(c)
            out.append(c)
    return out


def interior_triangle_forms(tables: FaceTables) -> Dict[Tuple[int, ...], LinearForm]:
    """ℓ_σ for every interior triangle σ."""
    pts = tables.complex.vertices
    return {
        t: plane_of_triangle(pts[t[0]], pts[t[1]], pts[t[2]])
        for t in tables.interior_triangles
    }


def _exponents(k: int, n: int) -> List[Exponent]:
    out = []
    for combo in combinations_with_replacement(range(n), k):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    # graded-lex: x^k first
    out.sort(reverse=True)
    return out


@dataclass(frozen=True)
class MonomialBasis:
    degree: int
    nvars: int
    exponents: Tuple[Exponent, ...]
    index: Mapping[Exponent, int]

    def __len__(self) -> int:
        return len(self.exponents)

    def __hash__(self) -> int:
        return hash((self.degree, self.nvars))

    def __eq__(self, other) -> bool:
        return isinstance(other, MonomialBasis) and (self.degree, self.nvars) == (other.degree, other.nvars)


@lru_cache(maxsize=None)
def monomial_basis(k: int, n: int = 4) -> MonomialBasis:
    if n not in (2, 3, 4):
        raise GeometryError(f"unsupported variable count {n}", category="invalid_argument")
    exps = tuple(_exponents(k, n)) if k >= 0 else ()
    return MonomialBasis(degree=k, nvars=n, exponents=exps, index={e: i for i, e in enumerate(exps)})


@lru_cache(maxsize=4096)
def _power_expansion(coeffs: Tuple[int, ...], d: int) -> Tuple[Tuple[Exponent, int], ...]:
    n = len(coeffs)
    out = []
    fd = factorial(d)
    for e in _exponents(d, n):
        # multinomial coefficient, then the coefficient powers
        c = fd
        for ei in e:
            c //= factorial(ei)
        for ei, ci in zip(e, coeffs):
            if ei:
                c *= ci ** ei
        if c:
            out.append((e, c))
    return tuple(out)


def form_power_times_monomial(
    form: LinearForm, d: int, m: Exponent, basis: MonomialBasis
) -> List[int]:
    """Coefficients of ℓ^d · m in `basis` (dense, exact)."""
    if len(m) != basis.nvars:
        raise GeometryError(f"monomial {m} has {len(m)} variables, basis has {basis.nvars}", category="degree_mismatch")
    if sum(m) + d != basis.degree:
        raise GeometryError(
            f"deg(m) + d = {sum(m) + d} but basis degree is {basis.degree}", category="degree_mismatch"
        )
    if any(form.coeffs[basis.nvars:]):
        raise GeometryError(f"{form} uses variables outside a {basis.nvars}-variable basis", category="degree_mismatch")
    vec = [0] * len(basis)
    for e, c in _power_expansion(form.coeffs[: basis.nvars], d):
        vec[basis.index[tuple(a + b for a, b in zip(e, m))]] += c
    return vec


def power_multiples(form: LinearForm, d: int, k: int, n: int = 4) -> List[Dict[int, int]]:
    """Sparse rows ℓ^d · m for every monomial m of degree k - d; empty when k < d."""
    if k < d:
        return []
    basis = monomial_basis(k, n)
    expansion = _power_expansion(form.coeffs[:n], d)
    rows = []
    for m in monomial_basis(k - d, n).exponents:
        row: Dict[int, int] = {}
        for e, c in expansion:
            j = basis.index[tuple(a + b for a, b in zip(e, m))]
            row[j] = row.get(j, 0) + c
        rows.append({j: v for j, v in row.items() if v})
    return rows


class RationalMatrix:
    """Immutable sparse matrix over Q; rank by fraction-free elimination over Z."""

    __slots__ = ("_rows", "_ncols")

    def __init__(self, rows: Iterable[Mapping[int, object]], ncols: int):
        self._ncols = int(ncols)
        built = []
        for r in rows:
            row = {}
            for j, v in r.items():
                if not 0 <= j < self._ncols:
                    raise GeometryError(f"column {j} outside 0..{self._ncols - 1}", category="invalid_argument")
                q = Fraction(v)
                if q:
                    row[j] = q
            built.append(row)
        self._rows: Tuple[Dict[int, Fraction], ...] = tuple(built)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[object]], ncols: int = None) -> "RationalMatrix":
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise GeometryError("ragged matrix rows", category="invalid_argument")
        return cls(({j: v for j, v in enumerate(r) if v} for r in rows), ncols)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RationalMatrix":
        return cls(({} for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(({i: 1} for i in range(n)), n)

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self._rows), self._ncols)

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return self._ncols

    def sparse_rows(self) -> Tuple[Dict[int, Fraction], ...]:
        return self._rows

    def to_dense(self) -> List[List[Fraction]]:
        out = []
        for r in self._rows:
            dense = [Fraction(0)] * self._ncols
            for j, v in r.items():
                dense[j] = v
            out.append(dense)
        return out

    def is_zero(self) -> bool:
        return not any(self._rows)

    def transpose(self) -> "RationalMatrix":
        cols: List[Dict[int, Fraction]] = [dict() for _ in range(self._ncols)]
        for i, r in enumerate(self._rows):
            for j, v in r.items():
                cols[j][i] = v
        return RationalMatrix(cols, len(self._rows))

    def scale_rows(self, factors: Sequence[object]) -> "RationalMatrix":
        return RationalMatrix(
            ({j: v * Fraction(f) for j, v in r.items()} for r, f in zip(self._rows, factors)),
            self._ncols,
        )

    def vstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if other.ncols != self._ncols:
            raise GeometryError("vstack with different column counts", category="invalid_argument")
        return RationalMatrix(self._rows + other._rows, self._ncols)

    def matmul(self, other: "RationalMatrix") -> "RationalMatrix":
        if self._ncols != other.nrows:
            raise GeometryError(f"cannot multiply {self.shape} by {other.shape}", category="invalid_argument")
        out = []
        for r in self._rows:
            acc: Dict[int, Fraction] = {}
            for k, a in r.items():
                for j, b in other._rows[k].items():
                    acc[j] = acc.get(j, 0) + a * b
            out.append(acc)
        return RationalMatrix(out, other.ncols)

    def _integer_dm(self) -> DomainMatrix:
        # clear denominators row by row; rank is unchanged
        rep = {}
        for i, r in enumerate(self._rows):
            if not r:
                continue
            den = lcm(*(v.denominator for v in r.values()))
            rep[i] = {j: ZZ(int(v * den)) for j, v in r.items()}
        return DomainMatrix(rep, self.shape, ZZ)

    def _rref(self):
        rref, _den, pivots = self._integer_dm().rref_den(method="FF")
        return rref, pivots

    def rank(self) -> int:
        if not any(self._rows) or self._ncols == 0:
            return 0
        _, pivots = self._rref()
        return len(pivots)

    def nullity(self) -> int:
        return self._ncols - self.rank()

    def row_basis(self) -> "RationalMatrix":
        """Full-row-rank matrix with the same row space (nonzero rows of the RREF)."""
        if not any(self._rows) or self._ncols == 0:
            return RationalMatrix((), self._ncols)
        rref, pivots = self._rref()
        rep = rref.to_sdm()
        rows = []
        for i in range(len(pivots)):
            rows.append({j: int(v) for j, v in rep.get(i, {}).items()})
        return RationalMatrix(rows, self._ncols)

    def __repr__(self) -> str:
        return f"RationalMatrix(shape={self.shape}, nnz={sum(len(r) for r in self._rows)})"
