"""Graded dimensions of ideals generated by powers of linear forms.

Closed forms for the two-variable (edge) case and Fröberg's sequence for the
three-variable (vertex) case; `ideal_dim_rank` is the exact ground truth.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple

from .errors import GeometryError, InvalidArgumentError
from .forms import LinearForm, RationalMatrix, binom, distinct_forms, monomial_basis, power_multiples

log = logging.getLogger("ideals")


@dataclass(frozen=True)
class ResolutionData:
    s: int
    r: int
    omega: int
    a: int
    b: int


def resolution_data(s: int, r: int) -> ResolutionData:
    """Twist Ω and multiplicities a, b of the resolution of s powers ℓ^{r+1} in two variables."""
    if s < 1:
        raise InvalidArgumentError(f"resolution data needs s >= 1, got {s}")
    if r < 0:
        raise InvalidArgumentError(f"smoothness must be >= 0, got {r}")
    if s == 1:
        return ResolutionData(s=1, r=r, omega=0, a=0, b=0)
    omega = (s * r) // (s - 1) + 1
    a = s * (r + 1) + (1 - s) * omega
    b = s - 1 - a
    return ResolutionData(s=s, r=r, omega=omega, a=a, b=b)


def edge_ideal_dim_closed(s: int, r: int, k: int) -> int:
    if s == 0:
        return 0
    rd = resolution_data(s, r)
    return s * binom(k + 2 - r, 3) - rd.b * binom(k + 3 - rd.omega, 3) - rd.a * binom(k + 2 - rd.omega, 3)


def _rows(forms: Sequence[LinearForm], d: int, k: int, n: int) -> List[dict]:
    rows: List[dict] = []
    for f in forms:
        rows.extend(power_multiples(f, d, k, n))
    return rows


def ideal_span(forms: Sequence[LinearForm], d: int, k: int, n: int = 4) -> RationalMatrix:
    """Spanning rows of ⟨ℓ^d : ℓ ∈ forms⟩ in degree k (n-variable basis)."""
    for f in forms:
        if any(f.coeffs[n:]):
            raise GeometryError(f"{f} is not a form in the first {n} variables", category="degree_mismatch")
    return RationalMatrix(_rows(forms, d, k, n), len(monomial_basis(k, n)))


def ideal_dim_rank(forms: Sequence[LinearForm], d: int, k: int, n: int = 4) -> int:
    """dim of the degree-k piece of ⟨ℓ^d⟩, by exact rank."""
    if k < d or not forms:
        return 0
    return ideal_span(distinct_forms(forms), d, k, n).rank()


def quotient_hilbert_3var(forms: Sequence[LinearForm], d: int, i: int) -> int:
    """dim (R3 / ⟨ℓ^d⟩)_i for forms in x, y, z only."""
    return binom(i + 2, 2) - ideal_dim_rank(forms, d, i, n=3)


def _dim_r3(m: int) -> int:
    return binom(m + 2, 2)


def _froberg_prime(t: int, d: int, i: int) -> int:
    # alternating sum over 0 <= j <= 3 (three variables)
    return sum((-1) ** j * binom(t, j) * _dim_r3(i - d * j) for j in range(0, 4))


@lru_cache(maxsize=None)
def _froberg_values(t: int, d: int, kmax: int) -> Tuple[int, ...]:
    out = []
    alive = True
    for i in range(kmax + 1):
        v = _froberg_prime(t, d, i) if alive else 0
        if v <= 0:
            alive = False
            v = 0
        out.append(v)
    return tuple(out)


def froberg_F(t: int, d: int, i: int) -> int:
    """F(t, d, 3)_i, truncated to 0 from the first non-positive F′ on."""
    if t < 0 or d < 1 or i < 0:
        raise InvalidArgumentError(f"froberg_F needs t >= 0, d >= 1, i >= 0, got ({t}, {d}, {i})")
    return _froberg_values(t, d, i)[i]


@dataclass(frozen=True)
class FrobergSeq:
    t: int
    d: int
    values: Tuple[int, ...]
    prefix: Tuple[int, ...]


def froberg_sequence(t: int, d: int, kmax: int) -> FrobergSeq:
    if t < 0 or d < 1 or kmax < 0:
        raise InvalidArgumentError(f"froberg_sequence needs t >= 0, d >= 1, kmax >= 0, got ({t}, {d}, {kmax})")
    values = _froberg_values(t, d, kmax)
    prefix = []
    acc = 0
    for v in values:
        acc += v
        prefix.append(acc)
    return FrobergSeq(t=t, d=d, values=values, prefix=tuple(prefix))


def froberg_sum(t: int, d: int, k: int) -> int:
    """Σ_{j ≤ k} F(t, d, 3)_j; dim (R/𝒥)_k for t ≤ 3 forms at an interior vertex."""
    if k < 0:
        return 0
    return froberg_sequence(t, d, k).prefix[k]


def expected_E(t: int, r: int, k: int) -> int:
    """E(t, r+1, 3)_k = max(0, C(k+2,2) - t*C(k-r+1,2))."""
    if t < 0 or r < 0:
        raise InvalidArgumentError(f"expected_E needs t >= 0, r >= 0, got ({t}, {r})")
    if k < 0:
        return 0
    return max(0, binom(k + 2, 2) - t * binom(k - r + 1, 2))


def expected_sequence(t: int, r: int, kmax: int) -> List[int]:
    return [expected_E(t, r, k) for k in range(kmax + 1)]


def froberg_chain(forms: Iterable[LinearForm], r: int, i: int) -> Tuple[int, int, int]:
    """(dim (R3/I)_i, F(t,r+1,3)_i, E(t,r+1,3)_i) for the power ideal of `forms`."""
    fs = distinct_forms(forms)
    t = len(fs)
    return quotient_hilbert_3var(fs, r + 1, i), froberg_F(t, r + 1, i), expected_E(t, r, i)
