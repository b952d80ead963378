"""End-to-end checks on the built-in examples and the cross-pipeline identities."""
import random
import time

import pytest

from splinedim.bounds import lower_bound, upper_bound, upper_bound_free
from splinedim.builtin_meshes import REFERENCE_EDGE_ORDERS
from splinedim.forms import LinearForm, binom as C, distinct_forms
from splinedim.homology import assemble_slice, compute_homology, euler_identity_check
from splinedim.ideals import edge_ideal_dim_closed, froberg_chain, ideal_dim_rank
from splinedim.oracle import spline_dim


def regular_octahedron_closed(r, k):
    return C(k + 3, 3) + 3 * C(k + 2 - r, 3) + 3 * C(k + 1 - 2 * r, 3) + C(k - 3 * r, 3)


@pytest.mark.slow
@pytest.mark.parametrize("r", [0, 1, 2])
def test_regular_octahedron_closed_form(oct_regular, r):
    for k in range(7):
        assert spline_dim(oct_regular.tables, oct_regular.forms, r, k) == regular_octahedron_closed(r, k)


def test_regular_octahedron_closed_form_low_degree(oct_regular):
    for r in range(3):
        for k in range(4):
            assert spline_dim(oct_regular.tables, oct_regular.forms, r, k) == regular_octahedron_closed(r, k)


def test_clough_tocher_r1(ct):
    order = REFERENCE_EDGE_ORDERS["clough-tocher"]
    for k in range(7):
        exact = 1 if k == 0 else 2 * C(k + 3, 3) - 6 * C(k + 1, 3) + 8 * C(k, 3) - 4
        assert spline_dim(ct.tables, ct.forms, 1, k) == exact
        assert upper_bound(ct.tables, ct.forms, 1, k, order) == C(k + 3, 3) + C(k - 1, 3) + 2 * C(k, 3)
        tail = -3 * C(k + 1, 3) + 8 * C(k, 3) - 3 * C(k - 1, 3) + C(k - 3, 3)
        assert lower_bound(ct.tables, ct.forms, 1, k) == C(k + 3, 3) + max(0, tail)


def test_clough_tocher_r2_table(ct):
    lower = [lower_bound(ct.tables, ct.forms, 2, k) for k in range(1, 10)]
    free = [upper_bound_free(ct.tables, ct.forms, 2, k) for k in range(1, 10)]
    # the tabulated row ends in 282; the closed form evaluates to 273 at k = 9
    assert lower == [4, 10, 20, 35, 56, 84, 123, 187, 273]
    assert free == [4, 10, 20, 36, 58, 90, 136, 200, 286]


@pytest.mark.slow
def test_clough_tocher_r2_oracle_inside_sandwich(ct):
    for k in range(1, 10):
        dim = spline_dim(ct.tables, ct.forms, 2, k)
        assert lower_bound(ct.tables, ct.forms, 2, k) <= dim <= upper_bound(ct.tables, ct.forms, 2, k)


def test_generic_octahedron_r1_upper_bound(oct_generic):
    m = oct_generic
    order = REFERENCE_EDGE_ORDERS["octahedron-generic"]
    for k in range(10):
        expected = C(k + 3, 3) + C(k + 1, 3) + 4 * C(k, 3) + 2 * C(k - 1, 3)
        assert upper_bound(m.tables, m.forms, 1, k, order) == expected


@pytest.mark.slow
def test_generic_octahedron_homology(oct_generic):
    m = oct_generic
    for k in range(7):
        d = compute_homology(m.tables, m.forms, 1, k)
        assert (d.h0, d.h1) == (0, 0)
    assert any(compute_homology(m.tables, m.forms, 2, k).h1 > 0 for k in range(7))


def test_generic_octahedron_degree_5_stays_fast(oct_generic):
    m = oct_generic
    start = time.perf_counter()
    d = compute_homology(m.tables, m.forms, 1, 5)
    dim = spline_dim(m.tables, m.forms, 1, 5)
    elapsed = time.perf_counter() - start
    assert (d.h0, d.h1) == (0, 0)
    assert dim == C(8, 3) + d.h2
    assert elapsed < 60, f"r=1, k=5 took {elapsed:.1f}s"


@pytest.mark.slow
def test_edge_ideal_closed_form_grid():
    cases = 0
    for s in range(2, 9):
        forms = [LinearForm.canonical(1, j, 0, 0) for j in range(s)]
        for r in range(4):
            for k in range(9):
                assert edge_ideal_dim_closed(s, r, k) == ideal_dim_rank(forms, r + 1, k), (s, r, k)
                cases += 1
    assert cases == 252


def test_froberg_chain_randomized():
    rng = random.Random(2024)
    for _ in range(50):
        t = rng.randint(1, 8)
        forms = distinct_forms(
            LinearForm.canonical(rng.randint(1, 9), rng.randint(-9, 9), rng.randint(-9, 9), 0) for _ in range(t)
        )
        for r in range(3):
            for i in range(9):
                q, f, e = froberg_chain(forms, r, i)
                assert q >= f >= e


@pytest.mark.slow
@pytest.mark.parametrize("name", ["clough-tocher", "octahedron-regular", "octahedron-generic"])
def test_cross_pipeline_identity(builtins, name):
    m = builtins[name]
    for r in range(3):
        for k in range(7):
            dim = spline_dim(m.tables, m.forms, r, k)
            d = compute_homology(m.tables, m.forms, r, k)
            assert dim == C(k + 3, 3) + d.h2
            assert euler_identity_check(m.tables, m.forms, r, k, dim, dims=d).residual == 0


def test_cross_pipeline_identity_low_degree(builtins):
    for m in builtins.values():
        for r in range(2):
            for k in range(4):
                dim = spline_dim(m.tables, m.forms, r, k)
                d = compute_homology(m.tables, m.forms, r, k)
                assert dim == C(k + 3, 3) + d.h2
                assert euler_identity_check(m.tables, m.forms, r, k, dim, dims=d).ok


def test_properties(builtins):
    for m in builtins.values():
        for r in range(3):
            for k in range(5):
                assert assemble_slice(m.tables, m.forms, r, k).composition_is_zero()
                dim = spline_dim(m.tables, m.forms, r, k)
                assert lower_bound(m.tables, m.forms, r, k) <= dim <= upper_bound(m.tables, m.forms, r, k)
                if k <= r:
                    assert dim == C(k + 3, 3)
    assert [C(u, 3) for u in (-2, 0, 1, 2, 3)] == [0, 0, 0, 0, 1]
