import random

import pytest

from splinedim.errors import InvalidArgumentError
from splinedim.forms import LinearForm, binom, distinct_forms
from splinedim.ideals import (
    edge_ideal_dim_closed,
    expected_E,
    expected_sequence,
    froberg_chain,
    froberg_F,
    froberg_sequence,
    froberg_sum,
    ideal_dim_rank,
    quotient_hilbert_3var,
    resolution_data,
)


def edge_forms(s):
    # s distinct planes through the z,w-axis: forms in x and y only
    return [LinearForm.canonical(1, j, 0, 0) for j in range(s)]


@pytest.mark.parametrize(
    "s,r,omega,a,b",
    [
        (2, 1, 3, 1, 0),
        (3, 1, 2, 2, 0),
        (4, 1, 2, 2, 1),
        (3, 2, 4, 1, 1),
        (2, 0, 1, 1, 0),
        (1, 5, 0, 0, 0),
    ],
)
def test_resolution_data(s, r, omega, a, b):
    rd = resolution_data(s, r)
    assert (rd.omega, rd.a, rd.b) == (omega, a, b)
    if s >= 2:
        assert rd.a + rd.b == s - 1


def test_resolution_data_rejects_empty():
    with pytest.raises(InvalidArgumentError):
        resolution_data(0, 1)
    assert edge_ideal_dim_closed(0, 1, 5) == 0


@pytest.mark.parametrize("s,r,k", [(2, 1, 4), (3, 1, 3), (3, 2, 5), (4, 1, 4), (5, 0, 3), (2, 2, 2)])
def test_edge_closed_form_matches_rank(s, r, k):
    assert edge_ideal_dim_closed(s, r, k) == ideal_dim_rank(edge_forms(s), r + 1, k)


def test_ideal_dim_rank_ignores_repeated_planes():
    f = LinearForm((1, 2, 0, 0))
    g = LinearForm((2, 4, 0, 0))
    assert ideal_dim_rank([f, g], 2, 3) == ideal_dim_rank([f], 2, 3) == binom(4, 3)
    assert ideal_dim_rank([f], 3, 2) == 0


def test_quotient_of_coordinate_squares():
    xyz = [LinearForm((1, 0, 0, 0)), LinearForm((0, 1, 0, 0)), LinearForm((0, 0, 1, 0))]
    # R3/(x^2, y^2, z^2) has Hilbert function 1, 3, 3, 1, 0
    assert [quotient_hilbert_3var(xyz, 2, i) for i in range(5)] == [1, 3, 3, 1, 0]


def test_froberg_values():
    assert froberg_sequence(3, 2, 5).values == (1, 3, 3, 1, 0, 0)
    assert froberg_sequence(12, 2, 3).values == (1, 3, 0, 0)
    assert froberg_sequence(6, 2, 3).values == (1, 3, 0, 0)
    assert froberg_sequence(1, 2, 4).values == (1, 3, 5, 7, 9)
    assert froberg_sequence(2, 2, 6).values == (1, 3, 4, 4, 4, 4, 4)
    assert froberg_F(3, 3, 6) == 1
    assert froberg_sequence(3, 2, 5).prefix == (1, 4, 7, 8, 8, 8)


def test_froberg_stays_zero_after_truncation():
    assert froberg_sequence(4, 1, 6).values == (1, 0, 0, 0, 0, 0, 0)


def test_froberg_sum_without_forms_is_whole_ring():
    for k in range(8):
        assert froberg_sum(0, 3, k) == binom(k + 3, 3)
    assert froberg_sum(5, 2, -1) == 0


def test_froberg_rejects_bad_arguments():
    with pytest.raises(InvalidArgumentError):
        froberg_F(-1, 2, 3)
    with pytest.raises(InvalidArgumentError):
        froberg_F(2, 0, 3)


def test_expected_dimension():
    assert expected_E(3, 1, 2) == 3
    assert expected_E(12, 1, 2) == 0
    assert expected_E(0, 4, 3) == 10
    assert expected_sequence(2, 1, 4) == [1, 3, 4, 4, 3]


def test_froberg_chain_on_random_forms():
    rng = random.Random(7)
    for _ in range(10):
        raw = [LinearForm.canonical(*(rng.randint(-4, 4) or 1 for _ in range(3)), 0) for _ in range(rng.randint(1, 6))]
        for r in range(3):
            for i in range(7):
                q, f, e = froberg_chain(raw, r, i)
                assert q >= f >= e >= 0


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_froberg_values_do_not_grow_with_more_forms(d):
    for t in range(12):
        for i in range(16):
            assert froberg_F(t + 1, d, i) <= froberg_F(t, d, i), (t, d, i)


def test_adding_forms_never_shrinks_the_ideal():
    rng = random.Random(5)
    for _ in range(15):
        forms = []
        d = rng.randint(1, 3)
        k = rng.randint(d, 4)
        last = 0
        for _ in range(rng.randint(2, 6)):
            forms.append(LinearForm.canonical(rng.randint(1, 5), rng.randint(-5, 5), rng.randint(-5, 5), rng.randint(-3, 3)))
            dim = ideal_dim_rank(distinct_forms(forms), d, k)
            assert dim >= last
            last = dim
