import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qnetperc import (
    concurrence_of_theta,
    gcp_pair_concurrence,
    parallel_concurrence,
    series_concurrence,
    singlet_prob_of_concurrence,
    singlet_prob_of_theta,
    theta_of_concurrence,
)
from qnetperc.paths import PathSummary

unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)

# frozen with a 50-digit mpmath evaluation of the conversion/distillation rules
GCP_PAIR_09_L3_N2 = 0.9080816367437404


def test_concurrence_endpoints_and_value():
    assert concurrence_of_theta(1.0) == 1.0
    assert concurrence_of_theta(0.0) == 0.0
    assert abs(concurrence_of_theta(2 / 3) - math.sqrt(3) / 2) < 1e-12


def test_singlet_prob_of_theta_values():
    assert singlet_prob_of_theta(1.0) == pytest.approx(1.0, abs=1e-12)
    assert singlet_prob_of_theta(0.0) == 0.0
    assert singlet_prob_of_theta(2 / 3) == pytest.approx(0.5, abs=1e-12)


def test_singlet_prob_of_concurrence_values():
    assert singlet_prob_of_concurrence(1.0) == 1.0
    assert singlet_prob_of_concurrence(0.6) == pytest.approx(0.2, abs=1e-12)
    assert singlet_prob_of_concurrence(math.sqrt(3) / 2) == pytest.approx(0.5, abs=1e-12)


def test_series_values():
    for c in np.linspace(0, 1, 21):
        assert series_concurrence(c, 1) == c
    assert series_concurrence(0.9, 3) == pytest.approx(0.729, abs=1e-9)
    assert series_concurrence(1.0, 100) == 1.0


def test_parallel_values():
    for c in np.linspace(0, 1, 21):
        assert parallel_concurrence(c, 1) == pytest.approx(c, abs=1e-12)
    assert parallel_concurrence(0.8, 2) == pytest.approx(0.96, abs=1e-9)
    # product term 0.5705...^2 < 1/2: the max{} branch saturates at a singlet
    assert parallel_concurrence(0.99, 2) == 1.0


def test_parallel_saturation_for_large_counts():
    assert parallel_concurrence(0.3, 50000) == 1.0


def test_gcp_pair_values():
    for c in np.linspace(0, 1, 11):
        assert gcp_pair_concurrence(c, PathSummary(1, 1)) == pytest.approx(c, abs=1e-12)
    assert gcp_pair_concurrence(0.9, PathSummary(3, 2)) == pytest.approx(
        GCP_PAIR_09_L3_N2, abs=1e-9
    )
    assert gcp_pair_concurrence(1.0, PathSummary(17, 1234)) == 1.0


def test_round_trip_conversions():
    for t in np.linspace(0, 1, 201):
        assert abs(theta_of_concurrence(concurrence_of_theta(t)) - t) < 1e-12
    for c in np.linspace(0, 1, 201):
        assert abs(concurrence_of_theta(theta_of_concurrence(c)) - c) < 1e-12


def test_prob_paths_agree():
    for t in np.linspace(0, 1, 501):
        via_c = singlet_prob_of_concurrence(concurrence_of_theta(t))
        assert abs(via_c - singlet_prob_of_theta(t)) < 1e-12


def test_gcp_pair_monotonicity_grid():
    cs = np.linspace(0.05, 0.95, 10)
    lengths = [1, 2, 3, 5, 8]
    counts = [1, 2, 4, 16, 256]
    for l in lengths:
        for n in counts:
            values = [gcp_pair_concurrence(c, PathSummary(l, n)) for c in cs]
            assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))
    for c in cs:
        for l in lengths:
            values = [gcp_pair_concurrence(c, PathSummary(l, n)) for n in counts]
            assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))
        for n in counts:
            values = [gcp_pair_concurrence(c, PathSummary(l, n)) for l in lengths]
            assert all(b <= a + 1e-12 for a, b in zip(values, values[1:]))


@given(unit, st.integers(min_value=1, max_value=10000))
def test_series_stays_in_unit_interval_and_contracts(c, length):
    out = series_concurrence(c, length)
    assert 0.0 <= out <= 1.0
    assert out <= c + 1e-12
    if length == 1 or c in (0.0, 1.0):
        assert out == pytest.approx(c, abs=1e-12)


@given(unit, st.integers(min_value=1, max_value=10000))
def test_parallel_stays_in_unit_interval_and_amplifies(c, count):
    out = parallel_concurrence(c, count)
    assert 0.0 <= out <= 1.0
    assert out >= c - 1e-12
    more = parallel_concurrence(c, count + 1)
    assert more >= out - 1e-12


@given(unit, st.integers(min_value=1, max_value=60), st.integers(min_value=1, max_value=50000))
def test_gcp_pair_output_valid(c, length, count):
    out = gcp_pair_concurrence(c, PathSummary(length, count))
    assert 0.0 <= out <= 1.0
    assert not math.isnan(out)


@pytest.mark.parametrize("bad", [-0.1, 1.1, 2.0, -1e-9])
def test_domain_errors(bad):
    for fn in (
        concurrence_of_theta,
        theta_of_concurrence,
        singlet_prob_of_theta,
        singlet_prob_of_concurrence,
    ):
        with pytest.raises(ValueError):
            fn(bad)


def test_count_domain_errors():
    with pytest.raises(ValueError):
        series_concurrence(0.5, 0)
    with pytest.raises(ValueError):
        parallel_concurrence(0.5, 0)
    with pytest.raises(ValueError):
        series_concurrence(0.5, 1.5)


def test_boundary_slop_is_tolerated():
    # values one rounding step past the boundary are clamped, not rejected
    assert concurrence_of_theta(1.0 + 1e-13) == 1.0
    assert theta_of_concurrence(1.0 + 1e-13) == 1.0
