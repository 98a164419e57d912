import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats as sps

from freightstat import BinSpec, DomainError, bin_sample, summarize
from reference_data import GOF_EDGES, GOF_OBSERVED, PROCESSING_TIMES

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False)
samples = st.lists(finite, min_size=2, max_size=40)


def type7_oracle(values, p):
    """Quantile by explicit order-statistic interpolation at 1-based position p(n-1)+1."""
    xs = sorted(values)
    pos = p * (len(xs) - 1) + 1
    j = int(pos)
    g = pos - j
    if j >= len(xs):
        return xs[-1]
    return xs[j - 1] + g * (xs[j] - xs[j - 1])


def test_constant_sample():
    s = summarize([1, 1, 1])
    assert s.mean == 1
    assert s.variance == 0
    assert s.std_dev == 0
    assert s.mode == (1.0,)
    assert math.isnan(s.skewness)


def test_four_points():
    s = summarize([1, 2, 3, 4])
    assert s.median == 2.5
    assert s.range == 3
    assert s.mode == ()
    assert s.q1 == 1.75
    assert s.q3 == 3.25


def test_mode_lists_every_tied_value():
    assert summarize([3, 1, 3, 2, 1, 5]).mode == (1.0, 3.0)


def test_empty_sample():
    with pytest.raises(DomainError, match="empty sample"):
        summarize([])


def test_non_finite_rejected():
    with pytest.raises(DomainError, match="index 1"):
        summarize([1.0, math.nan])


def test_log_space_parameters_of_processing_times():
    logs = np.log(PROCESSING_TIMES)
    s = summarize(logs)
    assert s.mean == pytest.approx(1.3460216, abs=1e-7)
    # the summary uses the n-1 divisor; rescale to the divisor-n value
    pop_sd = s.std_dev * math.sqrt((s.n - 1) / s.n)
    assert pop_sd == pytest.approx(0.4155127, abs=1e-7)


@given(samples)
def test_quartiles_against_order_statistic_oracle(values):
    s = summarize(values)
    for p, got in ((0.25, s.q1), (0.5, s.median), (0.75, s.q3)):
        assert got == pytest.approx(type7_oracle(values, p), rel=1e-12, abs=1e-9)
    assert s.min <= s.q1 <= s.median <= s.q3 <= s.max
    assert s.iqr == pytest.approx(s.q3 - s.q1)
    assert s.range == s.max - s.min


@given(st.lists(finite, min_size=3, max_size=40))
def test_moments_against_scipy(values):
    s = summarize(values)
    assert s.variance == pytest.approx(np.var(values, ddof=1), rel=1e-9, abs=1e-9)
    if np.ptp(values) > 1e-3:
        assert s.skewness == pytest.approx(sps.skew(values), rel=1e-6, abs=1e-6)
        assert s.kurtosis_excess == pytest.approx(sps.kurtosis(values), rel=1e-6, abs=1e-6)


@given(samples, st.floats(min_value=-100, max_value=100))
def test_shift_invariance(values, c):
    a = summarize(values)
    b = summarize([v + c for v in values])
    for f in ("mean", "median", "min", "max", "q1", "q3"):
        assert getattr(b, f) == pytest.approx(getattr(a, f) + c, rel=1e-9, abs=1e-9)
    for f in ("range", "iqr", "variance", "std_dev"):
        assert getattr(b, f) == pytest.approx(getattr(a, f), rel=1e-9, abs=1e-7)
    if a.std_dev > 1e-2:
        assert b.skewness == pytest.approx(a.skewness, rel=1e-6, abs=1e-6)
        assert b.kurtosis_excess == pytest.approx(a.kurtosis_excess, rel=1e-6, abs=1e-6)


@given(samples, st.floats(min_value=0.01, max_value=100))
def test_scale_equivariance(values, c):
    a = summarize(values)
    b = summarize([v * c for v in values])
    assert b.std_dev == pytest.approx(a.std_dev * c, rel=1e-9, abs=1e-12)
    assert b.variance == pytest.approx(a.variance * c * c, rel=1e-9, abs=1e-12)
    if a.std_dev > 1e-2:
        assert b.skewness == pytest.approx(a.skewness, rel=1e-6, abs=1e-6)
        assert b.kurtosis_excess == pytest.approx(a.kurtosis_excess, rel=1e-6, abs=1e-6)


# --- binning ---


def test_processing_time_histogram():
    hist = bin_sample(PROCESSING_TIMES, BinSpec(GOF_EDGES))
    assert list(hist.counts) == GOF_OBSERVED
    assert hist.covered == 50
    assert hist.uncovered == 0
    assert hist.spec.labels()[-1] == "> 8"


def test_open_ended_constructor():
    assert BinSpec.open_ended([0.01, 1, 2]).edges == (0.01, 1.0, 2.0, math.inf)


def test_left_closed_boundary():
    assert bin_sample([2.0], BinSpec((1, 2, 3)), closed="left").counts == (0, 1)


def test_right_closed_boundary():
    assert bin_sample([2.0], BinSpec((1, 2, 3)), closed="right").counts == (1, 0)
    # lowest edge is included in the first bin
    assert bin_sample([1.0], BinSpec((1, 2, 3))).counts == (1, 0)


def test_empty_bin_inside_range():
    hist = bin_sample([0.5, 3.5], BinSpec((0, 1, 2, 3, 4)))
    assert hist.counts == (1, 0, 0, 1)


def test_uncovered_reported():
    hist = bin_sample([-1, 0.5, 9], BinSpec((0, 1, 2)))
    assert hist.counts == (1, 0)
    assert (hist.below, hist.above) == (1, 1)


@pytest.mark.parametrize("edges", [(1,), (1, 1, 2), (2, 1), (-math.inf, 0)])
def test_bad_bin_spec(edges):
    with pytest.raises(DomainError):
        BinSpec(edges)


def brute_force_counts(values, edges, closed):
    counts = [0] * (len(edges) - 1)
    for v in values:
        for i, (lo, hi) in enumerate(zip(edges, edges[1:])):
            if closed == "left":
                inside = lo <= v < hi
            else:
                inside = lo < v <= hi or (i == 0 and v == lo)
            if inside:
                counts[i] += 1
                break
    return counts


@settings(max_examples=200)
@given(
    st.lists(st.integers(min_value=-5, max_value=15).map(float), max_size=30),
    st.sampled_from(["left", "right"]),
    st.data(),
)
def test_binning_matches_brute_force_and_ignores_order(values, closed, data):
    spec = BinSpec((0, 2, 5, 6, 10))
    hist = bin_sample(values, spec, closed)
    assert list(hist.counts) == brute_force_counts(values, spec.edges, closed)
    assert hist.covered + hist.uncovered == len(values)
    shuffled = data.draw(st.permutations(values))
    assert bin_sample(shuffled, spec, closed) == hist
