import math

import numpy as np
import pytest
import scipy.stats
from hypothesis import given, settings
from hypothesis import strategies as st

from edgetex.beta_stats import (
    BetaParams,
    Texture,
    beta_pdf,
    beta_pdf_array,
    build_histogram,
    classify_texture,
    fit_beta_mom,
    sample_stats,
    scatter_params,
    shift_from_unit,
    shift_to_unit,
)
from edgetex.errors import ConstantSampleError, InfeasibleMomentsError, PoleError, RangeError


def two_point(mu, var):
    """Two samples with exactly the requested population mean and variance."""
    s = math.sqrt(var)
    return [mu - s, mu + s]


def trapezoid(params, n=10_000):
    # open-interval grid plus the analytic endpoint limits
    x = np.linspace(0.0, 1.0, n)
    y = np.empty(n)
    y[1:-1] = beta_pdf_array(params, x[1:-1])
    y[0], y[-1] = beta_pdf(params, 0.0), beta_pdf(params, 1.0)
    return float(np.sum((y[1:] + y[:-1]) * np.diff(x)) / 2)


def test_shift_examples():
    assert shift_to_unit([1.0, 1.5, 2.0]) == [0.0, 0.5, 1.0]
    assert shift_to_unit([]) == []
    assert shift_from_unit([0.0, 0.25]) == [1.0, 1.25]


@pytest.mark.parametrize("bad", [[0.99], [2.0001], [float("nan")]])
def test_shift_range_error(bad):
    with pytest.raises(RangeError):
        shift_to_unit(bad)


def test_shift_round_trip():
    x = np.random.default_rng(0).uniform(1, 2, 1000).tolist()
    assert shift_from_unit(shift_to_unit(x)) == pytest.approx(x, abs=0, rel=1e-15)
    assert np.max(np.abs(np.array(shift_from_unit(shift_to_unit(x))) - x)) <= 2.3e-16


def test_uniform_moments_give_uniform():
    p = fit_beta_mom(two_point(0.5, 1 / 12))
    assert p.alpha == pytest.approx(1.0, rel=1e-12)
    assert p.beta == pytest.approx(1.0, rel=1e-12)


def test_mom_algebra():
    # alpha = 0.5 * (0.25 / 0.05 - 1) = 2 ; beta = 2 * (1/0.5 - 1) = 2
    p = fit_beta_mom(two_point(0.5, 0.05))
    assert (p.alpha, p.beta) == (pytest.approx(2.0, rel=1e-12), pytest.approx(2.0, rel=1e-12))


@pytest.mark.parametrize("a0,b0", [(2, 5), (8, 2), (0.5, 0.5), (10, 10), (0.7, 3)])
def test_mom_recovery(a0, b0):
    x = np.random.Generator(np.random.PCG64(2024)).beta(a0, b0, 50_000)
    p = fit_beta_mom(x)
    assert p.alpha == pytest.approx(a0, rel=0.10)
    assert p.beta == pytest.approx(b0, rel=0.10)


@settings(max_examples=100)
@given(st.lists(st.floats(0.001, 0.999), min_size=2, max_size=200))
def test_moment_round_trip(xs):
    st_ = sample_stats(xs)
    if st_.variance <= 1e-9 * st_.mean * (1 - st_.mean):
        return
    p = fit_beta_mom(xs)
    assert abs(p.mean - st_.mean) <= 1e-12
    assert abs(p.variance - st_.variance) <= 1e-12


def test_printed_parenthesization_breaks_moments():
    # alpha = (mu(1-mu)/var - 1/mu) * mu^2 does not reproduce the sample mean; the standard form does
    xs = two_point(0.3, 0.01)
    mu, var = 0.3, 0.01
    a_lit = (mu * (1 - mu) / var - 1 / mu) * mu**2
    b_lit = a_lit * (1 / mu - 1)
    assert abs(a_lit / (a_lit + b_lit) - mu) < 1e-12  # the mean survives either way...
    lit_var = a_lit * b_lit / ((a_lit + b_lit) ** 2 * (a_lit + b_lit + 1))
    assert abs(lit_var - var) > 1e-3  # ...the variance does not
    assert fit_beta_mom(xs).variance == pytest.approx(var, abs=1e-15)


def test_fit_errors():
    with pytest.raises(ValueError):
        fit_beta_mom([0.5])
    with pytest.raises(ConstantSampleError):
        fit_beta_mom([0.4, 0.4, 0.4])
    with pytest.raises(InfeasibleMomentsError):
        fit_beta_mom([0.0, 0.0, 1.0, 1.0])
    with pytest.raises(RangeError):
        fit_beta_mom([0.0, 0.0])
    with pytest.raises(RangeError):
        fit_beta_mom([1.0, 1.0, 1.0])


def test_pdf_values():
    for p in (0.01, 0.3, 0.5, 0.99):
        assert beta_pdf(BetaParams(1, 1), p) == pytest.approx(1.0, abs=1e-14)
    assert beta_pdf(BetaParams(2, 2), 0.5) == pytest.approx(1.5, rel=1e-13)


@pytest.mark.parametrize("a,b", [(1, 1), (2, 5), (8, 2), (3.3, 0.7), (40, 60)])
def test_pdf_against_scipy(a, b):
    x = np.linspace(0.01, 0.99, 41)
    np.testing.assert_allclose([beta_pdf(BetaParams(a, b), v) for v in x],
                               scipy.stats.beta(a, b).pdf(x), rtol=1e-11)


@pytest.mark.parametrize("a,b", [(1, 1), (2, 5), (8, 2)])
def test_pdf_integrates_to_one(a, b):
    assert abs(trapezoid(BetaParams(a, b)) - 1.0) < 1e-6


def test_pdf_endpoints():
    with pytest.raises(PoleError):
        beta_pdf(BetaParams(0.5, 2), 0.0)
    with pytest.raises(PoleError):
        beta_pdf(BetaParams(2, 0.5), 1.0)
    assert beta_pdf(BetaParams(2, 0.5), 0.0) == 0.0
    assert beta_pdf(BetaParams(1, 3), 0.0) == pytest.approx(3.0)
    assert beta_pdf(BetaParams(4, 1), 1.0) == pytest.approx(4.0)
    with pytest.raises(RangeError):
        beta_pdf(BetaParams(2, 2), 1.5)


def test_pdf_large_shapes_do_not_overflow():
    assert math.isfinite(beta_pdf(BetaParams(500, 700), 0.42))


def test_params_must_be_positive():
    with pytest.raises(RangeError):
        BetaParams(0, 1)
    with pytest.raises(RangeError):
        BetaParams(1, -2)


def test_histogram_examples():
    assert build_histogram([1.25], 2).counts == (1, 0)
    assert build_histogram([2.0], 2).counts == (0, 1)
    h = build_histogram([], 4)
    assert h.counts == (0, 0, 0, 0)
    assert h.bin_edges == (1.0, 1.25, 1.5, 1.75, 2.0)
    with pytest.raises(RangeError):
        build_histogram([2.5], 3)
    with pytest.raises(ValueError):
        build_histogram([1.5], 0)


def test_histogram_uniform():
    x = np.random.default_rng(3).uniform(1, 2, 1000)
    h = build_histogram(x, 10)
    assert sum(h.counts) == 1000 and len(h.counts) == 10
    assert all(abs(c - 100) <= 40 for c in h.counts)


@given(st.lists(st.floats(1, 2), max_size=300), st.integers(1, 50))
def test_histogram_conserves_count(xs, bins):
    h = build_histogram(xs, bins)
    assert sum(h.counts) == len(xs)
    assert len(h.bin_edges) == bins + 1
    assert all(lo < hi for lo, hi in zip(h.bin_edges, h.bin_edges[1:]))


def test_classify_examples():
    assert classify_texture(BetaParams(3, 1.2)) is Texture.HIGH
    assert classify_texture(BetaParams(3, 1.5)) is Texture.LOW
    assert classify_texture(BetaParams(3, 4.0)) is Texture.LOW
    assert classify_texture(BetaParams(3, 4.0), beta_threshold=5) is Texture.HIGH


@given(st.floats(0.01, 50), st.floats(0.01, 50), st.floats(0.01, 50))
def test_classify_ignores_alpha(a1, a2, b):
    assert classify_texture(BetaParams(a1, b)) is classify_texture(BetaParams(a2, b))


def test_scatter():
    assert scatter_params([]) == []
    (row,) = scatter_params([("t7", BetaParams(3, 1.2))])
    assert (row.id, row.alpha, row.beta, row.texture) == ("t7", 3, 1.2, Texture.HIGH)
    fits = [(str(i), BetaParams(1 + i, 0.5 + 0.3 * i)) for i in range(10)]
    rows = scatter_params(fits)
    assert len(rows) == 10
    assert [r.texture for r in rows] == [classify_texture(p) for _, p in fits]
