import math

import pytest
from hypothesis import given, strategies as st

from surfcover.trace_numerics import (
    LengthRecord,
    LengthSpectrum,
    bound_pipeline_demo,
    build_phi,
    c_eps,
    fourier_lower_bound,
    geometric_side,
    integral_term,
    integral_term_bound,
    parse_spectrum,
    phi0,
    phi0_hat,
    phi0_hat_direct,
    psi0,
    synthetic_spectrum,
)
from scipy import integrate


def test_bump_support_and_evenness():
    phi = build_phi(3.0)
    assert phi(3.0) == 0.0 and phi(-3.5) == 0.0
    for x in (0.1, 0.7, 1.9, 2.8):
        assert phi(x) == phi(-x)
        assert phi(x) > 0
    assert psi0(0.5) == 0.0


def test_phi0_at_zero_is_the_square_integral():
    value, _ = integrate.quad(lambda t: psi0(t) ** 2, -0.5, 0.5, epsabs=1e-15)
    assert phi0(0.0) == pytest.approx(value, rel=1e-10)


@pytest.mark.parametrize("xi", [0.0, 0.5, 3.0, 12.0, 2j, 7j])
def test_transform_routes_agree(xi):
    assert phi0_hat(xi) == pytest.approx(phi0_hat_direct(xi), rel=1e-9, abs=1e-15)


@pytest.mark.parametrize("T", [0.5, 2.0, 4.0])
def test_scaling_identity(T):
    phi = build_phi(T)
    assert phi.fourier(0) == pytest.approx(T * phi0_hat(0), rel=1e-12)
    for xi in (0.4, 1.3, 0.8j):
        assert phi.fourier_direct(xi) == pytest.approx(T * phi0_hat(T * xi), rel=1e-9)


def test_schwartz_decay():
    assert abs(phi0_hat(1000.0)) <= 1e-6


def test_lower_bound_on_imaginary_axis():
    for T in (1.0, 5.0):
        for t in (0.1, 0.6, 1.5):
            for eps in (0.1, 0.3):
                assert build_phi(T).fourier(1j * t) >= fourier_lower_bound(T, t, eps)


def test_c_eps_is_positive_and_increasing():
    values = [c_eps(e) for e in (0.05, 0.1, 0.2, 0.5, 1.0)]
    assert all(v > 0 for v in values)
    assert all(x < y for x, y in zip(values, values[1:]))
    assert c_eps(1.0) == pytest.approx(phi0_hat(0) / 2, rel=1e-9)


@pytest.mark.parametrize("T", [2.0, 4.0, 8.0])
def test_integral_term_bound(T):
    assert abs(integral_term(T)) <= integral_term_bound(T)


records = st.builds(
    lambda prim, k, m: LengthRecord(prim * k, prim, m),
    st.floats(0.1, 20, allow_nan=False),
    st.integers(1, 4),
    st.integers(1, 50),
)


@given(st.lists(records, max_size=12))
def test_spectrum_csv_round_trip(recs):
    spectrum = LengthSpectrum(tuple(recs), "test")
    back = parse_spectrum(spectrum.to_csv())
    assert back.records == spectrum.records


def test_spectrum_rejects_bad_rows():
    with pytest.raises(ValueError):
        parse_spectrum("length,primitive\n1,1\n")
    with pytest.raises(ValueError):
        LengthRecord(1.5, 1.0, 1)


def test_zero_discrepancies_give_zero():
    spectrum = synthetic_spectrum(6.0)
    table = {r.length: 0.0 for r in spectrum.primitive()}
    assert geometric_side(spectrum, 5.0, table).primitive_sum == 0.0


def test_single_term_sum():
    spectrum = LengthSpectrum((LengthRecord(1.0, 1.0, 1),))
    side = geometric_side(spectrum, 4.0, {1.0: 1.0})
    expected = 1.0 / (2 * math.sinh(0.5)) * build_phi(4.0)(1.0)
    assert side.primitive_sum == pytest.approx(expected, rel=1e-12)


def test_missing_discrepancies_warn():
    spectrum = LengthSpectrum((LengthRecord(1.0, 1.0, 1),))
    with pytest.warns(UserWarning):
        side = geometric_side(spectrum, 4.0, {})
    assert side.missing_discrepancies == 1


def test_synthetic_sum_matches_hand_assembly():
    spectrum = synthetic_spectrum(9.0)
    T = 8.0
    table = {r.length: 0.5 for r in spectrum.primitive()}
    side = geometric_side(spectrum, T, table, n=7)
    phi = build_phi(T)
    by_hand = 0.0
    for r in spectrum.records:
        if r.power == 1 and r.length < T:
            by_hand += r.multiplicity * 0.5 * r.length / (2 * math.sinh(r.length / 2)) * phi(r.length)
    assert side.primitive_sum == pytest.approx(by_hand, rel=1e-9)
    bound = sum(
        7 * r.multiplicity * r.length / (2 * math.sinh(r.length / 2)) * phi(r.length)
        for r in spectrum.records
        if r.power > 1 and r.length < T
    )
    assert side.nonprimitive_bound == pytest.approx(bound, rel=1e-9)


def test_pipeline_grows_with_degree():
    totals = []
    for n in (10, 100, 1000, 10000):
        report = bound_pipeline_demo(synthetic_spectrum(4 * math.log(n) + 1), n)
        assert report.T == pytest.approx(4 * math.log(n))
        assert report.spectrum_complete
        assert report.label.startswith("DEMONSTRATION")
        totals.append(report.expectation_bound)
    assert all(x < y for x, y in zip(totals, totals[1:]))


def test_pipeline_without_discrepancy_data_keeps_integral_term():
    report = bound_pipeline_demo(LengthSpectrum(()), 50)
    assert report.primitive_bound == 0.0 and report.nonprimitive_bound == 0.0
    assert report.expectation_bound == pytest.approx(abs(report.integral_term))
