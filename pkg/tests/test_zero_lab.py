import pytest
from mpmath import mp, mpc, mpf

from xilab import (
    BoundaryTooCloseError,
    DomainError,
    Rect,
    TaylorRoute,
    a0,
    count_zeros_in_rect,
    find_value_set,
    monotonicity_report,
    orbit_with_tags,
    predicted_sigma,
    real_axis_zero_scan,
    refine_zero,
    symmetry_orbit,
    table1_zeros,
)

from .frozen import LOCATION_BAND_CONSTANT, ONLINE_IA0_FIRST_T, SCAN_LAM20_TMAX50


# ---------------------------------------------------------------------------
# counting
# ---------------------------------------------------------------------------

def test_count_first_zero_cell(ctx40):
    assert count_zeros_in_rect(0, Rect(12, 13, 10, mpf("11.5")), ctx40) == 1


def test_count_origin_cell(ctx40):
    assert count_zeros_in_rect(0, Rect(mpf("0.4"), mpf("0.6"), mpf("-0.1"), mpf("0.1")), ctx40) == 1


def test_count_empty_cell_with_grid_oracle(ctx40):
    rect = Rect(2, 3, 2, 3)
    # oracle: a 9x9 modulus grid stays far from zero across the cell
    route = TaylorRoute.shared(ctx40)
    floor = min(
        abs(route.xi_inv(mpc(2 + mpf(i) / 8, 2 + mpf(j) / 8)))
        for i in range(9)
        for j in range(9)
    )
    assert floor > mpf("0.05")
    assert count_zeros_in_rect(0, rect, ctx40) == 0


def test_count_raises_when_zero_sits_on_edge(ctx40):
    rho1 = refine_zero(mpc("12.3", "10.7"), 0, ctx40, certify=False).location
    grazing = Rect(11, rho1.real, 10, mpf("11.5"))
    with pytest.raises(BoundaryTooCloseError):
        count_zeros_in_rect(0, grazing, ctx40)


# ---------------------------------------------------------------------------
# refinement
# ---------------------------------------------------------------------------

def test_refine_first_catalogued_zero(ctx40):
    rec = refine_zero(mpc("12.3", "10.7"), 0, ctx40)
    assert abs(rec.location.real - mpf("12.26164")) < mpf("1e-5")
    assert abs(rec.location.imag - mpf("10.74143")) < mpf("1e-5")
    assert rec.residual <= mpf(10) ** (-mpf(ctx40.digits) / 2)
    assert rec.iterations <= 60


def test_refine_half_zero(ctx40):
    rec = refine_zero(mpc("0.51", "0.01"), 0, ctx40)
    assert abs(rec.location - mpf("0.5")) < mpf("1e-30")


def test_refine_second_catalogued_zero(ctx40):
    rec = refine_zero(mpc("16.5", "18.2"), 0, ctx40)
    assert abs(rec.location.real - mpf("16.59401")) < mpf("1e-5")
    assert abs(rec.location.imag - mpf("18.18824")) < mpf("1e-5")


# ---------------------------------------------------------------------------
# value sets
# ---------------------------------------------------------------------------

def test_find_value_set_matches_catalogue(ctx40):
    trace = []
    records = find_value_set(
        0, Rect(mpf("0.501"), 25, mpf("0.001"), 30), ctx40, trace=trace
    )
    assert len(records) == 3
    reference = table1_zeros()
    for rec, ref in zip(records, reference[1:4]):
        assert abs(rec.location.real - mpf(repr(ref.rho_re))) < mpf("1e-5")
        assert abs(rec.location.imag - mpf(repr(ref.rho_im))) < mpf("1e-5")
        assert rec.residual <= mpf(10) ** (-mpf(ctx40.digits) / 2)
    # count consistency at every traced subdivision
    assert trace and all(sum(e["child_counts"]) == e["count"] for e in trace)
    # sorted by distance from 1/2
    dists = [abs(r.location - mpf("0.5")) for r in records]
    assert dists == sorted(dists)


def test_find_value_set_empty(ctx40):
    assert find_value_set(0, Rect(2, 3, 2, 3), ctx40) == []


def test_find_value_set_nudges_grazing_edge(ctx40):
    rho1 = refine_zero(mpc("12.3", "10.7"), 0, ctx40, certify=False).location
    grazing = Rect(11, rho1.real, 10, mpf("11.5"))
    records = find_value_set(0, grazing, ctx40)
    assert len(records) == 1
    assert abs(records[0].location - rho1) < mpf("1e-20")


def test_find_value_set_online_member(ctx40):
    alpha = mpc(0, a0(ctx40))
    records = find_value_set(alpha, Rect(mpf("-1.5"), mpf("2.5"), mpf("0.1"), 14), ctx40)
    assert len(records) == 1
    rec = records[0]
    assert abs(rec.location.real - mpf("0.5")) < mpf("1e-3")
    assert abs(rec.location.imag - mpf(ONLINE_IA0_FIRST_T)) < mpf("1e-6")
    assert rec.residual <= mpf(10) ** (-mpf(ctx40.digits) / 2)


def test_find_value_set_parallel_jobs_match_serial(ctx40):
    rect = Rect(12, 17, 10, 19)
    serial = find_value_set(0, rect, ctx40, jobs=1)
    parallel = find_value_set(0, rect, ctx40, jobs=2)
    assert len(serial) == len(parallel) == 2
    for a, b in zip(serial, parallel):
        assert a.location == b.location
        assert a.residual == b.residual


# ---------------------------------------------------------------------------
# real-axis scans
# ---------------------------------------------------------------------------

def test_scan_lambda_zero_only_origin(ctx40):
    assert real_axis_zero_scan(0, 50, ctx40) == [mpf(0)]


def test_scan_lambda_negative_only_origin(ctx40):
    assert real_axis_zero_scan(-1, 50, ctx40) == [mpf(0)]


def test_scan_lambda_twenty_locked(ctx40):
    zeros = real_axis_zero_scan(20, 50, ctx40)
    assert len(zeros) == len(SCAN_LAM20_TMAX50)
    for z, ref in zip(zeros, SCAN_LAM20_TMAX50):
        assert abs(z - mpf(ref)) < mpf("1e-8")


def test_scan_domain(ctx40):
    with pytest.raises(DomainError):
        real_axis_zero_scan(0, 501, ctx40)


# ---------------------------------------------------------------------------
# location law, symmetry, monotonicity
# ---------------------------------------------------------------------------

def test_predicted_sigma_value(ctx40):
    assert abs(predicted_sigma(100, ctx40) - mpf("34.1094")) < mpf("1e-3")


def test_predicted_sigma_boundary(ctx40):
    cutoff = 4 * mp.pi * mp.e
    assert predicted_sigma(cutoff, ctx40) > 0
    with pytest.raises(DomainError):
        predicted_sigma(30, ctx40)


def test_predicted_sigma_band_on_catalogue_row_20(ctx40):
    row = table1_zeros()[20]
    t = mpf(repr(row.rho_im))
    dev = abs(mpf(repr(row.rho_re)) - mpf("0.5") - predicted_sigma(t, ctx40))
    normalized = dev * mp.log(t) ** 2 / t
    assert abs(normalized - mpf("3.5881")) < mpf("1e-3")
    assert normalized < mpf(repr(LOCATION_BAND_CONSTANT))


def test_symmetry_orbit_fixed_point():
    assert symmetry_orbit(mpf("0.5")) == {mpc("0.5", "0")}


def test_symmetry_orbit_on_line():
    orbit = symmetry_orbit(mpc("0.5", "5"))
    assert orbit == {mpc("0.5", "5"), mpc("0.5", "-5")}


def test_symmetry_orbit_members_are_zeros(ctx40):
    rec = refine_zero(mpc("12.3", "10.7"), 0, ctx40, certify=False)
    route = TaylorRoute.shared(ctx40)
    orbit = symmetry_orbit(rec.location)
    assert len(orbit) == 4
    for member in orbit:
        assert abs(route.xi_inv(member)) < mpf("1e-4")
    tags = {tag for _, tag in orbit_with_tags(rec.location)}
    assert tags == {"base", "reflected", "conjugate", "reflected-conjugate"}


def test_monotonicity_vacuous():
    report = monotonicity_report([mpc(1, 2)])
    assert report.sigma_monotone and report.t_monotone
    assert report.sigma_diffs == [] and report.t_diffs == []


def test_monotonicity_catalogue():
    rows = table1_zeros()[1:]
    report = monotonicity_report([mpc(r.rho_re, r.rho_im) for r in rows])
    assert report.sigma_monotone and report.t_monotone
    assert len(report.sigma_diffs) == 19


def test_monotonicity_detects_violation():
    report = monotonicity_report([mpc(1, 2), mpc(2, 1)])
    assert report.sigma_monotone and not report.t_monotone
