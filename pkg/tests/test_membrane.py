import math
import random

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mdzeta.membrane import (
    MembraneError,
    MembranePath,
    ProjectivePoint,
    PullbackError,
    PulledBackForm,
    TangentLimitError,
    f0_closed,
    f0_kernel,
    f0_series,
    observed_fd_order,
    omega_A_norm,
    pullback_coefficient,
    tangent_extrapolants,
    tangent_limit,
)
from mdzeta.verify import F0_GRID, expected_tangents

from conftest import cone_for

E = math.e


def test_f0_closed_examples(cones):
    assert f0_closed(cones[5], 1, 1) == pytest.approx(1 / (E**2 - 1) / (E**3 - 1), rel=1e-15)
    # the closed form evaluates to 0.0082008509...; only "0.00820" is shared
    # with the rounded figure quoted alongside the example
    assert f0_closed(cones[5], 1, 1) == pytest.approx(0.0082008509050383, rel=1e-13)
    assert f0_closed(cones[2], 1, 1) == pytest.approx(1 / (E**2 - 1) / (E**6 - 1), rel=1e-15)
    for D, cone in cones.items():
        t = 0.7
        want = math.exp(-2 * t) / (1 - math.exp(-2 * t)) * (
            math.exp(-cone.trace * t) / (1 - math.exp(-cone.trace * t))
        )
        assert f0_closed(cone, t, t) == pytest.approx(want, rel=1e-14)


def test_f0_series_examples(cone5):
    assert f0_series(cone5, 1, 1) == pytest.approx(0.0082008509050383, rel=1e-13)
    # the (1,1) term alone: exp(-Tr(1 + beta)) = e^-5
    assert f0_series(cone5, 1, 1, maxNorm=5) == pytest.approx(math.exp(-5), rel=1e-15)
    assert f0_series(cone5, 60.0, 1.0) < 1e-25
    assert f0_closed(cone5, 60.0, 1.0) < 1e-25


@pytest.mark.parametrize("D", [2, 3, 5, 13])
def test_f0_series_matches_closed_form(cones, D):
    cone = cones[D]
    for t1 in F0_GRID:
        for t2 in F0_GRID:
            a, b = f0_series(cone, t1, t2), f0_closed(cone, t1, t2)
            assert a == pytest.approx(b, rel=1e-12)


def test_f0_rejects_nonpositive(cone5):
    for bad in ((0, 1), (1, -1)):
        with pytest.raises(MembraneError):
            f0_closed(cone5, *bad)
        with pytest.raises(MembraneError):
            f0_series(cone5, *bad)


def test_f0_kernel_is_vectorised(cone5):
    b1, b2 = cone5.beta_floats()
    t = np.linspace(0.1, 3, 7)
    out = f0_kernel(t, t[::-1], b1, b2)
    ref = [f0_closed(cone5, a, b) for a, b in zip(t, t[::-1])]
    np.testing.assert_allclose(out, ref, rtol=1e-14)


@pytest.mark.parametrize("D, gap2", [(5, 5), (2, 32), (3, 12)])
def test_omega0_pullback_constant(D, gap2):
    cone = cone_for(D)
    form = PulledBackForm("omega0", cone)
    rng = random.Random(1)
    with mpmath.workdps(50):
        want = -mpmath.sqrt(gap2)
        for _ in range(20):
            c = pullback_coefficient(form, rng.uniform(0.05, 8), rng.uniform(0.05, 8))
            assert abs(c - want) < mpmath.mpf(10) ** -45


def test_omega0_value_d5(cone5):
    c = pullback_coefficient(PulledBackForm("omega0", cone5), 0.4, 2.0)
    assert float(c) == pytest.approx(-2.2360679, abs=1e-7)


@pytest.mark.parametrize("D", [2, 5, 13])
def test_omega1_pullback_is_f0_times_gap(D):
    cone = cone_for(D)
    form = PulledBackForm("omega1", cone)
    gap = float(cone.beta_gap())
    for t1, t2 in ((1, 1), (0.3, 2.0), (4.0, 0.5)):
        c = float(pullback_coefficient(form, t1, t2))
        assert c == pytest.approx(f0_closed(cone, t1, t2) * gap, rel=1e-13)


def test_finite_difference_agrees_and_is_second_order(cone5):
    for kind in ("omega0", "omega1"):
        form = PulledBackForm(kind, cone5)
        a = pullback_coefficient(form, 0.9, 1.4)
        f = pullback_coefficient(form, 0.9, 1.4, h=1e-6, mode="fd")
        assert abs(float(f / a) - 1) < 1e-10
        orders = observed_fd_order(form, 0.9, 1.4)
        assert all(abs(o - 2) < 0.2 for o in orders)


def test_pullback_errors(cone5):
    form = PulledBackForm("omega0", cone5)
    with pytest.raises(PullbackError):
        pullback_coefficient(form, 0, 1)
    with pytest.raises(PullbackError):
        pullback_coefficient(form, 1, 1, mode="fd")
    with pytest.raises(PullbackError):
        pullback_coefficient(form, 1, 1, h=-1e-3, mode="fd")
    with pytest.raises(PullbackError):
        pullback_coefficient(form, 0.1, 1, h=0.2, mode="fd")
    with pytest.raises(PullbackError, match="underflow"):
        pullback_coefficient(form, 1, 1, h=1e-40, mode="fd")
    with pytest.raises(MembraneError):
        PulledBackForm("omega2", cone5)


def test_projective_point():
    p = ProjectivePoint.from_pair(2, 4)
    assert p.as_floats() == (0.5, 1.0)
    assert p.equals(ProjectivePoint.from_pair(-1, -2))
    assert not p.equals(ProjectivePoint.from_pair(1, 0))
    with pytest.raises(MembraneError):
        ProjectivePoint.from_pair(0, 0)


def test_path_in_unit_square(cone5):
    for path in MembranePath.pair(cone5):
        for t in (1e-3, 0.5, 3.0, 40.0):
            x, y = path.point(t)
            assert 0 < x < 1 and 0 < y < 1
    with pytest.raises(MembraneError):
        MembranePath(mpmath.mpf(-1))


@pytest.mark.parametrize("D", [2, 3, 5, 13, 46, 94])
def test_tangent_limits(D):
    cone = cone_for(D)
    g1, g2 = MembranePath.pair(cone)
    paths = {"gamma1": g1, "gamma2": g2}
    for (name, end), want in expected_tangents(cone).items():
        got = tangent_limit(paths[name], end)
        assert got.residual(want) < 1e-10, (name, end)


def test_tangent_example_d5(cone5):
    g1, _ = MembranePath.pair(cone5)
    u, v = tangent_limit(g1, "0").as_floats()
    assert v / u == pytest.approx(2.6180339887, abs=1e-9)
    assert tangent_limit(g1, "inf").as_floats() == pytest.approx((1.0, 0.0), abs=1e-12)


@pytest.mark.parametrize("end", ["0", "inf"])
def test_tangent_sequence_is_cauchy(cone5, end):
    for path in MembranePath.pair(cone5):
        seq = tangent_extrapolants(path, end)
        gaps = [seq[i].residual(seq[i + 1]) for i in range(len(seq) - 1)]
        assert gaps[-1] < 1e-12
        assert max(gaps[len(gaps) // 2 :]) <= max(gaps[: len(gaps) // 2]) + 1e-30


def test_tangent_nonconvergence_reported(cone5):
    g1, _ = MembranePath.pair(cone5)
    with pytest.raises(TangentLimitError) as info:
        tangent_limit(g1, "inf", levels=2)
    assert len(info.value.sequence) == 2
    with pytest.raises(MembraneError):
        tangent_limit(g1, "1")


def test_omega_A_norm_pole_rate():
    x = np.full(6, 0.5)
    y = np.full(6, 0.5)
    base = omega_A_norm(x, y)
    assert base > 0
    x2 = x.copy()
    x2[5] = 1e-6
    # |d(x5 x6)/(x5 x6)| grows like 1/x6
    assert omega_A_norm(x2, y) / base == pytest.approx(
        math.hypot(0.5, 1e-6) / (0.5 * 1e-6) / (math.hypot(0.5, 0.5) / 0.25), rel=1e-12
    )


@settings(max_examples=60, deadline=None)
@given(st.floats(0.05, 6), st.floats(0.05, 6))
def test_f0_symmetric_under_conjugation(t1, t2):
    # swapping beta_1 and beta_2 is the same as swapping t1 and t2
    cone = cone_for(5)
    b1, b2 = cone.beta_floats()
    assert f0_kernel.py_func(t1, t2, b1, b2) == pytest.approx(
        f0_kernel.py_func(t2, t1, b2, b1), rel=1e-14
    )
