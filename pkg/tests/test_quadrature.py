import math
import warnings

import mpmath
import numpy as np
import pytest

from mdzeta.cone import Cone
from mdzeta.quadrature import (
    QuadratureError,
    QuadratureSpec,
    QuadratureWarning,
    _x_chains,
    classical_simplex_integral,
    corollary_domain_faces,
    default_t_cutoff,
    gauss_legendre01,
    integral_corollary_x,
    integral_proposition_x,
    integral_zeta12,
    integral_zeta2,
    integral_zeta3,
    node_points,
    pair_sum,
)

from conftest import ZETA2, ZETA3, ZETA12, cone_for


def test_gauss_legendre01_exactness():
    x, w = gauss_legendre01(5)
    assert np.all((x > 0) & (x < 1))
    for k in range(10):
        assert np.dot(w, x**k) == pytest.approx(1 / (k + 1), rel=1e-14)


def test_spec_validation():
    with pytest.raises(QuadratureError):
        QuadratureSpec(scheme="simpson")
    with pytest.raises(QuadratureError):
        QuadratureSpec(nodes_per_axis=1)
    with pytest.raises(QuadratureError):
        QuadratureSpec(t_cutoff=0)
    with pytest.raises(QuadratureError):
        QuadratureSpec(target_rel_tol=-1)
    q = QuadratureSpec.quick()
    assert q.nodes_for("corollary") < QuadratureSpec().nodes_for("corollary")
    assert not q.adaptive


def test_default_cutoff(cones):
    for cone in cones.values():
        b1, b2 = cone.beta_floats()
        cut = default_t_cutoff(cone)
        assert math.exp(-cut * min(1.0, b2)) < 1e-16


@pytest.mark.parametrize("D", [2, 3, 5])
def test_zeta2_matches_series(cones, D):
    r = integral_zeta2(cones[D])
    assert r.converged
    assert abs(r.value / ZETA2[D] - 1) < 1e-6
    assert abs(r.value - ZETA2[D]) <= r.errorEstimate + 1e-12


def test_zeta2_cutoff_to_zero(cone5):
    vals = []
    for cut in (1.0, 0.3, 0.1, 0.01):
        with pytest.warns(QuadratureWarning):
            vals.append(integral_zeta2(cone5, QuadratureSpec(t_cutoff=cut)).value)
    assert vals[0] > vals[1] > vals[2] > vals[3] > 0
    assert vals[3] < 1e-4 * ZETA2[5]


@pytest.mark.parametrize("D", [3, 5])
def test_zeta3_matches_series(cones, D):
    r = integral_zeta3(cones[D])
    assert abs(r.value / ZETA3[D] - 1) < 1e-4


def test_zeta3_symmetric_under_conjugation(cone5, monkeypatch):
    base = integral_zeta3(cone5)
    b1, b2 = cone5.beta_floats()
    monkeypatch.setattr(Cone, "beta_floats", lambda self: (b2, b1))
    swapped = integral_zeta3(cone5)
    assert abs(swapped.value - base.value) <= base.errorEstimate + swapped.errorEstimate
    assert swapped.value == pytest.approx(base.value, rel=1e-6)


@pytest.mark.parametrize("D", [2, 5])
def test_zeta12_matches_series(cones, D):
    r = integral_zeta12(cones[D])
    assert abs(r.value / ZETA12[D] - 1) < 1e-4


@pytest.mark.parametrize("D", [2, 5])
def test_zeta12_single_term(cones, D):
    # gamma = 1 + beta: 1 / (N(gamma) N(2 gamma)^2) = 1 / (16 N(gamma)^3)
    n = cones[D].trace + 2
    r = integral_zeta12(cones[D], single_term=True)
    assert r.value == pytest.approx(1 / (16 * n**3), rel=1e-6)
    if D == 5:
        assert 1 / (16 * n**3) == pytest.approx(0.0005)


@pytest.mark.parametrize("D, gap2", [(5, 5), (3, 12), (2, 32)])
def test_proposition_ratio(cones, D, gap2):
    r = integral_proposition_x(cones[D])
    assert r.value > 0
    assert abs(r.value / ZETA2[D] / gap2 - 1) < 1e-5


@pytest.mark.parametrize("D", [2, 5])
def test_corollary_ratio_and_sign(cones, D):
    cone = cones[D]
    r = integral_corollary_x(cone)
    gap3 = float(cone.beta_gap()) ** 3
    assert r.value < 0
    assert abs(r.value / ZETA12[D] / gap3 - 1) < 1e-3


def test_corollary_matches_t_domain(cone5):
    x = integral_corollary_x(cone5)
    t = integral_zeta12(cone5)
    gap3 = float(cone5.beta_gap()) ** 3
    assert abs(x.value - gap3 * t.value) <= x.errorEstimate + abs(gap3) * t.errorEstimate + 1e-9


def test_corollary_quick_mode(cone5):
    r = integral_corollary_x(cone5, QuadratureSpec.quick())
    gap3 = float(cone5.beta_gap()) ** 3
    assert abs(r.value / ZETA12[5] / gap3 - 1) < 1e-2


def test_t_nodes_inside_region(cone5):
    for name in ("zeta2", "zeta3", "zeta12"):
        pts = node_points(name, cone5, n=6)
        t, u = pts["t"], pts["u"]
        for i in range(2):
            assert np.all(t[i] > u[i]) and np.all(u[i] > 0)
            if "v" in pts:
                assert np.all(u[i] > pts["v"][i]) and np.all(pts["v"][i] > 0)


@pytest.mark.parametrize("name, length", [("proposition", 2), ("corollary", 3)])
def test_x_nodes_inside_region(name, length):
    pts = node_points(name, n=10)
    for chain in (pts["odd"], pts["even"]):
        assert len(chain) == length
        assert np.all(chain[0] > 0) and np.all(chain[-1] < 1)
        for lo, hi in zip(chain, chain[1:]):
            assert np.all(lo < hi)


def test_domain_faces():
    faces = corollary_domain_faces()
    assert len(faces) == 8
    assert {"x1=0", "x1=x3", "x3=x5", "x5=1", "x2=0", "x6=1"} <= set(faces)


@pytest.mark.filterwarnings("ignore::mdzeta.quadrature.QuadratureWarning")
def test_refinement_converges(cone5):
    errs = []
    for n in (8, 12, 18, 27):
        r = integral_zeta2(cone5, QuadratureSpec(nodes_per_axis=n, adaptive=False))
        errs.append(abs(r.value - ZETA2[5]))
    assert all(b < a for a, b in zip(errs, errs[1:]))


@pytest.mark.filterwarnings("ignore::mdzeta.quadrature.QuadratureWarning")
def test_refinement_within_error_estimate(cone5):
    a = integral_zeta12(cone5, QuadratureSpec(nodes_per_axis=16, adaptive=False))
    b = integral_zeta12(cone5, QuadratureSpec(nodes_per_axis=32, adaptive=False))
    assert abs(a.value - b.value) <= 3 * a.errorEstimate


def test_nonconvergence_is_reported(cone5):
    spec = QuadratureSpec(nodes_per_axis=6, max_nodes=9, target_rel_tol=1e-14)
    with pytest.warns(QuadratureWarning):
        r = integral_zeta2(cone5, spec)
    assert not r.converged


def test_monte_carlo_mode(cone5):
    spec = QuadratureSpec(scheme="monte-carlo", seed=7, mc_samples=200_000)
    r = integral_zeta2(cone5, spec)
    assert abs(r.value - ZETA2[5]) <= r.errorEstimate
    assert r.errorEstimate < 0.05 * ZETA2[5]
    again = integral_zeta2(cone5, spec)
    assert again.value == r.value
    p = integral_proposition_x(cone5, QuadratureSpec(scheme="monte-carlo", seed=3, mc_samples=200_000))
    assert abs(p.value - 5 * ZETA2[5]) <= p.errorEstimate


@pytest.mark.parametrize("length", [2, 3])
def test_pair_sum_backends_agree(cone2, length):
    odd, even = _x_chains(cone2, 12, 2, length)
    a = pair_sum(odd, even, length == 3, backend="numba")
    b = pair_sum(odd, even, length == 3, backend="numpy")
    assert a == pytest.approx(b, rel=1e-12)


@pytest.mark.filterwarnings("ignore::mdzeta.quadrature.QuadratureWarning")
def test_backend_env_flag(cone5, monkeypatch):
    from mdzeta import _jit

    monkeypatch.setenv(_jit.ENV_FLAG, "1")
    assert _jit.resolve_backend(None) == "numpy"
    flagged = integral_proposition_x(cone5, QuadratureSpec(nodes_per_axis=12, adaptive=False))
    monkeypatch.delenv(_jit.ENV_FLAG)
    if _jit.HAVE_NUMBA:
        assert _jit.resolve_backend(None) == "numba"
    plain = integral_proposition_x(cone5, QuadratureSpec(nodes_per_axis=12, adaptive=False))
    assert flagged.value == pytest.approx(plain.value, rel=1e-12)


def test_classical_simplex():
    z2 = classical_simplex_integral((2,))
    assert abs(z2.value - math.pi**2 / 6) < 1e-6
    z3 = classical_simplex_integral((3,))
    z12 = classical_simplex_integral((1, 2))
    zeta3 = float(mpmath.zeta(3))
    assert abs(z3.value - z12.value) <= z3.errorEstimate + z12.errorEstimate
    assert abs(z3.value - zeta3) < 1e-5
    with pytest.raises(QuadratureError):
        classical_simplex_integral((2, 2))
