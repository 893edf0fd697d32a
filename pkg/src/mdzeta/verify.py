"""Named verification checks shared by the CLI and the test suite.

Each check returns a :class:`CheckResult` with the measured residuals and
the tolerance they were compared against.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field

import mpmath

from . import divisors, membrane, quadrature, series
from .cone import Cone

CHECKS = (
    "lemma-omega0",
    "tangent-limits",
    "f0-closed-form",
    "proposition",
    "corollary",
    "divisor-poles",
    "classical-mzv",
)

F0_GRID = (0.3, 0.5, 1.0, 2.0, 5.0)


@dataclass
class CheckResult:
    name: str
    passed: bool
    residuals: dict = field(default_factory=dict)
    tolerance: float | None = None
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_record(self) -> dict:
        return {
            "check": self.name,
            "status": "PASS" if self.passed else "FAIL",
            "tolerance": self.tolerance,
            "residuals": self.residuals,
            "details": self.details,
            "seconds": round(self.seconds, 3),
        }


def _timed(fn):
    def wrapper(*a, **kw):
        t = time.perf_counter()
        res = fn(*a, **kw)
        res.seconds = time.perf_counter() - t
        return res

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@_timed
def check_lemma_omega0(cone: Cone, points: int = 100, seed: int = 0, tol: float = 1e-20) -> CheckResult:
    """omega_0 pulls back to the constant (beta_2 - beta_1); FD order is 2."""
    rng = random.Random(seed)
    form = membrane.PulledBackForm("omega0", cone)
    with mpmath.workdps(cone.field.precision):
        vals = [
            membrane.pullback_coefficient(form, rng.uniform(0.1, 5.0), rng.uniform(0.1, 5.0))
            for _ in range(points)
        ]
        mean = mpmath.fsum(vals) / points
        sd = mpmath.sqrt(mpmath.fsum((v - mean) ** 2 for v in vals) / (points - 1))
        offset = abs(mean - cone.beta_gap())
    orders = membrane.observed_fd_order(form, 0.7, 1.3)
    order_gap = max(abs(o - 2.0) for o in orders)
    # omega_1 pulls back to f0 (beta_2 - beta_1)
    w1 = membrane.PulledBackForm("omega1", cone)
    gap = float(cone.beta_gap())
    w1_gap = max(
        abs(float(membrane.pullback_coefficient(w1, a, b)) / (membrane.f0_closed(cone, a, b) * gap) - 1)
        for a, b in ((0.5, 1.0), (1.0, 1.0), (2.0, 0.3))
    )
    res = {
        "stddev": float(sd),
        "meanMinusGap": float(offset),
        "fdOrders": orders,
        "fdOrderMaxDeviation": order_gap,
        "omega1RelativeGap": w1_gap,
    }
    ok = sd < tol and offset < tol and order_gap <= 0.2 and w1_gap < 1e-12
    return CheckResult("lemma-omega0", ok, res, tol, {"points": points})


def expected_tangents(cone: Cone) -> dict:
    b1, b2 = cone.beta_embeddings
    P = membrane.ProjectivePoint.from_pair
    return {
        ("gamma1", "inf"): P(1, 0),
        ("gamma1", "0"): P(1, b1),
        ("gamma2", "inf"): P(0, 1),
        ("gamma2", "0"): P(1, b2),
    }


@_timed
def check_tangent_limits(cone: Cone, tol: float = 1e-6) -> CheckResult:
    paths = dict(zip(("gamma1", "gamma2"), membrane.MembranePath.pair(cone)))
    res, ok = {}, True
    for (name, end), want in expected_tangents(cone).items():
        got = membrane.tangent_limit(paths[name], end)
        r = got.residual(want)
        res[f"{name}@{end}"] = r
        ok &= r < tol
    return CheckResult("tangent-limits", ok, res, tol)


@_timed
def check_f0_closed_form(cone: Cone, tol: float = 1e-12) -> CheckResult:
    worst, where = 0.0, None
    for t1 in F0_GRID:
        for t2 in F0_GRID:
            a = membrane.f0_series(cone, t1, t2)
            b = membrane.f0_closed(cone, t1, t2)
            g = abs(a / b - 1)
            if g > worst:
                worst, where = g, (t1, t2)
    return CheckResult("f0-closed-form", worst < tol, {"maxRelativeGap": worst, "at": where}, tol)


def _ratio_check(name, integral, zeta, expected, tol):
    ratio = integral.value / zeta.value
    rel = abs(ratio / expected - 1)
    res = {
        "ratio": ratio,
        "expected": expected,
        "relativeError": rel,
        "integral": integral.value,
        "integralError": integral.errorEstimate,
        "series": zeta.value,
        "seriesTailBound": zeta.tailBound,
    }
    return CheckResult(name, bool(rel < tol), res, tol, {"nodes": integral.nodes})


@_timed
def check_proposition(cone, spec=None, maxNorm: int = 10**6, tol: float = 1e-5) -> CheckResult:
    spec = spec or quadrature.QuadratureSpec()
    integral = quadrature.integral_proposition_x(cone, spec)
    zeta = series.mdzv_series(cone, (2,), maxNorm)
    return _ratio_check("proposition", integral, zeta, float(cone.beta_gap_squared), tol)


@_timed
def check_corollary(cone, spec=None, maxNorm: int = 10**5, tol: float = 1e-3) -> CheckResult:
    spec = spec or quadrature.QuadratureSpec()
    integral = quadrature.integral_corollary_x(cone, spec)
    zeta = series.mdzv_series(cone, (1, 2), maxNorm)
    return _ratio_check("corollary", integral, zeta, float(cone.beta_gap()) ** 3, tol)


@_timed
def check_divisor_poles(samples: int = 4, seed: int = 0, slope_tol: float = 0.1) -> CheckResult:
    A, B = divisors.catalog_A(), divisors.catalog_B()
    counts = {
        "listedA": len(divisors.listed(A)),
        "listedB": len(divisors.listed(B)),
        "tangentialB": len(divisors.tangential(B)),
    }
    ok = counts == {"listedA": 20, "listedB": 16, "tangentialB": 4}
    res = {"counts": counts, "components": {}}
    for r in divisors.check_all(samples, seed):
        res["components"][r.component] = r.to_record()
        if r.component.startswith("A:") and r.verdict != "skipped":
            ok &= r.verdict == "diverges" and abs(r.slope + 1) <= slope_tol
        elif r.component.startswith("B:"):
            ok &= r.verdict == "finite"
    return CheckResult("divisor-poles", bool(ok), res, slope_tol)


@_timed
def check_classical_mzv(spec=None, tol: float = 1e-6) -> CheckResult:
    spec = spec or quadrature.QuadratureSpec()
    z2 = quadrature.classical_simplex_integral((2,), spec)
    z3 = quadrature.classical_simplex_integral((3,), spec)
    z12 = quadrature.classical_simplex_integral((1, 2), spec)
    o2 = series.classical_mzv_series((2,), 10**6)
    o3 = series.classical_mzv_series((3,), 10**4)
    o12 = series.classical_mzv_series((1, 2), 10**4)
    d2 = abs(z2.value - o2.value)
    d_pair = abs(z3.value - z12.value)
    combined = z3.errorEstimate + z12.errorEstimate
    res = {
        "zeta2Integral": z2.value,
        "zeta2Series": o2.value,
        "zeta2Gap": d2,
        "zeta3Integral": z3.value,
        "zeta12Integral": z12.value,
        "zeta3VsZeta12Gap": d_pair,
        "combinedError": combined,
        "zeta3SeriesGap": abs(z3.value - o3.value),
        "zeta12SeriesGap": abs(z12.value - o12.value),
    }
    ok = d2 < tol and d_pair <= combined + o3.tailBound + o12.tailBound
    ok &= res["zeta3SeriesGap"] <= z3.errorEstimate + o3.tailBound
    ok &= res["zeta12SeriesGap"] <= z12.errorEstimate + o12.tailBound
    return CheckResult("classical-mzv", bool(ok), res, tol)


def run_check(name: str, cone: Cone, spec=None, quick: bool = False) -> CheckResult:
    """Dispatch by CLI name; ``quick`` loosens the corollary to 1e-2.

    Quick mode shrinks truncations and node counts except for the classical
    check, which always runs at default nodes.
    """
    if name == "lemma-omega0":
        return check_lemma_omega0(cone)
    if name == "tangent-limits":
        return check_tangent_limits(cone)
    if name == "f0-closed-form":
        return check_f0_closed_form(cone)
    if name == "proposition":
        return check_proposition(cone, spec, maxNorm=10**5 if quick else 10**6)
    if name == "corollary":
        return check_corollary(cone, spec, maxNorm=10**4 if quick else 10**5, tol=1e-2 if quick else 1e-3)
    if name == "divisor-poles":
        return check_divisor_poles()
    if name == "classical-mzv":
        # cheap at default nodes, and its 1e-6 tolerance is fixed
        if quick and spec is not None:
            spec = quadrature.QuadratureSpec(scheme=spec.scheme, seed=spec.seed)
        return check_classical_mzv(spec)
    raise KeyError(name)


def certified_string(value: float, bound: float) -> str:
    """``value`` printed with as many significant digits as ``bound`` supports."""
    if not math.isfinite(value) or value == 0:
        return repr(value)
    if not bound > 0:
        digits = 16
    else:
        digits = int(math.floor(-math.log10(bound / abs(value))))
    digits = max(1, min(16, digits))
    return f"{value:.{digits}g}"

