"""Paths, the generating function f0 and the 2-forms omega_0, omega_1.

The membrane is the product of the two paths

    gamma_1(t) = (e^-t, e^(-beta_1 t)),   gamma_2(t) = (e^-t, e^(-beta_2 t)),

so a point (t1, t2) carries coordinates x_i = e^-t_i and y_1 = x_1^beta_1,
y_2 = x_2^beta_2.  With u = x1 x2 and v = y1 y2 the forms are

    omega_0 = du/u ^ dv/v,       omega_1 = du/(1-u) ^ dv/(1-v).

High-precision evaluators (mpmath) serve the identity checks; the float64
kernels at the bottom of the module feed the quadrature engine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath
import numpy as np

from ._jit import njit
from .cone import Cone

FORM_KINDS = ("omega0", "omega1")
PROJECTIVE_TOL = 1e-6


class MembraneError(ValueError):
    pass


class PullbackError(MembraneError):
    pass


class TangentLimitError(ArithmeticError):
    """The extrapolation sequence did not settle; ``sequence`` holds it."""

    def __init__(self, msg, sequence):
        super().__init__(msg)
        self.sequence = sequence


# -- projective points ------------------------------------------------------------


@dataclass(frozen=True)
class ProjectivePoint:
    """[u : v] scaled so the larger coordinate equals +1."""

    u: mpmath.mpf
    v: mpmath.mpf

    @classmethod
    def from_pair(cls, u, v) -> "ProjectivePoint":
        u, v = mpmath.mpf(u), mpmath.mpf(v)
        if u == 0 and v == 0:
            raise MembraneError("[0:0] is not a projective point")
        m = u if abs(u) >= abs(v) else v
        return cls(u / m, v / m)

    def residual(self, other: "ProjectivePoint") -> float:
        """|u v' - u' v| for max-normalised representatives (0 iff equal)."""
        return float(abs(self.u * other.v - other.u * self.v))

    def equals(self, other: "ProjectivePoint", tol: float = PROJECTIVE_TOL) -> bool:
        return self.residual(other) < tol

    def as_floats(self) -> tuple[float, float]:
        return float(self.u), float(self.v)

    def __str__(self):
        return f"[{mpmath.nstr(self.u, 12)} : {mpmath.nstr(self.v, 12)}]"


# -- paths ----------------------------------------------------------------------------


@dataclass(frozen=True)
class MembranePath:
    """t -> (e^-t, e^(-beta t)) for beta = beta_1 or beta_2."""

    betaEmbedding: mpmath.mpf
    label: str = "gamma"
    precision: int = 50

    def __post_init__(self):
        if not self.betaEmbedding > 0:
            raise MembraneError("path exponent must be positive")

    @classmethod
    def pair(cls, cone: Cone) -> tuple["MembranePath", "MembranePath"]:
        b1, b2 = cone.beta_embeddings
        p = cone.field.precision
        return cls(b1, "gamma1", p), cls(b2, "gamma2", p)

    def point(self, t):
        with mpmath.workdps(self.precision):
            t = mpmath.mpf(t)
            return mpmath.exp(-t), mpmath.exp(-self.betaEmbedding * t)

    def tangent(self, t, h=None):
        """(dx/dt, dy/dt) by a central difference with relative step ``h``."""
        with mpmath.workdps(self.precision):
            t = mpmath.mpf(t)
            h = mpmath.mpf(10) ** (-(self.precision // 3)) * t if h is None else mpmath.mpf(h)
            xp, yp = self.point(t + h)
            xm, ym = self.point(t - h)
            return (xp - xm) / (2 * h), (yp - ym) / (2 * h)


def tangent_extrapolants(
    path: MembranePath, end: str, levels: int = 12, t0: float | None = None
) -> list[ProjectivePoint]:
    """Sequence of estimates of lim [dx/dt : dy/dt] at ``end`` ("0" or "inf").

    At 0 the direction is smooth in t, so the slopes at t0 2^-k are
    Richardson-extrapolated (diagonal of the table).  At infinity the
    direction converges exponentially fast and the raw tangents at
    t0 2^k are returned.
    """
    end = _parse_end(end)
    if t0 is None:
        t0 = 1.0 if end == "inf" else 0.125 / max(1.0, float(path.betaEmbedding))
    with mpmath.workdps(path.precision):
        if end == "inf":
            return [ProjectivePoint.from_pair(*path.tangent(t0 * 2**k)) for k in range(levels)]
        ts = [mpmath.mpf(t0) / 2**k for k in range(levels)]
        raw = [path.tangent(t) for t in ts]
        # work in the affine chart of the coordinate that leads near t = 0
        du, dv = raw[-1]
        use_v = abs(du) >= abs(dv)
        col = [d[1] / d[0] if use_v else d[0] / d[1] for d in raw]
        table = [col]
        for j in range(1, levels):
            prev = table[-1]
            table.append([(2**j * prev[i + 1] - prev[i]) / (2**j - 1) for i in range(len(prev) - 1)])
        diag = [table[j][-1] for j in range(levels)]
        return [ProjectivePoint.from_pair(1, d) if use_v else ProjectivePoint.from_pair(d, 1) for d in diag]


def tangent_limit(
    path: MembranePath, end: str, tol: float = 1e-12, levels: int = 12
) -> ProjectivePoint:
    """Limiting tangent direction of ``path`` at t -> 0 or t -> infinity.

    Raises
    ------
    TangentLimitError
        if the last two extrapolants differ by more than ``tol``.
    """
    seq = tangent_extrapolants(path, end, levels)
    gap = seq[-1].residual(seq[-2])
    if not gap < tol:
        raise TangentLimitError(
            f"tangent sequence of {path.label} at {end} did not settle (gap {gap:.3e})",
            [p.as_floats() for p in seq],
        )
    return seq[-1]


def _parse_end(end) -> str:
    e = str(end).strip().lower()
    if e in ("0", "zero"):
        return "0"
    if e in ("inf", "infinity", "oo", "∞"):
        return "inf"
    raise MembraneError(f"end must be 0 or inf, got {end!r}")


# -- forms and their pullbacks ------------------------------------------------------


@dataclass(frozen=True)
class PulledBackForm:
    """omega_0 or omega_1 pulled back along the membrane of ``cone``."""

    kind: str
    cone: Cone = field(repr=False)

    def __post_init__(self):
        if self.kind not in FORM_KINDS:
            raise MembraneError(f"form kind must be one of {FORM_KINDS}")

    @property
    def precision(self) -> int:
        return self.cone.field.precision

    def base_functions(self, t1, t2):
        """(u, v) = (x1 x2, y1 y2) as functions of (t1, t2)."""
        b1, b2 = self.cone.beta_embeddings
        return mpmath.exp(-t1 - t2), mpmath.exp(-b1 * t1 - b2 * t2)

    def scalar(self, u, v):
        if self.kind == "omega0":
            return 1 / (u * v)
        return 1 / ((1 - u) * (1 - v))

    def x_coefficient(self, xi, xj):
        """Coefficient of dx_i ^ dx_j with y_i = x_i^beta_1, y_j = x_j^beta_2."""
        b1, b2 = self.cone.beta_floats()
        if self.kind == "omega0":
            return omega0_x.py_func(xi, xj, b1, b2)
        return omega1_x.py_func(xi, xj, b1, b2)


def pullback_coefficient(
    form: PulledBackForm, t1, t2, h=None, mode: str = "analytic"
) -> mpmath.mpf:
    """Coefficient of dt1 ^ dt2 in the pullback of ``form``.

    It is det d(u, v)/d(t1, t2) times the form's scalar factor.  In
    ``"analytic"`` mode the partial derivatives are the hand-written
    ones; in ``"finite-difference"`` mode they are central differences
    with step ``h``, which keeps the check independent of that algebra.
    """
    with mpmath.workdps(form.precision):
        t1, t2 = mpmath.mpf(t1), mpmath.mpf(t2)
        if not (t1 > 0 and t2 > 0):
            raise PullbackError("t1 and t2 must be positive")
        u, v = form.base_functions(t1, t2)
        if mode == "analytic":
            b1, b2 = form.cone.beta_embeddings
            du1, du2 = -u, -u
            dv1, dv2 = -b1 * v, -b2 * v
        elif mode in ("finite-difference", "fd"):
            if h is None:
                raise PullbackError("finite-difference mode needs a step h")
            h = mpmath.mpf(h)
            if not h > 0:
                raise PullbackError("step h must be positive")
            if h >= min(t1, t2):
                raise PullbackError("step h must be smaller than t so x stays in (0, 1)")
            if h < mpmath.mpf(10) ** (-(form.precision // 2)):
                raise PullbackError(f"step h={h} underflows the working precision")
            up1, vp1 = form.base_functions(t1 + h, t2)
            um1, vm1 = form.base_functions(t1 - h, t2)
            up2, vp2 = form.base_functions(t1, t2 + h)
            um2, vm2 = form.base_functions(t1, t2 - h)
            du1, dv1 = (up1 - um1) / (2 * h), (vp1 - vm1) / (2 * h)
            du2, dv2 = (up2 - um2) / (2 * h), (vp2 - vm2) / (2 * h)
            if du1 == 0 or dv2 == 0:
                raise PullbackError("difference quotient vanished (step underflow at large t)")
        else:
            raise PullbackError(f"unknown mode {mode!r}")
        det = du1 * dv2 - du2 * dv1
        return det * form.scalar(u, v)


def observed_fd_order(form: PulledBackForm, t1, t2, h0=1e-2, halvings=4) -> list[float]:
    """log2 of successive gap ratios |fd(h) - analytic| under h -> h/2."""
    exact = pullback_coefficient(form, t1, t2)
    gaps = [
        abs(pullback_coefficient(form, t1, t2, h0 / 2**k, "finite-difference") - exact)
        for k in range(halvings + 1)
    ]
    return [float(mpmath.log(gaps[k] / gaps[k + 1], 2)) for k in range(halvings)]


# -- generating function f0 ------------------------------------------------------------


@njit
def f0_kernel(t1, t2, b1, b2):
    """Closed-form f0 in float64: product of two geometric series.

    Written as e^-s/(1 - e^-s) with expm1 so neither small nor large
    arguments overflow or cancel.  Works elementwise on arrays.
    """
    s = t1 + t2
    r = b1 * t1 + b2 * t2
    return np.exp(-s) / (-np.expm1(-s)) * (np.exp(-r) / (-np.expm1(-r)))


@njit
def omega1_x(xi, xj, b1, b2):
    """omega_1 coefficient of dx_i ^ dx_j on the membrane (y bound to x)."""
    yi = xi**b1
    yj = xj**b2
    return (b2 - b1) * yi * yj / ((1.0 - xi * xj) * (1.0 - yi * yj))


@njit
def omega0_x(xi, xj, b1, b2):
    """omega_0 coefficient of dx_i ^ dx_j on the membrane."""
    return (b2 - b1) / (xi * xj)


def _check_t(t1, t2):
    if np.any(np.asarray(t1) <= 0) or np.any(np.asarray(t2) <= 0):
        raise MembraneError("f0 diverges unless t1, t2 > 0")


def f0_closed(cone: Cone, t1, t2):
    """f0(C; t1, t2) = x1x2/(1-x1x2) * x1^b1 x2^b2/(1 - x1^b1 x2^b2)."""
    _check_t(t1, t2)
    b1, b2 = cone.beta_floats()
    return f0_kernel.py_func(np.asarray(t1, float), np.asarray(t2, float), b1, b2)[()]


def _f0_tail_bound(A, c, X):
    # terms with norm > X have exponent >= 2 c sqrt(N); about A dN of them per dN
    r = math.sqrt(X)
    e = math.exp(-2 * c * r)
    return e * (A * (r / c + 1 / (2 * c * c)) + 2 * r + 2)


def f0_default_norm(cone: Cone, t1: float, t2: float, rtol: float = 1e-17) -> int:
    """Smallest power-of-two truncation whose exponential tail is below rtol*f0."""
    from .series import area_constant

    c = math.sqrt(t1 * t2)
    b1, b2 = cone.beta_floats()
    lead = math.exp(-(t1 + t2) - (b1 * t1 + b2 * t2))  # the (1, 1) term
    A = area_constant(cone.trace)
    X = 16
    while _f0_tail_bound(A, c, X) > rtol * lead:
        X *= 2
        if X > 2**40:
            raise MembraneError("f0 series truncation exceeds 2^40")
    return X


def f0_series(cone: Cone, t1: float, t2: float, maxNorm: int | None = None) -> float:
    """Truncated sum over cone elements of exp(-t1 g1 - t2 g2).

    ``maxNorm`` defaults to :func:`f0_default_norm`.
    """
    _check_t(t1, t2)
    t1, t2 = float(t1), float(t2)
    if maxNorm is None:
        maxNorm = f0_default_norm(cone, t1, t2)
    T = cone.trace
    b1, b2 = cone.beta_floats()
    amax = math.isqrt(int(maxNorm)) + 1
    bs = np.arange(1, amax + 1, dtype=np.float64)
    parts = []
    for a in range(1, amax + 1):
        q = a * a + T * a * bs + bs * bs
        b = bs[q <= maxNorm]
        if b.size == 0:
            break
        parts.append(np.exp(-t1 * (a + b * b1) - t2 * (a + b * b2)))
    if not parts:
        return 0.0
    return math.fsum(np.concatenate(parts))


# -- free-coordinate magnitude of Omega_A ------------------------------------------------


def _oneform_norm(p, q, denom):
    return math.hypot(p, q) / abs(denom)


def omega_A_norm(x: np.ndarray, y: np.ndarray) -> float:
    """|Omega_A| at a point with x_1..x_6, y_1..y_6 treated as free coordinates.

    Omega_A = omega_1(x1,x2) ^ omega_1(x3,x4) ^ omega_0(x5,x6) factors into
    six 1-forms with pairwise disjoint coordinate supports, so the norm of
    the wedge is the product of the 1-form norms, e.g.
    |d(x1x2)/(1-x1x2)| = sqrt(x1^2 + x2^2)/|1 - x1x2|.
    """
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    val = 1.0
    for i, j in ((0, 1), (2, 3)):
        val *= _oneform_norm(x[i], x[j], 1 - x[i] * x[j])
        val *= _oneform_norm(y[i], y[j], 1 - y[i] * y[j])
    val *= _oneform_norm(x[4], x[5], x[4] * x[5])
    val *= _oneform_norm(y[4], y[5], y[4] * y[5])
    return val


