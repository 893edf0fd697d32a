"""Quadrature for the membrane integrals and their x-coordinate forms.

t-domain
    Nested regions 0 < v < u < t < infinity (componentwise in both
    coordinates).  The outer pair is put in simplex-polar form
    t = r (c, 1-c) with r = t1 + t2 mapped from (0, 1) by a rational map that
    stops at ``t_cutoff``.  When only the outer variable enters the
    integrand the inner levels are ratio coordinates u = t*rho, v = u*sigma;
    their integrands are polynomial and get the smallest exact rule.  When
    the integrand also depends on u (zeta(1,2)) the chain is written in
    polar increments instead, u = rho h (d, 1-d), t = u + rho (1-h) (e, 1-e),
    which keeps every axis smooth.

x-domain
    Chains 0 < x_1 < x_3 < x_5 < 1 use ratio coordinates x_5 = r_3,
    x_3 = r_2 r_3, x_1 = r_1 r_2 r_3, each r graded toward both ends by the
    sigmoidal map z^k / (z^k + (1-z)^k).  The odd and even chains are
    independent, so the tensor sum factors into a double loop over chain
    points (:func:`_pair_sum`), the hot kernel of the package.

Errors are estimated by comparing against a rule with about 3/4 of the
nodes; the node count grows by 1.5x until the target tolerance is met or
the node budget runs out.  A Latin-hypercube Monte Carlo mode runs the
same mapped integrands as an independent check.
"""

from __future__ import annotations

import functools
import logging
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.stats import qmc

from ._jit import njit, resolve_backend
from .cone import Cone
from .membrane import f0_kernel, omega0_x, omega1_x
from .series import ExponentVector

log = logging.getLogger(__name__)

SCHEMES = ("gauss-legendre", "monte-carlo")
CHUNK = 1 << 20

#: (default nodes, default target relative tolerance) per integral
DEFAULTS = {
    "zeta2": (32, 1e-6),
    "zeta3": (32, 1e-4),
    "zeta12": (24, 1e-4),
    "proposition": (24, 1e-5),
    "corollary": (24, 1e-3),
    "classical": (32, 1e-6),
}
#: largest node count the adaptive loop may reach
BUDGET = {
    "zeta2": 128,
    "zeta3": 128,
    "zeta12": 48,
    "proposition": 64,
    "corollary": 36,
    "classical": 96,
}


class QuadratureError(ValueError):
    pass


class QuadratureWarning(UserWarning):
    pass


@dataclass(frozen=True)
class QuadratureSpec:
    """Settings shared by all integrals.

    ``None`` fields take per-integral defaults (see ``DEFAULTS``).
    ``nodes_per_axis`` applies to every non-polynomial axis; polynomial
    axes always get the smallest exact Gauss-Legendre rule.
    """

    nodes_per_axis: int | None = None
    scheme: str = "gauss-legendre"
    t_cutoff: float | None = None
    seed: int = 0
    target_rel_tol: float | None = None
    mc_samples: int = 400_000
    mc_batches: int = 8
    grading: int = 2
    radial_scale: float = 1.0
    adaptive: bool = True
    max_nodes: int | None = None
    backend: str | None = None
    quick_mode: bool = False

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise QuadratureError(f"scheme must be one of {SCHEMES}")
        if self.nodes_per_axis is not None and self.nodes_per_axis < 2:
            raise QuadratureError("nodes_per_axis must be >= 2")
        if self.t_cutoff is not None and not self.t_cutoff > 0:
            raise QuadratureError("t_cutoff must be positive")
        if self.target_rel_tol is not None and not self.target_rel_tol > 0:
            raise QuadratureError("target_rel_tol must be positive")
        if self.mc_batches < 2 or self.mc_samples < self.mc_batches:
            raise QuadratureError("Monte Carlo needs >= 2 batches and >= 1 sample per batch")
        if self.grading < 1:
            raise QuadratureError("grading must be >= 1")
        if not self.radial_scale > 0:
            raise QuadratureError("radial_scale must be positive")

    @classmethod
    def quick(cls, **kw) -> "QuadratureSpec":
        """Reduced settings for smoke runs (about 2/3 of the default nodes
        per axis, so roughly 10x fewer points in six dimensions)."""
        kw.setdefault("adaptive", False)
        kw.setdefault("mc_samples", 40_000)
        return cls(quick_mode=True, **kw)

    def nodes_for(self, name: str) -> int:
        if self.nodes_per_axis is not None:
            return self.nodes_per_axis
        base = DEFAULTS[name][0]
        return max(8, int(round(base * 2 / 3))) if self.quick_mode else base

    def tol_for(self, name: str) -> float:
        return self.target_rel_tol if self.target_rel_tol is not None else DEFAULTS[name][1]

    def budget_for(self, name: str) -> int:
        return self.max_nodes if self.max_nodes is not None else BUDGET[name]

    def as_dict(self) -> dict:
        return {
            "nodes_per_axis": self.nodes_per_axis,
            "quick": self.quick_mode,
            "scheme": self.scheme,
            "t_cutoff": self.t_cutoff,
            "seed": self.seed,
            "target_rel_tol": self.target_rel_tol,
            "mc_samples": self.mc_samples,
            "mc_batches": self.mc_batches,
            "grading": self.grading,
            "radial_scale": self.radial_scale,
            "adaptive": self.adaptive,
            "max_nodes": self.max_nodes,
        }


@dataclass
class IntegralResult:
    value: float
    errorEstimate: float
    evaluations: int
    nodes: int
    converged: bool
    details: dict = field(default_factory=dict)

    def to_record(self) -> dict:
        return {
            "value": self.value,
            "errorEstimate": self.errorEstimate,
            "evaluations": self.evaluations,
            "nodes": self.nodes,
            "converged": self.converged,
            **self.details,
        }


# -- one-dimensional rules ----------------------------------------------------------


def gauss_legendre01(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    return (x + 1) / 2, w / 2


def sigmoid_map(z, k: int):
    """g(z) = z^k/(z^k + (1-z)^k) and g'(z); clusters nodes at 0 and 1."""
    a = z**k
    b = (1 - z) ** k
    g = a / (a + b)
    dg = k * z ** (k - 1) * (1 - z) ** (k - 1) / (a + b) ** 2
    return g, dg


def radial_map(z, scale: float, cutoff: float):
    """r = scale z / (1 - a z) on (0, 1) -> (0, cutoff), a = 1 - scale/cutoff."""
    a = 1.0 - scale / cutoff if math.isfinite(cutoff) else 1.0
    den = 1.0 - a * z
    return scale * z / den, scale / den**2


@dataclass(frozen=True)
class _Axis:
    """A unit-interval axis and the map that turns it into a problem variable.

    ``degree`` marks axes on which the integrand is a polynomial of that
    degree; they get the exact rule with ceil((degree+1)/2) nodes.
    """

    name: str
    kind: str = "unit"  # unit | radial | sigmoid
    degree: int | None = None
    param: tuple = ()

    def transform(self, z):
        if self.kind == "unit":
            return z, np.ones_like(z)
        if self.kind == "radial":
            return radial_map(z, *self.param)
        if self.kind == "sigmoid":
            return sigmoid_map(z, *self.param)
        raise QuadratureError(self.kind)

    def rule(self, n: int):
        m = n if self.degree is None else max(1, (self.degree + 2) // 2)
        z, w = gauss_legendre01(m)
        x, dx = self.transform(z)
        return x, w * dx


@dataclass
class _Problem:
    """Integrand on mapped axes: ``f(*coords)`` with coords broadcastable."""

    name: str
    axes: Sequence[_Axis]
    integrand: Callable[..., np.ndarray]
    scale: float = 1.0
    details: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.axes)


def _tensor_gl(prob: _Problem, n: int) -> tuple[float, int]:
    rules = [ax.rule(n) for ax in prob.axes]
    counts = [r[0].size for r in rules]
    first_x, first_w = rules[0]
    rest = rules[1:]
    inner = int(np.prod(counts[1:])) if rest else 1
    step = max(1, CHUNK // max(inner, 1))
    grids = np.meshgrid(*[r[0] for r in rest], indexing="ij")
    wgrid = np.ones(())
    for r in rest:
        wgrid = np.multiply.outer(wgrid, r[1])
    parts = []
    for s in range(0, counts[0], step):
        xs = first_x[s : s + step].reshape((-1,) + (1,) * len(rest))
        ws = first_w[s : s + step].reshape((-1,) + (1,) * len(rest))
        vals = prob.integrand(xs, *[g[None] for g in grids])
        parts.append(np.sum(vals * ws * wgrid[None]))
    return prob.scale * math.fsum(parts), int(np.prod(counts))


def _monte_carlo(prob: _Problem, spec: QuadratureSpec) -> IntegralResult:
    rng = np.random.default_rng(spec.seed)
    per = spec.mc_samples // spec.mc_batches
    means = []
    for _ in range(spec.mc_batches):
        sampler = qmc.LatinHypercube(d=prob.dim, seed=rng)
        U = sampler.random(per)
        coords, jac = [], np.ones(per)
        for k, ax in enumerate(prob.axes):
            x, dx = ax.transform(U[:, k])
            coords.append(x)
            jac = jac * dx
        means.append(float(np.mean(prob.integrand(*coords) * jac)))
    means = np.asarray(means) * prob.scale
    value = float(np.mean(means))
    se = float(np.std(means, ddof=1) / math.sqrt(len(means)))
    err = 3.0 * se
    tol = spec.tol_for(prob.name)
    return IntegralResult(
        value, err, per * spec.mc_batches, 0, err <= tol * abs(value),
        {"scheme": "monte-carlo", **prob.details},
    )


def _adaptive(name: str, spec: QuadratureSpec, evaluate: Callable[[int], tuple[float, int]], details=None):
    """Run ``evaluate(n)`` at n and ~0.75 n, growing n by 1.5x until converged."""
    n = spec.nodes_for(name)
    tol = spec.tol_for(name)
    budget = max(spec.budget_for(name), n)
    cache = {}

    def ev(m):
        if m not in cache:
            cache[m] = evaluate(m)
        return cache[m]

    while True:
        lo = max(2, int(round(0.75 * n)))
        v, _ = ev(n)
        vlo, _ = ev(lo)
        err = abs(v - vlo)
        converged = err <= tol * abs(v)
        if converged or not spec.adaptive or n >= budget:
            break
        n = min(budget, int(math.ceil(1.5 * n)))
    evals = sum(c for _, c in cache.values())
    if not converged:
        warnings.warn(
            f"{name}: error estimate {err:.2e} above target {tol:.1e}*|value| at n={n}",
            QuadratureWarning,
            stacklevel=3,
        )
    log.debug("%s: n=%d value=%.16g err=%.2e", name, n, v, err)
    return IntegralResult(
        float(v), float(err), evals, n, converged,
        {"scheme": "gauss-legendre", **(details or {})},
    )


def _run(prob: _Problem, spec: QuadratureSpec) -> IntegralResult:
    if spec.scheme == "monte-carlo":
        return _monte_carlo(prob, spec)
    return _adaptive(prob.name, spec, lambda n: _tensor_gl(prob, n), prob.details)


# -- t-domain --------------------------------------------------------------------------


def default_t_cutoff(cone: Cone) -> float:
    """50 / min(1, beta_2, Tr beta): every exponential factor is < 1e-16 there."""
    b1, b2 = cone.beta_floats()
    return 50.0 / min(1.0, b2, float(cone.trace))


def resolve_t_cutoff(cone: Cone, spec: QuadratureSpec) -> float:
    cut = default_t_cutoff(cone) if spec.t_cutoff is None else float(spec.t_cutoff)
    b1, b2 = cone.beta_floats()
    if math.exp(-cut * min(1.0, b2)) >= 1e-16:
        warnings.warn(
            f"t_cutoff={cut:g} truncates a tail of f0 above 1e-16 (min(1, beta_2)={min(1.0, b2):.4g})",
            QuadratureWarning,
            stacklevel=3,
        )
    return cut


def _f0_fn(cone: Cone, single_term: bool):
    b1, b2 = cone.beta_floats()
    if single_term:
        g1, g2 = 1.0 + b1, 1.0 + b2  # gamma = 1 + beta
        return lambda t1, t2: np.exp(-g1 * t1 - g2 * t2)
    kern = f0_kernel.py_func
    return lambda t1, t2: kern(t1, t2, b1, b2)


def _radial_axis(cone, spec):
    return _Axis("r", "radial", None, (spec.radial_scale, resolve_t_cutoff(cone, spec)))


def _problem_zeta2(cone: Cone, spec: QuadratureSpec) -> _Problem:
    f0 = _f0_fn(cone, False)
    axes = [_radial_axis(cone, spec), _Axis("c"), _Axis("rho1", degree=0), _Axis("rho2", degree=0)]

    def f(r, c, rho1, rho2):
        t1, t2 = r * c, r * (1 - c)
        # polar Jacobian r, ratio Jacobian t1 t2 for u = t*rho
        return f0(t1, t2) * r * t1 * t2 + 0 * (rho1 + rho2)

    return _Problem("zeta2", axes, f)


def _problem_nested3(cone: Cone, spec: QuadratureSpec, name: str, single_term=False) -> _Problem:
    """0 < v < u < t componentwise; integrand f0(t) (zeta3) or f0(t) f0(u) (zeta12)."""
    f0 = _f0_fn(cone, single_term)
    rad = _radial_axis(cone, spec)
    if name == "zeta3":
        axes = [rad, _Axis("c"), _Axis("rho1", degree=1), _Axis("rho2", degree=1),
                _Axis("sig1", degree=0), _Axis("sig2", degree=0)]

        def f(r, c, rho1, rho2, s1, s2):
            t1, t2 = r * c, r * (1 - c)
            u1, u2 = t1 * rho1, t2 * rho2
            return f0(t1, t2) * r * (t1 * t2) * (u1 * u2) + 0 * (s1 + s2)

        return _Problem(name, axes, f)

    axes = [rad, _Axis("h"), _Axis("d"), _Axis("e"), _Axis("sig1", degree=0), _Axis("sig2", degree=0)]

    def g(r, h, d, e, s1, s2):
        u1, u2 = r * h * d, r * h * (1 - d)
        t1 = u1 + r * (1 - h) * e
        t2 = u2 + r * (1 - h) * (1 - e)
        jac = r**3 * h * (1 - h) * (u1 * u2)
        return f0(t1, t2) * f0(u1, u2) * jac + 0 * (s1 + s2)

    return _Problem(name, axes, g, details={"single_term": bool(single_term)})


def integral_zeta2(cone: Cone, spec: QuadratureSpec | None = None) -> IntegralResult:
    """int_{t > u > 0} f0(t) dt du over both coordinates; equals zeta_C(2)."""
    spec = spec or QuadratureSpec()
    return _run(_problem_zeta2(cone, spec), spec)


def integral_zeta3(cone: Cone, spec: QuadratureSpec | None = None) -> IntegralResult:
    """Triple nesting t > u > v > 0 with f0 at the outer level; zeta_C(3)."""
    spec = spec or QuadratureSpec()
    return _run(_problem_nested3(cone, spec, "zeta3"), spec)


def integral_zeta12(cone: Cone, spec: QuadratureSpec | None = None, single_term: bool = False) -> IntegralResult:
    """Triple nesting with f0(t) f0(u); equals zeta_C(1, 2).

    With ``single_term`` f0 is replaced by exp(-g1 t1 - g2 t2) for
    g = 1 + beta, whose integral is 1/(N(g) N(2g)^2).
    """
    spec = spec or QuadratureSpec()
    return _run(_problem_nested3(cone, spec, "zeta12", single_term), spec)


# -- x-domain ----------------------------------------------------------------------------


def _chain(n: int, length: int, k: int):
    """Tensor points of the chain 0 < x_1 < ... < x_length < 1 (odd or even).

    Returns coordinates (x_first, ..., x_last) and the weights including
    the ratio-coordinate Jacobian r_2 r_3^2 (or r_2 for length 2).
    """
    r, wr = _sig_rule(n, k)
    grids = np.meshgrid(*([r] * length), indexing="ij")
    wgrids = np.meshgrid(*([wr] * length), indexing="ij")
    rs = [g.ravel() for g in grids]
    w = np.prod([g.ravel() for g in wgrids], axis=0)
    xs = []
    for i in range(length):
        xs.append(np.prod(rs[i:], axis=0))
    # dx_1 ... dx_L = prod_{j>=2} r_j^(j-1) dr
    jac = np.ones_like(w)
    for j in range(1, length):
        jac = jac * rs[j] ** j
    return xs, w * jac


def _prod(arrays):
    return functools.reduce(np.multiply, arrays)


def _sig_rule(n, k):
    z, w = gauss_legendre01(n)
    g, dg = sigmoid_map(z, k)
    return g, w * dg


@njit
def _pair_sum_nb(ox1, oy1, ox3, oy3, ow, ex2, ey2, ex4, ey4, ew, two):
    total = 0.0
    comp = 0.0
    ne = ex2.size
    for i in range(ox1.size):
        x1 = ox1[i]
        y1 = oy1[i]
        x3 = ox3[i]
        y3 = oy3[i]
        s = 0.0
        if two:
            for j in range(ne):
                s += ew[j] * ey2[j] * ey4[j] / (
                    (1.0 - x1 * ex2[j]) * (1.0 - y1 * ey2[j]) * (1.0 - x3 * ex4[j]) * (1.0 - y3 * ey4[j])
                )
            term = ow[i] * y1 * y3 * s
        else:
            for j in range(ne):
                s += ew[j] * ey2[j] / ((1.0 - x1 * ex2[j]) * (1.0 - y1 * ey2[j]))
            term = ow[i] * y1 * s
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


def _pair_sum_np(ox1, oy1, ox3, oy3, ow, ex2, ey2, ex4, ey4, ew, two, block=32):
    parts = []
    for s in range(0, ox1.size, block):
        sl = slice(s, s + block)
        a = ew * ey2 / ((1.0 - ox1[sl, None] * ex2) * (1.0 - oy1[sl, None] * ey2))
        if two:
            a = a * ey4 / ((1.0 - ox3[sl, None] * ex4) * (1.0 - oy3[sl, None] * ey4))
            parts.append(ow[sl] * oy1[sl] * oy3[sl] * a.sum(axis=1))
        else:
            parts.append(ow[sl] * oy1[sl] * a.sum(axis=1))
    return math.fsum(np.concatenate(parts))


def pair_sum(odd, even, two: bool, backend: str | None = None) -> float:
    """sum over odd/even chain points of the separable x-domain integrand.

    ``odd`` = (x1, y1, x3, y3, w) and ``even`` = (x2, y2, x4, y4, w); the
    omega_0 factor and the Jacobians are folded into the weights and the
    constant (beta_2 - beta_1)^k is left to the caller.
    """
    args = (*odd, *even, bool(two))
    if resolve_backend(backend) == "numba":
        return float(_pair_sum_nb(*args))
    return float(_pair_sum_np(*args))


def _x_chains(cone: Cone, n: int, k: int, length: int):
    b1, b2 = cone.beta_floats()
    (oxs, ow) = _chain(n, length, k)
    exs, ew = oxs, ow  # same rule for both chains
    # weights absorb 1/x_last for the omega_0 factor
    odd_w = ow / oxs[-1]
    even_w = ew / exs[-1]
    odd = [oxs[0], oxs[0] ** b1]
    even = [exs[0], exs[0] ** b2]
    if length == 3:
        odd += [oxs[1], oxs[1] ** b1]
        even += [exs[1], exs[1] ** b2]
    else:
        z = np.zeros_like(oxs[0])
        odd += [z, z]
        even += [z, z]
    return tuple(odd + [odd_w]), tuple(even + [even_w])


def _x_problem_mc(cone: Cone, spec: QuadratureSpec, name: str, length: int) -> _Problem:
    b1, b2 = cone.beta_floats()
    db = b2 - b1
    k = spec.grading
    axes = [_Axis(f"r{i}", "sigmoid", None, (k,)) for i in range(2 * length)]
    w1 = omega1_x.py_func
    w0 = omega0_x.py_func

    def f(*r):
        ro, re = r[:length], r[length:]
        xo = [_prod(ro[i:]) for i in range(length)]
        xe = [_prod(re[i:]) for i in range(length)]
        jac = np.ones_like(r[0])
        for j in range(1, length):
            jac = jac * ro[j] ** j * re[j] ** j
        val = w1(xo[0], xe[0], b1, b2) * w0(xo[-1], xe[-1], b1, b2)
        if length == 3:
            val = val * w1(xo[1], xe[1], b1, b2)
        return val * jac

    return _Problem(name, axes, f)


def _x_integral(cone: Cone, spec: QuadratureSpec, name: str, length: int) -> IntegralResult:
    if spec.scheme == "monte-carlo":
        return _monte_carlo(_x_problem_mc(cone, spec, name, length), spec)
    b1, b2 = cone.beta_floats()
    db = b2 - b1
    power = 2 if length == 2 else 3
    backend = spec.backend

    def evaluate(n):
        odd, even = _x_chains(cone, n, spec.grading, length)
        s = pair_sum(odd, even, length == 3, backend)
        return db**power * s, n ** (2 * length)

    return _adaptive(name, spec, evaluate, {"grading": spec.grading})


def integral_proposition_x(cone: Cone, spec: QuadratureSpec | None = None) -> IntegralResult:
    """int omega_1(x1,x2) ^ omega_0(x3,x4) over 0<x1<x3<1, 0<x2<x4<1.

    Odd coordinates follow the path with exponent beta_1 and even ones the
    path with beta_2.  Expected: (beta_2 - beta_1)^2 zeta_C(2).
    """
    spec = spec or QuadratureSpec()
    return _x_integral(cone, spec, "proposition", 2)


def integral_corollary_x(cone: Cone, spec: QuadratureSpec | None = None) -> IntegralResult:
    """int omega_1 ^ omega_1 ^ omega_0 over the two 3-chains in x.

    Expected: (beta_2 - beta_1)^3 zeta_C(1, 2), negative when beta_1 > 1.
    """
    spec = spec or QuadratureSpec()
    return _x_integral(cone, spec, "corollary", 3)


# -- classical iterated integrals on the simplex --------------------------------------


def _problem_classical(s: ExponentVector, spec: QuadratureSpec) -> _Problem:
    """Word in dx/(1-x) (letter 1) and dx/x (letter 0) for exponent s.

    s = (s_1, ..., s_m) maps to 1 0^(s_1 - 1) ... 1 0^(s_m - 1), read along
    0 < x_1 < ... < x_w < 1.
    """
    word = []
    for k in s.s:
        word += [1] + [0] * (k - 1)
    w = len(word)
    k = max(spec.grading, 3)
    axes = [_Axis(f"r{i}", "sigmoid", None, (k,)) for i in range(w)]

    def f(*r):
        xs = [_prod(r[i:]) for i in range(w)]
        val = np.ones_like(xs[0])
        for j in range(1, w):
            val = val * r[j] ** j
        for x, letter in zip(xs, word):
            val = val / ((1 - x) if letter else x)
        return val

    return _Problem("classical", axes, f, details={"word": "".join(map(str, word))})


def classical_simplex_integral(s, spec: QuadratureSpec | None = None) -> IntegralResult:
    """Iterated integral over the simplex equal to Euler's zeta(s), weight <= 3."""
    spec = spec or QuadratureSpec()
    if not isinstance(s, ExponentVector):
        s = ExponentVector.parse(s)
    if s.weight > 3:
        raise QuadratureError("classical simplex integrals are wired for weight <= 3")
    return _run(_problem_classical(s, spec), spec)


# -- inspection helpers ----------------------------------------------------------------


def node_points(integral: str, cone: Cone | None = None, spec: QuadratureSpec | None = None, n: int = 8):
    """Mapped quadrature nodes, for checking that they lie inside the region.

    t-domain integrals return ``{"t": (t1, t2), "u": (u1, u2), "v": (v1, v2)}``
    arrays; x-domain ones return the odd and even chains, whose product is
    the node set.
    """
    spec = spec or QuadratureSpec()
    if integral in ("proposition", "corollary"):
        length = 2 if integral == "proposition" else 3
        xs, _ = _chain(n, length, spec.grading)
        return {"odd": xs, "even": xs}
    if integral == "zeta2":
        prob = _problem_zeta2(cone, spec)
    elif integral in ("zeta3", "zeta12"):
        prob = _problem_nested3(cone, spec, integral)
    else:
        raise QuadratureError(f"unknown integral {integral!r}")
    pts = [ax.rule(n)[0] for ax in prob.axes]
    g = [a.ravel() for a in np.meshgrid(*pts, indexing="ij")]
    if integral == "zeta2":
        r, c, rho1, rho2 = g
        t = (r * c, r * (1 - c))
        u = (t[0] * rho1, t[1] * rho2)
        return {"t": t, "u": u}
    if integral == "zeta3":
        r, c, rho1, rho2, s1, s2 = g
        t = (r * c, r * (1 - c))
        u = (t[0] * rho1, t[1] * rho2)
    else:
        r, h, d, e, s1, s2 = g
        u = (r * h * d, r * h * (1 - d))
        t = (u[0] + r * (1 - h) * e, u[1] + r * (1 - h) * (1 - e))
    v = (u[0] * s1, u[1] * s2)
    return {"t": t, "u": u, "v": v}


def corollary_domain_faces() -> list[str]:
    """Codimension-one faces of the corollary's integration domain."""
    faces = []
    for chain in (("x1", "x3", "x5"), ("x2", "x4", "x6")):
        faces.append(f"{chain[0]}=0")
        faces += [f"{a}={b}" for a, b in zip(chain, chain[1:])]
        faces.append(f"{chain[-1]}=1")
    return faces
