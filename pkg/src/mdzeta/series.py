"""Direct summation of multiple Dedekind zeta values over the cone.

For a norm-one beta of trace T the norm of a + b*beta is the binary form
Q(a, b) = a^2 + T a b + b^2, and

    zeta_C(s)       = sum_{a,b>=1} Q(a,b)^-s
    zeta_C(s1, s2)  = sum_{g, d in C} N(g)^-s1 N(g+d)^-s2 .

Both are summed in double precision with numpy's pairwise reduction, and
an asymptotic tail correction is added to the truncated sum.  The
uncorrected truncation (every partial sum of norm <= maxNorm) is kept as
``partialSum``.

Depth 1
-------
The number of lattice points with Q <= x lies between A x - 2 sqrt(x) - 1
and A x, where A = log(beta_1)/(beta_1 - beta_2) is the area of
{Q <= 1} in the open quadrant.  Writing the count as A x - sqrt(x) + E(x)
with |E| <= sqrt(x) + 1 and integrating by parts gives the correction
A X^(1-s)/(s-1) - X^(1/2-s)/(2s-1) and a rigorous bound on what is left.

Depth 2
-------
The inner sum over the second summand is a suffix of the lattice:

    R(a, b) = sum_{A>a, B>b} Q(A,B)^-s2 = Z - C(a) - C(b) + Box(a, b),

with Z = zeta_C(s2), C(a) the sum over the first ``a`` columns (each column
sum is closed form via partial fractions in the Hurwitz zeta function) and
Box the finite two-dimensional prefix sum.  The outer sum is truncated at
norm X and corrected by K X^(1-w), w = s1 + s2 - 1, where K is an
integral over the continuum version of R.  The remainder is O(X^(1/2-w));
its bound is estimated from the spread of the corrected values at X/4 and
X/16 (empirical, see :func:`mdzv_series`).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import mpmath
import numpy as np
from scipy import integrate, special

from ._jit import njit, resolve_backend
from .cone import Cone

EPS = float(np.finfo(float).eps)

#: depth-2 sums need Z = zeta_C(s2) far more accurately than the outer sum
DEPTH2_Z_MIN_NORM = 10**7


class SeriesError(ValueError):
    pass


class TailBoundViolation(AssertionError):
    """A refinement moved the value by more than the certified bounds allow."""


@dataclass(frozen=True)
class ExponentVector:
    """Exponents (s_1, ..., s_m); positive integers with s_m >= 2."""

    s: tuple[int, ...]

    def __post_init__(self):
        s = tuple(self.s)
        if not s:
            raise SeriesError("empty exponent vector")
        for x in s:
            if isinstance(x, bool) or int(x) != x:
                raise SeriesError(f"exponents must be integers, got {s}")
        s = tuple(int(x) for x in s)
        if any(x < 1 for x in s):
            raise SeriesError(f"exponents must be positive, got {s}")
        if s[-1] < 2:
            raise SeriesError("s_m must be ≥ 2 (the series diverges otherwise)")
        object.__setattr__(self, "s", s)

    @property
    def m(self) -> int:
        return len(self.s)

    @property
    def weight(self) -> int:
        return sum(self.s)

    @classmethod
    def parse(cls, text: str | Sequence[int]) -> "ExponentVector":
        if isinstance(text, str):
            try:
                vals = [int(p) for p in text.replace(" ", "").split(",") if p]
            except ValueError as exc:
                raise SeriesError(f"cannot parse exponents {text!r}") from exc
            return cls(tuple(vals))
        return cls(tuple(text))

    def __str__(self):
        return ",".join(map(str, self.s))


@dataclass
class SeriesResult:
    """Truncated sum with a bound on |value - true sum|.

    ``value`` includes the asymptotic tail correction; ``partialSum`` is the
    plain truncated sum over tuples whose partial sums all have norm
    <= maxNorm.  ``termsUsed`` counts lattice points of the outer sum.
    """

    value: float
    tailBound: float
    termsUsed: int
    partialSum: float
    maxNorm: int
    s: tuple[int, ...]
    details: dict = field(default_factory=dict)

    def to_record(self, cone: Cone | None = None) -> dict:
        rec = {}
        if cone is not None:
            rec["D"] = cone.field.D
            rec["beta"] = str(cone.beta)
        rec.update(
            s=list(self.s),
            maxNorm=self.maxNorm,
            value=self.value,
            tailBound=self.tailBound,
            termsUsed=self.termsUsed,
            partialSum=self.partialSum,
        )
        return rec

    def to_json(self, cone: Cone | None = None) -> str:
        return json.dumps(self.to_record(cone))


# -- cone geometry helpers ------------------------------------------------------


def _betas(T: int) -> tuple[float, float]:
    r = math.sqrt(T * T - 4.0)
    b1 = (T + r) / 2.0
    return b1, 1.0 / b1


def area_constant(T: int) -> float:
    """Area of {a, b > 0 : a^2 + T a b + b^2 <= 1}."""
    b1, b2 = _betas(T)
    return math.log(b1) / (b1 - b2)


def _check_cone(cone: Cone) -> int:
    if cone.allow_zero:
        raise SeriesError("series evaluation requires the a, b >= 1 cone")
    return cone.trace


# -- depth 1 ---------------------------------------------------------------------


@njit
def _lattice_power_sum_nb(T, s, X):
    amax = int(math.sqrt(X)) + 1
    total = 0.0
    comp = 0.0
    count = 0
    for a in range(1, amax + 1):
        row = 0.0
        b = 1
        while True:
            q = float(a * a + T * a * b + b * b)
            if q > X:
                break
            row += q ** (-s)
            count += 1
            b += 1
        if row == 0.0:
            break
        y = row - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total, count


def _lattice_power_sum_np(T, s, X):
    amax = math.isqrt(int(X)) + 1
    bs = np.arange(1, amax + 1, dtype=np.float64)
    total = 0.0
    comp = 0.0
    count = 0
    for a in range(1, amax + 1):
        q = a * a + T * a * bs + bs * bs
        q = q[q <= X]
        if q.size == 0:
            break
        row = float(np.sum(q ** (-float(s))))
        count += q.size
        y = row - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total, count


def lattice_power_sum(T: int, s: float, X: int, backend: str | None = None):
    """sum_{a,b>=1, Q(a,b)<=X} Q(a,b)^-s and the number of terms."""
    if resolve_backend(backend) == "numba":
        total, count = _lattice_power_sum_nb(int(T), float(s), float(X))
    else:
        total, count = _lattice_power_sum_np(int(T), float(s), float(X))
    return float(total), int(count)


def depth1_tail(T: int, s: float, X: float) -> tuple[float, float]:
    """(correction, bound) for the depth-1 tail sum_{Q > X} Q^-s."""
    A = area_constant(T)
    corr = A * X ** (1 - s) / (s - 1) - X ** (0.5 - s) / (2 * s - 1)
    bound = (4 * s - 1) / (2 * s - 1) * (X ** (0.5 - s) + X ** (-s))
    return corr, bound


def _zeta_depth1(T, s, X, backend=None):
    partial, count = lattice_power_sum(T, s, X, backend)
    corr, bound = depth1_tail(T, s, X)
    value = partial + corr
    rounding = (math.log2(max(count, 2)) + 4) * EPS * abs(value)
    return value, bound + rounding, count, partial


# -- depth 2 ---------------------------------------------------------------------


def column_sums(T: int, s: int, A: np.ndarray) -> np.ndarray:
    """sum_{B>=1} Q(A, B)^-s for each entry of ``A`` (closed form).

    Q(A, B) = (B + p)(B + q) with p = beta_1 A, q = beta_2 A; partial
    fractions of ((B+p)(B+q))^-s turn the column into Hurwitz zeta values,
    with the k = 1 pair collapsing to a digamma difference.
    """
    b1, b2 = _betas(T)
    A = np.asarray(A, dtype=np.float64)
    p = b1 * A
    q = b2 * A
    total = np.zeros_like(A)
    for k in range(1, s + 1):
        c = (-1) ** (s - k) * math.comb(2 * s - k - 1, s - k)
        ck = c * (q - p) ** (-(2 * s - k))
        dk = c * (p - q) ** (-(2 * s - k))
        if k == 1:
            total += ck * (special.psi(1 + q) - special.psi(1 + p))
        else:
            total += ck * special.zeta(k, 1 + p) + dk * special.zeta(k, 1 + q)
    return total


def _suffix_continuum(T, s2, a, b):
    """int_{A>=a} int_{B>=b} Q(A, B)^-s2 dB dA, inner integral in closed form.

    Uses the same partial fractions as :func:`column_sums`; they are well
    conditioned while (beta_1 - beta_2) A is not small, so callers keep a
    away from 0.
    """
    b1, b2 = _betas(T)

    def inner(A):
        p, q = b1 * A, b2 * A
        total = 0.0
        for k in range(1, s2 + 1):
            c = (-1) ** (s2 - k) * math.comb(2 * s2 - k - 1, s2 - k)
            ck = c * (q - p) ** (-(2 * s2 - k))
            if k == 1:
                total += ck * math.log((b + q) / (b + p))
            else:
                dk = c * (p - q) ** (-(2 * s2 - k))
                total += (ck * (b + p) ** (1 - k) + dk * (b + q) ** (1 - k)) / (k - 1)
        return total

    return integrate.quad(inner, a, np.inf, epsabs=1e-15, epsrel=1e-12, limit=200)[0]


@lru_cache(maxsize=64)
def depth2_tail_constant(T: int, s1: int, s2: int) -> float:
    """K with sum_{N(g) > X} N(g)^-s1 R(g) ~ K X^(1-w), w = s1 + s2 - 1.

    Polar coordinates (a, b) = rho (cos th, sin th) and homogeneity of the
    continuum suffix integral reduce the tail to a single angular integral,
    symmetric under th -> pi/2 - th.
    """
    w = s1 + s2 - 1
    qf = lambda th: 1.0 + T * math.cos(th) * math.sin(th)
    val = integrate.quad(
        lambda th: qf(th) ** (s2 - 2) * _suffix_continuum(T, s2, math.cos(th), math.sin(th)),
        0.0,
        math.pi / 4,
        epsabs=1e-14,
        epsrel=1e-11,
        limit=200,
    )[0]
    return val / (w - 1)


def _depth2(T, s1, s2, X, backend=None, z_norm=None):
    M = math.isqrt(int(X)) + 1
    a = np.arange(1, M + 1, dtype=np.float64)
    Q = a[:, None] ** 2 + T * a[:, None] * a[None, :] + a[None, :] ** 2

    Xz = max(int(X), DEPTH2_Z_MIN_NORM) if z_norm is None else int(z_norm)
    Z, dZ, _, _ = _zeta_depth1(T, s2, Xz, backend)

    Qs2 = Q ** (-float(s2))
    C = np.cumsum(column_sums(T, s2, a))
    box = np.cumsum(np.cumsum(Qs2, axis=0), axis=1)
    R = Z - C[:, None] - C[None, :] + box

    # outer sum in norm order so several truncations come from one pass
    mask = Q <= X
    Nq = Q[mask]
    order = np.argsort(Nq, kind="stable")
    Ns = Nq[order]
    outer = Ns ** (-float(s1))
    terms = outer * R[mask][order]
    cs = np.cumsum(terms)
    cw = np.cumsum(outer)

    K = depth2_tail_constant(T, s1, s2)
    w = s1 + s2 - 1

    def corrected(Y):
        i = np.searchsorted(Ns, Y, side="right")
        head = cs[i - 1] if i > 0 else 0.0
        return head + K * Y ** (1 - w)

    value = corrected(X)
    spread = max(abs(value - corrected(X / 4)), abs(value - corrected(X / 16)) / 8)
    count = int(Ns.size)
    weight_sum = float(cw[-1]) if count else 0.0
    # R is a difference of O(Z) quantities, so each carries ~4 eps Z absolute error
    rounding = (math.log2(max(count, 2)) + 8) * EPS * abs(value) + 4 * EPS * abs(Z) * weight_sum
    bound = 2.0 * spread + dZ * weight_sum + rounding

    # plain truncation: every partial sum has norm <= X
    P = np.zeros_like(Q)
    P[1:, 1:] = np.cumsum(np.cumsum(Q ** (-float(s1)), axis=0), axis=1)[:-1, :-1]
    partial = float(np.sum(Qs2[mask] * P[mask]))
    details = {"K": K, "zetaS2": Z, "zetaS2Bound": dZ, "zetaS2Norm": Xz}
    return float(value), float(bound), count, partial, details


# -- public API ---------------------------------------------------------------------


def mdzv_series(
    cone: Cone,
    s: ExponentVector | Sequence[int] | str,
    maxNorm: int,
    backend: str | None = None,
) -> SeriesResult:
    """Evaluate zeta_C(s) for depth 1 or 2 by truncated summation.

    Parameters
    ----------
    cone : Cone
    s : ExponentVector or sequence or "s1,s2"
    maxNorm : int
        Truncation; the outer summation runs over norms <= maxNorm.
    backend : {"numba", "numpy"}, optional
        Kernel for the depth-1 lattice sum; defaults to the env flag.

    Returns
    -------
    SeriesResult
        For depth 1 the bound is rigorous up to rounding.  For depth 2 the
        truncation part of ``tailBound`` is twice the largest of
        |v(X) - v(X/4)| and |v(X) - v(X/16)|/8, which dominates the
        O(X^(1/2-w)) remainder once X is past a few hundred.
    """
    if not isinstance(s, ExponentVector):
        s = ExponentVector.parse(s)
    T = _check_cone(cone)
    maxNorm = int(maxNorm)
    if maxNorm < 1:
        raise SeriesError("maxNorm must be positive")
    if s.m == 1:
        value, bound, count, partial = _zeta_depth1(T, s.s[0], maxNorm, backend)
        return SeriesResult(value, bound, count, partial, maxNorm, s.s)
    if s.m == 2:
        value, bound, count, partial, details = _depth2(T, s.s[0], s.s[1], maxNorm, backend)
        return SeriesResult(value, bound, count, partial, maxNorm, s.s, details)
    raise SeriesError("only depth m <= 2 is supported")


def refine(
    previous: SeriesResult,
    cone: Cone,
    s: ExponentVector | Sequence[int] | str,
    largerMaxNorm: int,
    backend: str | None = None,
) -> SeriesResult:
    """Recompute at a larger truncation and check the previous bound held.

    Raises
    ------
    TailBoundViolation
        if |new - old| exceeds old.tailBound + new.tailBound.
    """
    if largerMaxNorm <= previous.maxNorm:
        raise SeriesError("largerMaxNorm must exceed the previous truncation")
    new = mdzv_series(cone, s, largerMaxNorm, backend)
    delta = abs(new.value - previous.value)
    if delta > previous.tailBound + new.tailBound:
        raise TailBoundViolation(
            f"|delta|={delta:.3e} exceeds bounds {previous.tailBound:.3e} + {new.tailBound:.3e}"
        )
    return new


# -- classical multiple zeta values -----------------------------------------------


def _em_tail(g, N, workdps=30):
    """Euler-Maclaurin: sum_{n>N} g(n) ~ int_N^inf g - g(N)/2 - g'(N)/12.

    Returns (estimate, bound) with the bound taken as |g'''(N)|/720, the size
    of the first omitted term (the functions used here are completely
    monotone far from the origin, so this dominates the remainder).
    """
    with mpmath.workdps(workdps):
        N = mpmath.mpf(N)
        integral = mpmath.quad(g, [N, 2 * N, mpmath.inf])
        d1 = mpmath.diff(g, N, 1)
        d3 = mpmath.diff(g, N, 3)
        est = integral - g(N) / 2 - d1 / 12
        return float(est), float(abs(d3) / 720)


def classical_mzv_series(s: ExponentVector | Sequence[int] | str, nMax: int) -> SeriesResult:
    """Euler's zeta(s_1, ..., s_m) = sum_{0<n_1<...<n_m} prod n_i^-s_i, m <= 2.

    The truncated sum runs over n_m <= nMax and an Euler-Maclaurin tail is
    added; for depth 2 the inner harmonic sums in the tail use their
    asymptotic expansions.
    """
    if not isinstance(s, ExponentVector):
        s = ExponentVector.parse(s)
    nMax = int(nMax)
    if nMax < 10:
        raise SeriesError("nMax must be at least 10")
    n = np.arange(1, nMax + 1, dtype=np.float64)
    if s.m == 1:
        (k,) = s.s
        partial = float(np.sum(n[::-1] ** (-float(k))))
        g = lambda x: x ** (-k)
        tail, bound = _em_tail(g, nMax)
    elif s.m == 2:
        s1, s2 = s.s
        inner = np.concatenate(([0.0], np.cumsum(n ** (-float(s1)))[:-1]))
        partial = float(np.sum((inner * n ** (-float(s2)))[::-1]))
        if s1 == 1:
            # H_{n-1} = log n + gamma - 1/(2n) - 1/(12 n^2) + 1/(120 n^4) - ...
            h = lambda x: mpmath.log(x) + mpmath.euler - 1 / (2 * x) - 1 / (12 * x**2)
            h_err = 1.0 / 120
            h_pow = 4
        else:
            # H^{(s1)}_{n-1} = zeta(s1) - sum_{m>=n} m^-s1
            z = mpmath.zeta(s1)
            h = lambda x: z - (x ** (1 - s1) / (s1 - 1) + x ** (-s1) / 2 + s1 * x ** (-s1 - 1) / 12)
            h_err = s1 * (s1 + 1) * (s1 + 2) / 720.0
            h_pow = s1 + 3
        g = lambda x: h(x) * x ** (-s2)
        tail, bound = _em_tail(g, nMax)
        # truncating the expansion of H costs sum_{n>N} h_err n^-(h_pow+s2)
        bound += h_err * nMax ** (1 - h_pow - s2) / (h_pow + s2 - 1)
    else:
        raise SeriesError("only depth m <= 2 is supported")
    value = partial + tail
    bound += (math.log2(nMax) + 4) * EPS * abs(value)
    return SeriesResult(value, bound, nMax, partial, nMax, s.s)
