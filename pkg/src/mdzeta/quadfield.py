"""Exact arithmetic in real quadratic fields Q(sqrt(D)).

Elements are stored as ``a + b*sqrt(D)`` with :class:`fractions.Fraction`
coordinates, so norms, traces and sign tests are exact.  Real approximations
only appear through :func:`embed`, evaluated with mpmath at the field's
working precision.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import isqrt
from numbers import Rational

import mpmath

DEFAULT_PRECISION = 50


class FieldError(ValueError):
    """Invalid field parameters or an element that violates a field contract."""


def _is_squarefree(n: int) -> bool:
    if n % 4 == 0:
        return False
    p = 3
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 2
    return True


@dataclass(frozen=True)
class QuadraticField:
    """K = Q(sqrt(D)) for a squarefree integer D > 1.

    Use :func:`make_field` to construct; it validates ``D``.
    """

    D: int
    precision: int = DEFAULT_PRECISION
    sqrtD: mpmath.mpf = dc_field(compare=False, repr=False, default=None)

    @property
    def ring_basis_kind(self) -> str:
        # D = 1 mod 4: integral basis {1, (1+sqrt D)/2}; otherwise {1, sqrt D}
        return "half-integer" if self.D % 4 == 1 else "integer"

    @property
    def discriminant(self) -> int:
        return self.D if self.D % 4 == 1 else 4 * self.D

    def element(self, a, b=0) -> "FieldElement":
        return FieldElement(Fraction(a), Fraction(b), self)

    @property
    def one(self) -> "FieldElement":
        return self.element(1, 0)

    @property
    def sqrt(self) -> "FieldElement":
        return self.element(0, 1)

    def parse(self, text: str) -> "FieldElement":
        """Parse ``"a,b"`` (exact rationals) as ``a + b*sqrt(D)``."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 2:
            raise FieldError(f"expected 'a,b' for a + b*sqrt(D), got {text!r}")
        try:
            return self.element(Fraction(parts[0]), Fraction(parts[1]))
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"cannot parse {text!r} as exact rationals") from exc


def make_field(D: int, precision: int = DEFAULT_PRECISION) -> QuadraticField:
    """Validate ``D`` and build the field with sqrt(D) at ``precision`` digits."""
    if isinstance(D, bool) or not isinstance(D, int):
        raise FieldError(f"D must be an integer, got {D!r}")
    if D <= 1:
        raise FieldError(f"D must be > 1, got {D}")
    if not _is_squarefree(D):
        # perfect squares are caught here as well
        raise FieldError(f"D={D} is not squarefree")
    if precision < 15:
        raise FieldError("precision must be at least 15 decimal digits")
    with mpmath.workdps(precision):
        sqrtD = mpmath.sqrt(D)
    return QuadraticField(D, precision, sqrtD)


def _sign_a_plus_b_sqrt(a: Fraction, b: Fraction, D: int) -> int:
    """Exact sign of a + b*sqrt(D)."""
    if b == 0:
        return (a > 0) - (a < 0)
    if a == 0:
        return (b > 0) - (b < 0)
    if (a > 0) == (b > 0):
        return 1 if a > 0 else -1
    # opposite signs: compare a^2 with b^2 D
    lhs, rhs = a * a, b * b * D
    if lhs == rhs:  # impossible for squarefree D > 1, kept for safety
        return 0
    dominant = a if lhs > rhs else b
    return 1 if dominant > 0 else -1


@dataclass(frozen=True)
class FieldElement:
    """``a + b*sqrt(D)`` with exact rational coordinates."""

    a: Fraction
    b: Fraction
    field: QuadraticField

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field.D != self.field.D:
                raise FieldError("elements of different fields")
            return other
        if isinstance(other, (int, Rational)):
            return FieldElement(Fraction(other), Fraction(0), self.field)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.a + o.a, self.b + o.b, self.field)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(-self.a, -self.b, self.field)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.a - o.a, self.b - o.b, self.field)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        D = self.field.D
        return FieldElement(
            self.a * o.a + self.b * o.b * D, self.a * o.b + self.b * o.a, self.field
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b, self.field.D))

    def conjugate(self) -> "FieldElement":
        return FieldElement(self.a, -self.b, self.field)

    def inverse(self) -> "FieldElement":
        n = norm(self)
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        c = self.conjugate()
        return FieldElement(c.a / n, c.b / n, self.field)

    def is_integral(self) -> bool:
        """Membership in the ring of integers (congruence test on coordinates)."""
        if self.field.D % 4 == 1:
            # (x + y sqrt D)/2 with x, y integers of the same parity
            x, y = 2 * self.a, 2 * self.b
            if x.denominator != 1 or y.denominator != 1:
                return False
            return (x.numerator - y.numerator) % 2 == 0
        return self.a.denominator == 1 and self.b.denominator == 1

    def is_unit(self) -> bool:
        return self.is_integral() and abs(norm(self)) == 1

    def pretty(self) -> str:
        """Human-readable exact form, e.g. ``(3+√5)/2`` or ``3+2√2``."""
        D = self.field.D
        den = Fraction(self.a).denominator * Fraction(self.b).denominator
        den = den // _gcd(Fraction(self.a).denominator, Fraction(self.b).denominator)
        x, y = self.a * den, self.b * den
        x, y = int(x), int(y)
        if y == 0:
            body = str(x)
        else:
            coef = "" if abs(y) == 1 else str(abs(y))
            rad = f"{coef}√{D}"
            if x == 0:
                body = rad if y > 0 else f"-{rad}"
            else:
                body = f"{x}{'+' if y > 0 else '-'}{rad}"
        if den == 1:
            return body
        return f"({body})/{den}"

    def __str__(self):
        return self.pretty()


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def embed(x: FieldElement) -> tuple[mpmath.mpf, mpmath.mpf]:
    """The two real embeddings; sigma_1 uses +sqrt(D), sigma_2 uses -sqrt(D)."""
    F = x.field
    with mpmath.workdps(F.precision):
        a = mpmath.mpf(x.a.numerator) / x.a.denominator
        b = mpmath.mpf(x.b.numerator) / x.b.denominator
        return +(a + b * F.sqrtD), +(a - b * F.sqrtD)


def norm(x: FieldElement) -> Fraction:
    return x.a * x.a - x.b * x.b * x.field.D


def trace(x: FieldElement) -> Fraction:
    return 2 * x.a


def is_totally_positive(x: FieldElement) -> bool:
    D = x.field.D
    return (
        _sign_a_plus_b_sqrt(x.a, x.b, D) > 0 and _sign_a_plus_b_sqrt(x.a, -x.b, D) > 0
    )


def _sigma1_exceeds_one(x: FieldElement) -> bool:
    return _sign_a_plus_b_sqrt(x.a - 1, x.b, x.field.D) > 0


# -- fundamental units ---------------------------------------------------------


def _continued_fraction_convergents(P: int, Q: int, D: int):
    """Convergents p/q of the quadratic irrational (P + sqrt D)/Q.

    Requires Q | D - P^2 (the usual PQa setup); yields (p, q) forever.
    """
    if (D - P * P) % Q:
        raise ValueError("PQa requires Q | D - P^2")
    r = isqrt(D)
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    while True:
        if Q <= 0:
            raise ArithmeticError("non-positive Q in continued fraction expansion")
        a = (P + r) // Q
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        yield p, q
        P = a * Q - P
        Q = (D - P * P) // Q


def fundamental_unit(field: QuadraticField, max_steps: int = 100_000) -> FieldElement:
    """Smallest unit > 1 of the ring of integers, via continued fractions.

    For D = 2, 3 mod 4 the convergents of sqrt(D) solve p^2 - D q^2 = +-1 and
    give p + q sqrt(D).  For D = 1 mod 4 the convergents of (1 + sqrt D)/2
    give the unit p - q*conj(omega) once its norm is +-1.
    """
    D = field.D
    if D % 4 == 1:
        gen = _continued_fraction_convergents(1, 2, D)
        for _, (p, q) in zip(range(max_steps), gen):
            if abs(p * p - p * q - q * q * (D - 1) // 4) == 1:
                unit = field.element(Fraction(2 * p - q, 2), Fraction(q, 2))
                if _sigma1_exceeds_one(unit):
                    return unit
    else:
        gen = _continued_fraction_convergents(0, 1, D)
        for _, (p, q) in zip(range(max_steps), gen):
            if abs(p * p - D * q * q) == 1:
                return field.element(p, q)
    raise ArithmeticError(f"no unit found for D={D} within {max_steps} convergents")


def fundamental_unit_bruteforce(field: QuadraticField, max_y: int = 100_000) -> FieldElement:
    """Reference search over the integral lattice, smallest y first.

    Units > 1 have the form (x + y sqrt D)/k with x, y > 0, and y increases
    along the powers of the fundamental unit, so the first hit is minimal.
    """
    D = field.D
    k = 2 if D % 4 == 1 else 1
    target = k * k  # x^2 - D y^2 = +-k^2
    for y in range(1, max_y + 1):
        best = None
        for sgn in (1, -1):
            x2 = D * y * y + sgn * target
            if x2 <= 0:
                continue
            x = isqrt(x2)
            if x * x == x2 and (k == 1 or (x - y) % 2 == 0):
                cand = field.element(Fraction(x, k), Fraction(y, k))
                if best is None or x < best[0]:
                    best = (x, cand)
        if best is not None:
            return best[1]
    raise ArithmeticError(f"no unit with y <= {max_y} for D={D}")


def totally_positive_unit(field: QuadraticField) -> FieldElement:
    """Smallest totally positive unit > 1: eps if N(eps) = 1, else eps^2."""
    eps = fundamental_unit(field)
    beta = eps if norm(eps) == 1 else eps * eps
    _check_beta(beta)
    return beta


def _check_beta(beta: FieldElement) -> None:
    if not beta.is_integral():
        raise FieldError(f"beta={beta} is not an algebraic integer")
    if norm(beta) != 1:
        raise FieldError(f"beta={beta} has norm {norm(beta)}, expected 1")
    if not is_totally_positive(beta):
        raise FieldError(f"beta={beta} is not totally positive")
    if beta == 1:
        raise FieldError("beta must differ from 1")
    if not _sigma1_exceeds_one(beta):
        raise FieldError(f"beta={beta} is not normalised to sigma_1(beta) > 1")


def normalize_beta(beta: FieldElement) -> FieldElement:
    """Validate a user-supplied beta and swap to the conjugate if sigma_1 < 1.

    For a totally positive unit of norm 1 the conjugate equals 1/beta.
    """
    if not beta.is_integral():
        raise FieldError(f"beta={beta} is not an algebraic integer")
    if norm(beta) != 1:
        raise FieldError(f"beta={beta} is not a unit of norm 1 (norm {norm(beta)})")
    if not is_totally_positive(beta):
        raise FieldError(f"beta={beta} is not totally positive")
    if beta == 1:
        raise FieldError("beta must differ from 1")
    if not _sigma1_exceeds_one(beta):
        beta = beta.conjugate()
    _check_beta(beta)
    return beta
