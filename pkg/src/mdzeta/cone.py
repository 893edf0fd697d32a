"""The cone C = N{1, beta} of a totally positive unit and its norm form."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import mpmath

from .quadfield import (
    FieldElement,
    QuadraticField,
    embed,
    normalize_beta,
    norm,
    totally_positive_unit,
    trace,
)


class ConeError(ValueError):
    pass


@dataclass(frozen=True)
class ConeElement:
    a: int
    b: int
    value: FieldElement

    @property
    def norm(self) -> int:
        return int(norm(self.value))


@dataclass(frozen=True)
class Cone:
    """Elements a + b*beta with a, b >= 1 (``allow_zero`` relaxes to a, b >= 0)."""

    field: QuadraticField
    beta: FieldElement
    allow_zero: bool = False

    def __post_init__(self):
        if self.beta.field.D != self.field.D:
            raise ConeError("beta belongs to a different field")
        checked = normalize_beta(self.beta)
        if checked != self.beta:
            raise ConeError(
                f"beta={self.beta} has sigma_1 < 1; use {checked} (see Cone.from_field)"
            )

    @classmethod
    def from_field(cls, field: QuadraticField, beta: FieldElement | None = None, **kw):
        """Cone for ``field``; ``beta`` defaults to the smallest totally positive unit.

        A supplied ``beta`` is validated and flipped to its conjugate when
        sigma_1(beta) < 1.
        """
        beta = totally_positive_unit(field) if beta is None else normalize_beta(beta)
        return cls(field, beta, **kw)

    @property
    def trace(self) -> int:
        return int(trace(self.beta))

    @property
    def beta_embeddings(self) -> tuple[mpmath.mpf, mpmath.mpf]:
        return embed(self.beta)

    def beta_floats(self) -> tuple[float, float]:
        """(beta_1, beta_2) as doubles; beta_2 = 1/beta_1 since N(beta) = 1."""
        b1, b2 = self.beta_embeddings
        return float(b1), float(b2)

    @property
    def beta_gap_squared(self) -> Fraction:
        """(beta_2 - beta_1)^2 = Tr(beta)^2 - 4, exact."""
        return trace(self.beta) ** 2 - 4 * norm(self.beta)

    def beta_gap(self) -> mpmath.mpf:
        """beta_2 - beta_1 (negative under the sigma_1 > 1 normalisation)."""
        with mpmath.workdps(self.field.precision):
            g = self.beta_gap_squared
            return -mpmath.sqrt(mpmath.mpf(g.numerator) / g.denominator)

    @property
    def min_coord(self) -> int:
        return 0 if self.allow_zero else 1


def cone_element(cone: Cone, a: int, b: int) -> ConeElement:
    lo = cone.min_coord
    if int(a) != a or int(b) != b:
        raise ConeError("cone coordinates must be integers")
    if a < lo or b < lo or (a == 0 and b == 0):
        raise ConeError(f"cone coordinates must be >= {lo} (got a={a}, b={b})")
    return ConeElement(int(a), int(b), cone.field.one * a + cone.beta * b)


def norm_form(cone: Cone) -> tuple[int, int, int]:
    """Coefficients (1, Tr beta, N beta) of N(a + b beta) as a binary form."""
    return 1, int(trace(cone.beta)), int(norm(cone.beta))


def quad_norm(T: int, a: int, b: int) -> int:
    """N(a + b beta) = a^2 + T a b + b^2 for a norm-one beta of trace T."""
    return a * a + T * a * b + b * b


def enumerate_cone(cone: Cone, maxNorm: int) -> list[ConeElement]:
    """All cone elements of norm <= maxNorm, sorted by (norm, a).

    Since the form is increasing in each coordinate, a, b <= sqrt(maxNorm)
    and each row of fixed ``a`` can stop at the first norm above the bound.
    """
    _, T, _ = norm_form(cone)
    lo = cone.min_coord
    out = []
    amax = math.isqrt(max(maxNorm, 0))
    for a in range(lo, amax + 1):
        for b in range(lo, amax + 1):
            if a == 0 and b == 0:
                continue
            n = quad_norm(T, a, b)
            if n > maxNorm:
                break
            out.append((n, a, b))
    out.sort()
    return [cone_element(cone, a, b) for _, a, b in out]


def cone_rows(cone: Cone, elements: Iterable[ConeElement], digits: int = 15):
    """Rows (a, b, norm, sigma1, sigma2) with embeddings as decimal strings."""
    for e in elements:
        s1, s2 = embed(e.value)
        yield (
            e.a,
            e.b,
            e.norm,
            mpmath.nstr(s1, digits, strip_zeros=False),
            mpmath.nstr(s2, digits, strip_zeros=False),
        )


def cone_csv(cone: Cone, elements: Iterable[ConeElement], digits: int = 15) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["a", "b", "norm", "sigma1", "sigma2"])
    w.writerows(cone_rows(cone, elements, digits))
    return buf.getvalue()
