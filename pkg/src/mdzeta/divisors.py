"""Catalogs of the pole divisor A and boundary divisor B, with numeric probes.

Coordinates are x_1..x_6, y_1..y_6.  Components are stored symbolically
(``lhs``/``rhs`` strings plus an equation type) so faces of integration
domains can be matched against them.  Exceptional divisors from blow-ups
are kept only as placeholders carrying the construction recipe.

:func:`pole_check` walks generic real points toward a component with
eps = 2^-k, k = 4..20, and measures |Omega_A| with all twelve coordinates
treated as independent (see :func:`mdzeta.membrane.omega_A_norm`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .cone import Cone
from .membrane import ProjectivePoint, omega_A_norm

EQUATION_TYPES = ("coord-const", "coord-coord", "product-one")
KINDS = ("listed", "exceptional", "tangential-codim-2")
VERDICTS = ("diverges", "finite", "skipped")

RECIPE_A = (
    "blow-up at the intersections of two components that both contain the same "
    "variable or the same constant 0, 1 or infinity on the right hand side"
)
RECIPE_B = (
    "blow-up at an intersection of two components whose equations contain the same "
    "variable or the same constant 0 or 1 on the right hand side, except the four "
    "tangential intersections"
)


class DivisorSamplingError(RuntimeError):
    pass


@dataclass(frozen=True)
class DivisorComponent:
    label: str
    family: str  # "A" or "B"
    kind: str
    equation: str = ""  # e.g. "x1*x2=1", "x1=x3", "y5=0", "x3=inf"
    eqType: str | None = None
    variables: tuple[str, ...] = ()
    rhs: str | None = None
    tangentialPoint: tuple | None = None  # symbolic pair, e.g. ("1", "beta1")
    recipe: str | None = None

    @property
    def checkable(self) -> bool:
        return self.kind == "listed" and self.rhs != "inf"

    def tangential_projective(self, cone: Cone) -> ProjectivePoint:
        """Numeric tangential point for ``cone`` (B1, B2, B5, B6 only)."""
        if self.tangentialPoint is None:
            raise ValueError(f"{self.label} has no tangential point")
        b1, b2 = cone.beta_embeddings
        env = {"0": 0, "1": 1, "beta1": b1, "beta2": b2}
        return ProjectivePoint.from_pair(*(env[c] for c in self.tangentialPoint))


def _coord(label, family, var, rhs):
    return DivisorComponent(label, family, "listed", f"{var}={rhs}", "coord-const", (var,), rhs)


def _equal(label, family, a, b):
    return DivisorComponent(label, family, "listed", f"{a}={b}", "coord-coord", (a, b), None)


def _product(label, family, a, b):
    return DivisorComponent(label, family, "listed", f"{a}*{b}=1", "product-one", (a, b), "1")


def catalog_A() -> list[DivisorComponent]:
    """Poles of Omega_A = omega_1(x1,x2) ^ omega_1(x3,x4) ^ omega_0(x5,x6)."""
    out = [
        _product("A:x1x2=1", "A", "x1", "x2"),
        _product("A:y1y2=1", "A", "y1", "y2"),
        _product("A:x3x4=1", "A", "x3", "x4"),
        _product("A:y3y4=1", "A", "y3", "y4"),
    ]
    for v in ("x5", "x6", "y5", "y6"):
        out.append(_coord(f"A:{v}=0", "A", v, "0"))
    for i in range(1, 7):
        out.append(_coord(f"A:x{i}=inf", "A", f"x{i}", "inf"))
        out.append(_coord(f"A:y{i}=inf", "A", f"y{i}", "inf"))
    out.append(DivisorComponent("A:exceptional", "A", "exceptional", recipe=RECIPE_A))
    return out


def catalog_B(cone: Cone | None = None) -> list[DivisorComponent]:
    """Boundary of the integration cycle: 16 hyperplanes plus 4 tangential loci.

    The y2 component of the lower y row is catalogued as y2=0, matching
    the other three rows of that shape.
    """
    out = []
    for c in ("x", "y"):
        for chain in ((1, 3, 5), (2, 4, 6)):
            a, b, d = (f"{c}{i}" for i in chain)
            out += [
                _coord(f"B:{a}=0", "B", a, "0"),
                _equal(f"B:{a}={b}", "B", a, b),
                _equal(f"B:{b}={d}", "B", b, d),
                _coord(f"B:{d}=1", "B", d, "1"),
            ]
    tangential = [
        ("B1", "x1", "y1", "0", ("1", "0")),
        ("B2", "x2", "y2", "0", ("0", "1")),
        ("B5", "x5", "y5", "1", ("1", "beta1")),
        ("B6", "x6", "y6", "1", ("1", "beta2")),
    ]
    for label, xv, yv, rhs, pt in tangential:
        out.append(
            DivisorComponent(
                label, "B", "tangential-codim-2", f"{xv}={rhs},{yv}={rhs}", "coord-const",
                (xv, yv), rhs, tangentialPoint=pt,
            )
        )
    out.append(DivisorComponent("B:exceptional", "B", "exceptional", recipe=RECIPE_B))
    return out


def listed(catalog) -> list[DivisorComponent]:
    return [c for c in catalog if c.kind == "listed"]


def tangential(catalog) -> list[DivisorComponent]:
    return [c for c in catalog if c.kind == "tangential-codim-2"]


def find(catalog, equation: str) -> DivisorComponent | None:
    """Component whose equation matches ``equation`` (``a=b`` matches ``b=a``)."""
    key = _normalise(equation)
    for c in catalog:
        if c.equation and _normalise(c.equation) == key:
            return c
    return None


def _normalise(eq: str) -> str:
    eq = eq.replace(" ", "")
    if "," in eq:
        return ",".join(sorted(_normalise(p) for p in eq.split(",")))
    lhs, _, rhs = eq.partition("=")
    if rhs not in ("0", "1", "inf") and lhs not in ("0", "1", "inf"):
        lhs, rhs = sorted((lhs, rhs))
    elif lhs in ("0", "1", "inf"):
        lhs, rhs = rhs, lhs
    lhs = "*".join(sorted(lhs.split("*")))
    return f"{lhs}={rhs}"


# -- numeric probing ----------------------------------------------------------------------


@dataclass
class PoleCheck:
    component: str
    verdict: str
    slope: float | None = None
    growth: float | None = None
    samples: int = 0
    eps: list = field(default_factory=list)
    norms: list = field(default_factory=list)
    resampled: int = 0

    def to_record(self) -> dict:
        return {
            "component": self.component,
            "verdict": self.verdict,
            "slope": self.slope,
            "growth": self.growth,
            "samples": self.samples,
            "resampled": self.resampled,
        }


_IDX = {f"{c}{i}": (c, i - 1) for c in "xy" for i in range(1, 7)}
_DELTA = 0.05


def _near_other_component(x, y, target: DivisorComponent, catalog) -> bool:
    """Whether (x, y) sits within DELTA of a checkable component other than target."""
    pt = {"x": x, "y": y}
    for c in catalog:
        if not c.checkable or c.label == target.label:
            continue
        vals = [pt[_IDX[v][0]][_IDX[v][1]] for v in c.variables]
        if c.eqType == "product-one":
            d = abs(1 - vals[0] * vals[1])
        elif c.eqType == "coord-coord":
            d = abs(vals[0] - vals[1])
        else:
            d = abs(vals[0] - float(c.rhs))
        if d < _DELTA:
            return True
    return False


def _approach(component: DivisorComponent, base_x, base_y, eps, rng):
    """Copy of the base point moved to distance ``eps`` from the component."""
    x, y = base_x.copy(), base_y.copy()
    store = {"x": x, "y": y}
    vs = component.variables
    if component.eqType == "product-one":
        (c, i), (_, j) = _IDX[vs[0]], _IDX[vs[1]]
        store[c][j] = (1 - eps) / store[c][i]
    elif component.eqType == "coord-coord":
        (c, i), (_, j) = _IDX[vs[0]], _IDX[vs[1]]
        store[c][i] = store[c][j] + eps
    else:
        c, i = _IDX[vs[0]]
        r = float(component.rhs)
        store[c][i] = r + eps if r == 0 else r - eps
    return x, y


def _base_point(component, rng):
    x = rng.uniform(0.2, 0.8, 6)
    y = rng.uniform(0.2, 0.8, 6)
    if component.eqType == "product-one":
        c, i = _IDX[component.variables[0]]
        {"x": x, "y": y}[c][i] = rng.uniform(1.2, 1.8)
    return x, y


def pole_check(
    component: DivisorComponent,
    samples: int = 4,
    approach=range(4, 21),
    seed: int = 0,
    catalog=None,
    max_resample: int = 50,
) -> PoleCheck:
    """Classify the behaviour of |Omega_A| on approach to ``component``.

    For each of ``samples`` generic base points the distance to the
    component is set to eps = 2^-k for k in ``approach`` and the log-log
    slope of |Omega_A| against eps is fitted.  The verdict is "diverges"
    when the norm grows by at least 10^3 along the sequence, "finite" when
    it stays bounded, and "skipped" for components at infinity or
    exceptional ones.  Base points within 0.05 of a second checkable
    component are redrawn.

    Raises
    ------
    DivisorSamplingError
        if no clean base point is found within ``max_resample`` draws.
    """
    if not component.checkable:
        return PoleCheck(component.label, "skipped")
    if catalog is None:
        catalog = catalog_A() + catalog_B()
    rng = np.random.default_rng(seed)
    eps = np.array([2.0**-k for k in approach])
    slopes, growths, resampled = [], [], 0
    last_norms = []
    for _ in range(samples):
        for attempt in range(max_resample):
            bx, by = _base_point(component, rng)
            x0, y0 = _approach(component, bx, by, eps[-1], rng)
            xf, yf = _approach(component, bx, by, eps[0], rng)
            if not (_near_other_component(x0, y0, component, catalog)
                    or _near_other_component(xf, yf, component, catalog)):
                break
            resampled += 1
        else:
            raise DivisorSamplingError(
                f"{component.label}: every base point landed near another component"
            )
        norms = np.array([omega_A_norm(*_approach(component, bx, by, e, rng)) for e in eps])
        slope = float(np.polyfit(np.log(eps), np.log(norms), 1)[0])
        slopes.append(slope)
        growths.append(float(norms[-1] / norms[0]))
        last_norms = norms.tolist()
    growth = float(min(growths))
    slope = float(np.mean(slopes))
    verdict = "diverges" if growth >= 1e3 else "finite"
    if verdict == "finite" and max(growths) >= 1e3:
        verdict = "diverges"
    return PoleCheck(
        component.label, verdict, slope, growth, samples, eps.tolist(), last_norms, resampled
    )


def check_all(samples: int = 4, seed: int = 0) -> list[PoleCheck]:
    cat = catalog_A() + catalog_B()
    return [pole_check(c, samples, seed=seed, catalog=cat) for c in cat if c.kind == "listed"]


def component_record(c: DivisorComponent, cone: Cone | None = None) -> dict:
    rec = {
        "label": c.label,
        "family": c.family,
        "kind": c.kind,
        "equation": c.equation or None,
        "equationType": c.eqType,
        "tangentialPoint": list(c.tangentialPoint) if c.tangentialPoint else None,
        "recipe": c.recipe,
    }
    if cone is not None and c.tangentialPoint is not None:
        rec["tangentialPointNumeric"] = list(c.tangential_projective(cone).as_floats())
    return rec
