"""Command-line interface: ``mdzeta <subcommand> [options]``.

Exit codes: 0 success or PASS, 1 FAIL (a residual exceeded its tolerance),
2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import asdict, dataclass, field

import mpmath

from . import __version__, divisors, quadrature, series, verify
from .cone import Cone, cone_csv, cone_rows, enumerate_cone
from .quadfield import FieldError, embed, fundamental_unit, make_field, norm, trace

log = logging.getLogger("mdzeta")

INTEGRAL_OPS = {
    (2,): quadrature.integral_zeta2,
    (3,): quadrature.integral_zeta3,
    (1, 2): quadrature.integral_zeta12,
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    D: int | None = None
    beta: str | None = None
    sExponents: list = field(default_factory=list)
    method: str = "series"
    precision: int = 50
    maxNorm: int | None = None
    nodes: int | None = None
    tCutoff: float | None = None
    seed: int = 0
    tol: float | None = None
    scheme: str = "gauss-legendre"
    outputFormat: str | None = None
    outputPath: str | None = None
    quick: bool = False

    def spec(self) -> quadrature.QuadratureSpec:
        kw = dict(
            nodes_per_axis=self.nodes,
            t_cutoff=self.tCutoff,
            seed=self.seed,
            target_rel_tol=self.tol,
            scheme=self.scheme,
        )
        return quadrature.QuadratureSpec.quick(**kw) if self.quick else quadrature.QuadratureSpec(**kw)


def _config(args) -> RunConfig:
    cfg = RunConfig(
        D=getattr(args, "d", None),
        beta=getattr(args, "beta", None),
        method=getattr(args, "method", "series"),
        precision=args.precision,
        maxNorm=getattr(args, "max_norm", None),
        nodes=getattr(args, "nodes", None),
        tCutoff=getattr(args, "t_cutoff", None),
        seed=getattr(args, "seed", 0),
        tol=getattr(args, "tol", None),
        scheme=getattr(args, "scheme", "gauss-legendre"),
        outputFormat=args.format,
        outputPath=args.out,
        quick=args.quick,
    )
    s = getattr(args, "s", None)
    if isinstance(s, str):
        cfg.sExponents = list(series.ExponentVector.parse(s).s)
    if cfg.precision < 15:
        raise UsageError("--precision must be at least 15")
    if cfg.maxNorm is not None and cfg.maxNorm < 1:
        raise UsageError("--max-norm must be positive")
    if cfg.nodes is not None and cfg.nodes < 2:
        raise UsageError("--nodes must be >= 2")
    if cfg.tol is not None and not cfg.tol > 0:
        raise UsageError("--tol must be positive")
    if cfg.tCutoff is not None and not cfg.tCutoff > 0:
        raise UsageError("--t-cutoff must be positive")
    return cfg


def _cone(cfg: RunConfig) -> Cone:
    if cfg.D is None:
        raise UsageError("--d is required")
    F = make_field(cfg.D, cfg.precision)
    beta = F.parse(cfg.beta) if cfg.beta else None
    return Cone.from_field(F, beta)


def _num(x, digits=20) -> str:
    return mpmath.nstr(x, digits)


def _emit(cfg: RunConfig, payload, csv_rows=None):
    if cfg.outputFormat == "csv":
        if csv_rows is None:
            raise UsageError("this command has no CSV form; use --format json")
        text = csv_rows
    else:
        text = json.dumps(payload, indent=2, default=str) + "\n"
    if cfg.outputPath:
        with open(cfg.outputPath, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rows_to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# -- commands ----------------------------------------------------------------------------


def cmd_field_info(cfg: RunConfig) -> int:
    cone = _cone(cfg)
    F = cone.field
    eps = fundamental_unit(F)
    b1, b2 = embed(cone.beta)
    gap2 = cone.beta_gap_squared
    info = {
        "D": F.D,
        "discriminant": F.discriminant,
        "ringBasisKind": F.ring_basis_kind,
        "fundamentalUnit": str(eps),
        "fundamentalUnitNorm": int(norm(eps)),
        "beta": str(cone.beta),
        "beta1": _num(b1),
        "beta2": _num(b2),
        "traceBeta": int(trace(cone.beta)),
        "normBeta": int(norm(cone.beta)),
        "betaGapSquared": str(gap2),
        "betaGap": _num(cone.beta_gap()),
        "betaGapCubed": _num(cone.beta_gap() ** 3),
    }
    rows = _rows_to_csv(["key", "value"], list(info.items()))
    _emit(cfg, {"config": asdict(cfg), **info}, rows)
    return 0


def cmd_cone_list(cfg: RunConfig) -> int:
    cone = _cone(cfg)
    X = cfg.maxNorm or 100
    elems = enumerate_cone(cone, X)
    if cfg.outputFormat == "csv":
        _emit(cfg, None, cone_csv(cone, elems))
    else:
        rows = [dict(zip(("a", "b", "norm", "sigma1", "sigma2"), r)) for r in cone_rows(cone, elems)]
        _emit(cfg, {"config": asdict(cfg), "elements": rows})
    return 0


def _default_max_norm(cfg: RunConfig, s) -> int:
    if cfg.maxNorm:
        return cfg.maxNorm
    base = 10**6 if s.m == 1 else 10**5
    return base // 10 if cfg.quick else base


def _series_record(cone, res: series.SeriesResult) -> dict:
    rec = res.to_record(cone)
    rec["certified"] = verify.certified_string(res.value, res.tailBound)
    return rec


def _integral_record(res: quadrature.IntegralResult, spec) -> dict:
    rec = res.to_record()
    rec["certified"] = verify.certified_string(res.value, res.errorEstimate)
    rec["spec"] = spec.as_dict()
    return rec


def cmd_mdzv(cfg: RunConfig) -> int:
    cone = _cone(cfg)
    if not cfg.sExponents:
        raise UsageError("--s is required")
    s = series.ExponentVector(tuple(cfg.sExponents))
    if cfg.method not in ("series", "integral", "both"):
        raise UsageError("--method must be series, integral or both")
    if cfg.method != "series" and s.s not in INTEGRAL_OPS:
        raise UsageError(f"integral method supports s in {sorted(INTEGRAL_OPS)}; got {s.s}")
    out = {"config": asdict(cfg), "D": cone.field.D, "beta": str(cone.beta), "s": list(s.s)}
    sr = ir = None
    status = 0
    if cfg.method in ("series", "both"):
        sr = series.mdzv_series(cone, s, _default_max_norm(cfg, s))
        out["series"] = _series_record(cone, sr)
    if cfg.method in ("integral", "both"):
        spec = cfg.spec()
        ir = INTEGRAL_OPS[s.s](cone, spec)
        out["integral"] = _integral_record(ir, spec)
        if not ir.converged:
            status = 1
    if sr is not None and ir is not None:
        diff = abs(sr.value - ir.value)
        bound = sr.tailBound + ir.errorEstimate
        agree = diff <= bound
        out["agreement"] = {"difference": diff, "combinedBound": bound, "agree": agree}
        if not agree:
            status = 1
        # x-coordinate counterpart: ratio to the series should be a power of the gap
        xop = {(2,): (quadrature.integral_proposition_x, 2), (1, 2): (quadrature.integral_corollary_x, 3)}
        if s.s in xop:
            fn, k = xop[s.s]
            xr = fn(cone, cfg.spec())
            expected = float(cone.beta_gap()) ** k
            ratio = xr.value / sr.value
            out["xIntegral"] = {
                **_integral_record(xr, cfg.spec()),
                "ratioToSeries": ratio,
                "expectedRatio": expected,
                "relativeError": abs(ratio / expected - 1),
            }
    if cfg.outputFormat == "csv":
        rows = []
        if sr is not None:
            rows.append(["series", sr.value, sr.tailBound, sr.termsUsed])
        if ir is not None:
            rows.append(["integral", ir.value, ir.errorEstimate, ir.evaluations])
        _emit(cfg, out, _rows_to_csv(["method", "value", "errorBound", "terms"], rows))
    else:
        _emit(cfg, out)
    return status


def cmd_compare(cfg: RunConfig, ds, ss) -> int:
    rows, status = [], 0
    spec = cfg.spec()
    for D in ds:
        cfg.D = D
        cone = _cone(cfg)
        for st in ss:
            s = series.ExponentVector.parse(st)
            if s.s not in INTEGRAL_OPS:
                raise UsageError(f"compare supports s in {sorted(INTEGRAL_OPS)}")
            sr = series.mdzv_series(cone, s, _default_max_norm(cfg, s))
            ir = INTEGRAL_OPS[s.s](cone, spec)
            diff = abs(sr.value - ir.value)
            agree = diff <= sr.tailBound + ir.errorEstimate
            status |= 0 if agree else 1
            rows.append([D, str(s), repr(sr.value), sr.tailBound, repr(ir.value), ir.errorEstimate,
                         diff / abs(sr.value), agree])
    header = ["D", "s", "series", "seriesTailBound", "integral", "integralError", "relDiff", "agree"]
    payload = {"config": asdict(cfg), "rows": [dict(zip(header, r)) for r in rows]}
    if cfg.outputFormat == "json":
        _emit(cfg, payload)
    else:
        _emit(cfg, payload, _rows_to_csv(header, rows))
    return status


def cmd_verify(cfg: RunConfig, check: str) -> int:
    names = verify.CHECKS if check == "all" else (check,)
    cone = _cone(cfg) if cfg.D is not None else _cone(RunConfig(D=5, precision=cfg.precision))
    spec = cfg.spec()
    results = [verify.run_check(n, cone, spec, quick=cfg.quick) for n in names]
    payload = {
        "config": asdict(cfg),
        "status": "PASS" if all(r.passed for r in results) else "FAIL",
        "checks": [r.to_record() for r in results],
    }
    rows = _rows_to_csv(
        ["check", "status", "tolerance", "seconds"],
        [[r.name, "PASS" if r.passed else "FAIL", r.tolerance, round(r.seconds, 3)] for r in results],
    )
    _emit(cfg, payload, rows)
    return 0 if all(r.passed for r in results) else 1


def cmd_divisors(cfg: RunConfig, catalog: str, check: bool) -> int:
    cone = _cone(cfg) if cfg.D is not None else None
    cat = divisors.catalog_A() if catalog == "a" else divisors.catalog_B()
    payload = {"config": asdict(cfg), "catalog": catalog.upper(),
               "components": [divisors.component_record(c, cone) for c in cat]}
    status = 0
    if check:
        full = divisors.catalog_A() + divisors.catalog_B()
        results = [divisors.pole_check(c, catalog=full, seed=cfg.seed) for c in cat if c.kind == "listed"]
        payload["poleChecks"] = [r.to_record() for r in results]
        for r in results:
            want = "diverges" if catalog == "a" else "finite"
            if r.verdict not in ("skipped", want):
                status = 1
            if catalog == "a" and r.verdict == "diverges" and abs(r.slope + 1) > 0.1:
                status = 1
    if cfg.outputFormat == "csv":
        rows = [[c.label, c.kind, c.equation, " ".join(c.tangentialPoint or ())] for c in cat]
        _emit(cfg, payload, _rows_to_csv(["label", "kind", "equation", "tangentialPoint"], rows))
    else:
        _emit(cfg, payload)
    return status


# -- argument parsing ---------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, need_d: bool = True):
    p.add_argument("--d", type=int, required=need_d, help="squarefree D > 1 for Q(sqrt D)")
    p.add_argument("--beta", help='override beta as exact rationals "a,b" meaning a + b*sqrt(D)')
    p.add_argument("--precision", type=int, default=50, help="decimal digits for exact-side evaluations")
    p.add_argument("--format", choices=("json", "csv"), default=None)
    p.add_argument("--out", help="write output to this file instead of stdout")
    p.add_argument("--quick", action="store_true", help="reduced nodes and truncations for smoke runs")


def _numeric(p: argparse.ArgumentParser):
    p.add_argument("--max-norm", type=int, help="series truncation")
    p.add_argument("--nodes", type=int, help="Gauss-Legendre nodes per non-trivial axis")
    p.add_argument("--t-cutoff", type=float, help="truncation of the t-domain (t1 + t2)")
    p.add_argument("--seed", type=int, default=0, help="Monte Carlo / sampling seed")
    p.add_argument("--tol", type=float, help="target relative tolerance for quadrature")
    p.add_argument("--scheme", choices=quadrature.SCHEMES, default="gauss-legendre")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mdzeta", description="Multiple Dedekind zeta values of real quadratic cones."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field-info", help="field, fundamental unit and beta")
    _common(p)

    p = sub.add_parser("cone-list", help="cone elements up to a norm bound")
    _common(p)
    p.add_argument("--max-norm", type=int, default=100)

    p = sub.add_parser("mdzv", help="evaluate zeta_C(s) by series and/or integral")
    _common(p)
    _numeric(p)
    p.add_argument("--s", required=True, help='exponents, e.g. "2" or "1,2"')
    p.add_argument("--method", choices=("series", "integral", "both"), default="series")

    p = sub.add_parser("compare", help="series vs integral table")
    _common(p, need_d=False)
    _numeric(p)
    p.add_argument("--ds", default="2,3,5", help="comma-separated list of D")
    p.add_argument("--s", action="append", help='exponent vector; repeat for several (default 2, 3 and 1,2)')

    p = sub.add_parser("verify", help="run a named verification check")
    _common(p, need_d=False)
    _numeric(p)
    p.add_argument("--check", required=True, choices=verify.CHECKS + ("all",))

    p = sub.add_parser("divisors", help="divisor catalogs and pole probes")
    _common(p, need_d=False)
    p.add_argument("--catalog", choices=("a", "b"), default="a")
    p.add_argument("--check", action="store_true", help="run pole_check on the listed components")
    p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = _config(args)
        if args.command == "field-info":
            return cmd_field_info(cfg)
        if args.command == "cone-list":
            if cfg.outputFormat is None:
                cfg.outputFormat = "csv"
            return cmd_cone_list(cfg)
        if args.command == "mdzv":
            return cmd_mdzv(cfg)
        if args.command == "compare":
            if cfg.outputFormat is None:
                cfg.outputFormat = "csv"
            try:
                ds = [int(x) for x in args.ds.split(",") if x.strip()]
            except ValueError as exc:
                raise UsageError(f"bad --ds {args.ds!r}") from exc
            return cmd_compare(cfg, ds, args.s or ["2", "3", "1,2"])
        if args.command == "verify":
            return cmd_verify(cfg, args.check)
        if args.command == "divisors":
            return cmd_divisors(cfg, args.catalog, args.check)
    except (UsageError, FieldError, series.SeriesError, quadrature.QuadratureError, ValueError) as exc:
        print(f"mdzeta: error: {exc}", file=sys.stderr)
        return 2
    parser.error(f"unknown command {args.command}")  # pragma: no cover
    return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
