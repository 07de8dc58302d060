"""Command-line driver: verification suites, tables, and report rendering.

Exit codes: 0 all checks passed / output written, 1 a verification suite
found a violation, 2 configuration problem, 3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import cone as cone_mod
from .config import CONFIG_SCHEMA, ConfigError, RunConfig, parse_config
from .elliptic import (
    LemmaViolation,
    alternating_sum,
    identity_alternating_sum,
    interpolation_check,
)
from .lie import CapExceeded, EllipticClass, RayConfig, spectral_shifts
from .torsion import (
    NormalizedValue,
    coefficient_growth_table,
    heat_trace_elliptic,
    heat_trace_identity,
    l2_log_torsion,
    log_torsion,
    mellin_elliptic,
    mellin_elliptic_exact,
    mellin_elliptic_record,
    mellin_identity,
    pseudopoly_extract,
    reduce_exponents,
    sup_growth_table,
    telescoping_check,
)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_CONFIG = 2
EXIT_CAP = 3

PINNED_CLASS = EllipticClass(d=2, angles=(Fraction(1, 4),), weight=Fraction(1))
PINNED_RAY = RayConfig(2, (0, 0, 0))


def _nonincreasing_taus(n: int, top: int):
    for tau in itertools.product(range(top, -1, -1), repeat=n + 1):
        if all(tau[i] >= tau[i + 1] for i in range(n)):
            yield tau


def _default_angles(count: int) -> tuple[Fraction, ...]:
    # distinct non-zero quarter-turn-compatible angles, then thirds as overflow
    pool = [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1, 3), Fraction(2, 3)]
    if count > len(pool):
        raise ValueError("default angle pool exhausted")
    return tuple(pool[:count])


def _grid_cases(args):
    """(n, tau) pairs for the exact suites, honouring --config if present."""
    if args.run_config is not None:
        rc = args.run_config
        return [(rc.n, rc.tau)]
    return [(n, tau) for n in (1, 2, 3) for tau in _nonincreasing_taus(n, 2)]


def suite_constant_sum(args) -> tuple[int, list[str]]:
    """Alternating class sums must be constant in the spectral variable."""
    m_max = args.m_max if args.m_max is not None else 6
    checked, violations = 0, []
    for n, tau in _grid_cases(args):
        for m in range(m_max + 1):
            cfg = RayConfig(n, tau, m)
            for d in range(1, n + 1):
                checked += 1
                try:
                    alternating_sum(cfg, d)
                except LemmaViolation:
                    violations.append(f"n={n} tau={tau} m={m} d={d}")
    return checked, violations


def suite_coefficient_degree(args) -> tuple[int, list[str]]:
    """Reduced coefficients along residue classes are polynomials of bounded degree."""
    m_max = args.m_max if args.m_max is not None else 40
    checked, violations = 0, []
    if args.run_config is not None:
        cases = [(args.run_config.n, args.run_config.tau, cls)
                 for cls in args.run_config.classes]
    else:
        cases = []
        for n in (1, 2, 3):
            for tau in (tuple([0] * (n + 1)), tuple(range(n, -1, -1))):
                for d in range(1, n + 1):
                    cases.append((n, tau, EllipticClass(d, _default_angles(n + 1 - d))))
    for n, tau, cls in cases:
        q = cls.residue_period()
        bound = cls.d * (cls.d - 1) // 2
        series = []
        for m in range(m_max + 1):
            total = alternating_sum(RayConfig(n, tau, m), cls)
            series.append(reduce_exponents(total.constants(), cls.angles))
        checked += 1
        report = pseudopoly_extract(series, q)
        if report.global_degree > bound:
            violations.append(
                f"n={n} tau={tau} d={cls.d}: degree {report.global_degree} > {bound}")
    return checked, violations


def _growth_cases(args):
    if args.run_config is not None:
        rc = args.run_config
        return [(rc.ray(), cls) for cls in rc.classes]
    return [(PINNED_RAY, PINNED_CLASS)]


def _envelope_violations(rows, label: str) -> list[str]:
    half = [r for r in rows if r.m < 50] or rows
    peak = max(r.normalized for r in half)
    out = []
    argmax = max(rows, key=lambda r: r.normalized).m
    if argmax >= 50:
        out.append(f"{label}: normalised max attained at m={argmax} >= 50")
    for r in rows:
        if r.m >= 50 and r.normalized > 1.1 * peak:
            out.append(f"{label}: m={r.m} exceeds 1.1 x observed max")
            break
    return out


def suite_coefficient_growth(args) -> tuple[int, list[str]]:
    m_max = args.m_max if args.m_max is not None else 100
    checked, violations = 0, []
    for ray, cls in _growth_cases(args):
        checked += 1
        rows = coefficient_growth_table(ray, cls, range(1, m_max + 1))
        violations += _envelope_violations(rows, f"d={cls.d} coefficients")
    return checked, violations


def suite_sup_growth(args) -> tuple[int, list[str]]:
    m_max = args.m_max if args.m_max is not None else 100
    checked, violations = 0, []
    for ray, cls in _growth_cases(args):
        checked += 1
        rows = sup_growth_table(ray, cls, range(1, m_max + 1))
        violations += _envelope_violations(rows, f"d={cls.d} sup")
    return checked, violations


def suite_interpolation(args) -> tuple[int, list[str]]:
    """Vanishing pattern and pinned value of the interpolation factors."""
    m_max = args.m_max if args.m_max is not None else 6
    checked, violations = 0, []
    for n, tau in _grid_cases(args):
        for m in range(m_max + 1):
            shifts = spectral_shifts(RayConfig(n, tau, m))
            for size in (1, 2, 3):
                for K in itertools.combinations(shifts, size):
                    for kappa in K:
                        checked += 1
                        try:
                            zeros_ok, _ = interpolation_check(K, kappa)
                        except AssertionError:
                            zeros_ok = False
                        if not zeros_ok:
                            violations.append(f"n={n} tau={tau} m={m} K={K} kappa={kappa}")
    return checked, violations


def suite_telescoping(args) -> tuple[int, list[str]]:
    m_max = args.m_max if args.m_max is not None else 4
    checked, violations = 0, []
    for n, tau in _grid_cases(args):
        if max(tau, default=0) > 1 and args.run_config is None:
            continue
        for m in range(m_max + 1):
            cfg = RayConfig(n, tau, m)
            for d in range(1, n + 2):
                checked += 1
                if not telescoping_check(cfg, d):
                    violations.append(f"n={n} tau={tau} m={m} d={d}")
    return checked, violations


SUITES = {
    "lemma51": suite_constant_sum,
    "lemma52": suite_coefficient_degree,
    "lemma53": suite_coefficient_growth,
    "lemma54": suite_sup_growth,
    "eqforA": suite_interpolation,
    "telescoping": suite_telescoping,
}


def cmd_verify(args) -> int:
    runner = SUITES[args.suite]
    checked, violations = runner(args)
    print(f"suite {args.suite}: checked {checked} cases, violations {len(violations)}")
    for v in violations:
        print(f"  VIOLATION {v}")
    if args.out is not None:
        path = Path(args.out) / f"verify_{args.suite}.csv"
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["suite", "checked", "violations"])
            writer.writerow([args.suite, checked, len(violations)])
            for v in violations:
                writer.writerow(["violation", v, ""])
        print(f"wrote {path}")
    return EXIT_VIOLATION if violations else EXIT_OK


def _fmt_exact(re: Fraction, im: Fraction | None = None) -> str:
    if im is None or im == 0:
        return str(re)
    return f"{re}+({im})i"


def _table_rows_me(rc: RunConfig, m_range, exact_mode: bool):
    orb = rc.orbifold()
    for m in m_range:
        cfg = rc.ray(m)
        exact = mellin_elliptic_exact(cfg, orb) if exact_mode else None
        if exact is not None:
            re, im = float(exact[0]), float(exact[1])
            yield [m, repr(re), repr(im), _fmt_exact(*exact)]
        else:
            val = mellin_elliptic(cfg, orb)
            yield [m, repr(val.real), repr(val.imag), ""]


def _table_rows_identity(rc: RunConfig, m_range, quantity: str, exact_mode: bool):
    orb = rc.orbifold()
    for m in m_range:
        cfg = rc.ray(m)
        if quantity == "MI":
            nv = mellin_identity(cfg, orb)
        else:
            nv = l2_log_torsion(cfg, orb)
        if isinstance(nv.value, Fraction) and exact_mode:
            yield [m, repr(float(nv.value)), repr(0.0), _fmt_exact(nv.value)]
        else:
            yield [m, repr(float(nv.value)), repr(0.0), ""]


def _table_rows_logt(rc: RunConfig, m_range, exact_mode: bool):
    orb = rc.orbifold()
    for m in m_range:
        cfg = rc.ray(m)
        mi = mellin_identity(cfg, orb)
        exact_me = mellin_elliptic_exact(cfg, orb) if exact_mode else None
        if exact_me is not None and isinstance(mi.value, Fraction):
            re = (mi.value + exact_me[0]) / 2
            im = exact_me[1] / 2
            yield [m, repr(float(re)), repr(float(im)), _fmt_exact(re, im)]
        else:
            val = log_torsion(cfg, orb).value
            yield [m, repr(val.real), repr(val.imag), ""]


def _table_rows_heat(rc: RunConfig, t_grid, quantity: str):
    orb = rc.orbifold()
    cfg = rc.ray(0)
    for t in t_grid:
        if quantity == "heatI":
            val = complex(heat_trace_identity(cfg, orb, t))
        else:
            val = heat_trace_elliptic(cfg, orb, t)
        yield [repr(float(t)), repr(val.real), repr(val.imag), ""]


def cmd_table(args) -> int:
    rc = args.run_config
    if rc is None:
        print("table requires --config", file=sys.stderr)
        return EXIT_CONFIG
    exact_mode = args.mode != "float"
    m_range = range((args.m_max if args.m_max is not None else 10) + 1)
    quantity = args.quantity
    if quantity in ("heatE", "heatI"):
        header = ["t", "re", "im", "exact"]
        rows = _table_rows_heat(rc, args.t_grid, quantity)
    else:
        header = ["m", "re", "im", "exact"]
        rows = {
            "ME": lambda: _table_rows_me(rc, m_range, exact_mode),
            "MI": lambda: _table_rows_identity(rc, m_range, "MI", exact_mode),
            "logT2": lambda: _table_rows_identity(rc, m_range, "logT2", exact_mode),
            "logT": lambda: _table_rows_logt(rc, m_range, exact_mode),
        }[quantity]()
    out_dir = Path(args.out) if args.out is not None else Path(".")
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"table_{quantity}.csv"
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)
    if quantity in ("MI", "logT2", "logT") and rc.plancherel is None:
        print("note: identity normalisation is the built-in stand-in")
    print(f"wrote {path}")
    return EXIT_OK


def cmd_pseudo(args) -> int:
    rc = args.run_config
    if rc is None:
        print("pseudo requires --config", file=sys.stderr)
        return EXIT_CONFIG
    q = args.q if args.q is not None else rc.q
    m_max = args.m_max if args.m_max is not None else 40
    orb = rc.orbifold()
    ms = list(range(m_max + 1))
    records = []
    numeric = []
    for m in ms:
        cfg = rc.ray(m)
        records.append(mellin_elliptic_record(cfg, orb))
        numeric.append(mellin_elliptic(cfg, orb))
    if args.mode == "float":
        report = pseudopoly_extract(numeric, q, tol=args.tolerance)
    else:
        report = pseudopoly_extract(records, q)

    out_dir = Path(args.out) if args.out is not None else Path(".")
    out_dir.mkdir(parents=True, exist_ok=True)
    series_path = out_dir / "pseudo_me.csv"
    with open(series_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["m", "re", "im", "exact"])
        for m, val in zip(ms, numeric):
            exact = mellin_elliptic_exact(rc.ray(m), orb)
            writer.writerow([m, repr(val.real), repr(val.imag),
                             _fmt_exact(*exact) if exact else ""])
    report_path = out_dir / "pseudo_report.csv"
    with open(report_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["residue", "degree", "leading_re", "leading_im"])
        for r, deg in enumerate(report.residue_degrees):
            lead = report.leading[r]
            writer.writerow([r, deg,
                             "" if lead is None else repr(lead.real),
                             "" if lead is None else repr(lead.imag)])
    from . import plots
    plots.write_gnuplot_script(out_dir / "pseudo_me.gp", series_path.name,
                               "elliptic Mellin value", ycol=2)
    plots.render_pseudo_figure(out_dir / "pseudo_me.png", ms,
                               [v.real for v in numeric], q, report.residue_degrees)
    print(f"q={q} residue degrees {list(report.residue_degrees)} "
          f"global degree {report.global_degree}")
    print(f"wrote {series_path}, {report_path}, figures alongside")
    return EXIT_OK


def cmd_cone(args) -> int:
    eps_grid = args.eps_grid
    rows = cone_mod.cone_rows(args.u, eps_grid)
    slope = cone_mod.loglog_slope(args.u, eps_grid)
    out_dir = Path(args.out) if args.out is not None else Path(".")
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "cone.csv"
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["eps", "tail", "normalized"])
        for eps, tail, norm in rows:
            writer.writerow([repr(eps), repr(tail), repr(norm)])
    summary = out_dir / "cone_summary.csv"
    with open(summary, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["u", "fitted_slope", "normalized_at_smallest_eps"])
        writer.writerow([repr(args.u), repr(slope), repr(rows[-1][2])])
    from . import plots
    plots.write_gnuplot_script(out_dir / "cone.gp", path.name,
                               "cone tail integral", ycol=2, logscale=True)
    plots.render_cone_figure(out_dir / "cone.png", [r[0] for r in rows],
                             [r[1] for r in rows], slope)
    print(f"fitted log-log slope {slope:.6f}; "
          f"normalised tail at eps={eps_grid[-1]:g}: {rows[-1][2]:.6f}")
    print(f"wrote {path}, {summary}, figures alongside")
    return EXIT_OK


def cmd_schema(_args) -> int:
    print(json.dumps(CONFIG_SCHEMA, indent=2))
    return EXIT_OK


def _float_list(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbtorsion",
        description="Exact elliptic/identity torsion terms for hyperbolic orbifold rays",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", metavar="PATH", help="JSON run configuration")
        p.add_argument("--m-max", type=int, default=None, help="largest shift m in grids")
        p.add_argument("--tolerance", type=float, default=1e-9,
                       help="numeric tolerance for float-mode checks")
        p.add_argument("--out", metavar="DIR", default=None, help="output directory")
        mode = p.add_mutually_exclusive_group()
        mode.add_argument("--exact", dest="mode", action="store_const", const="exact",
                          help="insist on exact arithmetic (default when possible)")
        mode.add_argument("--float", dest="mode", action="store_const", const="float",
                          help="force floating-point evaluation")
        p.set_defaults(mode="exact")

    p_verify = sub.add_parser("verify", help="run an exact/property verification suite")
    p_verify.add_argument("suite", choices=sorted(SUITES))
    common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_table = sub.add_parser("table", help="tabulate a quantity along the ray")
    p_table.add_argument("quantity", choices=["ME", "MI", "logT2", "logT", "heatE", "heatI"])
    common(p_table)
    p_table.add_argument("--t-grid", type=_float_list, default=[0.1, 1.0, 10.0],
                         help="comma-separated heat times")
    p_table.set_defaults(func=cmd_table)

    p_pseudo = sub.add_parser("pseudo", help="pseudopolynomial degree report for the elliptic term")
    common(p_pseudo)
    p_pseudo.add_argument("--q", type=int, default=None, help="override the residue period")
    p_pseudo.set_defaults(func=cmd_pseudo)

    p_cone = sub.add_parser("cone", help="cone-deformation divergence demo")
    p_cone.add_argument("--u", type=float, default=1.0, help="deformation parameter")
    p_cone.add_argument("--eps-grid", type=_float_list,
                        default=[10.0 ** (-k) for k in range(3, 9)],
                        help="comma-separated regularisation cutoffs")
    p_cone.add_argument("--out", metavar="DIR", default=None)
    p_cone.set_defaults(func=cmd_cone)

    p_schema = sub.add_parser("schema", help="print the JSON configuration schema")
    p_schema.set_defaults(func=cmd_schema)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.run_config = None
    if getattr(args, "config", None):
        try:
            args.run_config = parse_config(args.config)
        except ConfigError as exc:
            for v in exc.violations:
                print(f"config error: {v}", file=sys.stderr)
            return EXIT_CONFIG
    try:
        return args.func(args)
    except ConfigError as exc:
        for v in exc.violations:
            print(f"config error: {v}", file=sys.stderr)
        return EXIT_CONFIG
    except CapExceeded as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except LemmaViolation as exc:
        print(f"violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
