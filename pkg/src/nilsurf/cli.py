"""Command-line front end.

Subcommands:
  verify    scan family members for minimality (single spec or random draws)
  scan      dump per-sample H / residual / curvature rows as CSV
  ode       re-derive one closed-form profile with the RK4 oracle
  cases     audit the twelve degenerate-curve parametrizations
  mesh      export a surface patch as Wavefront OBJ
  catalog   list families, cases, parameters, poles and known caveats

Exit codes: 0 success, 1 failed check, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .errors import (
    InvalidCaseError,
    InvalidSpecError,
    MissingParamError,
    NilsurfError,
)
from .families import (
    ALL_CASES,
    ALLOWED_PARAMS,
    FamilySpec,
    family_surface,
    missing_case_surface,
    parse_family_spec,
    random_spec,
    safe_domain,
)
from .mesh import export_obj
from .odes import closed_form_oracle, oracle_record
from .profiles import profile_closed_form
from .report import render_scan_figure, report_to_json, write_csv
from .surface import Domain, grid_scan

_PARAM_FLAGS = ("a", "b", "c", "d", "u0", "v0", "c1")

#: Family catalog: layout, profile description and pole locations per key.
FAMILY_DESCRIPTIONS = {
    "1": {
        "layout": "(x, y, u(x) + v(y) + x*y/2)",
        "profiles": "u affine with slope a; v solves v' = 2c*sqrt(1 + (a + y)^2)",
        "params": ["a", "u0", "c", "v0"],
        "poles": "none",
    },
    "2i": {
        "layout": "(x + v(y), y, u(x) + x*y/2)",
        "profiles": "u = a/(2(1+a^2)) x^2 + b x + c; v affine with slope a (d must be 0)",
        "params": ["a", "b", "c", "d"],
        "poles": "none",
    },
    "2ii": {
        "layout": "(x + v(y), y, u(x) + x*y/2)",
        "profiles": "u affine with slope a; v rational-log profile in y + 2a",
        "params": ["a", "u0", "b", "c"],
        "poles": "y = -2a",
    },
    "3i": {
        "layout": "(y, x + v(y), u(x) - x*y/2)",
        "profiles": "u = a/(2(1+a^2)) x^2 + b x + c; v affine with slope -a (d must be 0)",
        "params": ["a", "b", "c", "d"],
        "poles": "none",
    },
    "3ii": {
        "layout": "(y, x + v(y), u(x) - x*y/2)",
        "profiles": "u affine with slope a; v rational-log profile in 2a - y",
        "params": ["a", "u0", "b", "c"],
        "poles": "y = 2a",
    },
    "4": {
        "layout": "(x, y, u(x) + v(y) - x*y/2)",
        "profiles": "u solves u' = 2c*sqrt(1 + (a + x)^2); v affine with slope -a",
        "params": ["a", "c", "u0", "v0"],
        "poles": "none",
    },
    "5i": {
        "layout": "(x + v(y), y, u(x) - x*y/2)",
        "profiles": "u constant u0; v(y) = a/y + b (affine when a = 0)",
        "params": ["u0", "a", "b"],
        "poles": "y = 0 unless a = 0",
    },
    "5ii": {
        "layout": "(x + v(y), y, u(x) - x*y/2)",
        "profiles": "v affine a*y + b; u' = -a t/(2(1+a^2)) + c1*sqrt(4(1+a^2) + t^2), t = 2x + b",
        "params": ["a", "b", "c", "c1"],
        "poles": "none",
    },
    "6i": {
        "layout": "(y, x + v(y), u(x) + x*y/2)",
        "profiles": "u constant u0; v(y) = a/y + b (affine when a = 0)",
        "params": ["u0", "a", "b"],
        "poles": "y = 0 unless a = 0",
    },
    "6ii": {
        "layout": "(y, x + v(y), u(x) + x*y/2)",
        "profiles": "v affine a*y + b; u' = -a t/(2(1+a^2)) + c1*sqrt(4(1+a^2) + t^2), t = 2x + b",
        "params": ["a", "b", "c", "c1"],
        "poles": "none",
    },
}

#: Caveats surfaced by `catalog`: places where the printed classification and
#: the numerics disagree, with the arbitration this package applies.
CATALOG_NOTES = (
    {
        "id": "type3-parametrization",
        "text": (
            "The printed type-3 parametrization duplicates the type-2 layout "
            "(x + v, y, u + x*y/2) and is not minimal (measured max |H| of "
            "order 1 on generic draws). The layout from the type-3 derivation, "
            "(y, x + v, u - x*y/2), is minimal to 1e-12 and is the default; "
            "the rejected layout stays available as parametrization='display'."
        ),
    },
    {
        "id": "type6-quadratic-sign",
        "text": (
            "The sign of the quadratic term in the type-6 profile is "
            "ambiguous by symmetry with type 5. Scans arbitrate: '+' is "
            "minimal to 1e-12, '-' is not (max |H| of order 0.6). '+' is the "
            "default; the alternative is reachable via type6_quad_sign=-1."
        ),
    },
    {
        "id": "d-forced-zero",
        "text": (
            "Types 2(i) and 3(i) list an intercept d for the affine profile, "
            "but minimality forces d = 0. Constructors warn on nonzero d and "
            "the resulting surface serves as a negative control."
        ),
    },
    {
        "id": "flatness",
        "text": (
            "Types 1 to 4 are described as flat surfaces, but the measured "
            "intrinsic curvature of the member z = x*y/2 is "
            "K(y) = -1/(1 + y^2)^2, which is nonzero; the Gauss-equation and "
            "distance-based routes agree on this to 1e-10. Reported for "
            "reference, not enforced."
        ),
    },
    {
        "id": "type6-ode-conjecture",
        "text": (
            "No collected minimality equation is displayed for type 6. "
            "Flipping the sign of the zero-order block of the type-5 equation "
            "reproduces type-6 minimality only when v is affine; for general "
            "profiles it disagrees with the geometric residual, so type-6 "
            "verification uses the geometric route."
        ),
    },
    {
        "id": "u-vs-uprime-typo",
        "text": (
            "One intermediate display in the type-1 reduction writes u where "
            "its derivative is meant; the surrounding derivation and the "
            "final profile are consistent with u'."
        ),
    },
)

_CASE_PROFILES = {
    "affine": ("affine", {"a": 0.3, "b": 0.7}),
    "quadratic": ("quadratic", {"p2": 0.25, "p1": 0.3, "p0": 0.1}),
    "sin": ("sin", {"amp": 1.0, "omega": 1.0}),
    "asinh": ("asinh", {"amp": 1.0}),
}


def _add_family_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--type", type=int, choices=range(1, 7), help="family type 1..6")
    p.add_argument("--variant", choices=("i", "ii"), help="variant for types 2, 3, 5, 6")
    for name in _PARAM_FLAGS:
        p.add_argument(f"--{name}", type=float, default=None, help=f"parameter {name}")
    p.add_argument("--spec", metavar="FILE", help="JSON family spec (overrides flags)")


def _spec_from_args(args) -> FamilySpec:
    if args.spec:
        with open(args.spec) as fh:
            return parse_family_spec(json.load(fh))
    if args.type is None:
        raise InvalidSpecError("need --type (or --spec FILE)")
    params = {
        name: getattr(args, name)
        for name in _PARAM_FLAGS
        if getattr(args, name) is not None
    }
    return FamilySpec(args.type, args.variant, params)


def _emit(args, doc: dict, human_lines) -> None:
    if args.json:
        print(json.dumps(doc, sort_keys=True))
    else:
        for line in human_lines:
            print(line)


def _write_artifacts(args, report, title: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            write_csv(report, fh)
    if getattr(args, "plot", None):
        render_scan_figure(report, args.plot, title=title)


def _scan_spec(spec: FamilySpec, grid: int, half_width: float):
    surf = family_surface(spec).with_domain(safe_domain(spec, half_width))
    return grid_scan(surf, grid, grid)


def cmd_verify(args) -> int:
    results = []
    if args.draws:
        if args.type is None:
            raise InvalidSpecError("--draws needs --type (and --variant where applicable)")
        rng = np.random.default_rng(args.seed)
        specs = [random_spec(args.type, args.variant, rng) for _ in range(args.draws)]
    else:
        specs = [_spec_from_args(args)]
    worst = None
    for spec in specs:
        report = _scan_spec(spec, args.grid, args.domain)
        results.append((spec, report))
        if worst is None or report.max_abs_h > worst[1].max_abs_h:
            worst = (spec, report)
    max_h = max(r.max_abs_h for _, r in results)
    ok = max_h < args.tol
    _write_artifacts(args, worst[1], title=f"type {worst[0].type}{worst[0].variant or ''}")
    doc = {
        "command": "verify",
        "tol": args.tol,
        "grid": args.grid,
        "half_width": args.domain,
        "draws": len(results),
        "max_abs_h": max_h,
        "worst_spec": worst[0].to_json_dict(),
        "pass": ok,
        "results": [
            {"spec": s.to_json_dict(), "max_abs_h": r.max_abs_h, "n_samples": r.n_samples}
            for s, r in results
        ],
    }
    lines = [
        f"verify type={s.type}{s.variant or ''} params={json.dumps(s.params, sort_keys=True)} "
        f"max|H|={r.max_abs_h:.3e} samples={r.n_samples}"
        for s, r in results
    ]
    lines.append(f"overall max|H| = {max_h:.3e} (tol {args.tol:g}): {'PASS' if ok else 'FAIL'}")
    _emit(args, doc, lines)
    return 0 if ok else 1


def cmd_scan(args) -> int:
    spec = _spec_from_args(args)
    report = _scan_spec(spec, args.grid, args.domain)
    title = f"type {spec.type}{spec.variant or ''}"
    if args.out:
        _write_artifacts(args, report, title=title)
    else:
        write_csv(report, sys.stdout)
        if args.plot:
            render_scan_figure(report, args.plot, title=title)
    if args.json:
        print(report_to_json(report, spec=spec.to_json_dict()))
    return 0


def cmd_ode(args) -> int:
    params = {
        name: getattr(args, name)
        for name in _PARAM_FLAGS
        if getattr(args, name) is not None
    }
    span = tuple(args.span) if args.span else None
    err, info = closed_form_oracle(args.sol, params, span=span, step=args.step)
    record = oracle_record(
        info["ode"], params, tuple(info["span"]), args.step, err, args.tol
    )
    record["solution"] = args.sol
    _emit(
        args,
        record,
        [
            f"ode {args.sol} ({info['ode']}) span={info['span']} step={args.step:g} "
            f"max_error={err:.3e} (tol {args.tol:g}): "
            f"{'PASS' if record['pass'] else 'FAIL'}"
        ],
    )
    return 0 if record["pass"] else 1


def cmd_cases(args) -> int:
    kind, kind_params = _CASE_PROFILES[args.profile]
    rows = []
    all_ok = True
    for case in ALL_CASES:
        profile = profile_closed_form(kind, kind_params)
        c = args.c if args.c is not None else (0.7 if case.slot == "first" else 3.0)
        surf = missing_case_surface(case, c, profile)
        if case.slot == "first":
            domain = Domain(-1.0, 1.0, 0.0, 2 * np.pi)
        else:
            domain = Domain(0.0, 2 * np.pi, -1.0, 1.0)
        report = grid_scan(surf.with_domain(domain), args.grid, args.grid,
                           include_curvature=False)
        res = report.max_abs_residual
        # Starred rows are minimal exactly for affine profiles; everything
        # else in the table is minimal for any profile.
        if case.starred and args.profile != "affine":
            expected = "nonzero"
            ok = res > 1e-3
        else:
            expected = "zero"
            ok = res < args.tol
        all_ok = all_ok and ok
        rows.append(
            {
                "case": surf.name,
                "type": case.type,
                "slot": case.slot,
                "starred": case.starred,
                "c": c,
                "max_residual": res,
                "expected": expected,
                "pass": ok,
            }
        )
    doc = {
        "command": "cases",
        "profile": args.profile,
        "tol": args.tol,
        "rows": rows,
        "pass": all_ok,
    }
    lines = [
        f"{r['case']:<16} expected {r['expected']:<7} "
        f"max|residual|={r['max_residual']:.3e} {'PASS' if r['pass'] else 'FAIL'}"
        for r in rows
    ]
    lines.append(f"cases profile={args.profile}: {'PASS' if all_ok else 'FAIL'}")
    _emit(args, doc, lines)
    return 0 if all_ok else 1


def cmd_mesh(args) -> int:
    spec = _spec_from_args(args)
    surf = family_surface(spec).with_domain(safe_domain(spec, args.domain))
    info = export_obj(surf, args.grid, args.grid, args.out)
    info["spec"] = spec.to_json_dict()
    _emit(
        args,
        info,
        [
            f"wrote {info['path']}: {info['vertices']} vertices, "
            f"{info['faces']} faces, {info['skipped']} samples skipped"
        ],
    )
    return 0


def cmd_catalog(args) -> int:
    cases = [
        {
            "type": c.type,
            "slot": c.slot,
            "starred": c.starred,
            "minimal": "for affine profiles only" if c.starred else "for any profile",
        }
        for c in ALL_CASES
    ]
    doc = {
        "command": "catalog",
        "families": FAMILY_DESCRIPTIONS,
        "cases": cases,
        "notes": list(CATALOG_NOTES),
    }
    lines = ["families:"]
    for key, fam in FAMILY_DESCRIPTIONS.items():
        lines.append(f"  type {key}: r(x, y) = {fam['layout']}")
        lines.append(f"    profiles: {fam['profiles']}")
        lines.append(f"    params: {', '.join(fam['params'])}; poles: {fam['poles']}")
    lines.append("degenerate-curve cases (one generating curve vertical):")
    for c in cases:
        star = "*" if c["starred"] else " "
        lines.append(
            f"  type {c['type']} {c['slot']:<6}{star} minimal {c['minimal']}"
        )
    lines.append("notes:")
    for note in CATALOG_NOTES:
        lines.append(f"  [{note['id']}] {note['text']}")
    _emit(args, doc, lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nilsurf",
        description="Minimal translation surfaces in the Heisenberg group.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="scan family members for minimality")
    _add_family_args(p)
    p.add_argument("--grid", type=int, default=21, help="samples per axis")
    p.add_argument("--domain", type=float, default=2.0, help="square half-width")
    p.add_argument("--tol", type=float, default=1e-8, help="max |H| tolerance")
    p.add_argument("--draws", type=int, default=0, help="random parameter draws")
    p.add_argument("--seed", type=int, default=0, help="RNG seed for --draws")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--out", metavar="CSV", help="write per-sample rows")
    p.add_argument("--plot", metavar="PNG", help="render |H| and K heat maps")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("scan", help="dump per-sample rows as CSV")
    _add_family_args(p)
    p.add_argument("--grid", type=int, default=21)
    p.add_argument("--domain", type=float, default=2.0)
    p.add_argument("--json", action="store_true", help="also print a JSON summary")
    p.add_argument("--out", metavar="CSV", help="CSV path (default stdout)")
    p.add_argument("--plot", metavar="PNG", help="render heat maps alongside the CSV")
    p.set_defaults(fn=cmd_scan)

    p = sub.add_parser("ode", help="re-derive a closed-form profile by RK4")
    p.add_argument(
        "--sol",
        required=True,
        choices=("sol_v", "sol_v2", "sol_v3", "sol_u5", "sol_u6"),
        help="closed-form solution to certify",
    )
    for name in _PARAM_FLAGS:
        p.add_argument(f"--{name}", type=float, default=None, help=f"parameter {name}")
    p.add_argument("--span", type=float, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--tol", type=float, default=1e-7)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_ode)

    p = sub.add_parser("cases", help="audit the degenerate-curve parametrizations")
    p.add_argument("--profile", choices=tuple(_CASE_PROFILES), default="affine")
    p.add_argument("--c", type=float, default=None, help="fixed coordinate of the vertical curve")
    p.add_argument("--grid", type=int, default=15)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_cases)

    p = sub.add_parser("mesh", help="export a surface patch as OBJ")
    _add_family_args(p)
    p.add_argument("--grid", type=int, default=33)
    p.add_argument("--domain", type=float, default=2.0)
    p.add_argument("--out", required=True, metavar="OBJ")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_mesh)

    p = sub.add_parser("catalog", help="list families, cases and known caveats")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_catalog)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (InvalidSpecError, InvalidCaseError, MissingParamError) as exc:
        print(f"nilsurf: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"nilsurf: {exc}", file=sys.stderr)
        return 2
    except NilsurfError as exc:
        print(f"nilsurf: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
