"""Command-line interface: ``absnorm <verb> ...``.

Exit status is 0 on success, 2 for malformed input or a norm that fails
validation, 3 when an operation's precondition does not hold.  Reports are
canonical JSON on stdout (or ``--output``); ``render`` writes SVG.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import centers, classify, denial
from .errors import ContractError, MalformedInputError, UnsupportedRepresentationError, ValidationError
from .norm_core import (
    BlackBoxNorm,
    ValidationReport,
    as_polygonal,
    dual_norm,
    fmt_scalar,
    to_fraction,
    validate_norm,
)
from .render import render_svg
from .spec_io import dump_norm, dumps, load_norm, operator_from_dict, _read_json

EXIT_OK, EXIT_INVALID, EXIT_CONTRACT = 0, 2, 3


def default_grid() -> int:
    raw = os.environ.get("ABSNORM_GRID", "256")
    try:
        grid = int(raw)
    except ValueError:
        raise MalformedInputError(f"ABSNORM_GRID: expected an integer, got {raw!r}") from None
    if grid < 1:
        raise MalformedInputError("ABSNORM_GRID must be positive")
    return grid


def _pair(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 2:
        raise MalformedInputError(f"expected 'x,y', got {text!r}")
    return tuple(to_fraction(p) for p in parts)


def _out(args, text: str) -> None:
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _scalar(x):
    return fmt_scalar(x)


# --------------------------------------------------------------------------
# verbs
# --------------------------------------------------------------------------

def cmd_validate(args) -> int:
    data = _read_json(args.norm)
    try:
        F = load_norm(data)
    except ValidationError as exc:
        _out(args, dumps(ValidationReport(exc.violations).to_dict()))
        return EXIT_INVALID
    report = validate_norm(F)
    _out(args, dumps(report.to_dict()))
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_classify(args) -> int:
    F = load_norm(args.norm)
    tag = classify.classify_norm(F)
    out = tag.to_dict()
    if not isinstance(F, BlackBoxNorm):
        out["duality_swap"] = classify.duality_swap_check(F)
    _out(args, dumps(out))
    return EXIT_OK


def cmd_dual(args) -> int:
    F = load_norm(args.norm)
    _out(args, dump_norm(dual_norm(as_polygonal(F))))
    return EXIT_OK


def cmd_decide(args) -> int:
    _out(args, dumps(classify.verdict(load_norm(args.norm))))
    return EXIT_OK


def cmd_margin(args) -> int:
    F = load_norm(args.norm)
    point = _pair(args.point)
    grid = args.grid or default_grid()
    if args.mode == "u":
        u = denial.u_function(F, point, tol=args.tol, grid=grid)
        _out(args, dumps({"mode": "u", "functional": [_scalar(x) for x in point], "u": u, "tol": args.tol}))
        return EXIT_OK
    if args.mode == "deny":
        res = denial.deny_margin(F, point, grid)
    else:
        res = denial.star_deny_margin(F, point, grid)
    _out(args, dumps({
        "mode": args.mode,
        "point": [_scalar(x) for x in point],
        "margin": _scalar(res.margin),
        "witness": [_scalar(x) for x in res.witness],
        "value": _scalar(res.value),
        "upper_bound": _scalar(res.upper_bound),
        "exact": res.exact,
        "grid": grid,
    }))
    return EXIT_OK


def cmd_certify(args) -> int:
    F = load_norm(args.norm)
    grid = args.grid or default_grid()
    if args.region == "whole":
        region = denial.Region.whole()
    elif args.region == "slice":
        if args.delta is None and args.mode == "star_deny" and args.direction is None:
            region = None
        else:
            if args.delta is None:
                raise MalformedInputError("--delta is required for a slice region")
            region = denial.Region.slice(_pair(args.direction or "1,0"), to_fraction(args.delta))
    else:
        if not args.arc:
            raise MalformedInputError("--arc is required for an arc region")
        region = denial.Region.arc([_pair(p) for p in args.arc.split(";")])
    cert = denial.set_denial_certificate(F, args.mode, region, grid)
    out = cert.to_dict(max_rows=args.rows)
    out["grid"] = grid
    if region is None:
        out["delta"] = _scalar(cert.region.delta)
    _out(args, dumps(out))
    return EXIT_OK


def cmd_defect(args) -> int:
    F = load_norm(args.norm) if args.norm else None
    spec, T, n_list, rho = operator_from_dict(_read_json(args.operator), F)
    study = centers.convergence_study(spec, T, n_list, rho=rho)
    if args.csv:
        Path(args.csv).write_text(study.csv())
    summary = study.summary()
    summary["rows"] = [r.row() for r in study.reports]
    _out(args, dumps(summary))
    return EXIT_OK


def cmd_render(args) -> int:
    F = load_norm(args.norm)
    slice_ = None
    if args.slice:
        f, _, eps = args.slice.partition(":")
        if not eps:
            raise MalformedInputError("--slice expects 'f1,f2:eps'")
        slice_ = (_pair(f), to_fraction(eps))
    _out(args, render_svg(F, dual=args.dual, face=args.face, hats=args.hats, slice_=slice_))
    return EXIT_OK


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="absnorm", description="Absolute normalized norms on R^2.")
    sub = p.add_subparsers(dest="verb", required=True, metavar="VERB")

    def verb(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("-o", "--output", help="write the report here instead of stdout")
        sp.set_defaults(func=func)
        return sp

    sp = verb("validate", cmd_validate, "check the norm axioms")
    sp.add_argument("norm")
    sp = verb("classify", cmd_classify, "class F_{m,n}, edge count and hat values")
    sp.add_argument("norm")
    sp = verb("dual", cmd_dual, "write the dual norm as a polygon file")
    sp.add_argument("norm")
    sp = verb("decide", cmd_decide, "can an F-sum be a Daugavet domain or range")
    sp.add_argument("norm")

    sp = verb("margin", cmd_margin, "pointwise (star-)denial margin or u(f)")
    sp.add_argument("norm")
    sp.add_argument("--mode", choices=("deny", "star_deny", "u"), default="deny")
    sp.add_argument("--point", required=True, help="a1,a2 (deny) or f1,f2 (star_deny, u)")
    sp.add_argument("--grid", type=int)
    sp.add_argument("--tol", type=float, default=1e-9)

    sp = verb("certify", cmd_certify, "uniform denial certificate over a sphere region")
    sp.add_argument("norm")
    sp.add_argument("--mode", choices=("deny", "star_deny"), default="star_deny")
    sp.add_argument("--region", choices=("whole", "slice", "arc"), default="whole")
    sp.add_argument("--direction", help="slice direction x1,x2 (default 1,0)")
    sp.add_argument("--delta", help="slice width; omitted in star_deny mode = automatic")
    sp.add_argument("--arc", help="arc points 'x1,y1;x2,y2;...'")
    sp.add_argument("--grid", type=int)
    sp.add_argument("--rows", type=int, help="truncate the witness table")

    sp = verb("defect", cmd_defect, "Daugavet defects of a center plus a step rank-one operator")
    sp.add_argument("operator", help="operator spec JSON")
    sp.add_argument("--norm", help="norm file for from_sum / into_sum centers")
    sp.add_argument("--csv", help="write the per-n table as CSV")

    sp = verb("render", cmd_render, "SVG picture of the positive sphere")
    sp.add_argument("norm")
    sp.add_argument("--dual", action="store_true")
    sp.add_argument("--face", action="store_true")
    sp.add_argument("--hats", action="store_true")
    sp.add_argument("--slice", help="f1,f2:eps")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, MalformedInputError) as exc:
        print(f"absnorm {args.verb}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"absnorm {args.verb}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ContractError, UnsupportedRepresentationError) as exc:
        print(f"absnorm {args.verb}: {exc}", file=sys.stderr)
        return EXIT_CONTRACT


if __name__ == "__main__":
    sys.exit(main())
