"""``witnesskit`` command line: build, verify, detect, sweep.

Exit codes: 0 success / certified / detected, 1 inconclusive / not detected,
2 usage or data error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import matrixio
from .densecore import DEFAULT_TOL, HermitianOperator
from .errors import WitnessKitError
from .superops import map_by_name, maximally_entangled_projector
from .sweep import GridError, grid_points, run_sweep, write_csv
from .verify import blockpos_min, certify_via_map, detect
from .witnessfam import ChoiFamilyParams, build_wtilde, build_witness, feasibility_report

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2
MAP_CHOICES = ("inverse-reduction",)


class UsageError(Exception):
    pass


def default_tol() -> float:
    raw = os.environ.get("WITNESSKIT_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise UsageError(f"WITNESSKIT_TOL={raw!r} is not a number") from None
    if not tol >= 0:
        raise UsageError("WITNESSKIT_TOL must be non-negative")
    return tol


def _tol(args) -> float:
    if args.tol is None:
        return default_tol()
    if not args.tol >= 0:
        raise UsageError("--tol must be non-negative")
    return args.tol


def _parse_a(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"--a must be a comma-separated list of numbers, got {text!r}") from None


def _load_operator(path: str, what: str) -> tuple[int, HermitianOperator]:
    d, m = matrixio.load(path)
    if not isinstance(m, HermitianOperator):
        try:
            m = HermitianOperator(m)
        except ValueError as exc:
            raise UsageError(f"{what} {path}: {exc}") from exc
    return d, m


def _load_bipartite(path: str, what: str) -> tuple[int, HermitianOperator]:
    d, m = _load_operator(path, what)
    if m.dim != d * d:
        raise UsageError(f"{what} {path}: expected a {d*d}x{d*d} bipartite operator, got {m.dim}x{m.dim}")
    return d, m


def cmd_build(args) -> int:
    params = ChoiFamilyParams(args.d, tuple(_parse_a(args.a)), args.x)
    wt = build_wtilde(params)
    w = build_witness(params)
    report = feasibility_report(params, _tol(args))
    matrixio.save(f"{args.output}.wtilde.json", wt, d=params.d)
    matrixio.save(f"{args.output}.w.json", w, d=params.d)
    out = {
        "params": {"d": params.d, "a": list(params.a), "x": params.x},
        "feasibility": report.as_dict(),
        "files": [f"{args.output}.wtilde.json", f"{args.output}.w.json"],
    }
    print(json.dumps(out, indent=2))
    return EXIT_OK


def cmd_verify(args) -> int:
    d, w = _load_bipartite(args.input, "witness")
    tol = _tol(args)
    verdict = certify_via_map(w, map_by_name(args.map, d), tol)
    out = verdict.as_dict()
    if args.with_blockpos:
        value, state = blockpos_min(w, args.restarts, args.iters, args.seed)
        out["blockpos_min"] = value
        out["blockpos_state"] = {
            "psi": {"re": state.psi.real.tolist(), "im": state.psi.imag.tolist()},
            "phi": {"re": state.phi.real.tolist(), "im": state.phi.imag.tolist()},
        }
    print(json.dumps(out, indent=2))
    return EXIT_OK if verdict.certified else EXIT_NEGATIVE


def cmd_detect(args) -> int:
    d, w = _load_bipartite(args.witness, "witness")
    tol = _tol(args)
    if args.state == "builtin:maxent":
        rho = maximally_entangled_projector(d)
    else:
        _, rho = _load_operator(args.state, "state")
    detected, value = detect(w, rho, tol)
    print(json.dumps({"detected": detected, "value": value}))
    return EXIT_OK if detected else EXIT_NEGATIVE


def cmd_sweep(args) -> int:
    points = grid_points(args.d, args.a_grid, args.x_grid)
    rows = run_sweep(points, args.restarts, args.iters, args.seed, _tol(args), args.parallel)
    if args.output == "-":
        write_csv(rows, sys.stdout)
    else:
        with open(args.output, "w", newline="") as fh:
            write_csv(rows, fh)
        print(f"wrote {len(rows)} rows to {args.output}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="witnesskit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build a Choi-family member and its witness")
    b.add_argument("--d", type=int, required=True)
    b.add_argument("--a", required=True, help="comma-separated non-negative weights, d of them")
    b.add_argument("--x", type=float, required=True)
    b.add_argument("--output", default="witness", help="path prefix for .wtilde.json and .w.json")
    b.add_argument("--tol", type=float, default=None)
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="certify a witness via a map")
    v.add_argument("input")
    v.add_argument("--map", choices=MAP_CHOICES, default="inverse-reduction")
    v.add_argument("--tol", type=float, default=None)
    v.add_argument("--with-blockpos", action="store_true")
    v.add_argument("--restarts", type=int, default=30)
    v.add_argument("--iters", type=int, default=50)
    v.add_argument("--seed", type=int, default=1)
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("detect", help="evaluate Tr(W rho) on a state")
    t.add_argument("witness")
    t.add_argument("--state", default="builtin:maxent", help="MatrixFile path or builtin:maxent")
    t.add_argument("--tol", type=float, default=None)
    t.set_defaults(func=cmd_detect)

    s = sub.add_parser("sweep", help="scan family parameters, write CSV")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--a-grid", required=True, help="per-component 'v' or 'start:stop:step', comma-separated")
    s.add_argument("--x-grid", required=True, help="'v' or 'start:stop:step' (stop excluded)")
    s.add_argument("--output", default="-", help="CSV path, '-' for stdout")
    s.add_argument("--restarts", type=int, default=30)
    s.add_argument("--iters", type=int, default=50)
    s.add_argument("--seed", type=int, default=1)
    s.add_argument("--tol", type=float, default=None)
    s.add_argument("--parallel", action="store_true")
    s.set_defaults(func=cmd_sweep)
    return parser


_VALUE_FLAGS = ("--a", "--x", "--a-grid", "--x-grid", "--tol")


def _glue_negative_values(argv: list[str]) -> list[str]:
    # argparse reads "--a -1,0,0" as two options; rewrite to "--a=-1,0,0"
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if tok in _VALUE_FLAGS and nxt is not None and len(nxt) > 1 and nxt[0] == "-" and (nxt[1].isdigit() or nxt[1] == "."):
            out.append(f"{tok}={nxt}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, WitnessKitError, matrixio.MatrixFileError, GridError, ValueError) as exc:
        print(f"witnesskit {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
