"""Command-line front end.

Subcommands:
  realize      build a realization and dump it (symbolic JSON, or numeric at --theta)
  eval         integrate a generating function and emit a t,y trajectory CSV
  verify       run a built-in identity over a theta grid; exit 0 iff within --tol
  oracle       nested-sum evaluation (plain composition, or braced generating function)
  coeff-check  exhaustive word-coefficient comparison of builder vs series pattern

Composition strings follow the grammar `2,1,{2},3`: comma-separated positive
integers with exactly one braced periodic block. The oracle subcommand also
accepts a plain braceless composition and then evaluates the single nested sum.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .oracle import TruncationSpec, gen_fun_truncated, li_truncated
from .ratseries import repr_equals_pattern
from .realize import build_general, instantiate
from .simulate import IntegratorConfig, IntegrationError, integrate, sweep_theta
from .verify import builtin_identity, curve_csv, run_identity
from .words import (CompositionParseError, parse_composition,
                    parse_generalized, word_str)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _add_integrator_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--t-end-eps", type=float, default=1e-6,
                   help="distance eps from t = 1 where refinement starts")
    p.add_argument("--rtol", type=float, default=1e-9)
    p.add_argument("--atol", type=float, default=1e-12)
    p.add_argument("--min-step", type=float, default=1e-10)
    p.add_argument("--halvings", type=int, default=2)
    p.add_argument("--samples", type=int, default=200)


def _integrator_config(args: argparse.Namespace) -> IntegratorConfig:
    return IntegratorConfig(
        eps_end=args.t_end_eps,
        rtol=args.rtol,
        atol=args.atol,
        min_step=args.min_step,
        halvings=args.halvings,
        sample_count=args.samples,
    )


def _out_path(args: argparse.Namespace, filename: str) -> Path | None:
    if args.out is None:
        return None
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out / filename


def _emit(text: str, path: Path | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text)
        print(f"wrote {path}", file=sys.stderr)


def cmd_realize(args: argparse.Namespace) -> int:
    g = parse_generalized(args.s)
    r = build_general(g)
    if args.format != "json":
        raise SystemExit("realize supports --format json only")
    if args.theta is None:
        payload = r.to_json_dict()
    else:
        nr = instantiate(r, args.theta)
        payload = {
            "dim": nr.dim,
            "theta": args.theta,
            "N0": nr.N0.tolist(),
            "N1": nr.N1.tolist(),
            "z0": nr.z0.tolist(),
            "C": nr.C.tolist(),
        }
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n",
          _out_path(args, "realization.json"))
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    g = parse_generalized(args.s)
    cfg = _integrator_config(args)
    try:
        result = integrate(instantiate(build_general(g), args.theta), cfg)
    except IntegrationError as exc:
        print(f"integration failed: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        text = json.dumps({
            "samples": [[t, y] for t, y in result.samples],
            "terminal_t": result.terminal_t,
            "terminal_y": result.terminal_y,
            "endpoint_gap": result.endpoint_gap,
        }, indent=2) + "\n"
        _emit(text, _out_path(args, "trajectory.json"))
    else:
        lines = ["t,y"] + [f"{_fmt(t)},{_fmt(y)}" for t, y in result.samples]
        _emit("\n".join(lines) + "\n", _out_path(args, "trajectory.csv"))
    print(f"terminal t = {_fmt(result.terminal_t)}  y = {_fmt(result.terminal_y)}  "
          f"endpoint_gap = {_fmt(result.endpoint_gap)}  "
          f"steps = {result.steps_accepted}+{result.steps_rejected}rej",
          file=sys.stderr)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    spec = builtin_identity(args.name)
    thetas = [float(x) for x in args.thetas.split(",")] if args.thetas else None
    cfg = _integrator_config(args)
    report = run_identity(spec, thetas or (0.25, 0.5, 0.75, 1.0), cfg)
    _emit(report.to_csv(), _out_path(args, f"residual_{spec.name}.csv"))
    if args.out is not None:
        for theta, curve in report.curves:
            path = _out_path(args, f"residual_theta_{theta:.2f}.csv")
            assert path is not None
            path.write_text(curve_csv(curve))
    ok = report.max_abs_residual <= args.tol
    print(f"{spec.name}: max |residual| = {_fmt(report.max_abs_residual)} "
          f"({'<=' if ok else '>'} tol {_fmt(args.tol)})", file=sys.stderr)
    return 0 if ok else 1


def cmd_oracle(args: argparse.Namespace) -> int:
    spec = TruncationSpec(k_max=args.k_max, n_max=args.n_max)
    if "{" in args.s:
        g = parse_generalized(args.s)
        value = gen_fun_truncated(g, args.t, args.theta, spec)
        print(f"L[{g}](t={_fmt(args.t)}, theta={_fmt(args.theta)}) "
              f"~= {_fmt(value)}   (k_max={spec.k_max}, n_max<={spec.n_max})")
    else:
        s = parse_composition(args.s)
        value = li_truncated(s, args.t, spec)
        print(f"Li[{s}](t={_fmt(args.t)}) ~= {_fmt(value)}   (k_max={spec.k_max})")
    return 0


def cmd_coeff_check(args: argparse.Namespace) -> int:
    g = parse_generalized(args.s)
    r = build_general(g)
    mismatches = repr_equals_pattern(g, r.as_representation(), args.max_len)
    checked = 2 ** (args.max_len + 1) - 1
    if not mismatches:
        print(f"OK {checked} words checked")
        return 0
    first = mismatches[0]
    print(f"MISMATCH at {word_str(first.word)}: "
          f"pattern={first.expected} representation={first.actual} "
          f"({len(mismatches)} mismatches in {checked} words)")
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mplgf",
        description="Evaluate generating functions of periodic multiple "
                    "polylogarithms via exact bilinear realizations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("realize", help="build and dump a realization")
    p.add_argument("--s", required=True, help="composition, e.g. '2,1,{2},3'")
    p.add_argument("--theta", type=float, default=None,
                   help="numeric theta; omit for symbolic output")
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("eval", help="integrate and emit a trajectory")
    p.add_argument("--s", required=True)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    _add_integrator_flags(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", help="run a built-in identity")
    p.add_argument("name", help="zeta2, zeta4-31 or hoffman")
    p.add_argument("--thetas", default=None, help="comma-separated theta grid")
    p.add_argument("--tol", type=float, default=1e-2)
    p.add_argument("--out", default=None)
    p.add_argument("--jobs", type=int, default=1)
    _add_integrator_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="nested-sum oracle evaluation")
    p.add_argument("--s", required=True,
                   help="plain composition for a single value, braced for the "
                        "generating function")
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--theta", type=float, default=1.0)
    p.add_argument("--k-max", type=int, default=10 ** 6)
    p.add_argument("--n-max", type=int, default=200)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("coeff-check", help="builder vs series pattern, exhaustive")
    p.add_argument("--s", required=True)
    p.add_argument("--max-len", type=int, default=12)
    p.set_defaults(func=cmd_coeff_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CompositionParseError as exc:
        print(f"composition parse error at {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
