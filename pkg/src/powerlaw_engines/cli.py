"""Command-line entry point.

Exit status: 0 success, 1 numerical failure, 2 usage or domain error.
Temperatures and c_red are in Kelvin.  Sweep output goes to ``--output`` or,
failing that, to ``$POWERLAW_ENGINES_OUTDIR`` (default: current directory).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from .otto import run_otto_cycle
from .spectrum import PotentialSpec, c_q, energy_level
from .stirling import CalcMode, run_cycle
from .sweep import Axis, GridSpec, export, run_map, run_series
from .thermo import DEFAULT_TOL, ThermalPair

OUTDIR_ENV = "POWERLAW_ENGINES_OUTDIR"


class UsageError(Exception):
    pass


def _q_list(text: str) -> list[float]:
    try:
        values = [float(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"q must be a number or comma list, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty q list")
    return values


def _add_potential(p: argparse.ArgumentParser, q_list: bool = False) -> None:
    p.add_argument(
        "--q",
        type=_q_list if q_list else float,
        required=not q_list,
        help="exponent parameter q >= 1" + (" (comma list fans out to one file per q)" if q_list else ""),
    )
    p.add_argument("--c-red", dest="c_red", type=float, help="level scale C_q/k_B in K")
    p.add_argument("--V0", dest="V0", type=float, help="potential strength V0 in J (SI mode)")
    p.add_argument("--a", dest="a", type=float, help="length scale a in m (SI mode)")
    p.add_argument("--m", dest="m", type=float, help="particle mass m in kg (SI mode)")


def _add_cycle_args(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--mode",
        dest="calc_mode",
        choices=[m.value for m in CalcMode],
        default=CalcMode.AS_PRINTED.value,
        help="Stirling calculation mode (ignored for otto)",
    )
    p.add_argument("--r", type=float, help="frequency ratio omega_h/omega_c (otto)")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument(
        "--appendix-sign",
        action="store_true",
        help="as-printed Stirling: positive hot-isotherm term in Q_in",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="powerlaw-engines", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="energy levels E_n/k_B")
    _add_potential(sp)
    sp.add_argument("--n-max", dest="n_max", type=int, default=5)
    sp.add_argument("--output", help="also write the table to this file")
    sp.add_argument("--format", choices=["csv", "json"], default="csv")

    cp = sub.add_parser("cycle", help="evaluate one cycle, JSON to stdout")
    cp.add_argument("cycle", choices=["stirling", "otto"])
    _add_potential(cp)
    cp.add_argument("--th", type=float, required=True, help="hot bath temperature in K")
    cp.add_argument("--tc", type=float, required=True, help="cold bath temperature in K")
    _add_cycle_args(cp)

    wp = sub.add_parser("sweep", help="series (one axis) or mode map (two axes)")
    wp.add_argument("cycle", choices=["stirling", "otto"])
    wp.add_argument("--config", help="key=value file supplying defaults for any flag")
    wp.add_argument("--axis", help="name:min:max:count, e.g. th:1:20:96")
    wp.add_argument("--axis2", help="second axis for a mode map")
    _add_potential(wp, q_list=True)
    wp.add_argument("--th", type=float, help="fixed hot bath temperature in K")
    wp.add_argument("--tc", type=float, help="fixed cold bath temperature in K")
    _add_cycle_args(wp)
    wp.add_argument("--output", help="output file; with several q values a _q<q> suffix is added")
    wp.add_argument("--format", choices=["csv", "json"], default="csv")
    wp.add_argument("--workers", type=int, default=1)
    parser.sweep_parser = wp
    return parser


def read_config(path: str) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out: dict[str, str] = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror or exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.lstrip("-").replace("-", "_")] = value
    return out


def _spec(args, q: float) -> PotentialSpec:
    si = (args.V0, args.a, args.m)
    if args.c_red is not None and any(v is not None for v in si):
        raise UsageError("give --c-red or --V0/--a/--m, not both")
    if args.c_red is not None:
        return PotentialSpec.reduced(q, args.c_red)
    if all(v is not None for v in si):
        return PotentialSpec.si(q, *si)
    raise UsageError("need --c-red, or all of --V0, --a and --m")


def cmd_spectrum(args) -> int:
    spec = _spec(args, args.q)
    if args.n_max < 1:
        raise UsageError("--n-max must be >= 1")
    levels = [energy_level(n, spec).value for n in range(1, args.n_max + 2)]
    rows = [
        {"n": n, "energy": levels[n - 1], "gap": levels[n] - levels[n - 1]}
        for n in range(1, args.n_max + 1)
    ]
    print("n\tE_n/k_B [K]\tgap [K]")
    for r in rows:
        print(f"{r['n']}\t{r['energy']:.12g}\t{r['gap']:.12g}")
    if args.output:
        export(rows, args.format, args.output)
    return 0


def cmd_cycle(args) -> int:
    spec = _spec(args, args.q)
    c_red = c_q(spec)
    pair = ThermalPair(args.th, args.tc)
    record = {"cycle": args.cycle, "q": args.q, "c_red": c_red, "th": args.th, "tc": args.tc}
    if args.cycle == "otto":
        if args.r is None:
            raise UsageError("otto needs --r")
        record.update(run_otto_cycle(args.q, c_red, pair, args.r, args.tol).to_dict())
    else:
        res = run_cycle(args.q, c_red, pair, args.calc_mode, args.tol, args.appendix_sign)
        record.update(res.to_dict())
    json.dump(record, sys.stdout, indent=1, allow_nan=True)
    sys.stdout.write("\n")
    return 0


def _output_paths(args, q_values: list[float]) -> list[Path]:
    if args.output:
        base = Path(args.output)
    else:
        base = Path(os.environ.get(OUTDIR_ENV, ".")) / f"{args.cycle}_sweep.{args.format}"
    if len(q_values) == 1:
        return [base]
    return [base.with_name(f"{base.stem}_q{q:g}{base.suffix}") for q in q_values]


def cmd_sweep(args) -> int:
    if not args.axis:
        raise UsageError("sweep needs --axis")
    axis1 = Axis.parse(args.axis)
    axis2 = Axis.parse(args.axis2) if args.axis2 else None
    swept = {axis1.name} | ({axis2.name} if axis2 else set())
    q_values = [None] if "q" in swept else (args.q or [])
    if not q_values:
        raise UsageError("sweep needs --q unless q is an axis")
    if "q" in swept and args.c_red is None:
        raise UsageError("sweeping q needs --c-red")

    paths = _output_paths(args, [q for q in q_values if q is not None] or [0.0])
    started = time.perf_counter()
    cells = failures = 0
    for q, path in zip(q_values, paths):
        fixed = {}
        if q is not None:
            fixed["q"] = q
            fixed["c_red"] = c_q(_spec(args, q))
        elif args.c_red is not None:
            fixed["c_red"] = args.c_red
        for name in ("th", "tc") + (("r",) if args.cycle == "otto" else ()):
            value = getattr(args, name)
            if value is not None and name not in swept:
                fixed[name] = value
        for name in swept:
            fixed.pop(name, None)
        grid = GridSpec(
            cycle=args.cycle,
            axis1=axis1,
            axis2=axis2,
            fixed=fixed,
            calc_mode=args.calc_mode,
            tol=args.tol,
            appendix_sign=args.appendix_sign,
        )
        result = run_map(grid, args.workers) if axis2 else run_series(grid, args.workers)
        export(result, args.format, path)
        cells += len(result)
        failures += result.failures
    elapsed = time.perf_counter() - started
    print(f"cells={cells} failures={failures} wall_time={elapsed:.3f}s files={','.join(map(str, paths))}")
    return 0


COMMANDS = {"spectrum": cmd_spectrum, "cycle": cmd_cycle, "sweep": cmd_sweep}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "config", None):
        try:
            defaults = read_config(args.config)
        except UsageError as exc:
            parser.error(str(exc))
        sweep_parser = parser.sweep_parser
        # keys may be spelled like the flag (mode, c-red) or like its dest
        flags = {}
        for action in sweep_parser._actions:
            flags[action.dest] = action
            for opt in action.option_strings:
                flags[opt.lstrip("-").replace("-", "_")] = action
        unknown = sorted(set(defaults) - set(flags) | ({"cycle", "config", "help", "h"} & set(defaults)))
        if unknown:
            parser.error(f"unknown config keys: {', '.join(unknown)}")
        resolved = {}
        for key, value in defaults.items():
            action = flags[key]
            if isinstance(action, argparse._StoreTrueAction):
                value = value.lower() in ("1", "true", "yes", "on")
            resolved[action.dest] = value
        sweep_parser.set_defaults(**resolved)
        args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ValueError) as exc:
        # DomainError, ModeError and bad enum values are all ValueErrors
        print(f"powerlaw-engines: error: {exc}", file=sys.stderr)
        return 2
    except ArithmeticError as exc:
        print(f"powerlaw-engines: numerical failure: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"powerlaw-engines: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
