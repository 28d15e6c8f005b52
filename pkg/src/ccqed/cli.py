"""
Command-line entry point ``ccqed``.

    ccqed point      --delta D --hop A
    ccqed sweep      --delta-range=START:STOP --steps N --hop A
    ccqed phase      --delta-range=START:STOP --steps N --hop-range=START:STOP --hop-steps M
    ccqed self-check --delta D --hop A

``--delta`` and ``--hop`` are ratios to ``g``. ``--omega-c`` only shifts
energies. Any subcommand accepts ``--config FILE`` holding ``key = value``
lines named after the long flags; flags given on the command line win.

Exit codes: 0 success, 1 usage or I/O error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import __version__
from .emit import EmitError, emit
from .fullspace import self_check
from .model import ModelParams
from .sweep import (Axis, SweepSpec, failed_count, large_hop_spec, phase_diagram,
                    phase_map_spec, run_sweep, small_hop_spec)

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL = 0, 1, 2
BOOL_FLAGS = {"emit_gnuplot", "plot", "log_hop", "verbose"}
PRESETS = {"small-hop": small_hop_spec, "large-hop": large_hop_spec, "phase-map": phase_map_spec}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_range(text: str) -> tuple[float, float]:
    try:
        start, stop = (float(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected START:STOP, got {text!r}") from None
    return start, stop


def read_config(path) -> dict[str, str]:
    """Flat ``key = value`` file; ``#`` starts a comment."""
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror or exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.lstrip("-").replace("-", "_")] = value
    return out


def _to_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise UsageError(f"not a boolean: {text!r}")


def _common(p):
    p.add_argument("--config", metavar="FILE", help="key = value file mirroring the flags")
    p.add_argument("--g", type=float, default=1.0, help="atom-cavity coupling (default 1)")
    p.add_argument("--omega-c", type=float, default=0.0,
                   help="cavity frequency; a pure energy offset (default 0)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", metavar="PATH", help="output file (default stdout)")
    p.add_argument("-v", "--verbose", action="store_true")


def _grid_flags(p, phase: bool):
    p.add_argument("--preset", choices=("phase-map",) if phase else ("small-hop", "large-hop"),
                   help="named default grid")
    p.add_argument("--delta-range", type=parse_range, metavar="START:STOP")
    p.add_argument("--steps", type=int, help="delta grid points")
    if phase:
        p.add_argument("--hop-range", type=parse_range, metavar="START:STOP")
        p.add_argument("--hop-steps", type=int, help="hop grid points")
        p.add_argument("--log-hop", action="store_true", help="log-spaced hop axis")
    else:
        p.add_argument("--hop", type=float, help="fixed hopping A/g")
        p.add_argument("--hop-range", type=parse_range, metavar="START:STOP")
        p.add_argument("--hop-steps", type=int, default=2)
        p.add_argument("--log-hop", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--emit-gnuplot", action="store_true",
                   help="write a gnuplot script next to the CSV")
    p.add_argument("--plot", action="store_true", help="render a PNG figure next to the output")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ccqed", description="Two-site coupled-cavity ground-state entanglement.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("point", help="entropies and order parameters at one point")
    _common(p)
    p.add_argument("--delta", type=float, default=0.0, help="detuning delta/g")
    p.add_argument("--hop", type=float, default=0.01, help="hopping A/g")

    p = sub.add_parser("sweep", help="entropies along a delta/g sweep")
    _common(p)
    _grid_flags(p, phase=False)

    p = sub.add_parser("phase", help="order-parameter grid and half-maximum boundaries")
    _common(p)
    _grid_flags(p, phase=True)

    p = sub.add_parser("self-check", help="compare the sector path with the full-space oracle")
    _common(p)
    p.add_argument("--delta", type=float, action="append", help="detuning delta/g (repeatable)")
    p.add_argument("--hop", type=float, action="append", help="hopping A/g (repeatable)")
    return parser


def _apply_config(parser, argv):
    """Re-parse with config-file values installed as subparser defaults."""
    args = parser.parse_args(argv)
    if not args.config:
        return args
    values = read_config(args.config)
    sub = parser._subparsers._group_actions[0].choices[args.command]
    actions = {a.dest: a for a in sub._actions}
    defaults = {}
    for key, value in values.items():
        if key not in actions or key == "config":
            raise UsageError(f"unknown config key {key!r} for '{args.command}'")
        action = actions[key]
        if key in BOOL_FLAGS:
            defaults[key] = _to_bool(value)
        elif isinstance(action, argparse._AppendAction):
            defaults[key] = [action.type(v) for v in value.split(",")]
        elif action.type is not None:
            try:
                defaults[key] = action.type(value)
            except (ValueError, argparse.ArgumentTypeError) as exc:
                raise UsageError(f"config key {key!r}: {exc}") from exc
        else:
            defaults[key] = value
        if action.choices is not None and defaults[key] not in action.choices:
            raise UsageError(f"config key {key!r}: {value!r} not in {sorted(action.choices)}")
    sub.set_defaults(**defaults)
    return parser.parse_args(argv)


def _axis(rng, steps, log=False, name="delta"):
    if rng is None or steps is None:
        raise UsageError(f"--{name}-range needs a matching steps count")
    try:
        return Axis(rng[0], rng[1], steps, log=log)
    except ValueError as exc:
        raise UsageError(f"--{name}-range: {exc}") from exc


def sweep_spec(args) -> SweepSpec:
    if args.preset:
        base = PRESETS[args.preset]()
    elif args.command == "phase":
        base = phase_map_spec()
    else:
        base = small_hop_spec()
    delta = base.delta
    if args.delta_range is not None or args.steps is not None:
        delta = _axis(args.delta_range or (delta.start, delta.stop),
                      args.steps or delta.steps)
    hop = base.hop
    if args.hop_range is not None:
        hop = _axis(args.hop_range, args.hop_steps, log=args.log_hop, name="hop")
    elif args.command == "phase" and args.hop_steps is not None:
        hop = _axis((hop.start, hop.stop), args.hop_steps, log=hop.log, name="hop")
    if args.command == "sweep" and args.hop is not None:
        if args.hop_range is not None:
            raise UsageError("give either --hop or --hop-range, not both")
        hop = args.hop
    try:
        return SweepSpec(delta, hop, g=args.g, omega_c=args.omega_c)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _spec_params(spec: SweepSpec) -> dict:
    def axis(a):
        if isinstance(a, Axis):
            return {"start": a.start, "stop": a.stop, "steps": a.steps, "log": a.log}
        return float(a)

    return {"g": spec.g, "omega_c": spec.omega_c, "delta_over_g": axis(spec.delta),
            "hop_over_g": axis(spec.hop)}


def _side_files_need_out(args):
    if (getattr(args, "emit_gnuplot", False) or getattr(args, "plot", False)) and not args.out:
        raise UsageError("--emit-gnuplot and --plot need --out PATH")


def cmd_point(args) -> int:
    from .sweep import evaluate_point

    try:
        ModelParams.scaled(args.delta, args.hop, g=args.g, omega_c=args.omega_c)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    row = evaluate_point(args.delta, args.hop, g=args.g, omega_c=args.omega_c)
    params = {"g": args.g, "omega_c": args.omega_c, "delta_over_g": args.delta,
              "hop_over_g": args.hop}
    emit([row], args.format, args.out, params=params)
    return EXIT_NUMERICAL if failed_count([row]) else EXIT_OK


def cmd_sweep(args) -> int:
    _side_files_need_out(args)
    spec = sweep_spec(args)
    rows = run_sweep(spec, workers=args.workers)
    emit(rows, args.format, args.out, params=_spec_params(spec),
         gnuplot=args.emit_gnuplot, plot=args.plot)
    return _report_failures(rows)


def cmd_phase(args) -> int:
    _side_files_need_out(args)
    spec = sweep_spec(args)
    diagram = phase_diagram(spec, workers=args.workers)
    emit(diagram, args.format, args.out, params=_spec_params(spec),
         gnuplot=args.emit_gnuplot, plot=args.plot)
    return _report_failures(diagram.rows)


def _report_failures(rows) -> int:
    n = failed_count(rows)
    if n:
        print(f"ccqed: {n} of {len(rows)} points failed", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


SELF_CHECK_POINTS = ((-50.0, 0.01), (0.0, 0.01), (50.0, 0.01), (-10.0, 10.0), (3.0, 2.0))


def cmd_self_check(args) -> int:
    if args.delta or args.hop:
        deltas = args.delta or [0.0]
        hops = args.hop or [0.01]
        points = [(d, a) for a in hops for d in deltas]
    else:
        points = SELF_CHECK_POINTS
    ok = True
    lines = [f"{'delta/g':>9} {'A/g':>8}  {'result':6}  {'value':>10}  {'tol':>8}  check"]
    for d, a in points:
        try:
            params = ModelParams.scaled(d, a, g=args.g, omega_c=args.omega_c)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        for c in self_check(params):
            ok &= c.passed
            lines.append(f"{d:9.4g} {a:8.4g}  {'PASS' if c.passed else 'FAIL':6}  "
                         f"{c.value:10.3e}  {c.tolerance:8.1e}  {c.name}")
    text = "\n".join(lines) + "\n"
    if args.out:
        emit_path = Path(args.out)
        try:
            emit_path.write_text(text)
        except OSError as exc:
            raise EmitError(f"cannot write {emit_path}: {exc.strerror or exc}") from exc
    sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_NUMERICAL


COMMANDS = {"point": cmd_point, "sweep": cmd_sweep, "phase": cmd_phase,
            "self-check": cmd_self_check}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = _apply_config(parser, argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"ccqed: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EmitError, ValueError) as exc:
        print(f"ccqed: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
