"""Command-line front door.

Angles are radians; times are in units of 1/J of the input file's coupling
entries (everything is dimensionless internally).  Exit codes: 0 success,
2 parse error, 3 domain error, 4 verification failure.

Commands::

    gatebound bound  GRAPH TARGET --epsilon EPS [--exact-depths] [-o OUT]
    gatebound depth  GRAPH (PAULI | --table) [-o OUT]
    gatebound synth  GRAPH TARGET --epsilon EPS -o SCHEDULE
    gatebound verify GRAPH TARGET --epsilon EPS [--schedule FILE]
    gatebound grape  GRAPH TARGET --time T [--slices N] [--restarts R]
                     [--seed S] [--tol TOL] [--max-iters I] [-o PULSES.csv]
    gatebound scan   GRAPH TARGET --times T1,T2,... [grape flags] [-o OUT.csv]
    gatebound compare --case {3spin-ising,4spin-heisenberg} [grape flags]

GRAPH and TARGET are JSON files (see network and generator formats in the
package documentation).  With ``--ci``, every randomized command requires
an explicit ``--seed``.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import bounds as bnd
from . import grape
from . import network as netmod
from . import synthesis as synth
from . import simulator as sim
from .depth import depth, max_depth_table
from .errors import DomainError, ParseError
from .pauli import parse_pauli

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_VERIFY = 4


def _write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")


def _load_inputs(args):
    net = netmod.load_network(args.graph)
    spec = bnd.load_spec(args.target)
    return net, spec


def cmd_bound(args) -> int:
    net, spec = _load_inputs(args)
    report = bnd.bound_report(spec, net, args.epsilon,
                              use_exact_depths=args.exact_depths)
    _write_output(json.dumps(report.to_dict(), indent=1), args.output)
    return EXIT_OK


def cmd_depth(args) -> int:
    net = netmod.load_network(args.graph)
    if args.table:
        table = max_depth_table(net)
        payload = {
            "n": table.n,
            "max_depth": table.max_depth,
            "per_weight": {str(w): d for w, d in sorted(table.per_weight.items())},
        }
        _write_output(json.dumps(payload, indent=1), args.output)
        return EXIT_OK
    if args.pauli is None:
        raise DomainError("give a Pauli word or --table")
    word = parse_pauli(args.pauli)
    if word.weight == 1:
        payload = {"pauli": args.pauli, "local": True, "depth": 0,
                   "time_contribution": 0.0}
        _write_output(json.dumps(payload, indent=1), args.output)
        return EXIT_OK
    result = depth(net, word)
    payload = {
        "pauli": args.pauli,
        "local": False,
        "depth": result.depth,
        "exact": result.exact,
        "start_edge": list(result.start_edge),
        "witness": [
            {"kind": s.kind, "edge": list(s.edge), "vertex": s.vertex}
            for s in result.witness
        ],
    }
    _write_output(json.dumps(payload, indent=1), args.output)
    return EXIT_OK


def cmd_synth(args) -> int:
    net, spec = _load_inputs(args)
    schedule, m = synth.synth_generator(net, spec, args.epsilon)
    text = json.dumps(synth.schedule_to_dict(schedule), indent=1)
    _write_output(text, args.output)
    sys.stderr.write(f"trotter steps m = {m}, "
                     f"total duration = {schedule.total_duration:.6g}\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    net, spec = _load_inputs(args)
    if args.schedule is not None:
        schedule = synth.load_schedule(args.schedule)
        m = max(1, bnd.min_trotter_steps(spec, args.epsilon))
    else:
        schedule, m = synth.synth_generator(net, spec, args.epsilon)
    bound = bnd.run_time_bound(spec, net, args.epsilon, use_exact_depths=True)
    U_target = sim.target_unitary(spec)
    U = sim.unitary_of_schedule(net, schedule)
    err = sim.normalized_error(U_target, U)
    infid = sim.gate_infidelity(U_target, U)
    slack = 1e-9 * max(1.0, bound)
    if spec.l == 1:
        ok = infid < 1e-9 and schedule.total_duration <= bound + slack
    else:
        ok = err <= args.epsilon + 1e-9 and schedule.total_duration <= bound + slack
    payload = {
        "total_duration": schedule.total_duration,
        "bound": bound,
        "trotter_steps": m,
        "normalized_error": err,
        "gate_infidelity": infid,
        "pass": ok,
    }
    _write_output(json.dumps(payload, indent=1), args.output)
    return EXIT_OK if ok else EXIT_VERIFY


def _require_seed(args) -> None:
    if args.ci and args.seed is None:
        raise DomainError("--ci requires an explicit --seed")


def _grape_kwargs(args) -> dict:
    return {
        "N": args.slices,
        "restarts": args.restarts,
        "tol": args.tol,
        "max_iters": args.max_iters,
        "seed": args.seed if args.seed is not None else 0,
    }


def cmd_grape(args) -> int:
    _require_seed(args)
    net, spec = _load_inputs(args)
    U_target = sim.target_unitary(spec)
    pulses = grape.optimize(net, U_target, args.time, **_grape_kwargs(args))
    import io

    buf = io.StringIO()
    grape.write_pulse_csv(pulses, buf)
    _write_output(buf.getvalue(), args.output)
    sys.stderr.write(
        f"T = {pulses.T}, infidelity = {pulses.achieved_infidelity:.3e}, "
        f"iterations = {pulses.iterations}, restart = {pulses.restart_index}\n"
    )
    return EXIT_OK


def cmd_scan(args) -> int:
    _require_seed(args)
    net, spec = _load_inputs(args)
    U_target = sim.target_unitary(spec)
    try:
        times = [float(t) for t in args.times.split(",") if t.strip()]
    except ValueError:
        raise ParseError(f"cannot parse time list {args.times!r}") from None
    rows = grape.time_scan(net, U_target, times, **_grape_kwargs(args))
    import io

    buf = io.StringIO()
    grape.write_scan_csv(rows, buf)
    _write_output(buf.getvalue(), args.output)
    return EXIT_OK


_COMPARE_CASES = {
    # case: (preset, n, grape time from the benchmark study)
    "3spin-ising": ("ising_chain", 3, 0.9),
    "4spin-heisenberg": ("heisenberg_chain", 4, 2.0),
}


def cmd_compare(args) -> int:
    """Benchmark row: exact minimum time (when known), closed-form bound,
    and the time at which pulse optimization reaches the target."""
    _require_seed(args)
    preset, n, T_grape = _COMPARE_CASES[args.case]
    J = args.coupling
    net = getattr(netmod, preset)(n, J)
    spec = bnd.GeneratorSpec(((-math.pi / 4, parse_pauli("Z" * n)),))
    U_target = sim.target_unitary(spec)
    pulses = grape.optimize(net, U_target, T_grape, **_grape_kwargs(args))
    T_exact = bnd.exact_three_spin(1.0, J) if n == 3 else float("nan")
    T_bound = bnd.nbody_chain_bound(n, 1.0, math.pi / 2 * J)
    ok = pulses.achieved_infidelity < args.tol
    lines = ["case,T_exact,T_bound,T_grape,grape_infidelity,converged"]
    lines.append(
        f"{args.case},{T_exact:.12g},{T_bound:.12g},{T_grape:.12g},"
        f"{pulses.achieved_infidelity:.12g},{str(ok).lower()}"
    )
    _write_output("\n".join(lines), args.output)
    if args.pulses is not None:
        with open(args.pulses, "w") as fh:
            grape.write_pulse_csv(pulses, fh)
    return EXIT_OK


def _add_grape_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--slices", type=int, default=grape.DEFAULT_SLICES,
                   help="piecewise-constant slices (default 64)")
    p.add_argument("--restarts", type=int, default=grape.DEFAULT_RESTARTS,
                   help="random restarts (default 10)")
    p.add_argument("--tol", type=float, default=grape.DEFAULT_TOL,
                   help="stop once infidelity drops below this (default 1e-3)")
    p.add_argument("--max-iters", type=int, default=grape.DEFAULT_MAX_ITERS,
                   help="objective evaluations per restart (default 500)")
    p.add_argument("--seed", type=int, default=None, help="RNG seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gatebound",
        description="Gate-time bounds, control schedules, and pulse "
                    "optimization for locally controlled qubit networks. "
                    "Angles in radians; times in 1/J units of the input file.",
    )
    parser.add_argument("--ci", action="store_true",
                        help="require explicit seeds on randomized commands")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="evaluate all gate-time bounds")
    p.add_argument("graph")
    p.add_argument("target")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--exact-depths", action="store_true")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("depth", help="commutator depth of a word or table")
    p.add_argument("graph")
    p.add_argument("pauli", nargs="?", default=None)
    p.add_argument("--table", action="store_true")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_depth)

    p = sub.add_parser("synth", help="emit a control schedule")
    p.add_argument("graph")
    p.add_argument("target")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("verify", help="re-simulate a schedule against bounds")
    p.add_argument("graph")
    p.add_argument("target")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--schedule", default=None,
                   help="schedule JSON (default: synthesize fresh)")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("grape", help="optimize pulses for a target generator")
    p.add_argument("graph")
    p.add_argument("target")
    p.add_argument("--time", type=float, required=True)
    _add_grape_flags(p)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_grape)

    p = sub.add_parser("scan", help="optimize over a list of durations")
    p.add_argument("graph")
    p.add_argument("target")
    p.add_argument("--times", required=True, help="comma-separated durations")
    _add_grape_flags(p)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser(
        "compare",
        help="exact-vs-bound-vs-optimized benchmark on chain presets",
    )
    p.add_argument("--case", choices=sorted(_COMPARE_CASES), required=True)
    p.add_argument("--coupling", type=float, default=1.0,
                   help="chain coupling J (default 1)")
    _add_grape_flags(p)
    p.add_argument("--pulses", default=None,
                   help="also write the winning pulse CSV here")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except FileNotFoundError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except DomainError as exc:
        sys.stderr.write(f"domain error: {exc}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
