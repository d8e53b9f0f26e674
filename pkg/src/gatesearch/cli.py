"""Command-line front end.

Results go to stdout, diagnostics to stderr.  Exit status: 0 success,
1 a verification or bound check failed, 2 bad configuration or I/O error,
3 a simulation would exceed the wire budget.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import estimator as est
from .constructions import amplify_exact, boost_to_one, build_c1, build_recursive, hadamard_base
from .errors import CertificationError, ConfigurationError, DomainError, PreconditionError, ResourceError
from .export import algorithm_extension, write_circuit
from .oracle import from_hex, make_unique_database
from .schedule import build_schedule, schedule_from_sequence
from .simulator import DEFAULT_MAX_WIRES, GoodSet, good_probability, run

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_RESOURCE = 0, 1, 2, 3


class VerificationFailure(Exception):
    pass


def _p12(x) -> str:
    return format(float(x), ".12g")


def _n_seq(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


def _unmet_warning(unmet: list[str], relaxed: bool) -> None:
    if unmet:
        tag = "relaxed run" if relaxed else "bounds relying on these are not guaranteed"
        _warn(f"{tag}; unmet preconditions: {'; '.join(unmet)}")


def _note(args, msg: str) -> None:
    """Header line; kept off stdout in JSON mode so the output parses."""
    print(f"# {msg}", file=sys.stderr if args.format == "json" else sys.stdout)


def _emit_table(rows: list[dict], columns, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(rows, indent=1) + "\n")
        return
    sys.stdout.write("\t".join(columns) + "\n")
    for row in rows:
        sys.stdout.write("\t".join(str(row[c]) for c in columns) + "\n")


# ---------------------------------------------------------------------------
# schedule


def cmd_schedule(args) -> int:
    if args.n_seq:
        schedule = schedule_from_sequence(args.n_seq, args.k)
    else:
        _need(args, "n", "r")
        schedule = build_schedule(args.n, args.k, args.r)
    rows = [{"i": i, "n_i": n_i} for i, n_i in enumerate(schedule.n_seq, start=1)]
    checks = [{"check": name, "holds": "yes" if ok else "no"} for name, ok in schedule.preconditions.items()]
    if args.format == "json":
        # one document, so the output parses as a whole
        sys.stdout.write(json.dumps({"widths": rows, "checks": checks}, indent=1) + "\n")
        return EXIT_OK
    _emit_table(rows, ("i", "n_i"), args.format)
    _emit_table(checks, ("check", "holds"), args.format)
    return EXIT_OK


# ---------------------------------------------------------------------------
# estimate


def _emit_levels(levels, fmt: str) -> int:
    sys.stdout.write(est.report_json(levels) if fmt == "json" else est.report_tsv(levels))
    failed = [c for lv in levels for c in lv.failed()]
    for c in failed:
        print(f"bound failed: {c.name}: {c.lhs} vs {c.rhs}", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_estimate(args) -> int:
    if args.n_seq and (args.grover02 or args.main_eps or args.main_r):
        raise ConfigurationError("--n-seq applies to the plain recursion estimate only")
    if args.grover02:
        _need(args, "n")
        recipe = est.grover02_recipe(args.n, relaxed=args.relaxed)
        _note(args, f"k = log log N = {_p12(1 / float(recipe.k))}, m = {recipe.m}")
        return _emit_levels(est.estimate_grover02(args.n, relaxed=args.relaxed), args.format)
    if args.main_eps:
        _need(args, "n", "epsilon")
        return _estimate_main(args, epsilon=args.epsilon)
    if args.main_r:
        _need(args, "n", "r")
        return _estimate_main(args, r=args.r)
    if args.n_seq:
        if not args.relaxed:
            raise ConfigurationError("hand-written widths need --relaxed")
        schedule = schedule_from_sequence(args.n_seq, args.k)
        _unmet_warning(schedule.unmet(), True)
        return _emit_levels(est.estimate_schedule(schedule), args.format)
    _need(args, "n", "k", "r")
    return _emit_levels(est.estimate_recursive(args.n, args.k, args.r), args.format)


def _estimate_main(args, **mode) -> int:
    params = est.main_parameters(args.n, k=args.k, **mode)
    c_name = "c2" if params.mode == "fixed_eps" else "c1"
    c_text = "n/a (k given)" if params.c is None else f"{params.c} = {_p12(params.c)}"
    _note(args, f"mode = {params.mode}, r = {params.r}, k = {params.k}, {c_name} = {c_text}")
    if params.mode == "fixed_eps":
        for c in est.check_main(args.n, params.k, params.r, epsilon=args.epsilon):
            _note(args, f"{c.name}: {_p12(c.lhs)} <= {c.rhs}: {'holds' if c.holds else 'FAILS'}")
    unmet = [k for k, ok in params.preconditions.items() if not ok]
    if "k <= log log N" in unmet:
        raise ConfigurationError(f"k = {params.k} exceeds log log N; no schedule exists for n = {args.n}")
    _unmet_warning(unmet, args.relaxed)
    _, levels = est.estimate_main(args.n, k=args.k, **mode)
    return _emit_levels(levels, args.format)


# ---------------------------------------------------------------------------
# simulate / export


def _planned_wires(args) -> int:
    if args.c1 or args.amplify:
        return args.n + 1
    return args.n_seq[-1] + len(args.n_seq) + (1 if args.boost else 0)


def _build(args):
    """The algorithm selected by the flags, plus any unmet preconditions."""
    if args.c1:
        _need(args, "n", "k")
        alg = build_c1(args.n, args.k)
        return alg, []
    if args.amplify:
        _need(args, "n", "target")
        return amplify_exact(hadamard_base(args.n), args.target), []
    if args.pipeline:
        _need(args, "n_seq", "k")
        schedule, levels = build_recursive(None, args.k, n_seq=args.n_seq)
        alg = boost_to_one(levels[-1], args.k) if args.boost else levels[-1]
        return alg, schedule.unmet()
    raise ConfigurationError("choose one of --c1, --amplify, --pipeline")


def cmd_simulate(args) -> int:
    if args.pipeline:
        _need(args, "n_seq")
    else:
        _need(args, "n")
    wires = _planned_wires(args)
    if wires > args.max_sim_wires:
        raise ResourceError(f"{wires} wires exceed --max-sim-wires {args.max_sim_wires}; use the estimate command for counts")
    alg, unmet = _build(args)
    _unmet_warning(unmet, args.relaxed)
    if args.bits is not None:
        db = from_hex(args.bits)
        if db.n != alg.n:
            raise ConfigurationError(f"--bits gives {db.size} entries, the algorithm searches 2^{alg.n}")
    else:
        if args.solution is None:
            raise ConfigurationError("give --solution or --bits")
        db = make_unique_database(alg.n, args.solution)
    state = run(alg.circuit, db, max_wires=args.max_sim_wires)
    p = good_probability(state, GoodSet(alg.address_wires, alg.good_flags(), db))
    diff = abs(p - float(alg.a_known))
    print(f"a_known\t{_p12(alg.a_known)}")
    print(f"measured\t{_p12(p)}")
    print(f"difference\t{diff:.3e}")
    print(f"queries\t{alg.counts.queries}")
    print(f"gates\t{alg.counts.gates}")
    print(f"wires\t{alg.num_wires}")
    if diff > 1e-9:
        print(f"measured probability differs from a_known by {diff:.3e}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_export(args) -> int:
    alg, unmet = _build(args)
    _unmet_warning(unmet, args.relaxed)
    try:
        write_circuit(args.output, alg.circuit, algorithm_extension(alg))
    except OSError as exc:
        raise ConfigurationError(f"cannot write {args.output}: {exc.strerror or exc}") from exc
    print(f"wrote {len(alg.circuit.gates)} gates on {alg.num_wires} wires to {args.output}", file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    from .verify import run_suites

    only = [s.strip() for s in args.only.split(",")] if args.only else None
    results = run_suites(only, seed=args.seed, fault=args.inject_fault)
    print("suite\tcases\tfailures\tstatus")
    for r in results:
        print(f"{r.name}\t{r.cases}\t{len(r.failures)}\t{'pass' if r.passed else 'FAIL'}")
        for what in r.failures[:20]:
            print(f"  {r.name}: {what}", file=sys.stderr)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser


def _need(args, *names) -> None:
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise ConfigurationError("missing " + ", ".join("--" + m.replace("_", "-") for m in missing))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gatesearch", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, k_default=None):
        p.add_argument("--n", type=int, help="log N, the address width")
        p.add_argument("--k", type=int, default=k_default)
        p.add_argument("--r", type=int)
        p.add_argument("--n-seq", type=_n_seq, help="explicit widths n_1,...,n_r (relaxed)")
        p.add_argument("--relaxed", action="store_true", help="accept unmet count preconditions")
        p.add_argument("--format", choices=("tsv", "json"), default="tsv")

    p = sub.add_parser("schedule", help="recursion widths and their checks")
    common(p, k_default=4)
    p.set_defaults(func=cmd_schedule)

    p = sub.add_parser("estimate", help="exact counts and bound checks, no simulation")
    common(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--grover02", action="store_true", help="log log N recipe")
    mode.add_argument("--main-eps", action="store_true", help="main result, fixed epsilon")
    mode.add_argument("--main-r", action="store_true", help="main result, fixed r")
    p.add_argument("--epsilon", type=_fraction)
    p.set_defaults(func=cmd_estimate)

    for name, func, text in (("simulate", cmd_simulate, "build and simulate"), ("export", cmd_export, "write a circuit file")):
        p = sub.add_parser(name, help=text)
        common(p)
        what = p.add_mutually_exclusive_group()
        what.add_argument("--c1", action="store_true", help="amplify H^n to 1/k")
        what.add_argument("--amplify", action="store_true", help="amplify H^n to --target")
        what.add_argument("--pipeline", action="store_true", help="recursion over --n-seq")
        p.add_argument("--boost", action="store_true", help="finish the pipeline at probability 1")
        p.add_argument("--target", type=_fraction)
        if name == "simulate":
            p.add_argument("--solution", type=int)
            p.add_argument("--bits", help="database as a hex string")
            p.add_argument("--max-sim-wires", type=int, default=DEFAULT_MAX_WIRES)
        else:
            p.add_argument("--output", required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="run the invariant suites")
    p.add_argument("--only", help="comma-separated suite names")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--inject-fault", action="store_true", help="shift a count by one to test the harness")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ConfigurationError, DomainError, PreconditionError, CertificationError, ValueError, IndexError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
