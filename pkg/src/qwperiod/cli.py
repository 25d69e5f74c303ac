"""Command-line entry point: ``qwperiod <subcommand> ...``.

Block indices (k, l) are 1-based; vertices of C_N are 0-based.  Data goes to
stdout, diagnostics to stderr.  QWPERIOD_WORKERS sets the thread count for
``period --all``.
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys

from .exact import ExactScalar
from .measures import NotPeriodic, period_average, time_averaged_measure, tv_distance_to_uniform
from .parity import ObstructionFailed, periodicity_obstruction
from .period import (
    DEFAULT_MAX_STEPS,
    InconsistentVerdict,
    char_poly,
    classify_all,
    period_spectral,
    period_brute_force,
)
from .poly import format_poly, strip_cyclotomic_factors
from .pqrs import DEFAULT_WORD_CAP, decompose_block, enumerate_words, format_combo
from .reproduce import CHECK_IDS, run_checks
from .walk import WalkState, evolve, hadamard_walk, measure

EXIT_OK, EXIT_USAGE, EXIT_INCONSISTENT = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


_VALUE = re.compile(r"^\s*(?P<num>[^/]+?)\s*(?:/\s*sqrt2(?:\^(?P<k>\d+))?)?\s*$")


def parse_amplitude(text: str) -> ExactScalar:
    """'1', '-1j', '(1+1j)/sqrt2', '1/sqrt2^3' -> ExactScalar."""
    m = _VALUE.match(text)
    if not m:
        raise UsageError(f"cannot parse amplitude {text!r}")
    try:
        z = complex(m.group("num").replace(" ", ""))
    except ValueError as exc:
        raise UsageError(f"cannot parse amplitude {text!r}") from exc
    if z.real != int(z.real) or z.imag != int(z.imag):
        raise UsageError(f"amplitude numerator must be a Gaussian integer: {text!r}")
    k = 0
    if "sqrt2" in text:
        k = int(m.group("k") or 1)
    return ExactScalar(int(z.real), 0, int(z.imag), 0, k)


def parse_initial(text: str, N: int) -> WalkState:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError("--initial expects 'alpha,beta'")
    alpha, beta = (parse_amplitude(p) for p in parts)
    if (alpha.norm_sq() + beta.norm_sq()) != 1:
        raise UsageError("|alpha|^2 + |beta|^2 must equal 1")
    return WalkState.localized(N, alpha, beta)


def _need_n(n, minimum=2):
    if n is None or n < minimum:
        raise UsageError(f"--n must be an integer >= {minimum}")
    return n


def _dump(obj):
    print(json.dumps(obj, indent=2, sort_keys=False))


# ---------------------------------------------------------------------------


def cmd_period(args) -> int:
    if args.all:
        if args.max_n is None or args.max_n < 2:
            raise UsageError("--all needs --max-n >= 2")
        rows = classify_all(args.max_n, args.max_steps)
        if args.format == "json":
            _dump({"schema": 1, "results": [r.to_json() for r in rows]})
        else:
            finite = [r for r in rows if r.is_finite]
            for r in rows:
                T = str(r.period) if r.is_finite else "inf"
                print(f"N={r.N:<4d} T={T:<5s} {r.factorization.describe() if r.is_finite else 'non-cyclotomic factor present'}")
            print(f"# finite: {', '.join(f'N={r.N} (T={r.period})' for r in finite) or 'none'}")
        return EXIT_OK
    N = _need_n(args.n)
    res = period_spectral(N)
    if res.is_finite:
        bf = period_brute_force(N, max(args.max_steps, res.period))
        if bf.period != res.period:
            raise InconsistentVerdict(f"N={N}: spectral {res.summary()} vs brute force {bf.summary()}")
        res.checked.append("brute-force")
    if args.format == "json":
        _dump(res.to_json())
    else:
        print(res.summary())
    return EXIT_OK


def cmd_charpoly(args) -> int:
    N = _need_n(args.n)
    p = char_poly(N, args.method)
    fac = strip_cyclotomic_factors(p)
    if args.format == "json":
        _dump({"schema": 1, "N": N, "charpoly": p.to_json(), **fac.to_json()})
    else:
        print(format_poly(p))
        print(f"= {fac.describe()}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    N = _need_n(args.n)
    if args.steps < 0:
        raise UsageError("--steps must be >= 0")
    state = parse_initial(args.initial, N)
    final = evolve(hadamard_walk(N), state, args.steps)
    if args.format == "json":
        _dump({"schema": 1, **final.to_json()})
    else:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["vertex", "numerator", "exponent", "float"])
        for x, m in enumerate(measure(final)):
            w.writerow([x, m.numerator, m.exponent, repr(float(m))])
    return EXIT_OK


def cmd_parity(args) -> int:
    N = _need_n(args.n, 3)
    if N % 2 == 0:
        raise UsageError("parity obstruction applies to odd N")
    rep = periodicity_obstruction(N, steps=args.steps)
    _dump({"schema": 1, **rep.to_json()})
    return EXIT_OK


def cmd_pqrs(args) -> int:
    N = _need_n(args.n, 3)
    try:
        k, l = (int(v) for v in args.block.split(","))
    except ValueError as exc:
        raise UsageError("--block expects 'k,l'") from exc
    combo = decompose_block(N, args.steps, k, l)
    if args.steps <= args.word_cap:
        count = len(enumerate_words(N, args.steps, k, l, args.word_cap))
    else:
        from .parity import adjacency_power

        count = int(adjacency_power(N, args.steps)[k - 1, l - 1])
    if args.format == "json":
        _dump({
            "schema": 1, "N": N, "steps": args.steps, "block": [k, l],
            "coefficients": {s: c.to_json() for s, c in zip("PQRS", combo.coefficients())},
            "text": format_combo(combo), "words": count,
        })  # fmt: skip
    else:
        print(format_combo(combo))
        print(f"words: {count}")
    return EXIT_OK


def cmd_avg_measure(args) -> int:
    N = _need_n(args.n)
    state = parse_initial(args.initial, N)
    if args.period:
        try:
            m = period_average(N, state)
        except NotPeriodic as exc:
            raise UsageError(str(exc)) from exc
    else:
        if args.steps is None or args.steps < 1:
            raise UsageError("--steps must be >= 1")
        m = time_averaged_measure(N, state, args.steps)
    tv = tv_distance_to_uniform(m) if args.tv else None
    if args.format == "json":
        out = {"schema": 1, "N": N, "horizon": m.horizon, "values": [str(v) for v in m.values]}
        if tv is not None:
            out["tv"] = str(tv)
            out["tvFloat"] = float(tv)
        _dump(out)
    else:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["vertex", "exact", "float"])
        for row in m.to_csv_rows():
            w.writerow([row[0], row[1], repr(row[2])])
        if tv is not None:
            w.writerow(["tv", str(tv), repr(float(tv))])
    return EXIT_OK


def cmd_reproduce(args) -> int:
    if args.list:
        for cid in CHECK_IDS:
            print(cid)
        return EXIT_OK
    try:
        results = run_checks(args.check)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from exc
    failed = 0
    for check, ok, detail in results:
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'}  {check.id:<22s} {check.description}: {detail}")
    print(f"# {len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if not failed else EXIT_USAGE


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="qwperiod",
        description="Exact period analysis of the Hadamard walk on the cycle C_N. "
        "Block indices k,l are 1-based; vertices are 0-based.",
    )
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("period", help="period T_N (spectral verdict, cross-checked)")
    s.add_argument("--n", type=int)
    s.add_argument("--max-n", type=int)
    s.add_argument("--all", action="store_true", help="classify every N in 2..max-n")
    s.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS, help="brute-force cap (default 200)")
    s.add_argument("--format", choices=["text", "json"], default="text")
    s.set_defaults(func=cmd_period)

    s = sub.add_parser("charpoly", help="exact characteristic polynomial and cyclotomic factors")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--method", choices=["auto", "modular", "leverrier"], default="auto")
    s.add_argument("--format", choices=["text", "json"], default="text")
    s.set_defaults(func=cmd_charpoly)

    s = sub.add_parser("simulate", help="evolve a localized state exactly")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--steps", type=int, required=True)
    s.add_argument("--initial", default="1,0", help="alpha,beta e.g. '1/sqrt2,1j/sqrt2' (default 1,0)")
    s.add_argument("--format", choices=["json", "csv"], default="csv")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("parity", help="parity obstruction for odd N")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--steps", type=int, default=None, help="number of witnesses to list")
    s.set_defaults(func=cmd_parity)

    s = sub.add_parser("pqrs", help="block of U_N^n in the P,Q,R,S basis")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--steps", type=int, required=True)
    s.add_argument("--block", required=True, help="k,l (1-based)")
    s.add_argument("--word-cap", type=int, default=DEFAULT_WORD_CAP)
    s.add_argument("--format", choices=["text", "json"], default="text")
    s.set_defaults(func=cmd_pqrs)

    s = sub.add_parser("avg-measure", help="time-averaged measure")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--steps", type=int)
    s.add_argument("--period", action="store_true", help="average over one full period (N = 2, 4, 8)")
    s.add_argument("--initial", default="1,0")
    s.add_argument("--tv", action="store_true", help="append total variation distance to uniform")
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    s.set_defaults(func=cmd_avg_measure)

    s = sub.add_parser("reproduce-paper", help="run the golden checks")
    s.add_argument("--check", action="append", help="run only this check id (repeatable)")
    s.add_argument("--list", action="store_true", help="list check ids")
    s.set_defaults(func=cmd_reproduce)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"qwperiod: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InconsistentVerdict, ObstructionFailed) as exc:
        print(f"qwperiod: inconsistent verdict: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
