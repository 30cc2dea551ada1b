"""Command-line interface: ``tutte-ss compute | evaluate | special | verify | bench``.

Exit codes: 0 success, 1 usage error, 2 verification failure, 3 resource cap.
Results go to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import hashlib
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, List, Optional, Tuple

from . import evaluations as ev
from . import oracle, recursion
from .errors import LevelOutOfRange, ResourceCap, TutteError
from .exactmath import _dumps, int_str, rational_from_string, rational_str
from .graphs import build_contracted, build_hanoi, build_sierpinski, edge_count

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_CAP = 0, 1, 2, 3

# levels beyond these are clamped inside ``verify``
ORACLE_LEVEL_CAP = 2
MATRIX_TREE_LEVEL_CAP = 4
SYMBOLIC_VERIFY_CAP = 3
POINT_VERIFY_CAP = 8


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _emit(obj) -> None:
    sys.stdout.write(_dumps(obj) + "\n")


def _parse_point(s: str) -> Tuple[object, object]:
    parts = s.split(",")
    if len(parts) != 2:
        raise UsageError(f"--point expects 'x,y', got {s!r}")
    try:
        return rational_from_string(parts[0].strip()), rational_from_string(parts[1].strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad rational in --point: {exc}") from None


# ---------------------------------------------------------------------------
# compute
# ---------------------------------------------------------------------------


def cmd_compute(args) -> int:
    fam, n = args.family, args.level
    if fam == "contracted":
        if args.mode != "symbolic":
            raise UsageError("the contracted family only supports --mode symbolic")
        _emit(recursion.contracted_tutte(n).to_json_obj())
        return EXIT_OK
    if args.mode == "symbolic":
        total = recursion.tutte_polynomial(fam, n)
        if args.loops:
            if fam != "hanoi":
                raise UsageError("--loops only applies to the hanoi family")
            total = recursion.with_loops(total)
        _emit(total.to_json_obj())
    elif args.mode == "reduced":
        _emit(recursion._reduced_chain(fam, n).to_json_obj())
    else:
        tr = recursion.triple(fam, n)
        _emit({
            "family": fam,
            "level": n,
            "t2": tr.t2.to_json_obj(),
            "t1": tr.t1.to_json_obj(),
            "t0": tr.t0.to_json_obj(),
        })
    return EXIT_OK


# ---------------------------------------------------------------------------
# evaluate
# ---------------------------------------------------------------------------

_WHAT = {
    "complexity": ev.complexity,
    "connected": ev.connected_spanning_subgraphs,
    "forests": ev.spanning_forests,
    "acyclic": ev.acyclic_orientations,
}


def cmd_evaluate(args) -> int:
    fam, n = args.family, args.level
    if args.point is not None:
        x0, y0 = _parse_point(args.point)
        value = recursion.eval_total_at_point(fam, n, x0, y0)
        _emit({"family": fam, "level": n, "point": [rational_str(x0), rational_str(y0)], "value": rational_str(value)})
        return EXIT_OK
    what = args.what or "all"
    if what == "all":
        rep = ev.evaluation_report(fam, n)
        if args.format == "csv":
            sys.stdout.write(rep.to_csv())
        else:
            _emit(rep.to_json_obj())
        return EXIT_OK
    _emit({"family": fam, "level": n, "quantity": what, "value": int_str(_WHAT[what](fam, n))})
    return EXIT_OK


# ---------------------------------------------------------------------------
# special
# ---------------------------------------------------------------------------


def cmd_special(args) -> int:
    fam, kind = args.family, args.kind
    if kind == "growth":
        series = ev.growth_constant_series(fam, args.max_level or args.level or 10)
        if args.format == "json":
            _emit({
                "family": fam,
                "limit": str(series.limit),
                "entries": [[lvl, str(val)] for lvl, val in series.entries],
            })
        else:
            sys.stdout.write(series.to_csv())
        return EXIT_OK
    n = args.level
    if n is None:
        raise UsageError("--level is required for this kind")
    if kind == "chromatic":
        p = ev.chromatic_polynomial(fam, n)
        _emit({"family": fam, "level": n, "chromatic": p.to_json_obj(), "text": str(p)})
    elif kind == "reliability":
        p = ev.reliability_polynomial(fam, n)
        _emit({"family": fam, "level": n, "reliability": p.to_json_obj(), "text": str(p)})
    elif kind == "ising":
        if args.t is not None:
            try:
                t = rational_from_string(args.t)
            except (ValueError, ZeroDivisionError) as exc:
                raise UsageError(f"bad --t: {exc}") from None
            _emit({"family": fam, "level": n, "t": rational_str(t), "Z": rational_str(ev.ising_partition_at(fam, n, t))})
        else:
            z = ev.ising_partition(fam, n)
            _emit({"family": fam, "level": n, "Z": z.to_json_obj(laurent=True), "text": str(z)})
    elif kind == "hyperbola":
        a, b = ev.hyperbola_ab(fam, n)
        _emit({"family": fam, "level": n, "A": a.to_json_obj(), "B": b.to_json_obj()})
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

Check = Tuple[str, Callable[[], bool]]


def _builder(fam):
    return build_sierpinski if fam == "sierpinski" else build_hanoi


def verification_checks(max_level: int, seed: int) -> List[Check]:
    """Every check the ``verify`` command runs, clamped to what the caps allow."""
    rng = random.Random(seed)
    checks: List[Check] = []
    fams = recursion.FAMILIES

    def add(name, fn):
        checks.append((name, fn))

    for fam in fams:
        for n in range(1, min(max_level, ORACLE_LEVEL_CAP) + 1):
            def oracle_eq(fam=fam, n=n):
                g, _ = _builder(fam)(n)
                t = recursion.tutte_polynomial(fam, n)
                return t == oracle.tutte_subset_expansion(g) == oracle.tutte_deletion_contraction(g)
            add(f"oracle-tutte {fam} n={n}", oracle_eq)

            def report_ok(fam=fam, n=n):
                return ev.evaluation_report(fam, n, use_oracle=True).consistent()
            add(f"report-consistency {fam} n={n}", report_ok)
    if max_level >= 2:
        add("oracle-tutte contracted n=2",
            lambda: recursion.contracted_tutte(2) == oracle.tutte_subset_expansion(build_contracted(2)[0]))

    for fam in fams:
        for n in range(1, min(max_level, SYMBOLIC_VERIFY_CAP) + 1):
            def full_vs_reduced(fam=fam, n=n):
                full = recursion.full_table_triple(fam, n)
                red = recursion.triple(fam, n)
                full.reduced()  # raises if (x-1) or (x-1)^2 fails to divide
                return full == red
            add(f"full-vs-reduced {fam} n={n}", full_vs_reduced)

        for n in range(1, min(max_level, MATRIX_TREE_LEVEL_CAP) + 1):
            def matrix_tree(fam=fam, n=n):
                return ev.complexity(fam, n) == oracle.spanning_tree_count(_builder(fam)(n)[0])
            add(f"matrix-tree {fam} n={n}", matrix_tree)
        for n in range(2, min(max_level, MATRIX_TREE_LEVEL_CAP) + 1):
            add(f"matrix-tree contracted n={n}",
                lambda n=n: recursion.contracted_tutte_at_point(n, 1, 1)
                == oracle.spanning_tree_count(build_contracted(n)[0]))

        for n in range(1, min(max_level, POINT_VERIFY_CAP) + 1):
            def closed(fam=fam, n=n):
                pt = recursion.eval_triple_at_point(fam, n, 1, 1)
                return (pt.total() == ev.closed_form_complexity(fam, n)
                        and (pt.n, pt.m) == ev.closed_form_reduced_at_one(fam, n))
            add(f"closed-forms {fam} n={n}", closed)
            add(f"two-to-the-edges {fam} n={n}",
                lambda fam=fam, n=n: ev.total_subgraphs(fam, n) == 1 << edge_count(fam, n))
            add(f"acyclic-aggregate {fam} n={n}",
                lambda fam=fam, n=n: ev.acyclic_orientations(fam, n) >= 0)

    for n in range(1, min(max_level, POINT_VERIFY_CAP) + 1):
        add(f"three-colouring sierpinski n={n}", lambda n=n: ev.unique_three_colorability_check(n))

    for n in range(1, min(max_level - 1, SYMBOLIC_VERIFY_CAP - 1) + 1):
        add(f"join-identity n={n}", lambda n=n: recursion.join_identity_residual(n).is_zero())
    for n in range(1, min(max_level - 1, POINT_VERIFY_CAP - 1) + 1):
        pts = [(Fraction(rng.randint(-9, 9), rng.randint(1, 9)), Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
               for _ in range(5)]
        add(f"join-identity-points n={n}",
            lambda n=n, pts=pts: all(recursion.join_identity_residual_at(n, x, y) == 0 for x, y in pts))

    for fam in fams:
        if max_level >= 2:
            add(f"hyperbola {fam} n<={min(max_level, SYMBOLIC_VERIFY_CAP)}",
                lambda fam=fam: all(a.is_zero() and b.is_zero()
                                    for _, a, b in ev.hyperbola_residuals(fam, min(max_level, SYMBOLIC_VERIFY_CAP))))
        for n in range(1, min(max_level, SYMBOLIC_VERIFY_CAP) + 1):
            add(f"chromatic-paths {fam} n={n}",
                lambda fam=fam, n=n: ev.chromatic_polynomial(fam, n) == ev.chromatic_polynomial(fam, n, "recursion"))
    return checks


def _run_check(fn) -> Tuple[bool, str]:
    try:
        return bool(fn()), ""
    except ResourceCap:
        raise
    except Exception as exc:  # a crashing check is a failing check
        return False, f"{type(exc).__name__}: {exc}"


def cmd_verify(args) -> int:
    checks = verification_checks(args.max_level, args.seed)
    with ThreadPoolExecutor(max_workers=max(1, args.threads)) as pool:
        results = list(pool.map(lambda c: _run_check(c[1]), checks))
    failed = 0
    for (name, _), (ok, why) in zip(checks, results):
        line = f"{'PASS' if ok else 'FAIL'} {name}"
        if why:
            line += f" ({why})"
        print(line)
        failed += not ok
    print(f"summary: {len(checks) - failed} passed, {failed} failed")
    return EXIT_OK if failed == 0 else EXIT_VERIFY


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------


def _digest(v) -> str:
    return hashlib.sha256(v.encode()).hexdigest()[:16]


def cmd_bench(args) -> int:
    fam = args.family
    out = sys.stdout
    if args.mode == "point":
        x0, y0 = _parse_point(args.point)
        out.write("family,mode,level,seconds,bits,digest\n")
        for n in range(1, args.max_level + 1):
            t = time.perf_counter()
            v = recursion.eval_total_at_point(fam, n, x0, y0)
            dt = time.perf_counter() - t
            bits = int(v.numerator).bit_length()
            out.write(f"{fam},point,{n},{dt:.6f},{bits},{_digest(rational_str(v))}\n")
    else:
        recursion.clear_cache()
        out.write("family,mode,level,seconds,terms,digest\n")
        for n in range(1, args.max_level + 1):
            t = time.perf_counter()
            p = recursion.tutte_polynomial(fam, n)
            dt = time.perf_counter() - t
            out.write(f"{fam},symbolic,{n},{dt:.6f},{len(p)},{_digest(p.to_json())}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _positive(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tutte-ss", description="Tutte polynomials of Sierpinski and Hanoi Schreier graphs.")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    p.add_argument("--threads", type=_positive, default=1, help="worker threads (default 1)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compute", help="symbolic polynomial or corner triple as JSON")
    c.add_argument("--family", choices=("sierpinski", "hanoi", "contracted"), required=True)
    c.add_argument("--level", type=_positive, required=True)
    c.add_argument("--mode", choices=("symbolic", "triple", "reduced"), default="symbolic")
    c.add_argument("--loops", action="store_true", help="hanoi: include the three outer loops")
    c.set_defaults(func=cmd_compute)

    e = sub.add_parser("evaluate", help="counting specializations or a point value")
    e.add_argument("--family", choices=recursion.FAMILIES, required=True)
    e.add_argument("--level", type=_positive, required=True)
    g = e.add_mutually_exclusive_group()
    g.add_argument("--what", choices=("complexity", "connected", "forests", "acyclic", "all"))
    g.add_argument("--point", help="rational point 'x,y', e.g. 2,2 or 1/2,3")
    e.add_argument("--format", choices=("json", "csv"), default="json")
    e.set_defaults(func=cmd_evaluate)

    s = sub.add_parser("special", help="chromatic, reliability, Ising, hyperbola or growth")
    s.add_argument("--kind", choices=("chromatic", "reliability", "ising", "hyperbola", "growth"), required=True)
    s.add_argument("--family", choices=recursion.FAMILIES, required=True)
    s.add_argument("--level", type=_positive)
    s.add_argument("--max-level", type=_positive)
    s.add_argument("--t", help="rational t for the Ising value")
    s.add_argument("--format", choices=("json", "csv"), default="csv")
    s.set_defaults(func=cmd_special)

    v = sub.add_parser("verify", help="run the recursion-versus-oracle suite")
    v.add_argument("--max-level", type=_positive, default=3)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="timing CSV")
    b.add_argument("--family", choices=recursion.FAMILIES, required=True)
    b.add_argument("--max-level", type=_positive, required=True)
    b.add_argument("--mode", choices=("point", "symbolic"), default="point")
    b.add_argument("--point", default="1,1")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, LevelOutOfRange) as exc:
        print(f"tutte-ss: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceCap as exc:
        print(f"tutte-ss: resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except TutteError as exc:
        print(f"tutte-ss: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
