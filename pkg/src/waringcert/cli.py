"""Command-line interface.

Subcommands mirror the certificate pipeline: betti tables and strands,
h-vector thresholds, the two rank certificates, point-set checks, witness
verification, and the upper-bound summary.  Exit codes: 0 all verdicts
PASS, 1 any FAIL, 2 INCONCLUSIVE present, 3 usage error.  A config file
(TOML or JSON) may predefine named jobs as lists of argument vectors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .certify import (build_rank14_certificate, build_rank15_certificate,
                      run_betti, run_betti_file, run_points,
                      run_upper_bounds, REMARK_STRANDS)
from .graded import BettiTable
from .lexmac import threshold_report
from .witness import load_witness_file, verify_decomposition

EXIT_PASS, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 3


def _dump(obj, fmt: str):
    if fmt == "json":
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        print(obj)


def _emit_table(table: BettiTable, fmt: str):
    if fmt == "json":
        print(json.dumps(table.to_json(), indent=2, sort_keys=True))
    else:
        print(table.text())


def _emit_certificate(cert, fmt: str) -> int:
    if fmt == "json":
        print(json.dumps(cert.to_json(), indent=2, sort_keys=True))
    else:
        print(f"claim: {cert.claim}")
        for s in cert.steps:
            print(f"  [{s.verdict:>12}] {s.step_id}: {s.comparison}")
        for c in cert.caveats:
            print(f"  caveat: {c}")
        print(f"verdict: {cert.verdict}")
    return {"PASS": EXIT_PASS, "FAIL": EXIT_FAIL,
            "INCONCLUSIVE": EXIT_INCONCLUSIVE}[cert.verdict]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="waringcert",
        description="exact lower-bound certificates for Waring and cactus "
                    "rank of the 3x3 determinant and permanent")
    p.add_argument("--config", help="TOML or JSON file defining named jobs")
    sub = p.add_subparsers(dest="command")

    b = sub.add_parser("betti", help="Betti table or single strand value")
    b.add_argument("form", help="det3, per3, xyz, or a polynomial JSON file")
    b.add_argument("--strand", nargs=2, type=int, metavar=("I", "J"))
    b.add_argument("--field", default="rational",
                   help="rational (default), fp:<p>, cyclotomic6")
    b.add_argument("--imax", type=int)
    b.add_argument("--jmax", type=int)
    b.add_argument("--threads", type=int, default=1)
    b.add_argument("--format", choices=("text", "json"), default="text")

    t = sub.add_parser("threshold", help="strand threshold from h-vectors")
    t.add_argument("embedding_dim", type=int)
    t.add_argument("degree", type=int)
    t.add_argument("strand_i", type=int)
    t.add_argument("--format", choices=("text", "json"), default="text")

    r14 = sub.add_parser("rank14", help="cactus rank >= 14 certificate")
    r14.add_argument("form", choices=("det3", "per3"))
    r14.add_argument("--threads", type=int, default=1)
    r14.add_argument("--format", choices=("text", "json"), default="text")
    r14.add_argument("--inject-fail", help=argparse.SUPPRESS)

    r15 = sub.add_parser("rank15", help="rank(det3) >= 15 certificate")
    r15.add_argument("--samples", type=int, default=20)
    r15.add_argument("--seed", type=int, default=0)
    r15.add_argument("--trials", type=int, default=25,
                     help="normal-form trials per rank class")
    r15.add_argument("--threads", type=int, default=1)
    r15.add_argument("--format", choices=("text", "json"), default="text")
    r15.add_argument("--inject-fail", help=argparse.SUPPRESS)

    pt = sub.add_parser("points", help="Betti strands of random point sets")
    pt.add_argument("count", type=int)
    pt.add_argument("--seed", type=int, default=0)
    pt.add_argument("--coord-bound", type=int, default=2)
    pt.add_argument("--full", action="store_true",
                    help="whole table through the quadratic row (slow)")
    pt.add_argument("--threads", type=int, default=1)
    pt.add_argument("--format", choices=("text", "json"), default="text")

    v = sub.add_parser("verify", help="check a witness file exactly")
    v.add_argument("witness_file")
    v.add_argument("--format", choices=("text", "json"), default="text")

    ub = sub.add_parser("upper-bounds",
                        help="verify the witness suite and summarize")
    ub.add_argument("--format", choices=("text", "json"), default="text")

    j = sub.add_parser("job", help="run a named job from the config file")
    j.add_argument("name")

    return p


def _load_config(path: str) -> dict:
    if path.endswith(".json"):
        with open(path) as fh:
            return json.load(fh)
    try:
        import tomllib
    except ImportError:
        import tomli as tomllib
    with open(path, "rb") as fh:
        return tomllib.load(fh)


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_PASS
    if args.command is None:
        parser.print_help()
        return EXIT_USAGE

    if args.command == "betti":
        strand = tuple(args.strand) if args.strand else None
        try:
            if args.form in ("det3", "per3", "xyz"):
                out = run_betti(args.form, field=args.field, strand=strand,
                                i_max=args.imax, j_max=args.jmax,
                                threads=args.threads)
            else:
                path = args.form.removeprefix("file:")
                out = run_betti_file(path, strand=strand, i_max=args.imax,
                                     j_max=args.jmax, threads=args.threads)
        except OSError as exc:
            print(f"error: cannot read input file: {exc}", file=sys.stderr)
            return EXIT_USAGE
        if strand is not None:
            _dump({"strand": list(strand), "value": out}
                  if args.format == "json" else out, args.format)
        else:
            _emit_table(out, args.format)
        return EXIT_PASS

    if args.command == "threshold":
        rep = threshold_report(args.embedding_dim, args.degree, args.strand_i)
        if args.format == "json":
            _dump(rep, "json")
        else:
            print(f"threshold for beta_({args.strand_i},{args.strand_i + 1}) "
                  f"of degree-{args.degree} one-dimensional ideals in "
                  f"{args.embedding_dim} variables (no linear forms): "
                  f"{rep['threshold']}")
            for row in rep["hvectors"]:
                print(f"  h={tuple(row['h'])}: "
                      f"{row['beta_i_i1']} - {row['beta_im1_i1']} -> "
                      f"{row['bound']}")
            print(f"attained at h-vector(s): "
                  f"{[tuple(h) for h in rep['argmin_h']]}")
        return EXIT_PASS

    if args.command == "rank14":
        cert = build_rank14_certificate(args.form, threads=args.threads,
                                        inject_fail=args.inject_fail)
        return _emit_certificate(cert, args.format)

    if args.command == "rank15":
        cert = build_rank15_certificate(samples=args.samples, seed=args.seed,
                                        trials_per_class=args.trials,
                                        threads=args.threads,
                                        inject_fail=args.inject_fail)
        return _emit_certificate(cert, args.format)

    if args.command == "points":
        rep = run_points(args.count, seed=args.seed,
                         coord_bound=args.coord_bound,
                         strands=REMARK_STRANDS, full=args.full,
                         threads=args.threads)
        if args.format == "json":
            out = {k: v for k, v in rep.items() if k != "table"}
            out["table"] = rep["table"].to_json()
            _dump(out, "json")
        else:
            if rep["rerolls"]:
                print(f"warning: re-rolled {rep['rerolls']} degenerate draw(s)")
            print(rep["table"].text())
        return EXIT_PASS

    if args.command == "verify":
        try:
            witness = load_witness_file(args.witness_file)
        except (OSError, ValueError, KeyError) as exc:
            print(f"error: unreadable witness file: {exc}", file=sys.stderr)
            return EXIT_USAGE
        ok, residual = verify_decomposition(witness)
        if args.format == "json":
            _dump({"file": args.witness_file, "verified": ok,
                   "residual": "0" if ok else repr(residual)}, "json")
        else:
            print(f"{args.witness_file}: {'PASS' if ok else 'FAIL'}")
            if not ok:
                print(f"residual: {residual!r}")
        return EXIT_PASS if ok else EXIT_FAIL

    if args.command == "upper-bounds":
        rep = run_upper_bounds()
        if args.format == "json":
            _dump(rep, "json")
        else:
            for row in rep["witnesses"]:
                mark = "PASS" if row["verified"] else "FAIL"
                print(f"  [{mark}] {row['target']}: {row['method']} "
                      f"-> {row['cubes']} powers")
            print(f"certified upper bounds: {rep['certified_upper_bounds']}")
        return EXIT_PASS if rep["all_verified"] else EXIT_FAIL

    if args.command == "job":
        if not args.config:
            print("error: job needs --config", file=sys.stderr)
            return EXIT_USAGE
        try:
            cfg = _load_config(args.config)
        except (OSError, ValueError) as exc:
            print(f"error: cannot read config: {exc}", file=sys.stderr)
            return EXIT_USAGE
        jobs = cfg.get("jobs", {})
        if args.name not in jobs:
            print(f"error: no job named {args.name!r}; have "
                  f"{sorted(jobs)}", file=sys.stderr)
            return EXIT_USAGE
        worst = EXIT_PASS
        for argv_step in jobs[args.name]:
            print(f"$ waringcert {' '.join(argv_step)}")
            code = run(list(argv_step))
            worst = max(worst, code)
        return worst

    return EXIT_USAGE


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
