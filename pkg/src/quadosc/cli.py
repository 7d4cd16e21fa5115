"""Command-line front end: run verification suites, tabulate coefficient
families, print block members, and evaluate ad-hoc operator expressions.

Exit codes: 0 when everything verified, 1 when any identity failed, 2 for
usage errors.  JSON reports are canonical and byte-reproducible by default;
pass --timing to embed measured per-identity wall times.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import operators as _ops
from . import jordan as _jordan
from . import biortho as _biortho
from . import fock as _fock
from . import expr as _expr
from .jordan import JordanLabel
from .report import VerificationReport, merge_reports

SUITES = ("ladder", "algebra", "gl3", "boson", "sp6", "integrals",
          "jordan", "uvw", "biortho")


def _run_suite(args):
    """Top-level worker so suite fan-out can cross process boundaries."""
    name, max_k, max_n = args
    out = []
    if name == "ladder":
        out.append(("ladder", _ops.verify_ladder_relations()))
        out.append(("ladder", _ops.verify_q_factorization()))
    elif name == "algebra":
        out.append(("algebra", _ops.verify_nine_dim_algebra()))
    elif name == "gl3":
        out.append(("gl3", _ops.verify_gl3()))
    elif name == "boson":
        out.append(("boson", _ops.verify_boson_layer()))
    elif name == "sp6":
        out.append(("sp6", _ops.verify_sp6_osp16_closure()))
    elif name == "integrals":
        out.append(("integrals", _ops.verify_integrals_cubic_algebra()))
    elif name == "jordan":
        out.append(("jordan", _jordan.verify_jordan_layer(max_k, max_n)))
        out.append(("jordan", _jordan.verify_coefficient_recursions(max(6, max_n))))
        out.append(("jordan", _jordan.verify_auxiliary_relations(min(max_n, 3), 4)))
        out.append(("jordan", _jordan.verify_ladder_actions(max_k, max_n)))
        out.append(("jordan", _jordan.verify_special_actions(max_k, max_n)))
    elif name == "uvw":
        out.append(("uvw", _jordan.verify_uvw_layer(min(max_n, 3))))
    elif name == "biortho":
        out.append(("biortho", _biortho.verify_normalization(max_k, max_n)))
        out.append(("biortho", _biortho.verify_T_vanishing(max_k, max_n)))
        out.append(("biortho", _biortho.verify_q_identities(min(max_k, 3), min(max_n, 3))))
        out.append(("biortho", _biortho.verify_gram_blocks(max_k, max_n)))
        out.append(("biortho", _biortho.verify_orthogonalization(min(max_k, 3), min(max_n, 3))))
        out.append(("biortho", _biortho.verify_reference_phi_blocks()))
        out.append(("biortho", _biortho.verify_adjoint_rules()))
        out.append(("biortho", _biortho.verify_cross_block_orthogonality(
            min(max_k, 2), min(max_n, 2))))
        out.append(("biortho", _biortho.verify_oracle_agreement(4)))
    else:
        raise ValueError(f"unknown suite {name!r}")
    return out


def _cmd_verify(args) -> int:
    names = SUITES if args.suite == "all" else (args.suite,)
    report = VerificationReport(args.suite)
    tasks = [(name, args.max_k, args.max_n) for name in names]
    if args.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            chunks = list(pool.map(_run_suite, tasks))
    else:
        chunks = [_run_suite(t) for t in tasks]
    for chunk in chunks:
        for suite_name, recs in chunk:
            report.add(suite_name, recs)
    for line in report.summary_lines():
        print(line)
    for _suite_name, rec in report.failed:
        print(f"FAILED {rec.id}: residual {rec.residual}"
              + (f"  [{rec.note}]" if rec.note else ""))
    total = report.to_json_dict()["summary"]
    print(f"total: {total['total']}  verified: {total['verified']}"
          f"  failed: {total['failed']}")
    if args.json:
        try:
            report.write_json(args.json, timing=args.timing)
        except OSError as exc:
            print(f"error: cannot write report: {exc}", file=sys.stderr)
            return 2
        print(f"report written to {args.json}")
    return report.exit_code


def _write_table(rows, header, csv_path):
    if csv_path:
        with open(csv_path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            writer.writerows(rows)
        print(f"table written to {csv_path}")
        return
    widths = [max(len(str(r[i])) for r in ([header] + rows)) for i in range(len(header))]
    print("  ".join(h.ljust(w) for h, w in zip(header, widths)))
    for row in rows:
        print("  ".join(str(c).ljust(w) for c, w in zip(row, widths)))


def _cmd_tabulate(args) -> int:
    rows = []
    if args.what == "ab":
        header = ["n", "p", "q", "a", "b"]
        for n in range(args.max_n + 1):
            for p in range(n + 1):
                for q in range(p + 1):
                    a = _jordan.coeff_a(n, p, q).render()
                    b = (_jordan.coeff_b(n, p, q).render() if p <= n - 1 else "")
                    rows.append([n, p, q, a, b])
    elif args.what == "N":
        header = ["k", "n", "N"]
        for k in range(args.max_k + 1):
            for n in range(args.max_n + 1):
                rows.append([k, n, _biortho.normalization(k, n).render()])
    elif args.what == "ladder-coeffs":
        header = ["op", "k", "n", "m", "k'", "n'", "m'", "coefficient"]
        for k in range(args.max_k + 1):
            for n in range(args.max_n + 1):
                for m in range(2 * n + 1):
                    label = JordanLabel(k, n, m)
                    for op_name in ("A+", "B+", "C+", "A-", "B-", "C-"):
                        for tgt, c in _jordan.ladder_apply(op_name, label):
                            rows.append([op_name, k, n, m, tgt.k, tgt.n, tgt.m,
                                         c.render()])
    elif args.what == "f-poly":
        header = ["p", "q", "polynomial"]
        for p in range(args.max_p + 1):
            for q in range((p + 1) // 2, 2 * p + 1):
                f = _jordan.f_polynomial(p, q)
                if not f.is_zero():
                    rows.append([p, q, f.render()])
    else:
        raise ValueError(f"unknown table {args.what!r}")
    _write_table(rows, header, args.csv)
    return 0


def _cmd_state(args) -> int:
    try:
        label = JordanLabel(args.k, args.n, args.m)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    state = _jordan.build_state(label)
    if args.json:
        print(json.dumps(state.to_json(), indent=2, sort_keys=True))
        return 0
    if args.repr == "creation":
        print(state.creation.render())
    elif args.repr == "uvw":
        print(state.uvw_poly().render())
    else:
        print(state.gaussian().poly.render())
    return 0


def _cmd_commutator(args) -> int:
    try:
        op = _expr.evaluate(args.expr)
    except _expr.ExprError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(op.render())
    return 0


def _state_from_expr(text):
    op = _expr.evaluate(text)
    from .weyl import ground_state
    return op.apply(ground_state())


def _cmd_inner(args) -> int:
    try:
        bra = _state_from_expr(args.bra)
        ket = _state_from_expr(args.ket)
    except _expr.ExprError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    value = _fock.wick_inner(_fock.gaussian_state_to_creation(bra),
                             _fock.gaussian_state_to_creation(ket))
    print(value.render())
    return 0


def _cmd_report(args) -> int:
    if not args.merge:
        print("error: only --merge is supported", file=sys.stderr)
        return 2
    docs = []
    for path in args.inputs:
        try:
            with open(path) as fh:
                docs.append(json.load(fh))
        except (OSError, json.JSONDecodeError) as exc:
            print(f"error: cannot read {path}: {exc}", file=sys.stderr)
            return 2
    merged = merge_reports(docs)
    try:
        with open(args.out, "w") as fh:
            json.dump(merged, fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return 2
    print(f"merged {len(args.inputs)} reports into {args.out}"
          f" ({merged['summary']['total']} records,"
          f" {merged['summary']['failed']} failed)")
    return 1 if merged["summary"]["failed"] else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadosc",
        description="Exact symbolic verification engine for the"
                    " three-dimensional pseudo-Hermitian quadratic oscillator.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run identity suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--max-k", type=int, default=3, dest="max_k")
    p.add_argument("--max-n", type=int, default=3, dest="max_n")
    p.add_argument("--json", metavar="PATH", help="write a JSON report")
    p.add_argument("--timing", action="store_true",
                   help="embed measured per-identity times (breaks byte reproducibility)")
    p.add_argument("--jobs", type=int, default=1, help="suite-level worker processes")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("tabulate", help="print coefficient tables")
    p.add_argument("--what", choices=("ab", "N", "ladder-coeffs", "f-poly"), required=True)
    p.add_argument("--max-k", type=int, default=2, dest="max_k")
    p.add_argument("--max-n", type=int, default=4, dest="max_n")
    p.add_argument("--max-p", type=int, default=3, dest="max_p")
    p.add_argument("--csv", metavar="PATH", help="write CSV instead of a console table")
    p.set_defaults(func=_cmd_tabulate)

    p = sub.add_parser("state", help="print one Jordan-block member")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--repr", choices=("creation", "uvw", "zzb"), default="creation")
    p.add_argument("--json", action="store_true", help="emit all representations as JSON")
    p.set_defaults(func=_cmd_state)

    p = sub.add_parser("commutator", help="evaluate an operator expression")
    p.add_argument("expr")
    p.set_defaults(func=_cmd_commutator)

    p = sub.add_parser("inner",
                       help="pairing of two states given as operator expressions"
                            " applied to the ground state")
    p.add_argument("bra")
    p.add_argument("ket")
    p.set_defaults(func=_cmd_inner)

    p = sub.add_parser("report", help="merge JSON reports")
    p.add_argument("--merge", action="store_true")
    p.add_argument("--out", required=True, metavar="PATH")
    p.add_argument("inputs", nargs="+", metavar="REPORT")
    p.set_defaults(func=_cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors already; normalize other exits
        return int(exc.code) if exc.code is not None else 2
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
