"""Command-line interface.

Verbs::

    qlovasz compute --channel FILE [--quantity Q] [--format json|csv] [--tol T] [--max-iters N] [--dump PATH]
    qlovasz family --alpha A [--out FILE]
    qlovasz sweep --from A0 --to A1 --steps N [--out FILE] [--jobs J]
    qlovasz verify-paper [--alphas A,B,...] [--tol T]

Exit codes: 0 success, 1 input error, 2 computation failure.

Channel files are JSON documents::

    {"name": "...", "dim_in": 3, "dim_out": 3,
     "kraus": [[[[re, im], ...], ...], ...]}      # one dim_out x dim_in matrix per operator

or, for a classical channel, ``"classical": [[p(y|x) for x] for y]`` in place
of ``"kraus"``. An optional ``"alpha"`` records the N_alpha parameter.
Floats are written with Python's shortest round-trip repr, so emitting and
re-reading a file reproduces every 64-bit value exactly.

Problem dumps (``--dump``) are plain text: a ``# conic problem: LABEL``
line, then ``blocks kind:size ...``, then ``objective`` followed by
triplets, then one ``constraint RHS`` line per equality. Each triplet is
``block,i,j,re,im`` for the upper triangle of a matrix block (``i == j``
indexes nonnegative-block entries); omitted entries are zero.
"""
import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import channels, graphs, quantities
from .errors import DomainError, QlovaszError, SolverFailure
from .sdp import dump_problem

CSV_COLUMNS = ["label", "alpha", "quantity", "value", "log2_value", "closed_form", "abs_error",
               "iterations", "status"]
QUANTITIES = ["theta", "upsilon", "sigma", "aram", "packing"]
FAMILY_QUANTITIES = ["theta", "upsilon", "sigma", "aram"]
DEFAULT_ALPHAS = [np.pi / 12, np.pi / 8, np.pi / 6, np.pi / 5, np.pi / 4]
# decimal renderings of pi/4 (e.g. 0.7853981634) overshoot it slightly
ALPHA_SLACK = 1e-9

EXIT_OK, EXIT_INPUT, EXIT_FAILURE = 0, 1, 2


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# channel files


def channel_to_dict(ch, alpha=None, classical=None):
    doc = {"name": ch.label, "dim_in": ch.dim_in, "dim_out": ch.dim_out}
    if alpha is not None:
        doc["alpha"] = float(alpha)
    if classical is not None:
        doc["classical"] = np.asarray(classical, dtype=float).tolist()
    else:
        doc["kraus"] = [[[[float(z.real), float(z.imag)] for z in row] for row in k] for k in ch.kraus]
    return doc


def write_channel(path, ch, alpha=None, classical=None):
    with open(path, "w") as fh:
        json.dump(channel_to_dict(ch, alpha, classical), fh, indent=1)
        fh.write("\n")


def channel_from_dict(doc):
    """Returns (channel, stochastic matrix or None, alpha or None)."""
    if not isinstance(doc, dict):
        raise InputError("channel file must hold a JSON object")
    if ("kraus" in doc) == ("classical" in doc):
        raise InputError("channel file needs exactly one of 'kraus' or 'classical'")
    name = str(doc.get("name", "channel"))
    alpha = doc.get("alpha")
    try:
        if "classical" in doc:
            p = np.array(doc["classical"], dtype=float)
            ch = channels.classical_channel(p, label=name)
            stochastic = p
        else:
            ops = []
            for k in doc["kraus"]:
                arr = np.array(k, dtype=float)
                if arr.ndim != 3 or arr.shape[2] != 2:
                    raise InputError("Kraus entries must be [re, im] pairs")
                ops.append(arr[..., 0] + 1j * arr[..., 1])
            ch = channels.make_channel(ops, label=name)
            stochastic = None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, QlovaszError):
            raise
        raise InputError(f"malformed channel data: {exc}") from exc
    for key in ("dim_in", "dim_out"):
        if key in doc and doc[key] != getattr(ch, key):
            raise InputError(f"{key}={doc[key]} does not match the operators ({getattr(ch, key)})")
    return ch, stochastic, (None if alpha is None else float(alpha))


def read_channel(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    return channel_from_dict(doc)


# ---------------------------------------------------------------------------
# report rows


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)):
        return str(x)
    if isinstance(x, (float, np.floating)):
        return f"{x:.10g}"
    return str(x)


def make_row(label, quantity, result=None, alpha=None, closed_form=None, status=None):
    value = result.value if result is not None else float("nan")
    row = {
        "label": label,
        "alpha": alpha,
        "quantity": quantity,
        "value": value,
        "log2_value": result.log2_value if result is not None else float("nan"),
        "closed_form": closed_form,
        "abs_error": None if closed_form is None else abs(value - closed_form),
        "iterations": result.report.iterations if result is not None else None,
        "status": status or (result.report.status if result is not None else "Failed"),
    }
    return row


def write_rows(rows, fmt, fh):
    if fmt == "json":
        json.dump(rows, fh, indent=1, default=float)
        fh.write("\n")
        return
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow([_fmt(r[c]) for c in CSV_COLUMNS])


def compute_quantity(name, ch, stochastic=None, tol=1e-8, max_iters=200):
    if name == "theta":
        return quantities.theta(graphs.ncgraph(ch), tol, max_iters)
    if name == "upsilon":
        return quantities.upsilon(ch, tol, max_iters)
    if name == "sigma":
        return quantities.sigma(ch, tol, max_iters)
    if name == "aram":
        return quantities.aram(ch, tol, max_iters)
    if name == "packing":
        if stochastic is None:
            raise InputError("the packing number needs a classical channel file")
        return quantities.fractional_packing(stochastic, tol, max_iters)
    raise InputError(f"unknown quantity {name!r}")


def _problems_for(name, ch, stochastic):
    if name == "theta":
        s = graphs.ncgraph(ch)
        return [quantities.theta_primal_problem(s), quantities.theta_dual_problem(s)]
    if name == "upsilon":
        return [quantities.upsilon_problem(ch)]
    if name == "sigma":
        return [quantities.sigma_problem(ch)[0]]
    if name == "aram":
        return [quantities.aram_primal_problem(ch), quantities.aram_dual_problem(ch)]
    return [quantities.fractional_packing_problem(stochastic)]


def _closed_form(alpha, name):
    if alpha is None or name not in FAMILY_QUANTITIES:
        return None
    try:
        return quantities.closed_form_nalpha(alpha)[name]
    except DomainError:
        return None


def _alpha(value):
    a = float(value)
    if math.pi / 4 < a <= math.pi / 4 + ALPHA_SLACK:
        a = math.pi / 4
    if not (0.0 < a <= math.pi / 4):
        raise InputError(f"alpha must lie in (0, pi/4], got {value}")
    return a


# ---------------------------------------------------------------------------
# commands


def cmd_compute(args, out):
    ch, stochastic, alpha = read_channel(args.channel)
    if args.quantity == "all":
        names = FAMILY_QUANTITIES + (["packing"] if stochastic is not None else [])
    else:
        names = [args.quantity]
        if args.quantity == "packing" and stochastic is None:
            raise InputError("the packing number needs a classical channel file")
    if args.dump:
        with open(args.dump, "w") as fh:
            for name in names:
                for p in _problems_for(name, ch, stochastic):
                    dump_problem(p, fh)
    rows, failed = [], False
    for name in names:
        cf = _closed_form(alpha, name)
        try:
            res = compute_quantity(name, ch, stochastic, args.tol, args.max_iters)
            rows.append(make_row(ch.label, name, res, alpha, cf))
        except SolverFailure as exc:
            failed = True
            status = exc.report.status if exc.report is not None else "Failed"
            rows.append(make_row(ch.label, name, None, alpha, cf, status=status))
    write_rows(rows, args.format, out)
    return EXIT_FAILURE if failed else EXIT_OK


def cmd_family(args, out):
    alpha = _alpha(args.alpha)
    ch = channels.family_nalpha(alpha)
    path = args.out or f"nalpha_{alpha:.6f}.json"
    write_channel(path, ch, alpha=alpha)
    print(path, file=out)
    return EXIT_OK


def sweep_alphas(start, stop, steps):
    if steps < 1:
        raise InputError("steps must be at least 1")
    a0, a1 = _alpha(start), _alpha(stop)
    if a0 > a1:
        raise InputError("--from must not exceed --to")
    if steps == 1:
        return [a0]
    return [a0 + k * (a1 - a0) / (steps - 1) for k in range(steps)]


def _sweep_one(alpha, tol, max_iters):
    ch = channels.family_nalpha(alpha)
    cf = quantities.closed_form_nalpha(alpha)
    rows, failed = [], False
    for name in FAMILY_QUANTITIES:
        try:
            res = compute_quantity(name, ch, None, tol, max_iters)
            rows.append(make_row(ch.label, name, res, alpha, cf[name]))
        except SolverFailure as exc:
            failed = True
            rows.append(make_row(ch.label, name, None, alpha, cf[name],
                                 status=exc.report.status if exc.report else "Failed"))
    return rows, failed


def cmd_sweep(args, out):
    alphas = sweep_alphas(args.start, args.stop, args.steps)
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        # map keeps alpha order regardless of completion order
        results = list(pool.map(lambda a: _sweep_one(a, args.tol, args.max_iters), alphas))
    rows = [r for chunk, _ in results for r in chunk]
    failed = any(f for _, f in results)
    if args.out:
        with open(args.out, "w") as fh:
            write_rows(rows, "csv", fh)
    else:
        write_rows(rows, "csv", out)
    return EXIT_FAILURE if failed else EXIT_OK


def cmd_verify_paper(args, out):
    from .verification import run_claim_checks

    if args.alphas:
        alphas = [_alpha(a) for a in args.alphas.split(",") if a.strip()]
    else:
        alphas = DEFAULT_ALPHAS
    checks = run_claim_checks(alphas, tol=args.tol, max_iters=args.max_iters)
    width = max(len(c.name) for c in checks)
    print(f"{'check':<{width}}  {'alpha':>10}  {'value':>16}  {'expected':>16}  result", file=out)
    for c in checks:
        print(f"{c.name:<{width}}  {_fmt(c.alpha):>10}  {_fmt(c.value):>16}  {_fmt(c.expected):>16}  "
              f"{'PASS' if c.passed else 'FAIL'}", file=out)
    n_fail = sum(not c.passed for c in checks)
    print(f"{len(checks) - n_fail}/{len(checks)} checks passed", file=out)
    return EXIT_OK if n_fail == 0 else EXIT_FAILURE


def build_parser():
    parser = argparse.ArgumentParser(prog="qlovasz", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def solver_flags(p):
        p.add_argument("--tol", type=float, default=1e-8)
        p.add_argument("--max-iters", type=int, default=200)

    p = sub.add_parser("compute", help="evaluate quantities for a channel file")
    p.add_argument("--channel", required=True)
    p.add_argument("--quantity", choices=QUANTITIES + ["all"], default="all")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--dump", help="write the conic problems to this text file")
    solver_flags(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("family", help="write the N_alpha channel file")
    p.add_argument("--alpha", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("sweep", help="evaluate the N_alpha family on a grid of alpha")
    p.add_argument("--from", dest="start", required=True)
    p.add_argument("--to", dest="stop", required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--jobs", type=int, default=1)
    solver_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify-paper", help="check every separation claim for the N_alpha family")
    p.add_argument("--alphas", help="comma-separated alpha values")
    solver_flags(p)
    p.set_defaults(func=cmd_verify_paper)
    return parser


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except (InputError, QlovaszError, ValueError) as exc:
        if isinstance(exc, SolverFailure):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_FAILURE
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def run(argv=None):
    """Capture the output of :func:`main` as a string; returns (exit code, text)."""
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


def entry_point():
    sys.exit(main())
