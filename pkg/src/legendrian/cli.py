"""Command-line front end.  Every subcommand prints canonical JSON.

Exit codes: 0 success, 1 usage error, 2 invalid input, 3 computation error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
import warnings
from fractions import Fraction

from .errors import ComputationError, PreconditionError

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_COMPUTATION = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _read_json(path):
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path) as fh:
            text = fh.read()
    try:
        return json.loads(text), text
    except json.JSONDecodeError as exc:
        raise PreconditionError(f"{path}: invalid JSON ({exc})") from exc


def _input(path, loader, digests):
    data, text = _read_json(path)
    from .jsonio import digest

    digests[path] = digest(text)
    try:
        return loader(data)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, PreconditionError):
            raise
        raise PreconditionError(f"{path}: {exc}") from exc


def _load_hamiltonian(data):
    from .contact import QuadraticHamiltonian
    from .exact.poly import MPoly

    if "matrix" in data:
        return QuadraticHamiltonian.from_matrix(int(data["n"]), [[Fraction(x) for x in r] for r in data["matrix"]])
    q = MPoly.from_json(data)
    if q.arity % 2 == 0:
        raise ValueError("a Hamiltonian needs an odd number 2n+1 of variables")
    return QuadraticHamiltonian((q.arity - 1) // 2, q)



# -- subcommands -----------------------------------------------------------


def cmd_aut(args, digests):
    from .jsonio import load_cubic
    from .symmetry import compute_aut

    f = _input(args.cubic, load_cubic, digests)
    r = compute_aut(f, args.method)
    return {
        "dim": r.dim,
        "basis": [{"phi": e.phi, "chi": e.chi_value} for e in r.elements],
        "character_unique": r.character_unique,
        "solver": r.stats,
    }


def cmd_prolong(args, digests):
    from .jsonio import load_cubic
    from .symmetry import compute_prolongation

    f = _input(args.cubic, load_cubic, digests)
    r = compute_prolongation(f, args.method)
    return {
        "dim": r.dim,
        "basis": [e.A for e in r.elements],
        "chi": r.chis,
        "solver": r.stats,
    }


def cmd_xi(args, digests):
    from .jsonio import load_cubic, parse_rat
    from .symmetry import compute_xi

    f = _input(args.cubic, load_cubic, digests)
    try:
        a = parse_rat(args.a)
    except (ValueError, ZeroDivisionError) as exc:
        raise PreconditionError(f"--a: {exc}") from exc
    r = compute_xi(f, a, args.method)
    out = {
        "a": a,
        "dim": r.dim,
        "parameter_dim": r.parameter_dim,
        "certificates": [{"A": c.A.A, "chi": c.chi, "h": c.h} for c in r.certificates],
        "solver": r.stats,
    }
    if r.outside_hypotheses:
        out["note"] = "a = 1/4 is outside the range where Xi^a is expected to be informative"
    return out


def cmd_catalog(args, digests):
    from .catalog import catalog_cubic, catalog_list

    if args.action == "list":
        return {"names": catalog_list()}
    if not args.name:
        raise PreconditionError("catalog get needs a name")
    e = catalog_cubic(args.name, args.n)
    out = {"name": e.name, "n": e.n, "algebra": e.algebra, "description": e.description, "cubic": e.cubic.to_json()}
    if e.split_cubic is not None:
        out["split_cubic"] = e.split_cubic.to_json()
    return out


def cmd_forms(args, digests):
    from .charts import base_locus_tests, chart_from_F, null_space_II, recenter, second_ff, third_ff
    from .jsonio import load_poly, load_vector

    F = _input(args.F, load_poly, digests)
    chart = chart_from_F(F.arity, F)
    if args.at:
        chart = recenter(chart, _input(args.at, load_vector, digests))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        f = third_ff(chart)
    out = {
        "second_ff": second_ff(chart),
        "third_ff": f.to_json(),
        "null_dim": null_space_II(chart).dim,
        "base_locus_tests": base_locus_tests(chart),
    }
    if caught:
        out["warnings"] = sorted({str(w.message) for w in caught})
    return out


def cmd_jet(args, digests):
    from .charts import chart_from_F
    from .contact import tangency_test, vanishing_conditions, verify_xi_half
    from .jsonio import load_poly

    Q = _input(args.q, _load_hamiltonian, digests)
    F = _input(args.F, load_poly, digests)
    chart = chart_from_F(F.arity, F)
    if Q.n != chart.n:
        raise PreconditionError(f"Hamiltonian has n = {Q.n} but F has {chart.n} variables")
    out = {"tangent": tangency_test(Q, chart)}
    if not out["tangent"]:
        return out
    rep = vanishing_conditions(Q, chart)
    out["order"] = rep.label
    if rep.order < 2:
        return out
    res = verify_xi_half(Q, chart)
    jet = res.jet
    out.update(A=jet.A.A, nu=jet.nu, h=jet.h, chi=res.chi, xi_half_verified=res.passed)
    if res.hypotheses_note:
        out["note"] = res.hypotheses_note
    if not res.passed:
        raise ComputationError(f"2-jet failed the exact checks: {res}")
    return out


def cmd_tangent_space(args, digests):
    from .charts import chart_from_F
    from .contact import tangent_hamiltonians
    from .jsonio import load_poly

    F = _input(args.F, load_poly, digests)
    chart = chart_from_F(F.arity, F)
    hams = tangent_hamiltonians(chart, args.min_order)
    return {"dim": len(hams), "min_order": args.min_order, "basis": [Q.q.to_json() for Q in hams]}


def cmd_acceptance(args, digests):
    from .acceptance import acceptance_suite, format_lines

    report = acceptance_suite(skip_large=args.skip_large, allow_large=args.allow_large)
    for line in format_lines(report):
        print(line, file=sys.stderr)
    return report


COMMANDS = {
    "aut": cmd_aut,
    "prolong": cmd_prolong,
    "xi": cmd_xi,
    "catalog": cmd_catalog,
    "forms": cmd_forms,
    "jet": cmd_jet,
    "tangent-space": cmd_tangent_space,
    "acceptance": cmd_acceptance,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON report here instead of stdout")
    common.add_argument("--primes", help="comma separated primes for the modular solver")
    common.add_argument("--timing", action="store_true", help="include wall-clock time (breaks byte-identical output)")
    p = _Parser(prog="legendrian", description="Exact computations for cubic forms and Legendrian charts.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def method(sp):
        sp.add_argument("--method", default="auto", choices=["auto", "bareiss", "modular", "both"])

    s = sub.add_parser("aut", parents=[common], help="infinitesimal linear automorphisms of a cubic")
    s.add_argument("--cubic", required=True)
    method(s)
    s = sub.add_parser("prolong", parents=[common], help="first prolongation of aut")
    s.add_argument("--cubic", required=True)
    method(s)
    s = sub.add_parser("xi", parents=[common], help="the subspace Xi^a of the prolongation")
    s.add_argument("--cubic", required=True)
    s.add_argument("--a", default="1/2")
    method(s)
    s = sub.add_parser("catalog", parents=[common], help="named cubic forms")
    s.add_argument("action", choices=["list", "get"])
    s.add_argument("name", nargs="?")
    s.add_argument("--n", type=int)
    s = sub.add_parser("forms", parents=[common], help="second and third fundamental forms of a chart")
    s.add_argument("--F", required=True)
    s.add_argument("--at")
    s = sub.add_parser("jet", parents=[common], help="2-jet of a quadratic Hamiltonian on a chart")
    s.add_argument("--q", required=True)
    s.add_argument("--F", required=True)
    s = sub.add_parser("tangent-space", parents=[common], help="Hamiltonians vanishing on a chart")
    s.add_argument("--F", required=True)
    s.add_argument("--min-order", type=int, default=0, choices=[0, 1, 2])
    s = sub.add_parser("acceptance", parents=[common], help="run the acceptance suite")
    s.add_argument("--skip-large", action="store_true")
    s.add_argument("--allow-large", action="store_true")
    return p


def _echo(argv):
    """argv without the output path, which does not affect the result."""
    out, skip = [], False
    for a in argv:
        if skip:
            skip = False
        elif a == "--out":
            skip = True
        elif not a.startswith("--out="):
            out.append(a)
    return out


def run_command(argv):
    """Parse and run; returns (exit code, report dict or None)."""
    args = build_parser().parse_args(argv)
    if args.command is None:
        build_parser().print_usage(sys.stderr)
        return EXIT_USAGE, None
    saved = os.environ.get("LEGENDRIAN_PRIMES")
    if args.primes:
        os.environ["LEGENDRIAN_PRIMES"] = args.primes
    digests = {}
    start = time.perf_counter()
    try:
        from .exact.modular import default_primes

        default_primes()
        result = COMMANDS[args.command](args, digests)
    except (PreconditionError, OSError, ValueError) as exc:
        print(f"legendrian: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION, None
    except ComputationError as exc:
        print(f"legendrian: computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION, None
    finally:
        if args.primes:
            if saved is None:
                os.environ.pop("LEGENDRIAN_PRIMES", None)
            else:
                os.environ["LEGENDRIAN_PRIMES"] = saved
    report = {"command": _echo(argv), "inputs": digests, "result": result}
    if args.timing:
        report["seconds"] = f"{time.perf_counter() - start:.3f}"
    return EXIT_OK, report


def main(argv=None):
    from .jsonio import dumps

    argv = sys.argv[1:] if argv is None else list(argv)
    code, report = run_command(argv)
    if report is not None:
        text = dumps(report)
        args = build_parser().parse_args(argv)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        if args.command == "acceptance" and report["result"]["summary"]["failed"]:
            return EXIT_COMPUTATION
    return code


if __name__ == "__main__":
    sys.exit(main())
