"""Command-line front end.

Every subcommand builds one report per (p, t) point. Reports are plain dicts
with a fixed key order; :mod:`tailkit.report` turns them into JSON or CSV.
"""
from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction

import numpy as np

from . import config, linsys, report
from .errors import InfeasibleError, TailkitError
from .hypergraph import degree_profile, exact_tail, read_hypergraph
from .moments import hypergraph_envelope
from .rooted.analysis import argmin_info, rooted_envelope
from .rooted.copies import automorphism_count, extension_multiplicity
from .rooted.fractional import fractional_independence
from .rooted.graph import read_graph, rooted
from .sim import envelope_check, exact_tail_rooted, hypergraph_model, monte_carlo_tail, rooted_model

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2
PROBLEMS = ("hyper", "linsys", "ap", "schur", "rooted")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _probability(text):
    p = float(text)
    if not 0 <= p <= 1:
        raise argparse.ArgumentTypeError(f"probability must lie in [0, 1], got {text}")
    return p


def _fraction(text):
    try:
        q = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text}") from None
    if q <= 0:
        raise argparse.ArgumentTypeError("q must be positive")
    return q


def _problem_flags(ap):
    g = ap.add_argument_group("problem")
    g.add_argument("--file", help="hypergraph file ('N k' header, one edge per line)")
    g.add_argument("--q", type=_fraction, help="growth exponent with |H| = a N^q (hyper; may be 3/2)")
    g.add_argument("--matrix", help="integer matrix file ('l k' header, l rows)")
    g.add_argument("--system", choices=("ap", "schur"), help="built-in linear system")
    g.add_argument("--N", type=int, help="ground set [N]")
    g.add_argument("--k", type=int, default=3, help="progression length / system width")
    g.add_argument("--graph", help="graph file ('n' header, one 'u v' edge per line, 1-indexed)")
    g.add_argument("--roots", type=int, nargs="+", help="root vertices, 1-indexed")
    g.add_argument("--n", type=int, help="vertices of G(n, p)")


def _run_flags(ap, sweep):
    g = ap.add_argument_group("run")
    if not sweep:
        g.add_argument("--p", type=_probability, required=True)
    g.add_argument("--t", type=float, action="append", required=True,
                   help="tail ratio t > 1" + ("; repeat for several" if sweep else ""))
    g.add_argument("--trials", type=int, default=1000, help="Monte Carlo trials (0 disables)")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--workers", type=int, default=1, help="threads for Monte Carlo trials")
    g.add_argument("--m-max", type=int, help="largest moment tried (default from the scale)")
    g.add_argument("--format", choices=("json", "csv"), default="csv" if sweep else "json")
    ex = g.add_mutually_exclusive_group()
    ex.add_argument("--exact", dest="exact", action="store_true", default=None,
                    help="force the enumeration oracle (fails on capacity)")
    ex.add_argument("--no-exact", dest="exact", action="store_false",
                    help="skip the enumeration oracle")


def build_parser():
    ap = _Parser(prog="tailkit", description="Two-sided upper-tail bounds with verification.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in PROBLEMS:
        sp = sub.add_parser(name)
        _problem_flags(sp)
        _run_flags(sp, sweep=False)
    sp = sub.add_parser("sweep", help="evaluate one problem over a grid of p")
    sp.add_argument("--command", dest="target", choices=PROBLEMS, required=True)
    sp.add_argument("--p-min", type=_probability, required=True)
    sp.add_argument("--p-max", type=_probability, required=True)
    sp.add_argument("--steps", type=int, required=True)
    sp.add_argument("--linear", action="store_true", help="linear grid (default log-spaced)")
    _problem_flags(sp)
    _run_flags(sp, sweep=True)
    return ap


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.target} needs {', '.join(missing)}")


# -- problems -----------------------------------------------------------------

class HyperProblem:
    """A hypergraph plus, for linear systems, the matrix behind it."""

    def __init__(self, args):
        self.system = None
        if args.target == "hyper":
            _need(args, "file", "q")
            self.H = read_hypergraph(args.file)
            self.q = args.q
            self.echo = {"file": args.file, "q": str(args.q)}
            return
        _need(args, "N")
        if args.target == "linsys":
            if (args.matrix is None) == (args.system is None):
                raise UsageError("linsys needs exactly one of --matrix, --system")
            A = (linsys.read_matrix(args.matrix) if args.matrix
                 else linsys.standard_system(args.system, args.k))
            self.echo = {"matrix": args.matrix, "system": args.system, "k": A.k, "N": args.N}
        elif args.target == "ap":
            A = linsys.standard_system("ap", args.k)
            self.echo = {"k": args.k, "N": args.N}
        else:
            A = linsys.standard_system("schur")
            self.echo = {"N": args.N}
        self.system, self.N = A, args.N
        self.H = linsys.solution_hypergraph(A, args.N)
        self.q = Fraction(A.q)
        self.a0 = linsys.density_floor(A, args.N) if args.N >= A.k else 0.0

    def counts(self):
        H = self.H
        out = {"ground_size": H.ground_size, "uniformity": H.uniformity,
               "edges": len(H), "q": str(self.q), "density": H.density(float(self.q)),
               "delta": list(degree_profile(H)[1:])}
        if self.system is not None:
            out["rows"] = [list(r) for r in self.system.entries]
            out["density_floor"] = self.a0
        return out

    def evaluate(self, p, t, args):
        H = self.H
        candidates, extra = [], {}
        if self.system is not None:
            try:
                prefix = linsys.prefix_certificate(self.system, self.N, p, t)
            except InfeasibleError:
                prefix = None
            if prefix is not None:
                candidates.append(("prefix", prefix))
                extra["prefix_m"] = len(prefix)
        env = hypergraph_envelope(H, p, t, self.q, args.m_max, candidates)
        if self.system is not None and self.a0 > 0 and env.mu > 0:
            extra["analytic_prefix_m"] = linsys.analytic_prefix_size(
                self.a0, t, env.mu, float(self.q), self.N)
        regime = {"label": "d" if env.infeasible else None, "int_condition": env.int_condition}
        threshold = t * env.mu
        exact = None
        if _want_exact(args, H.ground_size <= config.EXACT_TAIL_MAX_N):
            exact = exact_tail(H, p, threshold)
        empirical = None
        if args.trials > 0:
            empirical = monte_carlo_tail(hypergraph_model(H, p), threshold, args.trials,
                                         args.seed, args.workers)
        return regime, env, extra, exact, empirical


class RootedProblem:
    def __init__(self, args):
        _need(args, "graph", "roots", "n")
        self.G_R = rooted(read_graph(args.graph), args.roots)
        self.n = args.n
        self.echo = {"graph": args.graph, "roots": list(args.roots), "n": args.n}
        if args.n < self.G_R.vertex_count:
            raise UsageError(f"--n must be at least v(G) = {self.G_R.vertex_count}")

    def counts(self):
        G_R, n = self.G_R, self.n
        alpha, _ = fractional_independence(G_R.minus_roots())
        try:
            g = extension_multiplicity(G_R, n)
        except TailkitError:
            g = None
        return {"vertices": G_R.vertex_count, "edges": G_R.e, "roots": G_R.r,
                "e_roots": G_R.e_roots, "automorphisms": automorphism_count(G_R),
                "alpha_star": str(alpha), "g": g}

    def evaluate(self, p, t, args):
        G_R, n = self.G_R, self.n
        env, rep, cert = rooted_envelope(G_R, n, p, t, args.m_max)
        info = argmin_info(G_R, rep.argmin)
        regime = {"label": rep.regime, "threshold": rep.threshold, "p1": rep.p1, "p2": rep.p2,
                  "int_condition": None}
        extra = {"copies": rep.copies, "m_R": str(rep.m_R), "M": rep.M,
                 "argmin": [[u + 1, v + 1] for u, v in rep.argmin],
                 "argmin_alpha_star": str(info.alpha)}
        threshold = t * env.mu
        exact = None
        if _want_exact(args, math.comb(n, 2) <= config.ROOTED_TAIL_MAX_PAIRS):
            exact = exact_tail_rooted(G_R, n, p, threshold)
        empirical = None
        if args.trials > 0:
            empirical = monte_carlo_tail(rooted_model(G_R, n, p), threshold, args.trials,
                                         args.seed, args.workers)
        return regime, env, extra, exact, empirical


def _want_exact(args, within_guard):
    if args.exact is None:
        return within_guard or config.guards_lifted()
    return args.exact


def _problem(args):
    return RootedProblem(args) if args.target == "rooted" else HyperProblem(args)


def _point(problem, p, t, args):
    regime, env, extra, exact, empirical = problem.evaluate(p, t, args)
    checks = []
    if exact is not None:
        checks.append(("exact", envelope_check(env, exact)))
    if empirical is not None:
        checks.append(("empirical", envelope_check(env, empirical)))
    return report.point_report(p, t, regime, env, extra, exact, empirical, checks)


def _grid(args):
    if args.steps < 2:
        raise UsageError("--steps must be at least 2")
    if args.p_min > args.p_max:
        raise UsageError("--p-min exceeds --p-max")
    if args.linear:
        return [float(x) for x in np.linspace(args.p_min, args.p_max, args.steps)]
    if args.p_min <= 0:
        raise UsageError("a log-spaced grid needs --p-min > 0 (or pass --linear)")
    return [float(x) for x in np.geomspace(args.p_min, args.p_max, args.steps)]


def run(args):
    """Return ``(report document, exit code)`` for parsed arguments."""
    if args.command != "sweep":
        args.target = args.command
    for t in args.t:
        if not t > 1:
            raise UsageError(f"--t must exceed 1, got {t}")
    if args.trials < 0 or args.workers < 1:
        raise UsageError("--trials must be >= 0 and --workers >= 1")
    if args.m_max is not None and args.m_max < 1:
        raise UsageError("--m-max must be positive")
    problem = _problem(args)
    ps = _grid(args) if args.command == "sweep" else [args.p]
    if args.command != "sweep" and len(args.t) > 1:
        raise UsageError("give one --t (use sweep for several)")
    inputs = dict(command=args.target, **problem.echo, t=list(args.t), seed=args.seed,
                  trials=args.trials, m_max=args.m_max, exact=args.exact)
    if args.command == "sweep":
        inputs.update(p_min=args.p_min, p_max=args.p_max, steps=args.steps,
                      spacing="linear" if args.linear else "log")
    else:
        inputs["p"] = args.p
    points = [_point(problem, p, t, args) for p in ps for t in args.t]
    doc = report.document(inputs, problem.counts(), points, sweep=args.command == "sweep")
    failed = any(pt["verdict"]["status"] == "FAIL" for pt in points)
    return doc, EXIT_FAIL if failed else EXIT_OK


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        doc, code = run(args)
    except UsageError as exc:
        print(parser.format_usage().rstrip(), file=sys.stderr)
        print(f"tailkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TailkitError, ValueError, OSError) as exc:
        print(f"tailkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(report.emit(doc, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
