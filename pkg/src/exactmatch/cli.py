"""Command line front end.

Exit codes: 0 decided yes, 1 decided no, 2 input error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .bcpm import solve_bcpm_bipartite
from .cpm import solve_cpm
from .errors import BudgetExceeded, InputError
from .generators import MODELS, generate
from .io import parse_instance, parse_matching, render_report
from .mocp import solve_mocp
from .solver import SolverConfig, solve_em, solve_em_approx

EXIT_YES, EXIT_NO, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_em(path):
    inst = parse_instance(_read(path))
    if inst.kind != "em":
        raise InputError("expected an em instance")
    return inst.graph, inst.k


def _report(out, pm):
    if pm is None:
        out.write(render_report("no"))
        return EXIT_NO
    out.write(render_report("yes", pm))
    return EXIT_YES


def cmd_solve(args, out):
    g, k = _load_em(args.instance)
    param = args.alpha if args.alpha is not None else args.beta
    mode = "alpha" if args.alpha is not None else "beta" if args.beta is not None else None
    cfg = SolverConfig(mode=mode, param=param, seed=args.seed,
                       **({"node_budget": args.budget} if args.budget else {}))
    res = solve_em(g, k, cfg) if args.mode == "oracle" else solve_em_approx(g, k, cfg)
    if args.trace:
        with open(args.trace, "w") as fh:
            fh.writelines(e.line() + "\n" for e in res.trace)
    if args.plot:
        from .plotting import plot_trace

        plot_trace(res.trace, k, args.plot, title=f"{res.status} ({res.method})")
    if res.status == "budget-exceeded":
        out.write(render_report("budget"))
        return EXIT_BUDGET
    return _report(out, res.matching)


def cmd_bcpm(args, out):
    g, k = _load_em(args.instance)
    return _report(out, solve_bcpm_bipartite(g, k))


def cmd_cpm(args, out):
    g, k = _load_em(args.instance)
    return _report(out, solve_cpm(g, k))


def cmd_mocp(args, out):
    inst = parse_instance(_read(args.instance))
    if inst.kind != "mocp":
        raise InputError("expected a mocp instance")
    d = inst.digraph
    cyc = solve_mocp(d)
    if cyc is None:
        out.write("s no\n")
        return EXIT_NO
    out.write(f"s yes w={cyc.weight(d.weights)}\n")
    out.writelines(f"a {d.arcs[a][0]} {d.arcs[a][1]}\n" for a in cyc.arcs)
    return EXIT_YES


def cmd_gen(args, out):
    params = {}
    for item in args.params:
        key, sep, val = item.partition("=")
        if not sep:
            raise InputError(f"parameter {item!r} is not key=value")
        params[key] = val
    text = generate(args.model, params, args.seed)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_YES


def cmd_verify(args, out):
    g, k = _load_em(args.instance)
    pm = parse_matching(_read(args.matching), g)
    if pm is None:
        out.write("s no\n")
        return EXIT_NO
    r = pm.red
    ok = {"em": r == k, "bcpm": r <= k and (r - k) % 2 == 0, "cpm": (r - k) % 2 == 0}[args.problem]
    if args.approx and args.problem == "em":
        ok = r in (k - 1, k)
    out.write(f"s {'valid' if ok else 'invalid'} r={r}\n")
    return EXIT_YES if ok else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="exactmatch", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="exact matching: a PM with exactly k red edges")
    s.add_argument("instance")
    s.add_argument("--mode", choices=("oracle", "approx"), default="oracle")
    grp = s.add_mutually_exclusive_group()
    grp.add_argument("--alpha", type=int, help="independence number (general mode)")
    grp.add_argument("--beta", type=int, help="balanced bipartite independence number")
    s.add_argument("--budget", type=int, help="node budget for the skip/cycle search")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trace", metavar="FILE", help="write one line per solver event")
    s.add_argument("--plot", metavar="PNG", help="render the trace as a figure")
    s.set_defaults(func=cmd_solve)

    for name, fn, text in (("bcpm", cmd_bcpm, "bipartite: r <= k and r = k (mod 2)"),
                           ("cpm", cmd_cpm, "r = k (mod 2)"),
                           ("mocp", cmd_mocp, "minimum odd-weight directed cycle")):
        c = sub.add_parser(name, help=text)
        c.add_argument("instance")
        c.set_defaults(func=fn)

    gparser = sub.add_parser("gen", help="generate a seeded instance")
    gparser.add_argument("model", choices=sorted(MODELS))
    gparser.add_argument("params", nargs="*", help="key=value, e.g. nA=4 nB=4 p=0.5 redprob=0.3 k=2")
    gparser.add_argument("--seed", type=int, default=0)
    gparser.add_argument("-o", "--output")
    gparser.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", help="recheck a matching report against an instance")
    v.add_argument("instance")
    v.add_argument("matching")
    v.add_argument("--problem", choices=("em", "bcpm", "cpm"), default="em")
    v.add_argument("--approx", action="store_true", help="accept k - 1 red edges for em")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_YES
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"budget: {exc}", file=sys.stderr)
        out.write(render_report("budget"))
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
