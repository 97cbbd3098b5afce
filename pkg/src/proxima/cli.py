"""``proxima`` command line.

Exit codes: 0 success (verdict holds, solve converged), 1 verdict failed or
solve did not converge, 2 usage or parse error.

Every command prints a human-readable summary, a ``---`` line, then a JSON
report with ``report_version: 1``.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .config import Problem, builtin_problem, load_config
from .contraction import CLASSES, verify
from .cyclic_map import orbit
from .errors import ConfigError, CyclicityViolation, DomainError, UsageError
from .lemmas import check_lemma_cauchy, check_lemma_close, generate_converging_triple
from .region import set_distance
from .solver import SolveOptions, iterate, write_trace_csv
from .space import Point

REPORT_VERSION = 1
LEMMA_EPS_SCHEDULE = (0.1, 0.01, 0.001)
LEMMA_CAUCHY_EPS = 0.05


def _fmt_point(p) -> str:
    return "(" + ", ".join(f"{c:.12g}" for c in p) + ")"


def _emit(command: str, problem: Problem, options: dict, result: dict, lines: list[str],
          out=None) -> None:
    out = out or sys.stdout
    report = {
        "report_version": REPORT_VERSION,
        "tool": "proxima",
        "version": __version__,
        "command": command,
        "problem": problem.name,
        "options": options,
        "result": result,
    }
    for line in lines:
        print(line, file=out)
    print("---", file=out)
    print(json.dumps(report, indent=2, sort_keys=True), file=out)


def _parse_seed(text: str, problem: Problem) -> Point:
    try:
        coords = [float(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"cannot parse seed {text!r}; expected comma-separated numbers") from None
    return Point(coords, problem.space)


def _dist(problem: Problem) -> float:
    if problem.options["dist"] is not None:
        return problem.options["dist"]
    d, _ = set_distance(problem.omega, problem.delta, problem.options["dist_density"])
    return d


def cmd_verify(problem: Problem, args) -> int:
    cls = args.cls
    eta = args.eta if args.eta is not None else problem.options["eta"]
    density = args.density or problem.options["density"]
    depth = args.depth or problem.options["depth"]
    dist = _dist(problem)
    v = verify(problem.map, cls, eta, density=density, depth=depth, dist=dist,
               tol=problem.options["tolerances"]["verify"])
    lines = [
        f"class {cls}, eta {eta}: {'HOLDS' if v.holds else 'FAILS'} "
        f"on the checked {density}x{density} grid",
        f"dist used: {dist:.17g}",
        f"worst margin {v.worst_margin:.6g} at {_fmt_point(v.worst_pair[0])}, "
        f"{_fmt_point(v.worst_pair[1])}",
        f"witness {_fmt_point(v.witness[0])}, {_fmt_point(v.witness[1])}: "
        f"lhs {v.witness_lhs:.17g} vs rhs {v.witness_rhs:.17g}",
        "min eta estimate: "
        + ("none" if v.min_eta_estimate is None else f"{v.min_eta_estimate:.6g}"),
    ]
    opts = {"class": cls, "eta": eta, "density": density, "depth": depth, "dist": dist,
            "tol": problem.options["tolerances"]["verify"]}
    _emit("verify", problem, opts, v.to_dict(), lines)
    return 0 if v.holds else 1


def cmd_solve(problem: Problem, args) -> int:
    if args.seed is not None:
        seed = _parse_seed(args.seed, problem)
    elif problem.seeds:
        seed = problem.seeds[0]
    else:
        raise UsageError("no seed given and the problem declares none")
    trace_path = args.trace or problem.options["trace_path"]
    tols = problem.options["tolerances"]
    opts = SolveOptions(
        max_iter=args.max_iter or problem.options["max_iter"],
        gap_tol=tols["gap"],
        pair_tol=tols["pair"],
        eta_for_bound=args.eta,
        record_trace=trace_path is not None,
    )
    problem.map.side_of(seed)  # DomainError/AmbiguityError before any work
    r = iterate(problem.map, seed, opts, dist=_dist(problem))
    if trace_path is not None:
        write_trace_csv(r, trace_path)
    lines = [
        f"seed {_fmt_point(seed)} in {r.seed_side}: "
        f"{'converged' if r.converged else 'NOT converged'} after {r.iterations} iterations",
        f"best proximity point in omega: {_fmt_point(r.bpp_omega)}",
        f"its image in delta:            {_fmt_point(r.bpp_delta)}",
        f"dist used {r.dist_used:.17g}; residual_bpp {r.residual_bpp:.3e}; "
        f"residual_fp2 {r.residual_fp2:.3e}",
    ]
    if trace_path is not None:
        lines.append(f"trace written to {trace_path}")
    result = r.to_dict()
    _emit("solve", problem, {"seed": seed.tolist(), **opts.to_dict()}, result, lines)
    return 0 if r.converged else 1


def cmd_dist(problem: Problem, args) -> int:
    density = args.density or problem.options["dist_density"]
    d, w = set_distance(problem.omega, problem.delta, density)
    lines = [f"dist(omega, delta) ~ {d:.17g} (density {density})",
             f"witness {_fmt_point(w.a)}, {_fmt_point(w.b)}"]
    _emit("dist", problem, {"density": density},
          {"dist": d, "witness": [w.a.tolist(), w.b.tolist()]}, lines)
    return 0


def cmd_orbit(problem: Problem, args) -> int:
    if args.seed is not None:
        seed = _parse_seed(args.seed, problem)
    elif problem.seeds:
        seed = problem.seeds[0]
    else:
        raise UsageError("no seed given and the problem declares none")
    t = orbit(problem.map, seed, args.depth)
    lines = [f"{k:4d} {s:5s} {_fmt_point(x)}"
             for k, (s, x) in enumerate(zip(t.side_parity, t.coords))]
    result = {"entries": t.coords.tolist(), "sides": list(t.side_parity), "depth": t.depth}
    _emit("orbit", problem, {"seed": seed.tolist(), "depth": args.depth}, result, lines)
    return 0


def cmd_lemmas(problem: Problem, args) -> int:
    base = int(os.environ.get("PROXIMA_SEED", "0"))
    dist, pair = set_distance(problem.omega, problem.delta, problem.options["dist_density"])
    tol = problem.options["tolerances"]["verify"]
    outcomes = []
    for i in range(args.seeds):
        t = generate_converging_triple(problem.omega, problem.delta, pair,
                                       length=args.length, decay=args.decay, seed=base + i)
        close = check_lemma_close(t, dist, LEMMA_EPS_SCHEDULE, tol)
        cauchy = check_lemma_cauchy(t.xs, t.rhos, t.thetas, dist, LEMMA_CAUCHY_EPS, tol)
        outcomes.append({"seed": base + i, "close": close.status, "cauchy": cauchy.status,
                         "close_R": {str(k): v for k, v in close.indices.items()},
                         "cauchy_M1": cauchy.indices.get("M1")})
    passed = sum(o["close"] == "pass" and o["cauchy"] == "pass" for o in outcomes)
    lines = [f"lemma harness: {passed}/{args.seeds} pass (within horizon, length {args.length})"]
    lines += [f"  seed {o['seed']}: close={o['close']} cauchy={o['cauchy']}"
              for o in outcomes if not (o["close"] == "pass" and o["cauchy"] == "pass")]
    opts = {"seeds": args.seeds, "base_seed": base, "length": args.length, "decay": args.decay,
            "eps_schedule": list(LEMMA_EPS_SCHEDULE), "cauchy_eps": LEMMA_CAUCHY_EPS,
            "dist": dist, "proximal_pair": [pair.a.tolist(), pair.b.tolist()]}
    _emit("lemmas", problem, opts, {"passed": passed, "total": args.seeds, "runs": outcomes},
          lines)
    return 0 if passed == args.seeds else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="proxima", description="Best proximity points of cyclic maps.")
    parser.add_argument("--version", action="version", version=f"proxima {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--problem", help="builtin problem name (e.g. paper-example)")
        src.add_argument("--config", help="path to a JSON problem config")
        return p

    p = common(sub.add_parser("verify", help="check a contraction class on a grid"))
    p.add_argument("--class", dest="cls", choices=CLASSES, default="orbital")
    p.add_argument("--eta", type=float)
    p.add_argument("--density", type=int)
    p.add_argument("--depth", type=int)
    p.set_defaults(func=cmd_verify)

    p = common(sub.add_parser("solve", help="run the Picard iteration"))
    p.add_argument("--seed", help='comma-separated coordinates, e.g. "-1,-0.5"')
    p.add_argument("--trace", help="write the iterate trace to this CSV file")
    p.add_argument("--max-iter", type=int)
    p.add_argument("--eta", type=float, help="also check the gap envelope for this eta")
    p.set_defaults(func=cmd_solve)

    p = common(sub.add_parser("dist", help="estimate the distance between the regions"))
    p.add_argument("--density", type=int)
    p.set_defaults(func=cmd_dist)

    p = common(sub.add_parser("orbit", help="print a truncated orbit"))
    p.add_argument("--seed")
    p.add_argument("--depth", type=int, default=8)
    p.set_defaults(func=cmd_orbit)

    p = common(sub.add_parser("lemmas", help="run the sequence-lemma harness"))
    p.add_argument("--seeds", type=int, default=100)
    p.add_argument("--length", type=int, default=50)
    p.add_argument("--decay", type=float, default=0.8)
    p.set_defaults(func=cmd_lemmas)
    return parser


def _join_negative_values(argv: list[str]) -> list[str]:
    # "--seed -1,-0.5" would otherwise be read as an unknown option
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--seed":
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-"):
                out.append(f"--seed={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
        else:
            out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(_join_negative_values(argv))
    try:
        problem = builtin_problem(args.problem) if args.problem else load_config(args.config)
        return args.func(problem, args)
    except ConfigError as exc:
        print(f"proxima: config error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, DomainError) as exc:
        print(f"proxima: {exc}", file=sys.stderr)
        return 2
    except CyclicityViolation as exc:
        print(f"proxima: cyclicity violation: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
