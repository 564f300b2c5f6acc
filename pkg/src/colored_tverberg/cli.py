"""Command-line entry point.

Every command prints one JSON RunReport on stdout and a short summary on
stderr (suppressed by ``--json-only``).  Exit codes: 0 success, 1 a
verification failed, 2 usage or input error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from math import factorial

from . import chessboard, geometry, obstruction
from .errors import BudgetExceeded, ConfigError
from .simplicial import f_vector, homology, is_pseudomanifold

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def validate_config(path) -> geometry.ColoredConfiguration:
    return geometry.load_config(path)


def _chessboard(args):
    k = chessboard.chessboard_complex(chessboard.ChessboardSpec(args.r, args.n))
    show_all = not (args.homology or args.pseudomanifold or args.f_vector)
    result = {"r": args.r, "n": args.n, "dimension": k.dimension, "facets": len(k.facets)}
    lines = [f"Δ_{{{args.r},{args.n}}}: dimension {k.dimension}, {len(k.facets)} facets"]
    if args.f_vector or show_all:
        fv = f_vector(k)
        result["f_vector"] = fv
        result["euler_characteristic"] = sum((-1) ** i * x for i, x in enumerate(fv))
        lines.append(f"f-vector {fv}")
    if args.homology or show_all:
        groups = [homology(k, i) for i in range(k.dimension + 1)]
        result["betti"] = [b for b, _ in groups]
        result["torsion"] = [t for _, t in groups]
        lines.append(f"betti numbers {result['betti']}")
    if args.pseudomanifold or show_all:
        rep = is_pseudomanifold(k)
        result["pseudomanifold"] = {
            "pure": rep.pure,
            "ridge_degree_two": rep.ridge_degree_two,
            "strongly_connected": rep.strongly_connected,
            "orientable": rep.orientable,
        }
        lines.append(f"pseudomanifold: {rep.ok}")
    return result, True, lines


def _collapse(args):
    rep = chessboard.collapse_matching(args.r)
    ok = rep.valid and rep.equivariant and rep.pairs == factorial(args.r) and rep.remaining_dimension == args.r - 2
    return rep.to_json(), ok, [f"collapse of Δ_{{{args.r},{args.r}}}: {rep.pairs} pairs, ok={ok}"]


def _cocycle(args):
    d, r = args.d, args.r
    wanted = {k for k in ("chains", "claims", "boundaries", "verdict", "explicit_h", "full") if getattr(args, k)}
    if not wanted:
        wanted = {"verdict"}
    result: dict = {"d": d, "r": r}
    ok = True
    lines = []
    if "verdict" in wanted:
        rep = obstruction.obstruction_verdict(d, r, budget=args.verdict_budget)
        result["verdict"] = rep.to_json()
        closed = obstruction.closed_form_phi(d, r)
        good = rep.phi_value == closed and not any(rep.omega_values)
        if r > 2 and all(r % p for p in range(2, r)):
            good = good and not rep.extension_exists
        ok &= good
        lines.append(
            f"c_f(Phi) = {rep.phi_value} ({'computed' if rep.phi_computed else 'closed form'}), "
            f"r | (r-1)!^d: {rep.divides}, extension exists: {rep.extension_exists}"
        )
    needs_space = wanted & {"chains", "claims", "boundaries", "explicit_h", "full"}
    if needs_space:
        cs = obstruction.ConfigSpace(d, r, budget=args.budget)
        ch = obstruction.special_chains(cs) if wanted & {"chains", "claims", "boundaries", "explicit_h"} else None
        if "chains" in wanted:
            result["chains"] = {
                "phi": ch.phi.to_json(),
                "omega": {str(j): c.to_json() for j, c in ch.omega.items()},
                "theta": {str(i): c.to_json() for i, c in ch.theta.items()},
                "theta2": {f"{i},{j}": c.to_json() for (i, j), c in ch.theta2.items()},
            }
        if "boundaries" in wanted:
            rep = obstruction.check_boundary_relations(cs, ch)
            result["boundaries"] = rep.to_json()
            ok &= rep.ok
            lines.append(f"boundary identities hold: {rep.ok}")
        if "claims" in wanted:
            rep = obstruction.check_sign_claims(cs, ch)
            result["claims"] = rep.to_json()
            ok &= rep.ok
            lines.append(f"transposition claims hold: {rep.ok}")
        if "explicit_h" in wanted:
            if closed_divides(d, r) is False:
                raise UsageError(f"--explicit-h needs r | (r-1)!^d; {r} does not divide {factorial(r - 1) ** d}")
            rep = obstruction.explicit_h_check(cs, ch)
            result["explicit_h"] = rep.to_json()
            ok &= rep.ok
            lines.append(f"explicit h identities hold: {rep.ok}")
        if "full" in wanted:
            values = obstruction.evaluate_all_facets(cs)
            result["full"] = {
                "facets_evaluated": cs.facet_count,
                "nonzero_facets": len(values),
                "nonzero_with_last_row_r": sum(1 for c in values if c[-1] == r),
            }
            lines.append(f"{len(values)} of {cs.facet_count} facets carry a nonzero value")
    return result, ok, lines


def closed_divides(d: int, r: int) -> bool:
    return factorial(r - 1) ** d % r == 0


def _partition_json(part, witness) -> dict:
    return {"parts": part.to_json(), "witness": witness.to_json()}


def _partition(args):
    cfg = validate_config(args.config)
    if args.action == "find":
        found = geometry.find_rainbow_partition(cfg, args.r, budget=args.budget)
        if found is None:
            return {"found": False}, True, ["no rainbow partition"]
        part, w = found
        ok = geometry.check_witness([[cfg.point(x) for x in p] for p in part.parts], w)
        result = {"found": True, **_partition_json(part, w)}
        return result, ok, [f"rainbow {args.r}-partition found, common point {[str(x) for x in w.point]}"]
    count = geometry.count_tverberg_partitions(cfg, args.r, budget=args.budget)
    return {"count": count}, True, [f"{count} Tverberg partitions using all points"]


def _validate(args):
    cfg = validate_config(args.config)
    result = {"d": cfg.d, "sizes": cfg.sizes, "total": cfg.total, "configuration": cfg.to_json()}
    return result, True, [f"d={cfg.d}, class sizes {cfg.sizes}, {cfg.total} points"]


def _trial(args):
    sizes = None
    if args.class_sizes:
        try:
            sizes = [int(x) for x in args.class_sizes.split(",")]
        except ValueError as exc:
            raise UsageError(f"--class-sizes: {exc}") from exc
    elif args.class_size is None:
        raise UsageError("give --class-size or --class-sizes")
    rep = geometry.conjecture_trial(
        args.d, args.r, args.class_size, args.trials, args.seed, class_sizes=sizes, extend=args.extend, budget=args.budget
    )
    return rep.to_json(), True, [f"{rep.successes} successes, {rep.failures} failures"]


def _reduce(args):
    cfg = validate_config(args.config)
    try:
        pad = geometry.pad_reduction(cfg, args.r)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    result = {"padded": pad.padded.to_json(), "added_vertices": pad.added}
    found = geometry.find_rainbow_partition(pad.padded, args.r, budget=args.budget)
    if found is None:
        result["found"] = False
        return result, True, ["padded configuration has no rainbow partition"]
    part, _ = found
    restricted = pad.restrict(part)
    w = geometry.hulls_intersect([[cfg.point(x) for x in p] for p in restricted.parts])
    result["found"] = True
    result["padded_parts"] = part.to_json()
    result["restricted"] = None if w is None else _partition_json(restricted, w)
    ok = w is not None
    return result, ok, [f"padded to d'={pad.padded.d} with {pad.added} new vertices; restriction valid: {ok}"]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json-only", action="store_true", help="suppress the stderr summary")

    p = argparse.ArgumentParser(prog="colored-tverberg", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("chessboard", parents=[common], help="chessboard complex structure")
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--homology", action="store_true")
    c.add_argument("--pseudomanifold", action="store_true")
    c.add_argument("--f-vector", action="store_true")
    c.set_defaults(func=_chessboard)

    c = sub.add_parser("collapse", parents=[common], help="equivariant collapse of the square board")
    c.add_argument("--r", type=int, required=True)
    c.set_defaults(func=_collapse)

    c = sub.add_parser("cocycle", parents=[common], help="obstruction cocycle computations")
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--chains", action="store_true", help="emit Phi, Omega, Theta chains")
    c.add_argument("--claims", action="store_true", help="check the transposition identities")
    c.add_argument("--boundaries", action="store_true", help="check the boundary identities")
    c.add_argument("--verdict", action="store_true", help="evaluate c_f and the divisibility verdict")
    c.add_argument("--explicit-h", action="store_true", help="check the explicit cochain h")
    c.add_argument("--full", action="store_true", help="evaluate c_f on every facet")
    c.add_argument("--budget", type=int, default=obstruction.DEFAULT_BUDGET)
    c.add_argument("--verdict-budget", type=int, default=100_000)
    c.set_defaults(func=_cocycle)

    c = sub.add_parser("partition", parents=[common], help="rainbow Tverberg partitions of a configuration")
    c.add_argument("action", choices=["find", "count"])
    c.add_argument("--config", required=True)
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--budget", type=int, default=geometry.DEFAULT_PARTITION_BUDGET)
    c.set_defaults(func=_partition)

    c = sub.add_parser("trial", parents=[common], help="random configuration experiments")
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--class-size", type=int)
    c.add_argument("--class-sizes", help="comma-separated class sizes, overrides --class-size")
    c.add_argument("--trials", type=int, required=True)
    c.add_argument("--seed", type=int, required=True)
    c.add_argument("--extend", action="store_true", help="search via an extra singleton class and r+1 parts")
    c.add_argument("--budget", type=int, default=geometry.DEFAULT_PARTITION_BUDGET)
    c.set_defaults(func=_trial)

    c = sub.add_parser("reduce", parents=[common], help="pad a configuration and solve it")
    c.add_argument("--config", required=True)
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--budget", type=int, default=geometry.DEFAULT_PARTITION_BUDGET)
    c.set_defaults(func=_reduce)

    c = sub.add_parser("validate", parents=[common], help="parse and echo a configuration file")
    c.add_argument("--config", required=True)
    c.set_defaults(func=_validate)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    params = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "command", "json_only")}
    start = time.perf_counter()
    try:
        result, ok, lines = args.func(args)
    except (ConfigError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    report = {
        "command": args.command,
        "parameters": params,
        "result": result,
        "elapsed_ms": int((time.perf_counter() - start) * 1000),
        "exact": True,
    }
    print(json.dumps(report, sort_keys=True))
    if not args.json_only:
        for line in lines:
            print(line, file=sys.stderr)
        if not ok:
            print("VERIFICATION FAILED", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
