"""Command-line front end.

Subcommands: ``find``, ``oracle``, ``bounds``, ``gen``, ``validate``.
Results go to stdout as JSON; diagnostics go to stderr.

Exit codes
    0  success (cycle found and independently verified; checks passed)
    1  error: I/O, parse, hypothesis or proof-step failure, failed check
    2  relaxed-mode search found nothing (``find``); hypotheses fail (``validate``)
    3  search budget exhausted (``oracle``)
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from fractions import Fraction

from . import gen as generators
from .bounds import all_checks, check_D_bound, check_g_positive, default_k_grid
from .core import (
    ColoredGraph,
    GraphError,
    PipelineParams,
    f_of_k,
    read_colored_graph,
    validate,
    verify_witness,
    write_colored_graph,
    write_witness,
)
from .girth import BudgetExceeded, bound_bollobas, bound_shen, shortest_rainbow_cycle_exact
from .pipeline import NotFound, ProofStepError, Trace, find_short_rainbow_cycle

log = logging.getLogger("rainbow_cycles")

EXIT_OK, EXIT_ERROR, EXIT_NOT_FOUND, EXIT_BUDGET = 0, 1, 2, 3


def _parse_params(items) -> dict:
    out = {}
    for item in items or ():
        for part in item.split(","):
            if not part:
                continue
            key, _, val = part.partition("=")
            out[key.strip().replace("-", "_")] = val.strip()
    return out


def _num(v: str):
    try:
        return int(v)
    except ValueError:
        return float(v)


GENERATORS = {
    "equitable-complete": lambda a: generators.gen_equitable_complete(int(a["k"]), cap=int(a.get("cap", generators.DEFAULT_CAP))),
    "relaxed": lambda a: generators.gen_relaxed(int(a["n"]), int(a["class_size"]), int(a.get("seed", 0))),
    "random": lambda a: generators.gen_random_colored(int(a["n"]), float(a["p"]), seed=int(a.get("seed", 0))),
    "rotation": lambda a: generators.rotation_coloring(int(a["n"])),
    "tournament": lambda a: generators.gadget_tournament(int(a["n"])),
    "branch-a": lambda a: generators.gadget_branch_a(),
    "recursion": lambda a: generators.gadget_recursion(int(a.get("m", 7))),
}


def _generate(name: str, params: dict) -> ColoredGraph:
    if name not in GENERATORS:
        raise ValueError(f"unknown generator {name!r}; choose from {sorted(GENERATORS)}")
    try:
        return GENERATORS[name](params)
    except KeyError as exc:
        raise ValueError(f"generator {name!r} needs parameter {exc.args[0]!r}") from None


def _load(source: str, args) -> tuple[ColoredGraph, dict]:
    """``source`` is a file path or ``gen:NAME[:key=val,...]``."""
    if source.startswith("gen:"):
        _, _, rest = source.partition(":")
        name, _, opts = rest.partition(":")
        params = _parse_params([opts])
        params.setdefault("k", str(args.k))
        params.setdefault("seed", str(args.seed))
        if getattr(args, "cap", None) is not None:
            params.setdefault("cap", str(args.cap))
        return _generate(name, params), {"generator": name, **params}
    with open(source, "rb") as fh:
        return read_colored_graph(fh), {"file": source}


def _params(args) -> PipelineParams:
    if args.mode == "strict":
        if args.f is not None:
            raise ValueError("--f is only allowed in relaxed mode")
        return PipelineParams.strict(args.k)
    f = Fraction(args.f) if args.f is not None else None
    return PipelineParams.relaxed_with(args.k, f)


def cmd_find(args) -> int:
    g, origin = _load(args.source, args)
    p = _params(args)
    log.info("find: n=%d m=%d k=%d mode=%s origin=%s", g.n, g.m, p.k, args.mode, origin)
    trace = Trace()
    status = EXIT_OK
    try:
        w = find_short_rainbow_cycle(g, p, trace=trace, budget=args.budget)
    except NotFound as exc:
        print(f"not found: {exc}", file=sys.stderr)
        status = EXIT_NOT_FOUND if p.relaxed else EXIT_ERROR
        w = None
    finally:
        if args.trace:
            with open(args.trace, "w", encoding="utf-8") as fh:
                json.dump({"origin": origin, "params": p.to_dict(), "steps": trace.records}, fh, indent=1)
    if w is None:
        return status
    problems = verify_witness(g, w, p.target_length(g.n))
    if problems:
        print(f"witness rejected by independent check: {problems}", file=sys.stderr)
        return EXIT_ERROR
    write_witness(w, sys.stdout)
    return EXIT_OK


def cmd_oracle(args) -> int:
    g, _ = _load(args.source, args)
    try:
        w = shortest_rainbow_cycle_exact(g, args.max_len, budget=args.budget)
    except BudgetExceeded as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_BUDGET
    if args.json:
        print(json.dumps(w.to_dict() if w else None))
    else:
        print("none" if w is None else w.length)
    return EXIT_OK


def cmd_bounds(args) -> int:
    ks = default_k_grid(args.k_min, args.k_max, args.samples)
    if args.k_min < 2:
        ks = sorted(set(range(max(1, math.floor(args.k_min)), 2)) | set(ks))
    reports = all_checks(ks)
    if args.self_test:
        reports += [check_g_positive(ks, coef=1.0), check_D_bound(ks, coef=3)]
        reports[-2].name = "self_test_g_coef_1"
        reports[-1].name = "self_test_D_coef_3"
    ok = True
    for rep in reports:
        print(json.dumps(rep.to_dict()))
        ok &= rep.passed
    for k in sorted({2, 3, 4, 8, 16, 64, 1024} & set(range(2, int(args.k_max) + 1))):
        n = math.ceil(43 * f_of_k(k))
        row = {
            "name": "tabulate",
            "k": k,
            "f_k": f_of_k(k),
            "n_min": n,
            "target": -(-n // k),
            "shen_bound_aux": bound_shen(n, math.floor(f_of_k(k))),
            "bollobas_bound_at_f": bound_bollobas(n, f_of_k(k)),
        }
        print(json.dumps(row))
    return EXIT_OK if ok else EXIT_ERROR


def cmd_gen(args) -> int:
    params = _parse_params(args.param)
    params.setdefault("seed", str(args.seed))
    params.setdefault("k", str(args.k))
    if args.cap is not None:
        params.setdefault("cap", str(args.cap))
    g = _generate(args.generator, params)
    header = [f"generator={args.generator} " + " ".join(f"{k}={v}" for k, v in sorted(params.items()))]
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            write_colored_graph(g, fh, header)
    rep = validate(g, PipelineParams.strict(max(2, args.k)))
    summary = {
        "generator": args.generator,
        "params": {k: _num(v) for k, v in params.items()},
        "seed": args.seed,
        "n": g.n,
        "m": g.m,
        "min_class_size": rep.min_class_size,
        "strict_valid": rep.overall,
        "output": args.output,
    }
    print(json.dumps(summary))
    return EXIT_OK


def cmd_validate(args) -> int:
    g, origin = _load(args.source, args)
    p = _params(args)
    rep = validate(g, p)
    out = rep.to_dict()
    out["origin"] = origin
    print(json.dumps(out))
    return EXIT_OK if rep.overall else EXIT_NOT_FOUND


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rainbow-cycles", description=__doc__.split("\n")[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, source=True):
        if source:
            p.add_argument("source", help="graph file, or gen:NAME[:key=val,...]")
        p.add_argument("--k", type=int, default=2)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                       help="accepted for compatibility; searches run single-threaded")
        p.add_argument("--cap", type=int, default=None, help="vertex cap for generators")

    p = sub.add_parser("find", help="run the rainbow-cycle pipeline")
    common(p)
    p.add_argument("--mode", choices=("strict", "relaxed"), default="strict")
    p.add_argument("--f", default=None, help="relaxed mode: override f(k), e.g. 3/7")
    p.add_argument("--trace", default=None, help="write the step trace JSON here")
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(func=cmd_find)

    p = sub.add_parser("oracle", help="exact shortest rainbow cycle")
    common(p)
    p.add_argument("--max-len", type=int, default=None)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--json", action="store_true", help="print the witness instead of its length")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bounds", help="check the closed-form inequalities")
    p.add_argument("--k-min", type=float, default=2)
    p.add_argument("--k-max", type=float, default=2**20)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--self-test", action="store_true", help="add deliberately broken variants")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("gen", help="write a generated instance")
    p.add_argument("generator", choices=sorted(GENERATORS))
    common(p, source=False)
    p.add_argument("--param", action="append", help="key=value[,key=value]")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("validate", help="report whether the hypotheses hold")
    common(p)
    p.add_argument("--mode", choices=("strict", "relaxed"), default="strict")
    p.add_argument("--f", default=None)
    p.set_defaults(func=cmd_validate)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except (GraphError, OSError, ValueError, ProofStepError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
