"""Command-line front end.

Exit codes: 0 success or accept, 1 reject or failed round trip, 2 unreadable
input, 3 generator cap exceeded, 4 solver budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from ..errors import BudgetExceeded, ContractViolation, DeskScaleExceeded, InternalError, NoCertificate
from ..core.circuit import CircuitError
from ..problems.verify import verify
from ..reductions import REGISTRY, Immediate, get_reduction
from ..solvers import SolveBudget
from . import io
from .generators import GENERATORS, GeneratorSpec, generate
from .pipeline import SOLVERS, PipelineSpec, run_pipeline, solve

EXIT_OK, EXIT_REJECT, EXIT_FORMAT, EXIT_CAP, EXIT_BUDGET = 0, 1, 2, 3, 4


def _value(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def _pairs(items: list[str]) -> dict:
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep:
            raise argparse.ArgumentTypeError(f"expected key=value, got {item!r}")
        out[key] = _value(value)
    return out


def _budget(args) -> SolveBudget:
    b = SolveBudget()
    if getattr(args, "budget_evals", None) is not None:
        b = SolveBudget(max_elements=b.max_elements, max_evals=args.budget_evals)
    return b


def _load_instance(path: str):
    return io.instance_from_json(io.read_json(path))


_FORMAT_ERRORS = (OSError, ValueError, KeyError, TypeError, CircuitError)


def cmd_gen(args) -> int:
    params = _pairs(args.params)
    seed = params.pop("seed", args.seed)
    flavor = params.pop("flavor", args.flavor)
    spec = GeneratorSpec(args.kind, params, int(seed), flavor)
    try:
        instance = generate(spec)
    except DeskScaleExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ValueError, KeyError, ContractViolation) as exc:
        print(f"bad generator spec: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    io.write_text(args.out, io.dumps(io.instance_to_json(instance)))
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        instance = _load_instance(args.instance)
        cert = io.certificate_from_json(io.read_json(args.certificate))
    except _FORMAT_ERRORS as exc:
        print(f"format error: {exc}")
        return EXIT_FORMAT
    report = verify(instance, cert)
    print(report)
    return EXIT_OK if report else EXIT_REJECT


def cmd_solve(args) -> int:
    try:
        instance = _load_instance(args.instance)
    except _FORMAT_ERRORS as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    try:
        cert = solve(instance, args.solver, _budget(args))
    except BudgetExceeded as exc:
        print(f"BUDGET_EXCEEDED: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, ContractViolation, NoCertificate, InternalError) as exc:
        print(f"solve failed: {exc}", file=sys.stderr)
        return EXIT_REJECT
    report = verify(instance, cert)
    if not report:
        print(f"solver output rejected: {report}", file=sys.stderr)
        return EXIT_REJECT
    io.write_text(args.out, io.dumps(io.certificate_to_json(cert)))
    return EXIT_OK


def cmd_reduce(args) -> int:
    try:
        source_doc = io.read_json(args.instance)
        source = io.instance_from_json(source_doc)
        red = get_reduction(args.name)
    except _FORMAT_ERRORS as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    params = _pairs(args.params)
    try:
        outcome = red(source, **params)
    except DeskScaleExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ValueError, ContractViolation) as exc:
        print(f"reduction refused: {exc}", file=sys.stderr)
        return EXIT_REJECT
    if isinstance(outcome, Immediate):
        print(f"immediate {outcome.certificate.kind} {list(outcome.certificate.data)}", file=sys.stderr)
        io.write_text(args.out, io.dumps({"immediate": io.certificate_to_json(outcome.certificate)}))
        return EXIT_OK
    io.write_text(args.out, io.dumps(io.derived_to_json(args.name, params, source_doc, outcome.aux)))
    return EXIT_OK


def _pipeline_spec(args) -> PipelineSpec:
    names = tuple(n for n in args.pipeline.split(",") if n) if args.pipeline else ()
    params = tuple(_pairs(p.split(";")) if p else {} for p in args.hop_params) if args.hop_params else ()
    return PipelineSpec(names, args.solver, args.mode, params)


def _emit_report(report, args):
    if args.json:
        io.write_text(args.json, io.dumps(report.to_json(args.timings)))
    print("\n".join(report.lines(args.timings)))


def cmd_roundtrip(args) -> int:
    try:
        instance = _load_instance(args.instance)
        spec = _pipeline_spec(args)
        spec.check_chain(instance.kind)
    except (KeyError, ValueError) as exc:
        print(f"bad pipeline: {exc}")
        return EXIT_FORMAT
    except _FORMAT_ERRORS as exc:
        print(f"format error: {exc}")
        return EXIT_FORMAT
    try:
        report = run_pipeline(instance, spec, _budget(args))
    except BudgetExceeded as exc:
        print(f"BUDGET_EXCEEDED: {exc}")
        return EXIT_BUDGET
    _emit_report(report, args)
    if report.ok and args.out:
        io.write_text(args.out, io.dumps(io.certificate_to_json(report.certificate)))
    return EXIT_OK if report.ok else EXIT_REJECT


def cmd_bench(args) -> int:
    params = _pairs(args.params)
    try:
        spec = _pipeline_spec(args)
        spec.check_chain(args.kind)
    except (KeyError, ValueError) as exc:
        print(f"bad pipeline: {exc}")
        return EXIT_FORMAT
    passed = failed = 0
    t0 = time.perf_counter()
    for seed in range(args.seed, args.seed + args.seeds):
        try:
            instance = generate(GeneratorSpec(args.kind, params, seed, args.flavor))
        except DeskScaleExceeded as exc:
            print(f"cap exceeded: {exc}", file=sys.stderr)
            return EXIT_CAP
        try:
            report = run_pipeline(instance, spec, _budget(args))
        except BudgetExceeded:
            print(f"seed {seed}: BUDGET_EXCEEDED")
            failed += 1
            continue
        if report.ok:
            passed += 1
        else:
            failed += 1
            print(f"seed {seed}: failed at {report.failed_hop}: {report.error}")
    line = f"{args.kind} {'|'.join(spec.reductions) or '(solve only)'}: {passed}/{passed + failed} accepted"
    if args.timings:
        line += f" in {time.perf_counter() - t0:.2f} s"
    print(line)
    return EXIT_OK if failed == 0 else EXIT_REJECT


def cmd_list(args) -> int:
    print("reductions:")
    for name in sorted(REGISTRY):
        red = REGISTRY[name]
        print(f"  {name:40s} {red.source_kind} -> {red.target_kind}  ({red.doc})")
    print("generators:")
    for kind, (_, flavors) in GENERATORS.items():
        print(f"  {kind:15s} flavors: {', '.join(flavors)}")
    print(f"solvers: {', '.join(SOLVERS)}")
    return EXIT_OK


def _pipeline_flags(p):
    p.add_argument("--pipeline", default="", help="comma-separated reduction names")
    p.add_argument("--hop-params", nargs="*", default=None,
                   help="per-hop parameters, one 'k=v;k=v' string per reduction")
    p.add_argument("--solver", choices=sorted(SOLVERS), default=None)
    p.add_argument("--mode", choices=("every", "final"), default="every",
                   help="verify after every hop (default) or only the source certificate")
    p.add_argument("--budget-evals", type=int, default=None)
    p.add_argument("--timings", action="store_true", help="include wall-clock times (reports stop being reproducible)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tfnp", description="Total search problem workbench")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a seeded instance")
    p.add_argument("kind", choices=sorted(GENERATORS))
    p.add_argument("params", nargs="*", help="key=value size parameters (seed= and flavor= also accepted)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--flavor", default="random")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="check a certificate against an instance")
    p.add_argument("instance")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", help="solve an instance and write a verified certificate")
    p.add_argument("instance")
    p.add_argument("--solver", choices=sorted(SOLVERS), default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--budget-evals", type=int, default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("reduce", help="apply one reduction and write the derived instance")
    p.add_argument("name")
    p.add_argument("instance")
    p.add_argument("params", nargs="*", help="key=value reduction parameters")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("roundtrip", help="reduce, solve and pull back through a chain")
    p.add_argument("instance")
    _pipeline_flags(p)
    p.add_argument("--json", default=None, metavar="PATH", help="also write a JSON report")
    p.add_argument("--out", default=None, help="write the source certificate here")
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("bench", help="round-trip a pipeline over a range of seeds")
    p.add_argument("kind", choices=sorted(GENERATORS))
    p.add_argument("params", nargs="*")
    p.add_argument("--seed", type=int, default=0, help="first seed")
    p.add_argument("--seeds", type=int, default=10, help="number of seeds")
    p.add_argument("--flavor", default="random")
    _pipeline_flags(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("list", help="list reductions, generators and solvers")
    p.set_defaults(func=cmd_list)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
