"""Reduction chains: forward through each hop, solve the last instance,
then pull the certificate back hop by hop."""

from __future__ import annotations

from dataclasses import dataclass, field
import time

from ..errors import BudgetExceeded, ContractViolation, InternalError, NoCertificate
from ..problems.verify import verify
from ..reductions import Immediate, get_reduction
from ..solvers import (
    SolveBudget,
    solve_bruteforce,
    solve_long_choice_majority,
    solve_ramsey,
    solve_short_choice_minority,
)
from ..solvers.ramsey import required_width

SOLVERS = {
    "majority": (("long_choice",), solve_long_choice_majority),
    "minority": (("short_choice",), solve_short_choice_minority),
    "sequence": (("ramsey2", "ramsey"), solve_ramsey),
    "bruteforce": (None, solve_bruteforce),
}


def default_solver(instance) -> str:
    kind = instance.kind
    if kind == "long_choice":
        return "majority"
    if kind == "short_choice":
        return "minority"
    if kind in ("ramsey2", "ramsey") and instance.num_colors > 1 and \
            instance.node_width >= required_width(instance.num_colors, instance.target):
        return "sequence"
    return "bruteforce"


def solve(instance, solver: str | None = None, budget: SolveBudget | None = None):
    name = solver or default_solver(instance)
    if name not in SOLVERS:
        raise ValueError(f"unknown solver {name!r}; choose from {', '.join(SOLVERS)}")
    kinds, fn = SOLVERS[name]
    if kinds is not None and instance.kind not in kinds:
        raise ValueError(f"solver {name} does not handle {instance.kind} instances")
    return fn(instance, budget) if budget is not None else fn(instance)


@dataclass(frozen=True)
class PipelineSpec:
    reductions: tuple
    solver: str | None = None
    mode: str = "every"
    params: tuple = ()

    def __post_init__(self):
        if self.mode not in ("every", "final"):
            raise ValueError(f"mode must be 'every' or 'final', not {self.mode!r}")
        object.__setattr__(self, "reductions", tuple(self.reductions))
        if not self.params:
            object.__setattr__(self, "params", tuple({} for _ in self.reductions))
        if len(self.params) != len(self.reductions):
            raise ValueError("one parameter dict per reduction")

    def check_chain(self, source_kind: str):
        kind = source_kind
        for name in self.reductions:
            red = get_reduction(name)
            if red.source_kind != kind:
                raise ValueError(f"{name} expects {red.source_kind}, but the chain carries {kind}")
            kind = red.target_kind
        if self.solver is not None:
            if self.solver not in SOLVERS:
                raise ValueError(f"unknown solver {self.solver!r}")
            kinds = SOLVERS[self.solver][0]
            if kinds is not None and kind not in kinds:
                raise ValueError(f"solver {self.solver} does not handle {kind} instances")
        return kind


@dataclass
class Step:
    stage: str  # "forward" | "immediate" | "solve" | "pullback" | "verify"
    name: str
    detail: str
    ok: bool = True
    seconds: float = 0.0


@dataclass
class PipelineReport:
    spec: PipelineSpec
    steps: list = field(default_factory=list)
    certificate: object = None
    ok: bool = False
    failed_hop: str | None = None
    error: str | None = None

    def lines(self, timings: bool = False) -> list[str]:
        head = f"pipeline {' | '.join(self.spec.reductions) or '(none)'} ; solver {self.spec.solver or 'default'} ; mode {self.spec.mode}"
        out = [head]
        for s in self.steps:
            line = f"{s.stage:9s} {s.name}: {s.detail}{'' if s.ok else '  FAILED'}"
            if timings:
                line += f"  [{s.seconds * 1000:.1f} ms]"
            out.append(line)
        if self.ok:
            out.append(f"result    accepted {self.certificate.kind} {list(self.certificate.data)}")
        else:
            out.append(f"result    failed at {self.failed_hop}: {self.error}")
        return out

    def to_json(self, timings: bool = False) -> dict:
        doc = {
            "pipeline": list(self.spec.reductions),
            "solver": self.spec.solver,
            "mode": self.spec.mode,
            "ok": self.ok,
            "steps": [
                {"stage": s.stage, "name": s.name, "detail": s.detail, "ok": s.ok,
                 **({"ms": round(s.seconds * 1000, 3)} if timings else {})}
                for s in self.steps
            ],
        }
        if self.ok:
            doc["certificate"] = {"kind": self.certificate.kind, "data": list(self.certificate.data)}
        else:
            doc["failed_hop"] = self.failed_hop
            doc["error"] = self.error
        return doc


class _HopFailure(Exception):
    def __init__(self, hop: str, message: str):
        super().__init__(message)
        self.hop = hop


def _timed(fn, *args, **kwargs):
    t0 = time.perf_counter()
    value = fn(*args, **kwargs)
    return value, time.perf_counter() - t0


def run_pipeline(instance, spec: PipelineSpec, budget: SolveBudget | None = None) -> PipelineReport:
    """Run ``spec`` on ``instance``.  Budget overruns propagate as BudgetExceeded."""
    report = PipelineReport(spec)
    spec.check_chain(instance.kind)
    chain = [instance]
    auxes = []
    cert = None
    try:
        for hop, (name, params) in enumerate(zip(spec.reductions, spec.params), start=1):
            label = f"hop {hop} {name}"
            red = get_reduction(name)
            try:
                outcome, dt = _timed(red, chain[-1], **params)
            except (ContractViolation, InternalError) as exc:
                raise _HopFailure(label, f"forward failed: {exc}") from exc
            if isinstance(outcome, Immediate):
                cert = outcome.certificate
                rep = verify(chain[-1], cert)
                report.steps.append(Step("immediate", label, f"{cert.kind} {list(cert.data)}", bool(rep), dt))
                if not rep:
                    raise _HopFailure(label, f"immediate certificate rejected: {rep}")
                break
            chain.append(outcome.target)
            auxes.append(outcome.aux)
            report.steps.append(Step("forward", label, f"{red.source_kind} -> {outcome.target.kind}", True, dt))
        if cert is None:
            terminal = chain[-1]
            solver = spec.solver or default_solver(terminal)
            try:
                cert, dt = _timed(solve, terminal, solver, budget)
            except (InternalError, NoCertificate) as exc:
                raise _HopFailure(f"solve {solver}", str(exc)) from exc
            ok = bool(verify(terminal, cert)) if spec.mode == "every" or len(chain) == 1 else True
            report.steps.append(Step("solve", solver, f"{terminal.kind} -> {cert.kind} {list(cert.data)}", ok, dt))
            if not ok:
                raise _HopFailure(f"solve {solver}", "solver output rejected")
        for hop in range(len(auxes), 0, -1):
            name = spec.reductions[hop - 1]
            label = f"hop {hop} {name}"
            red = get_reduction(name)
            src = chain[hop - 1]
            before = cert.kind
            try:
                cert, dt = _timed(red.pullback, src, auxes[hop - 1], cert)
            except (ContractViolation, InternalError) as exc:
                raise _HopFailure(label, f"pullback failed: {exc}") from exc
            ok = True
            if spec.mode == "every" or hop == 1:
                ok = bool(verify(src, cert))
            report.steps.append(Step("pullback", label, f"{before} -> {cert.kind} {list(cert.data)}", ok, dt))
            if not ok:
                raise _HopFailure(label, f"pulled-back {cert.kind} rejected: {verify(src, cert)}")
        final = verify(instance, cert)
        if not final:
            raise _HopFailure("source", f"final certificate rejected: {final}")
        report.certificate = cert
        report.ok = True
    except _HopFailure as exc:
        report.failed_hop = exc.hop
        report.error = str(exc)
    return report


__all__ = ["BudgetExceeded", "PipelineReport", "PipelineSpec", "SOLVERS", "default_solver", "run_pipeline", "solve"]
