"""Reduction descriptors, outcomes and the name registry."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from ..core.bitvec import unpack
from ..core.function import Function, Wrapper
from ..errors import InternalError
from ..problems.verify import verify


@dataclass(frozen=True)
class Immediate:
    """The source was answered during the forward pass."""
    certificate: object


@dataclass(frozen=True)
class Reduced:
    target: object
    aux: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Reduction:
    name: str
    source_kind: str
    target_kind: str
    forward: Callable  # (source, **params) -> Immediate | Reduced
    pullback: Callable  # (source, aux, target certificate) -> source certificate
    doc: str = ""

    def __call__(self, source, **params):
        if source.kind != self.source_kind:
            raise ValueError(f"{self.name} expects a {self.source_kind} instance, got {source.kind}")
        return self.forward(source, **params)


REGISTRY: dict[str, Reduction] = {}


def register(name: str, source_kind: str, target_kind: str, forward, pullback, doc: str = "") -> Reduction:
    if name in REGISTRY:
        raise ValueError(f"duplicate reduction name {name!r}")
    red = Reduction(name, source_kind, target_kind, forward, pullback, doc)
    REGISTRY[name] = red
    return red


def get_reduction(name: str) -> Reduction:
    try:
        return REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown reduction {name!r}; known: {', '.join(sorted(REGISTRY))}") from None


def checked(source, certificate, why: str):
    """Return ``certificate`` after confirming it on ``source``; a failure is a construction bug."""
    report = verify(source, certificate)
    if not report:
        raise InternalError(f"{why}: pulled-back {certificate} rejected: {report}")
    return certificate


def prefix_predicate(n: int, i: int, state_of: Callable[[tuple], object],
                     test_many: Callable[[object, Sequence[int]], list[int]],
                     inner: Sequence[Function], name: str) -> Wrapper:
    """P_i over (a_0..a_i, x) built from a prefix state and a batch test on x.

    The state is recomputed from the prefix on every call; batches that
    share a prefix compute it once per batch.
    """
    prefix_bits = (i + 1) * n
    mask = (1 << prefix_bits) - 1

    def glue(v):
        prefix = tuple(unpack(v & mask, n, i + 1))
        return test_many(state_of(prefix), [v >> prefix_bits])[0]

    def glue_many(vs):
        groups: dict[int, list[int]] = {}
        for pos, v in enumerate(vs):
            groups.setdefault(v & mask, []).append(pos)
        out = [0] * len(vs)
        for p, positions in groups.items():
            state = state_of(tuple(unpack(p, n, i + 1)))
            bits = test_many(state, [vs[q] >> prefix_bits for q in positions])
            for q, b in zip(positions, bits):
                out[q] = b
        return out

    return Wrapper((i + 2) * n, 1, glue, inner=inner, name=f"{name}[P_{i}]", glue_many=glue_many)
