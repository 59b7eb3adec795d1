"""Majority walk for Long Choice and minority walk for Short Choice.

Ties between equal-size sides go to predicate value 0, and the next
element is always the smallest one left in the chosen side.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from ..errors import InternalError
from ..problems.certificates import ChoiceSeq, ShortCert
from ..problems.instances import LongChoiceInstance, ShortChoiceInstance
from .budget import Meter, SolveBudget


@dataclass(frozen=True)
class ChoiceWalkState:
    step: int
    candidates: tuple  # S_i, sorted; contains the last prefix element
    prefix: tuple      # a_0..a_i


def _split(I, i: int, prefix: tuple, rest: list[int], meter: Meter):
    meter.charge(len(rest))
    vals = I.predicate_many(i, prefix, rest)
    zeros = [x for x, v in zip(rest, vals) if v == 0]
    ones = [x for x, v in zip(rest, vals) if v == 1]
    return zeros, ones


def long_choice_walk(I: LongChoiceInstance, budget: SolveBudget | None = None) -> Iterator[ChoiceWalkState]:
    """Yield the walk states S_0..S_{n-1} of the majority walk."""
    meter = Meter(budget)
    meter.elements(I.universe_size)
    first = I.start if I.variant == "constrained" else 0
    state = ChoiceWalkState(0, tuple(range(I.universe_size)), (first,))
    yield state
    for i in range(I.n - 1):
        a_i = state.prefix[-1]
        rest = [x for x in state.candidates if x != a_i]
        zeros, ones = _split(I, i, state.prefix, rest, meter)
        side = ones if len(ones) > len(zeros) else zeros
        if not side:
            raise InternalError(f"majority walk emptied at step {i + 1}")
        state = ChoiceWalkState(i + 1, tuple(side), state.prefix + (side[0],))
        yield state


def solve_long_choice_majority(I: LongChoiceInstance, budget: SolveBudget | None = None) -> ChoiceSeq:
    for state in long_choice_walk(I, budget):
        pass
    rest = [x for x in state.candidates if x != state.prefix[-1]]
    if not rest:
        raise InternalError("no element left for the final position")
    return ChoiceSeq(state.prefix + (rest[0],))


def short_choice_walk(I: ShortChoiceInstance, budget: SolveBudget | None = None) -> Iterator[ChoiceWalkState | ShortCert]:
    """Yield walk states, then the certificate as the final item."""
    meter = Meter(budget)
    meter.elements(I.universe_size)
    state = ChoiceWalkState(0, tuple(range(I.universe_size)), (0,))
    yield state
    for j in range(I.n - 1):
        a_j = state.prefix[-1]
        rest = [x for x in state.candidates if x != a_j]
        zeros, ones = _split(I, j, state.prefix, rest, meter)
        if not zeros:
            yield ShortCert(state.prefix, 0)
            return
        if not ones:
            yield ShortCert(state.prefix, 1)
            return
        side = ones if len(ones) < len(zeros) else zeros
        state = ChoiceWalkState(j + 1, tuple(side), state.prefix + (side[0],))
        yield state
    raise InternalError("minority walk ran past the last predicate")


def solve_short_choice_minority(I: ShortChoiceInstance, budget: SolveBudget | None = None) -> ShortCert:
    for item in short_choice_walk(I, budget):
        pass
    return item
