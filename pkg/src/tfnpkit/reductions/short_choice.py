"""Empty -> Short Choice by repeated midpoint splits of the unused holes."""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

from ..errors import ContractViolation, InternalError
from ..problems.certificates import EmptyHole, ShortCert
from ..problems.instances import EmptyInstance, ShortChoiceInstance
from ..problems.verify import first_preimage
from .base import Reduced, checked, prefix_predicate, register

MAX_EMPTY_WIDTH = 24


@dataclass(frozen=True)
class RangeTracker:
    """H_i = [lo, hi] minus the images of the prefix that fall inside it."""
    step: int
    lo: int
    hi: int
    excluded: tuple

    @property
    def size(self) -> int:
        if self.hi < self.lo:
            return 0
        return self.hi - self.lo + 1 - len(self.excluded)

    @property
    def midpoint(self) -> int | None:
        """Smallest element of H with at least half of H at or below it."""
        if self.size == 0:
            return None
        k = -(-self.size // 2)
        v = self.lo + k - 1
        for u in self.excluded:
            if u <= v:
                v += 1
            else:
                break
        return v

    def members(self) -> list[int]:
        gone = set(self.excluded)
        return [v for v in range(self.lo, self.hi + 1) if v not in gone]

    def below(self, value: int) -> int:
        """Elements of H at or below ``value``."""
        if value < self.lo:
            return 0
        top = min(value, self.hi)
        return top - self.lo + 1 - bisect_right(self.excluded, top)


def _restrict(lo: int, hi: int, images) -> tuple:
    return tuple(sorted({y for y in images if lo <= y <= hi}))


def range_tracker(f, n: int, prefix: tuple) -> RangeTracker:
    images = f.eval_many(list(prefix))
    lo, hi = 0, (1 << n) - 2
    for t in range(1, len(prefix)):
        mid = RangeTracker(t - 1, lo, hi, _restrict(lo, hi, images[:t])).midpoint
        if mid is None:
            break
        if images[t] <= mid:
            hi = mid
        else:
            lo = mid + 1
    return RangeTracker(len(prefix) - 1, lo, hi, _restrict(lo, hi, images))


def empty_to_short_choice(src: EmptyInstance):
    n, f = src.n, src.f
    if n > MAX_EMPTY_WIDTH:
        raise ContractViolation(f"n = {n} exceeds the desk-scale cap {MAX_EMPTY_WIDTH}")

    def test_many(state, xs):
        mid = state.midpoint
        if mid is None:
            return [0] * len(xs)
        return [1 if y <= mid else 0 for y in f.eval_many(xs)]

    preds = [prefix_predicate(n, i, lambda p: range_tracker(f, n, p), test_many, (f,), "midpoint")
             for i in range(n - 1)]
    return Reduced(ShortChoiceInstance(n, preds, meta={"source": "empty"}), {})


def pullback_empty_short_choice(src: EmptyInstance, aux: dict, c: ShortCert):
    H = range_tracker(src.f, src.n, tuple(c.elements))
    mid = H.midpoint
    if mid is None:
        raise InternalError(f"H_{H.step} is empty")
    side = [v for v in H.members() if (v > mid) == (c.c == 0)]
    if not side:
        raise InternalError(f"side {c.c} of H_{H.step} is empty")
    e = side[0]
    x = first_preimage(src, e)
    if x is not None:
        raise InternalError(f"hole candidate {e} has preimage {x}")
    return checked(src, EmptyHole(e), "midpoint side with no extension")


register("empty->short_choice", "empty", "short_choice",
         empty_to_short_choice, pullback_empty_short_choice,
         "predicate i asks whether C(x) is at most the midpoint of H_i")
