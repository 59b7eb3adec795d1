"""Reductions into Long Choice: from Collision (interval halving), from
weak Collision (one output bit per predicate), and from the constrained
variant (swap the forced start)."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ..core.bitvec import pack, unpack
from ..core.function import Wrapper
from ..errors import ContractViolation, InternalError
from ..problems.certificates import ChoiceSeq, Collision, Zero
from ..problems.instances import CollisionInstance, LongChoiceInstance, WeakCollisionInstance
from .base import Reduced, checked, prefix_predicate, register


# --- Collision -> Long Choice ----------------------------------------------

def _shifted(C0, n: int):
    """C(a) = C0(a), except that zeros of C0 map to 2^n - 1."""
    top = (1 << n) - 1

    def many(xs):
        return [y if y else top for y in C0.eval_many(xs)]
    return many


def _count_free(lo: int, hi: int, used: set[int]) -> int:
    if hi < lo:
        return 0
    return hi - lo + 1 - sum(1 for u in used if lo <= u <= hi)


def _kth_free(lo: int, hi: int, used: set[int], k: int) -> int:
    """Position of the k-th (1-based) integer in [lo, hi] not in ``used``."""
    v = lo + k - 1
    for u in sorted(u for u in used if lo <= u):
        if u <= v:
            v += 1
        else:
            break
    return v


@dataclass(frozen=True)
class IntervalState:
    """Interval bookkeeping for a prefix a_0..a_i.

    ``bounds`` and ``fronts`` hold B_0..B_i and F_0..F_i as inclusive
    (lo, hi) pairs; an interval with hi < lo is empty.
    """
    step: int
    bounds: tuple
    fronts: tuple
    images: tuple

    @property
    def B(self):
        return self.bounds[-1]

    @property
    def F(self):
        return self.fronts[-1]

    def unfilled(self, t: int | None = None) -> int:
        """Unfilled count of B_t with respect to a_0..a_t."""
        t = self.step if t is None else t
        lo, hi = self.bounds[t]
        return _count_free(lo, hi, set(self.images[:t + 1]))

    @property
    def consistent(self) -> bool:
        """C(a_j) lies in B_t for every t <= j <= i."""
        for t, (lo, hi) in enumerate(self.bounds):
            if not all(lo <= c <= hi for c in self.images[t:]):
                return False
        return True

    @property
    def collision_free(self) -> bool:
        return len(set(self.images)) == len(self.images)


def interval_state(C0, n: int, prefix: tuple) -> IntervalState:
    images = tuple(_shifted(C0, n)(list(prefix)))
    B = (1, (1 << n) - 1)
    bounds, fronts = [], []
    for t in range(len(prefix)):
        if t > 0:
            Bp, Fp = bounds[-1], fronts[-1]
            if Bp[1] - Bp[0] + 1 == 1:
                B = Bp
            elif Fp[0] <= images[t] <= Fp[1]:
                B = Fp
            else:
                B = (Fp[1] + 1, Bp[1])
        used = set(images[:t + 1])
        if t > 0 and bounds[-1][1] - bounds[-1][0] + 1 == 1:
            F = B
        else:
            need = -(-_count_free(B[0], B[1], used) // 2)
            F = (B[0], _kth_free(B[0], B[1], used, need)) if need else (B[0], B[0] - 1)
        bounds.append(B)
        fronts.append(F)
    state = IntervalState(len(prefix) - 1, tuple(bounds), tuple(fronts), images)
    i = state.step
    if i <= n - 2 and state.collision_free and state.consistent:
        expected = (1 << (n - i)) - 2
        if state.unfilled() != expected:
            raise InternalError(f"unfilled count of B_{i} is {state.unfilled()}, expected {expected}")
    return state


def collision_to_long_choice(src: CollisionInstance):
    n = src.n
    if n < 2:
        raise ContractViolation("Collision -> Long Choice needs n >= 2")
    C0 = src.f
    shifted = _shifted(C0, n)

    def test_many(state, xs):
        lo, hi = state.F
        return [1 if lo <= c <= hi else 0 for c in shifted(xs)]

    preds = [prefix_predicate(n, i, lambda p: interval_state(C0, n, p), test_many, (C0,), "interval")
             for i in range(n - 1)]
    return Reduced(LongChoiceInstance(n, preds, meta={"source": "collision"}), {})


def pullback_collision_long_choice(src: CollisionInstance, aux: dict, c: ChoiceSeq):
    seq = c.elements
    images = src.f.eval_many(list(seq))
    for a, y in zip(seq, images):
        if y == 0:
            return checked(src, Zero(a), "zero in certificate")
    for (a, ya), (b, yb) in combinations(zip(seq, images), 2):
        if ya == yb:
            return checked(src, Collision(a, b), "collision in certificate")
    raise InternalError("accepted Long Choice certificate holds neither a zero nor a collision")


# --- weak Collision -> unary Long Choice ----------------------------------

def _bit_predicate(src: WeakCollisionInstance, i: int) -> Wrapper:
    n, C = src.n, src.f
    shift = (i + 1) * n
    if i >= src.m:
        return Wrapper((i + 2) * n, 1, lambda v: 0, inner=(C,), name=f"const0[P_{i}]",
                       glue_many=lambda vs: [0] * len(vs))
    return Wrapper((i + 2) * n, 1, lambda v: (C(v >> shift) >> i) & 1, inner=(C,), name=f"bit{i}[P_{i}]",
                   glue_many=lambda vs: [(y >> i) & 1 for y in C.eval_many([v >> shift for v in vs])])


def weak_collision_to_unary_long_choice(src: WeakCollisionInstance):
    preds = [_bit_predicate(src, i) for i in range(src.n - 1)]
    return Reduced(LongChoiceInstance(src.n, preds, variant="unary", meta={"source": "weak_collision"}), {})


def pullback_weak_collision_long_choice(src: WeakCollisionInstance, aux: dict, c: ChoiceSeq):
    seq = c.elements
    return checked(src, Collision(seq[-2], seq[-1]), "last two elements")


# --- constrained Long Choice -> Long Choice -------------------------------

def _swap(start: int, first: int, values):
    out = []
    for v in values:
        if v == first:
            out.append(start)
        elif v == start:
            out.append(first)
        else:
            out.append(v)
    return out


def unconstrain_long_choice(src: LongChoiceInstance):
    if src.variant != "constrained":
        raise ContractViolation("source must be a constrained Long Choice instance")
    n, a0 = src.n, src.start
    preds = []
    for k, P in enumerate(src.predicates):
        def glue(v, k=k, P=P):
            vals = unpack(v, n, k + 2)
            return P(pack(_swap(a0, vals[0], vals), n))

        def glue_many(vs, k=k, P=P):
            packed = []
            for v in vs:
                vals = unpack(v, n, k + 2)
                packed.append(pack(_swap(a0, vals[0], vals), n))
            return P.eval_many(packed)
        preds.append(Wrapper((k + 2) * n, 1, glue, inner=(P,), name=f"swap[T_{k}]", glue_many=glue_many))
    return Reduced(LongChoiceInstance(n, preds, meta={"source": "constrained_long_choice"}), {})


def pullback_unconstrain(src: LongChoiceInstance, aux: dict, c: ChoiceSeq):
    seq = c.elements
    return checked(src, ChoiceSeq(tuple(_swap(src.start, seq[0], seq))), "swapped certificate")


register("collision->long_choice", "collision", "long_choice",
         collision_to_long_choice, pullback_collision_long_choice,
         "interval-halving predicates on the shifted map")
register("weak_collision->long_choice", "weak_collision", "long_choice",
         weak_collision_to_unary_long_choice, pullback_weak_collision_long_choice,
         "predicate i reads output bit i")
register("constrained_long_choice->long_choice", "long_choice", "long_choice",
         unconstrain_long_choice, pullback_unconstrain,
         "swap the forced start with the first element")
