"""Erdős-Ko-Rado for 2-sets, both directions against Collision."""

from __future__ import annotations

from ..core.function import Wrapper
from ..errors import ContractViolation, InternalError
from ..problems.certificates import Collision, EKRDisjoint, EKRDup, EKRError, Zero
from ..problems.instances import CollisionInstance, EKRInstance
from .base import Immediate, Reduced, checked, register


def collision_to_ekr(src: CollisionInstance):
    """Every set contains element 0; the other element is C(x)."""
    n, C = src.n, src.f
    F = Wrapper(n, 2 * n, lambda x: C(x) << n, inner=(C,), name="pair(0, C)",
                glue_many=lambda xs: [y << n for y in C.eval_many(xs)])
    return Reduced(EKRInstance(n, F, meta={"source": "collision"}), {})


def pullback_collision_ekr(src: CollisionInstance, aux: dict, c):
    if isinstance(c, EKRError):
        return checked(src, Zero(c.i), "set {0, 0}")
    if isinstance(c, EKRDup):
        return checked(src, Collision(c.i, c.j), "equal sets")
    raise InternalError("sets sharing element 0 cannot be disjoint")


def ekr_to_collision(src: EKRInstance):
    if src.n < 2:
        raise ContractViolation("EKR -> Collision needs n >= 2 (four indices)")
    s0, s1 = src.pair(0), src.pair(1)
    if s0[0] == s0[1]:
        return Immediate(checked(src, EKRError(0), "F(0) invalid"))
    if s1[0] == s1[1]:
        return Immediate(checked(src, EKRError(1), "F(1) invalid"))
    if set(s0) == set(s1):
        return Immediate(checked(src, EKRDup(0, 1), "F(0) = F(1)"))
    common = set(s0) & set(s1)
    if not common:
        return Immediate(checked(src, EKRDisjoint(0, 1), "F(0), F(1) disjoint"))
    (b,) = common
    (a,) = set(s0) - common
    (c,) = set(s1) - common

    def glue(i):
        x, y = src.pair(i)
        if x == y or b not in (x, y):
            return 0
        d = y if x == b else x
        return d + 1 if d < b else d

    C = Wrapper(src.n, src.n, glue, inner=(src.F,), name="other-than-b")
    return Reduced(CollisionInstance(src.n, C, meta={"source": "ekr"}), {"a": a, "b": b, "c": c})


def _zero_case(src: EKRInstance, x: int):
    """F(x) is invalid or misses b; only {a, c} can meet both F(0) and F(1)."""
    sx = set(src.pair(x))
    if len(sx) == 1:
        return checked(src, EKRError(x), "invalid set")
    for i in (0, 1):
        if not sx & set(src.pair(i)):
            return checked(src, EKRDisjoint(i, x), "set without b")
    y = next(v for v in range(1 << src.n) if v not in (0, 1, x))
    sy = set(src.pair(y))
    if len(sy) == 1:
        return checked(src, EKRError(y), "probe set invalid")
    for i in (0, 1, x):
        if sy == set(src.pair(i)):
            return checked(src, EKRDup(min(i, y), max(i, y)), "probe repeats a set")
    for i in (0, 1, x):
        if not sy & set(src.pair(i)):
            return checked(src, EKRDisjoint(min(i, y), max(i, y)), "probe misses one of three sets")
    raise InternalError("a fourth 2-set met all of {a,b}, {b,c}, {a,c}")


def pullback_ekr_collision(src: EKRInstance, aux: dict, c):
    if isinstance(c, Zero):
        return _zero_case(src, c.x)
    sx = set(src.pair(c.x))
    if len(sx) == 2 and aux["b"] in sx:
        return checked(src, EKRDup(c.x, c.y), "equal nonzero images")
    return _zero_case(src, c.x)


register("collision->ekr", "collision", "ekr",
         collision_to_ekr, pullback_collision_ekr,
         "F(x) = {0, C(x)}")
register("ekr->collision", "ekr", "collision",
         ekr_to_collision, pullback_ekr_collision,
         "the element beside b, shifted into 1..2^n-1")
