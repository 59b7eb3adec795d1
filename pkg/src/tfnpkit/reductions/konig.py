"""König: Collision embeds as a heap with a hashed bottom layer, and König
maps to Collision by indexing nodes along their root paths."""

from __future__ import annotations

import warnings

from ..core.function import Wrapper
from ..errors import ContractViolation, InternalError
from ..problems.certificates import (
    Collision,
    FarAway,
    IdenticalChildren,
    InvalidRoot,
    LongPath,
    NonUniqueRoot,
    Zero,
)
from ..problems.instances import CollisionInstance, KonigInstance
from ..problems.verify import verify
from .base import Reduced, checked, register

MAX_KONIG_WIDTH = 20


def heap_parent(s: int) -> tuple[int, int]:
    """(parent, side) in the array heap: left children are odd, right children even."""
    if s == 0:
        return 0, 0
    return (s - 1) >> 1, 0 if s & 1 else 1


def collision_to_konig(src: CollisionInstance):
    """Nodes below 2^n form a heap; node 2^n + x hangs where heap slot C(x) + 2^n - 1 would."""
    n, C = src.n, src.f
    half = 1 << n

    def slot(s, image):
        return image + half - 1 if s >= half else s

    def encode(s, image=None):
        p, side = heap_parent(slot(s, image))
        return p | (side << (n + 1))

    def glue(s):
        return encode(s, C(s - half) if s >= half else None)

    def glue_many(ss):
        hashed = [s - half for s in ss if s >= half]
        images = iter(C.eval_many(hashed))
        return [encode(s, next(images)) if s >= half else encode(s) for s in ss]

    parent = Wrapper(n + 1, n + 2, glue, inner=(C,), name="heap+hash", glue_many=glue_many)
    return Reduced(KonigInstance(n + 1, parent, 0, meta={"source": "collision"}), {})


def _identical_to_source(src: CollisionInstance, a: int, b: int):
    half = 1 << src.n
    a, b = min(a, b), max(a, b)
    if a < half:
        return checked(src, Zero(b - half), "hashed node beside the last heap slot")
    return checked(src, Collision(a - half, b - half), "two hashed nodes in one slot")


def pullback_collision_konig(src: CollisionInstance, aux: dict, c):
    if isinstance(c, IdenticalChildren):
        return _identical_to_source(src, c.a, c.b)
    if isinstance(c, LongPath):
        warnings.warn("Collision->Konig pullback received a LongPath certificate; "
                      "falling back to a search for identical children", RuntimeWarning, stacklevel=2)
        target = collision_to_konig(src).target
        seen: dict[tuple[int, int], int] = {}
        for s in range(1 << target.n):
            p = target.parent_of(s)
            if p[0] == s:
                continue
            if p in seen:
                return _identical_to_source(src, seen[p], s)
            seen[p] = s
        raise InternalError("no identical children in the heap embedding")
    raise InternalError(f"{c.kind} cannot arise from the heap embedding")


# --- König -> Collision ----------------------------------------------------

def konig_index(I: KonigInstance, u: int) -> int | None:
    """Heap index of u read from its root path, or None when u is a violation witness.

    Violations: invalid root, u a second root, u not reaching the root in n
    steps, or u at depth exactly n.
    """
    r = I.root
    if I.parent_of(r)[0] != r:
        return None
    sides = []
    v = u
    while v != r:
        if len(sides) == I.n:
            return None
        p, side = I.parent_of(v)
        if p == v:
            return None
        sides.append(side)
        v = p
    if len(sides) == I.n:
        return None
    index = 0
    for side in reversed(sides):
        index = 2 * index + 1 + side
    return index


def konig_to_collision(src: KonigInstance):
    if src.n > MAX_KONIG_WIDTH:
        raise ContractViolation(f"n = {src.n} exceeds the desk-scale cap {MAX_KONIG_WIDTH}")

    def glue(u):
        index = konig_index(src, u)
        return 0 if index is None else index + 1

    f = Wrapper(src.n, src.n, glue, inner=(src.parent,), name="root-path index")
    return Reduced(CollisionInstance(src.n, f, meta={"source": "konig"}), {})


def _zero_to_konig(src: KonigInstance, x: int):
    r = src.root
    if src.parent_of(r)[0] != r:
        return checked(src, InvalidRoot(), "root is not its own parent")
    if x != r and src.parent_of(x)[0] == x:
        return checked(src, NonUniqueRoot(x), "second root")
    for candidate in (FarAway(x), LongPath(x)):
        if verify(src, candidate):
            return candidate
    raise InternalError(f"node {x} maps to 0 but witnesses no violation")


def pullback_konig_collision(src: KonigInstance, aux: dict, c):
    if isinstance(c, Zero):
        return _zero_to_konig(src, c.x)
    u, v = c.x, c.y
    if konig_index(src, u) is None:
        return _zero_to_konig(src, u)
    # Equal indices mean equal side sequences; climb in lockstep until the parents meet.
    while True:
        pu, pv = src.parent_of(u), src.parent_of(v)
        if pu == pv:
            return checked(src, IdenticalChildren(u, v), "first shared parent")
        u, v = pu[0], pv[0]
        if u == v:
            raise InternalError("paths merged with different sides")


register("collision->konig", "collision", "konig",
         collision_to_konig, pullback_collision_konig,
         "heap with a hashed bottom layer")
register("konig->collision", "konig", "collision",
         konig_to_collision, pullback_konig_collision,
         "heap index along the root path, 0 for violations")
