"""Bad colorings, Turán cliques and bad k-set colorings.

Edge indices below 4^n in the Collision embedding split as i = a * 2^n + b.
The lifts from k to k+1 colors keep the old index block and append the
complete bipartite graph between the old nodes V and a new class W of 2^n
nodes, row-major over V: new index M + 1 + v * 2^n + w_offset.
"""

from __future__ import annotations

from itertools import combinations
from math import comb

from ..core.bitvec import ceil_log2, pack, unpack, width_for_count
from ..core.function import Wrapper
from ..errors import InternalError
from ..problems.certificates import (
    BadEdge,
    BadSet,
    Collision,
    CliqueEdges,
    EdgeDup,
    EdgeError,
    SetDup,
    Zero,
)
from ..problems.instances import BadColoringInstance, BadKSetInstance, CollisionInstance, TuranInstance
from .base import Reduced, checked, register


def edge_count(k: int, n: int) -> int:
    return comb(k, 2) * (1 << (2 * n)) + 1


def lifted_edge_count(k: int, n: int) -> int:
    """Old block plus the V x W block; equals edge_count(k + 1, n)."""
    return edge_count(k, n) + (k << n) * (1 << n)


# --- Collision -> bad 2-coloring -------------------------------------------

def _halves_edges(n: int, D):
    half = 1 << n
    sentinel = 1 << (2 * n)
    w = n + 1

    def edge(a_img, b_img):
        return a_img | ((b_img + half) << w)

    def glue_many(idx):
        out = []
        pairs = [(i >> n, i & (half - 1)) for i in idx if i < sentinel]
        images = D.eval_many(sorted({v for p in pairs for v in p}))
        table = dict(zip(sorted({v for p in pairs for v in p}), images))
        for i in idx:
            if i < sentinel:
                out.append(edge(table[i >> n], table[i & (half - 1)]))
            else:
                out.append(edge(0, 0))
        return out

    return Wrapper(2 * n + 1, 2 * w, lambda i: glue_many([i])[0], inner=(D,), name="halves",
                   glue_many=glue_many)


def collision_to_bad2coloring(src: CollisionInstance):
    n = src.n
    E = _halves_edges(n, src.f)
    C = Wrapper(n + 1, 1, lambda v: v >> n, name="half")
    return Reduced(BadColoringInstance(2, n, E, C, meta={"source": "collision"}), {})


def _dup_to_collision(src: CollisionInstance, i: int, j: int):
    n = src.n
    sentinel = 1 << (2 * n)
    if sentinel in (i, j):
        other = i if j == sentinel else j
        return checked(src, Zero(other >> n), "edge equal to (0, 2^n)")
    ai, bi, aj, bj = i >> n, i & ((1 << n) - 1), j >> n, j & ((1 << n) - 1)
    if ai != aj:
        return checked(src, Collision(min(ai, aj), max(ai, aj)), "equal left endpoints")
    return checked(src, Collision(min(bi, bj), max(bi, bj)), "equal right endpoints")


def pullback_collision_bad2(src: CollisionInstance, aux: dict, c):
    if isinstance(c, EdgeDup):
        return _dup_to_collision(src, c.i, c.j)
    raise InternalError(f"{c.kind} cannot arise: every edge is valid and joins the two halves")


# --- bad k-coloring -> Turán ------------------------------------------------

def bad_coloring_to_turan(src: BadColoringInstance):
    return Reduced(TuranInstance(src.k, src.n, src.E, meta={"source": "bad_coloring"}), {})


def pullback_bad_turan(src: BadColoringInstance, aux: dict, c):
    if isinstance(c, (EdgeError, EdgeDup)):
        return checked(src, c, "passed through")
    by_color = {}
    for i in c.indices:
        for v in src.valid_edge(i):
            by_color.setdefault(src.color_of(v), set()).add(v)
    for nodes in by_color.values():
        if len(nodes) >= 2:
            u, v = sorted(nodes)[:2]
            for i in c.indices:
                if src.valid_edge(i) == (u, v):
                    return checked(src, BadEdge(i), "same-colored clique edge")
    raise InternalError("a (k+1)-clique with all colors distinct under k colors")


# --- lifts from k to k + 1 -------------------------------------------------

def _lifted_edges(src):
    k, n = src.k, src.n
    M = edge_count(k, n) - 1
    old_w = src.node_width
    new_w = n + ceil_log2(k + 1)
    base = k << n
    E = src.E

    def repack(i, v):
        a, b = v & ((1 << old_w) - 1), v >> old_w
        if a == b or a >= base or b >= base:
            return 0
        return a | (b << new_w)

    def new_edge(i):
        t = i - M - 1
        return (t >> n) | ((base + (t & ((1 << n) - 1))) << new_w)

    def glue_many(idx):
        old = [i for i in idx if i <= M]
        images = iter(E.eval_many(old))
        out = []
        for i in idx:
            if i <= M:
                out.append(repack(i, next(images)))
            elif i < M + 1 + (k << (2 * n)):
                out.append(new_edge(i))
            else:
                out.append(0)
        return out

    index_width = width_for_count(edge_count(k + 1, n))
    return Wrapper(index_width, 2 * new_w, lambda i: glue_many([i])[0], inner=(E,),
                   name=f"lift[{k}->{k + 1}]", glue_many=glue_many)


def lift_bad_coloring(src: BadColoringInstance):
    k, n = src.k, src.n
    base = k << n
    C = src.C
    new_w = n + ceil_log2(k + 1)
    old_w = src.node_width

    def color(v):
        if v >= base:
            return k
        return C(v & ((1 << old_w) - 1)) % k

    Cn = Wrapper(new_w, width_for_count(k + 1), color, inner=(C,), name="old colors + W")
    target = BadColoringInstance(k + 1, n, _lifted_edges(src), Cn, meta={"source": "bad_coloring"})
    return Reduced(target, {"old_block": edge_count(k, n)})


def pullback_lift_bad_coloring(src: BadColoringInstance, aux: dict, c):
    for i in _indices(c):
        if i >= aux["old_block"]:
            raise InternalError(f"{c.kind} touches the V x W block, whose edges are distinct and legal")
    return checked(src, c, "restricted to the old block")


def lift_turan(src: TuranInstance):
    target = TuranInstance(src.k + 1, src.n, _lifted_edges(src), meta={"source": "turan"})
    return Reduced(target, {"old_block": edge_count(src.k, src.n)})


def pullback_lift_turan(src: TuranInstance, aux: dict, c):
    if not isinstance(c, CliqueEdges):
        for i in _indices(c):
            if i >= aux["old_block"]:
                raise InternalError(f"{c.kind} touches the V x W block, whose edges are distinct and valid")
        return checked(src, c, "restricted to the old block")
    target = lift_turan(src).target
    index = {}
    for i in c.indices:
        index[target.valid_edge(i)] = i
    nodes = sorted({v for e in index for v in e})
    base = src.k << src.n
    kept = [v for v in nodes if v < base][:src.k + 1]
    if len(kept) < src.k + 1:
        raise InternalError("a clique with two W nodes, but W is independent")
    # Old nodes keep their ids, so target indices of old edges are source indices.
    edges = tuple(index[e] for e in combinations(kept, 2))
    if any(i >= aux["old_block"] for i in edges):
        raise InternalError("an edge between old nodes outside the old block")
    return checked(src, CliqueEdges(edges), "clique inside the old graph")


def _indices(c) -> tuple:
    if isinstance(c, (EdgeError, BadEdge)):
        return (c.i,)
    if isinstance(c, EdgeDup):
        return (c.i, c.j)
    return tuple(c.indices)


# --- bad k-set colorings ---------------------------------------------------

def collision_to_bad_kset(src: CollisionInstance):
    n, C = src.n, src.f
    top = 1 << n

    def glue_many(idx):
        inside = [i for i in idx if i < top]
        images = iter(C.eval_many(inside))
        return [next(images) if i < top else 0 for i in idx]

    F = Wrapper(n + 1, n, lambda i: glue_many([i])[0], inner=(C,), name="C, then 0",
                glue_many=glue_many)
    colors = Wrapper(n, 1, lambda v: 0, name="one color")
    return Reduced(BadKSetInstance(1, n, F, colors, meta={"source": "collision"}), {})


def pullback_collision_bad_kset(src: CollisionInstance, aux: dict, c):
    if isinstance(c, BadSet):
        raise InternalError("every image is a node in range")
    top = 1 << src.n
    i, j = min(c.i, c.j), max(c.i, c.j)
    if j == top:
        return checked(src, Zero(i), "duplicate of the extra set {0}")
    return checked(src, Collision(i, j), "duplicate sets")


def lift_bad_kset(src: BadKSetInstance):
    """F'(a * 2^n + b) = F(a) plus W node b; a bad F(a) becomes k+1 copies of that node."""
    k, n = src.k, src.n
    base = k << n
    old_w = src.node_width
    new_w = n + ceil_log2(k + 1)
    F, C = src.F, src.C
    mask = (1 << n) - 1

    def glue(i):
        a, b = i >> n, i & mask
        w = base + b
        if src.is_bad(a):
            return pack([w] * (k + 1), new_w)
        return pack(unpack(F(a), old_w, k) + [w], new_w)

    def color(v):
        if v >= base:
            return k
        return C(v & ((1 << old_w) - 1)) % k

    Fn = Wrapper(k * n + n + 1, (k + 1) * new_w, glue, inner=(F, C), name=f"kset-lift[{k}->{k + 1}]")
    Cn = Wrapper(new_w, width_for_count(k + 1), color, inner=(C,), name="old colors + W")
    return Reduced(BadKSetInstance(k + 1, n, Fn, Cn, meta={"source": "bad_kset"}), {})


def pullback_lift_bad_kset(src: BadKSetInstance, aux: dict, c):
    n = src.n
    if isinstance(c, BadSet):
        return checked(src, BadSet(c.i >> n), "bad source set")
    ai, aj = c.i >> n, c.j >> n
    for a in (ai, aj):
        if src.is_bad(a):
            return checked(src, BadSet(a), "bad source set behind a duplicate")
    if ai == aj:
        raise InternalError("equal sets with one source set but different W nodes")
    return checked(src, SetDup(min(ai, aj), max(ai, aj)), "duplicate source sets")


register("collision->bad_coloring", "collision", "bad_coloring",
         collision_to_bad2coloring, pullback_collision_bad2,
         "edges (D(a), D(b) + 2^n) between two color halves")
register("bad_coloring->turan", "bad_coloring", "turan",
         bad_coloring_to_turan, pullback_bad_turan,
         "same edges; a (k+1)-clique holds two same-colored nodes")
register("bad_coloring->bad_coloring+1", "bad_coloring", "bad_coloring",
         lift_bad_coloring, pullback_lift_bad_coloring,
         "add a color class joined to every old node")
register("turan->turan+1", "turan", "turan",
         lift_turan, pullback_lift_turan,
         "add an independent class joined to every old node")
register("collision->bad_kset", "collision", "bad_kset",
         collision_to_bad_kset, pullback_collision_bad_kset,
         "one-element sets C(i), plus {0}")
register("bad_kset->bad_kset+1", "bad_kset", "bad_kset",
         lift_bad_kset, pullback_lift_bad_kset,
         "append a W node to each source set")
