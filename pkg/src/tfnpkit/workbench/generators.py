"""Seeded instance generators.

Every generator draws from one SplitMix64 stream seeded with
``GeneratorSpec.seed``, so a (kind, params, flavor, seed) tuple fixes the instance bit for
bit.  Functions narrow enough for a table (input width <= TABLE_LIMIT) are
tables; wider ones are random circuits over a sampled set of input bits.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Callable

from ..core.bitvec import ceil_log2, pack, width_for_count
from ..core.circuit import CircuitBuilder
from ..core.function import CircuitFunction, Function, TruthTable, constant
from ..errors import DeskScaleExceeded
from ..problems import instances as inst
from .prng import SplitMix64

TABLE_LIMIT = 16
MAX_UNIVERSE_WIDTH = 16
CIRCUIT_INPUTS = 24


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    params: dict = field(default_factory=dict)
    seed: int = 0
    flavor: str = "random"

    def describe(self) -> dict:
        return {"kind": self.kind, "params": dict(self.params), "seed": self.seed, "flavor": self.flavor}


# --- function builders -------------------------------------------------------

def random_table(rng: SplitMix64, in_w: int, out_w: int, value: Callable[[], int] | None = None) -> TruthTable:
    if in_w > TABLE_LIMIT:
        raise DeskScaleExceeded(f"a {in_w}-bit table exceeds the generator limit of {TABLE_LIMIT} bits")
    draw = value or (lambda: rng.bits(out_w))
    return TruthTable(in_w, out_w, [draw() for _ in range(1 << in_w)])


def random_circuit(rng: SplitMix64, in_w: int, out_w: int, positions=None, gates: int | None = None) -> CircuitFunction:
    """Random AND/OR/XOR/NOT DAG over a sample of input bits.

    XOR gates dominate so outputs stay close to balanced.
    """
    pool = list(range(in_w)) if positions is None else list(positions)
    if len(pool) > CIRCUIT_INPUTS:
        pool = sorted(rng.sample(pool, CIRCUIT_INPUTS))
    b = CircuitBuilder(in_w)
    nodes = [b.input(p) for p in pool] or [b.const(0)]
    count = gates if gates is not None else 2 * len(nodes) + 4 * out_w
    for _ in range(count):
        x = nodes[len(nodes) - 1 - rng.below(min(len(nodes), 12))]
        y = rng.choice(nodes)
        op = rng.below(8)
        if op < 4:
            g = b.xor(x, y)
        elif op < 6:
            g = b.and_(x, y) if op == 4 else b.or_(x, y)
        elif op == 6:
            g = b.not_(x)
        else:
            g = b.xor(b.and_(x, rng.choice(nodes)), y)
        nodes.append(g)
    outs = nodes[-out_w:] if len(nodes) >= out_w else [nodes[-1]] * out_w
    return CircuitFunction(b.build(outs))


def _fn(rng, in_w, out_w, positions=None) -> Function:
    if in_w <= TABLE_LIMIT and positions is None:
        return random_table(rng, in_w, out_w)
    return random_circuit(rng, in_w, out_w, positions)


def _table_from(in_w: int, out_w: int, rule: Callable[[int], int]) -> TruthTable:
    if in_w > TABLE_LIMIT:
        raise DeskScaleExceeded(f"a {in_w}-bit table exceeds the generator limit of {TABLE_LIMIT} bits")
    return TruthTable(in_w, out_w, [rule(x) for x in range(1 << in_w)])


def _require(cond: bool, message: str):
    if not cond:
        raise DeskScaleExceeded(message)


# --- per-kind generators -------------------------------------------------------

def _collision(rng, p, flavor):
    n = p["n"]
    _require(n <= TABLE_LIMIT, f"n = {n} exceeds {TABLE_LIMIT}")
    mask = (1 << n) - 1
    if flavor == "cyclic":
        return inst.CollisionInstance(n, _table_from(n, n, lambda x: (x + 1) & mask))
    if flavor == "identity":
        return inst.CollisionInstance(n, _table_from(n, n, lambda x: x))
    if flavor == "zero_free":
        return inst.CollisionInstance(n, random_table(rng, n, n, lambda: 1 + rng.below(mask)))
    return inst.CollisionInstance(n, random_table(rng, n, n))


def _weak_collision(rng, p, flavor):
    n, m = p["n"], p.get("m", p["n"] - 1)
    _require(n <= TABLE_LIMIT, f"n = {n} exceeds {TABLE_LIMIT}")
    if flavor == "constant":
        v = rng.bits(m)
        return inst.WeakCollisionInstance(n, m, _table_from(n, m, lambda x: v))
    return inst.WeakCollisionInstance(n, m, random_table(rng, n, m))


def _choice_predicates(rng, n: int, count: int, variant: str, flavor: str):
    preds, deps = [], []
    for i in range(count):
        width = (i + 2) * n
        x_bits = range((i + 1) * n, (i + 2) * n)
        if flavor == "constant":
            preds.append(constant(width, 1, 0))
            deps.append(i)
            continue
        if variant == "unary":
            positions = list(x_bits)
            deps.append(i)
        elif variant == "binary":
            k = rng.below(i + 1)
            deps.append(k)
            positions = list(range(k * n, (k + 1) * n)) + list(x_bits)
        else:
            positions = None
            deps.append(i)
        preds.append(random_circuit(rng, width, 1, positions))
    return preds, deps


def _long_choice(rng, p, flavor):
    n = p["n"]
    variant = p.get("variant", "general")
    _require(n <= MAX_UNIVERSE_WIDTH, f"n = {n} exceeds the universe cap {MAX_UNIVERSE_WIDTH}")
    preds, deps = _choice_predicates(rng, n, n - 1, variant, flavor)
    start = None
    if variant == "constrained":
        start = p["start"] if "start" in p else rng.bits(n)
    return inst.LongChoiceInstance(n, preds, variant=variant, start=start,
                                   deps=tuple(deps) if variant == "binary" else None)


def _short_choice(rng, p, flavor):
    n = p["n"]
    _require(n <= MAX_UNIVERSE_WIDTH, f"n = {n} exceeds the universe cap {MAX_UNIVERSE_WIDTH}")
    preds, _ = _choice_predicates(rng, n, n - 1, "general", flavor)
    return inst.ShortChoiceInstance(n, preds)


def _ramsey2(rng, p, flavor):
    n = p["n"]
    w = 4 * n
    if flavor == "monochrome":
        return inst.Ramsey2Instance(n, constant(w, 1, p.get("color", 1)))
    return inst.Ramsey2Instance(n, _fn(rng, w, 1))


def _ramsey(rng, p, flavor):
    r, n = p["r"], p["n"]
    w = p.get("node_width", inst.RamseyRInstance.default_width(r, n))
    _require(w <= MAX_UNIVERSE_WIDTH, f"node width {w} exceeds the universe cap {MAX_UNIVERSE_WIDTH}")
    cw = ceil_log2(r)
    meta = {}
    if w < inst.RamseyRInstance.default_width(r, n):
        meta["weaker_guarantee"] = f"node width {w} below the default {inst.RamseyRInstance.default_width(r, n)}"
    if flavor == "monochrome":
        return inst.RamseyRInstance(r, n, constant(2 * w, cw, p.get("color", 0)), node_width=w, meta=meta)
    return inst.RamseyRInstance(r, n, _fn(rng, 2 * w, cw), node_width=w, meta=meta)


def _sunflower(rng, p, flavor):
    k = p["k"]
    iw = p.get("index_width", inst.SunflowerInstance.default_width(k))
    ew = p.get("element_width", inst.SunflowerInstance.default_width(k))
    _require(iw <= TABLE_LIMIT, f"index width {iw} exceeds {TABLE_LIMIT}")
    emask = (1 << ew) - 1
    if flavor == "disjoint":
        F = _table_from(iw, k * ew, lambda i: pack([(k * i + j) & emask for j in range(k)], ew))
    else:
        universe = min(1 << ew, p.get("universe", 3 * k))
        F = random_table(rng, iw, k * ew, lambda: pack([rng.below(universe) for _ in range(k)], ew))
    return inst.SunflowerInstance(k, F, index_width=iw, element_width=ew)


def _konig(rng, p, flavor):
    n = p["n"]
    _require(n <= TABLE_LIMIT, f"n = {n} exceeds {TABLE_LIMIT}")
    size = 1 << n
    if flavor == "heap":
        def rule(s):
            if s == 0:
                return 0
            return ((s - 1) >> 1) | ((0 if s & 1 else 1) << n)
        return inst.KonigInstance(n, _table_from(n, n + 1, rule), 0)
    if flavor == "tree":
        # Random rooted tree of bounded depth, then a few corrupted entries.
        order = list(range(size))
        rng.shuffle(order)
        root = order[0]
        depth = {root: 0}
        parent = {root: (root, 0)}
        for u in order[1:]:
            cands = [v for v in depth if depth[v] < n][-8:]
            v = rng.choice(cands)
            parent[u] = (v, rng.below(2))
            depth[u] = depth[v] + 1
        for _ in range(rng.below(3)):
            u = rng.below(size)
            parent[u] = (rng.below(size), rng.below(2))
        table = [parent[s][0] | (parent[s][1] << n) for s in range(size)]
        return inst.KonigInstance(n, TruthTable(n, n + 1, table), root)
    return inst.KonigInstance(n, random_table(rng, n, n + 1), rng.bits(n))


def _ekr(rng, p, flavor):
    n = p["n"]
    _require(n <= TABLE_LIMIT, f"n = {n} exceeds {TABLE_LIMIT}")
    size = 1 << n
    if flavor == "star":
        centre = rng.bits(n)

        def draw():
            other = rng.below(size)
            return pack([centre, other] if rng.below(2) else [other, centre], n)
        return inst.EKRInstance(n, random_table(rng, n, 2 * n, draw))
    universe = min(size, p.get("universe", 4))
    return inst.EKRInstance(n, random_table(rng, n, 2 * n,
                                            lambda: pack([rng.below(universe), rng.below(universe)], n)))


def _graph_edges(rng, k, n, flavor):
    count = comb(k, 2) * (1 << (2 * n)) + 1
    node_w = n + ceil_log2(k)
    nodes = k << n
    index_w = width_for_count(count)

    if flavor == "simple":
        # Distinct non-loop edges while they last; the pigeonhole then forces a bad edge or a clique.
        pairs = [(u, v) for u in range(nodes) for v in range(u + 1, nodes)]
        _require(len(pairs) <= 1 << TABLE_LIMIT, f"{len(pairs)} node pairs exceed the generator limit")
        rng.shuffle(pairs)
        chosen = pairs[:count] + [pairs[rng.below(len(pairs))] for _ in range(count - len(pairs))]
        chosen += [chosen[0]] * ((1 << index_w) - count)
        return TruthTable(index_w, 2 * node_w, [pack(e, node_w) for e in chosen])

    def draw():
        if flavor == "raw":
            return rng.bits(2 * node_w)
        u = rng.below(nodes)
        v = rng.below(nodes - 1)
        v = v + 1 if v >= u else v
        return pack([u, v], node_w)
    return random_table(rng, index_w, 2 * node_w, draw)


def _bad_coloring(rng, p, flavor):
    k, n = p["k"], p["n"]
    E = _graph_edges(rng, k, n, flavor)
    node_w = n + ceil_log2(k)
    C = random_table(rng, node_w, width_for_count(k), lambda: rng.below(k))
    return inst.BadColoringInstance(k, n, E, C)


def _turan(rng, p, flavor):
    k, n = p["k"], p["n"]
    return inst.TuranInstance(k, n, _graph_edges(rng, k, n, flavor))


def _bad_kset(rng, p, flavor):
    k, n = p["k"], p["n"]
    _require(k * n + 1 <= TABLE_LIMIT, f"index width {k * n + 1} exceeds {TABLE_LIMIT}")
    node_w = n + ceil_log2(k)
    nodes = k << n
    F = random_table(rng, k * n + 1, k * node_w, lambda: pack([rng.below(nodes) for _ in range(k)], node_w))
    C = random_table(rng, node_w, width_for_count(k), lambda: rng.below(k))
    return inst.BadKSetInstance(k, n, F, C)


def _empty(rng, p, flavor):
    n = p["n"]
    _require(n <= TABLE_LIMIT, f"n = {n} exceeds {TABLE_LIMIT}")
    top = (1 << n) - 1
    if flavor == "identity":
        return inst.EmptyInstance(n, _table_from(n, n, lambda x: x))
    return inst.EmptyInstance(n, random_table(rng, n, n, lambda: rng.below(top)))


def _weak_schur(rng, p, flavor):
    r = p["r"]
    w = p.get("width", inst.WeakSchurInstance.default_width(r))
    cw = ceil_log2(r)
    if flavor == "parity":
        return inst.WeakSchurInstance(r, _table_from(w, cw, lambda v: (v + 1) & 1), width=w)
    return inst.WeakSchurInstance(r, random_table(rng, w, cw, lambda: rng.below(r)), width=w)


GENERATORS = {
    "collision": (_collision, ("random", "cyclic", "identity", "zero_free")),
    "weak_collision": (_weak_collision, ("random", "constant")),
    "long_choice": (_long_choice, ("random", "constant")),
    "short_choice": (_short_choice, ("random", "constant")),
    "ramsey2": (_ramsey2, ("random", "monochrome")),
    "ramsey": (_ramsey, ("random", "monochrome")),
    "sunflower": (_sunflower, ("random", "disjoint")),
    "konig": (_konig, ("random", "heap", "tree")),
    "ekr": (_ekr, ("random", "star")),
    "bad_coloring": (_bad_coloring, ("random", "raw", "simple")),
    "turan": (_turan, ("random", "raw", "simple")),
    "bad_kset": (_bad_kset, ("random",)),
    "empty": (_empty, ("random", "identity")),
    "weak_schur": (_weak_schur, ("random", "parity")),
}


def generate(spec: GeneratorSpec):
    if spec.kind not in GENERATORS:
        raise ValueError(f"unknown problem kind {spec.kind!r}")
    make, flavors = GENERATORS[spec.kind]
    if spec.flavor not in flavors:
        raise ValueError(f"flavor {spec.flavor!r} not available for {spec.kind}; choose from {', '.join(flavors)}")
    instance = make(SplitMix64(spec.seed), dict(spec.params), spec.flavor)
    instance.meta.update({"generator": spec.describe()})
    return instance
