"""Reductions around Ramsey: Ramsey to binary Long Choice, and into
multicolor Ramsey from sunflowers, weak Collision (Hamming distance
coloring) and weak Schur (difference coloring)."""

from __future__ import annotations

from dataclasses import dataclass

from ..core.bitvec import ceil_log2, next_power_of_two, unpack
from ..core.function import Wrapper
from ..errors import ContractViolation, DeskScaleExceeded, InternalError
from ..problems.certificates import ChoiceSeq, Clique, Collision, SchurTriple, Sunflower, SunflowerDup, SunflowerError
from ..problems.instances import (
    LongChoiceInstance,
    RamseyRInstance,
    SunflowerInstance,
    WeakCollisionInstance,
    WeakSchurInstance,
)
from ..problems.verify import set_distance, verify
from ..solvers.ramsey import bits_per_color, check_width, extract_clique, forward_colors, subsample
from .base import Reduced, checked, register

MAX_NODE_WIDTH = 16


def _pairwise(width: int, node_values, pair_color):
    """Batch glue for a color on (low node, high node): node values are computed once per batch."""
    mask = (1 << width) - 1

    def many(vs):
        nodes = sorted({v & mask for v in vs} | {v >> width for v in vs})
        value = dict(zip(nodes, node_values(nodes)))
        return [pair_color(v & mask, v >> width, value[v & mask], value[v >> width]) for v in vs]
    return many


# --- Ramsey -> binary Long Choice -------------------------------------------

def ramsey_to_binary_long_choice(src):
    """P_i(a_0..a_i, x) = bit (i - k) of color(a_k, x), k = floor(i / L) * L."""
    L = bits_per_color(src)
    if L == 0:
        raise ContractViolation("a single-color Ramsey instance has no binary Long Choice form")
    check_width(src)
    N = src.node_width
    preds, deps = [], []
    for i in range(N - 1):
        k = (i // L) * L
        bit = i - k

        def glue_many(vs, i=i, k=k, bit=bit):
            groups: dict[int, list[int]] = {}
            for pos, v in enumerate(vs):
                groups.setdefault((v >> (k * N)) & ((1 << N) - 1), []).append(pos)
            out = [0] * len(vs)
            for anchor, positions in groups.items():
                xs = [vs[q] >> ((i + 1) * N) for q in positions]
                for q, col in zip(positions, src.edge_colors(anchor, xs)):
                    out[q] = (col >> bit) & 1
            return out

        def scalar(v, i=i, k=k, bit=bit):
            anchor = (v >> (k * N)) & ((1 << N) - 1)
            return (src.edge_color(anchor, v >> ((i + 1) * N)) >> bit) & 1

        inner = (src.edge,) if src.kind == "ramsey2" else (src.color,)
        preds.append(Wrapper((i + 2) * N, 1, scalar, inner=inner, name=f"color-bit[P_{i}]", glue_many=glue_many))
        deps.append(k)
    target = LongChoiceInstance(N, preds, variant="binary", deps=tuple(deps), meta={"source": src.kind})
    return Reduced(target, {})


def pullback_ramsey_long_choice(src, aux: dict, c: ChoiceSeq):
    b = subsample(c.elements, bits_per_color(src), src.num_colors, src.target)
    clique = extract_clique(b, forward_colors(src, b), src.target)
    return checked(src, clique, "pigeonholed subsample")


# --- Sunflower -> Ramsey ----------------------------------------------------

def sunflower_to_ramsey(src: SunflowerInstance):
    """Edge {i, j} gets color d(F(i), F(j)) - 1; invalid or equal sets get color 0."""
    if src.k < 2:
        raise ContractViolation("sunflower reduction needs k >= 2")
    if src.index_width > MAX_NODE_WIDTH:
        raise DeskScaleExceeded(
            f"index width {src.index_width} exceeds the desk-scale cap {MAX_NODE_WIDTH}; supply smaller widths")
    r = next_power_of_two(src.k)
    w = src.index_width
    k, ew = src.k, src.element_width

    def sets(indices):
        out = []
        for packed in src.F.eval_many(indices):
            s = frozenset(unpack(packed, ew, k))
            out.append(s if len(s) == k else None)
        return out

    def pair_color(i, j, si, sj):
        if i == j or si is None or sj is None or si == sj:
            return 0
        return set_distance(tuple(si), tuple(sj)) - 1

    many = _pairwise(w, sets, pair_color)
    fn = Wrapper(2 * w, ceil_log2(r), lambda v: many([v])[0], inner=(src.F,), name="set-distance",
                 glue_many=many)
    target = RamseyRInstance(r, src.target, fn, node_width=w, meta={"source": "sunflower"})
    return Reduced(target, {})


def pullback_sunflower_ramsey(src: SunflowerInstance, aux: dict, c: Clique):
    nodes = sorted(c.nodes)
    sets = {}
    for i in nodes:
        s = src.member_set(i)
        if s is None:
            return checked(src, SunflowerError(i), "non-k-set in clique")
        sets[i] = s
    for x, i in enumerate(nodes):
        for j in nodes[x + 1:]:
            if sets[i] == sets[j]:
                return checked(src, SunflowerDup(i, j), "duplicate sets in clique")
    flower = Sunflower(tuple(nodes))
    report = verify(src, flower)
    if not report:
        raise InternalError(f"equidistant clique is not a sunflower: {report}")
    return flower


# --- weak Collision -> multicolor Ramsey (Hamming distance) -----------------

@dataclass(frozen=True)
class RamseyHammingConfig:
    """Concrete color count and clique target standing in for the n^delta regime."""
    color_count: int
    clique_target: int
    delta: float | None = None

    def __post_init__(self):
        if self.color_count < 2:
            raise ContractViolation(f"color count {self.color_count} < 2")
        if not self.clique_target > self.color_count + 1:
            raise ContractViolation(
                f"clique target {self.clique_target} must exceed color count + 1 = {self.color_count + 1}")

    @classmethod
    def for_source(cls, src: WeakCollisionInstance, clique_target: int | None = None) -> RamseyHammingConfig:
        colors = max(2, src.m)
        return cls(colors, clique_target if clique_target is not None else colors + 2)

    @classmethod
    def from_delta(cls, n: int, delta: float, clique_target: int | None = None) -> RamseyHammingConfig:
        if not 0 < delta < 0.5:
            raise ContractViolation(f"delta {delta} not in (0, 1/2)")
        colors = max(2, round(n ** delta))
        return cls(colors, clique_target if clique_target is not None else colors + 2, delta)

    @property
    def sentinel(self) -> int:
        return -(-self.color_count // 2)


def weak_collision_to_ramsey(src: WeakCollisionInstance, cfg: RamseyHammingConfig | None = None,
                             clique_target: int | None = None):
    if cfg is None:
        cfg = RamseyHammingConfig.for_source(src, clique_target)
    if cfg.color_count < src.m:
        raise ContractViolation(f"color count {cfg.color_count} < output width {src.m}: distances would not fit")
    if src.n > MAX_NODE_WIDTH:
        raise DeskScaleExceeded(f"source width {src.n} exceeds the desk-scale cap {MAX_NODE_WIDTH}")
    r = next_power_of_two(cfg.color_count)
    n, C = src.n, src.f
    sentinel = cfg.sentinel

    def pair_color(i, j, ci, cj):
        if i == j:
            return 0
        if ci == cj:
            return sentinel - 1
        return bin(ci ^ cj).count("1") - 1

    many = _pairwise(n, C.eval_many, pair_color)
    fn = Wrapper(2 * n, ceil_log2(r), lambda v: many([v])[0], inner=(C,), name="hamming", glue_many=many)
    target = RamseyRInstance(r, cfg.clique_target, fn, node_width=n, meta={"source": "weak_collision"})
    return Reduced(target, {"color_count": cfg.color_count, "clique_target": cfg.clique_target,
                            "sentinel": sentinel})


def pullback_weak_collision_ramsey(src: WeakCollisionInstance, aux: dict, c: Clique):
    if c.color != aux["sentinel"] - 1:
        raise InternalError(f"clique of color {c.color} would be a pairwise equidistant point set")
    images = {}
    for v in c.nodes:
        y = src.f(v)
        if y in images:
            u = images[y]
            return checked(src, Collision(min(u, v), max(u, v)), "equal images in clique")
        images[y] = v
    raise InternalError("sentinel-colored clique without a collision")


# --- weak Schur -> Ramsey ---------------------------------------------------

def weak_schur_to_ramsey(src: WeakSchurInstance):
    """Node v is the integer v + 1; edge {x < y} gets the color of y - x."""
    if src.width < 2:
        raise ContractViolation("weak Schur reduction needs width >= 2 (at least three integers)")
    if src.width > MAX_NODE_WIDTH:
        raise DeskScaleExceeded(f"width {src.width} exceeds the desk-scale cap {MAX_NODE_WIDTH}")
    r = next_power_of_two(src.r)
    w, C = src.width, src.C
    mask = (1 << w) - 1

    def many(vs):
        diffs = [(v >> w) - (v & mask) for v in vs]
        colors = iter(C.eval_many([d - 1 for d in diffs if d > 0]))
        return [next(colors) if d > 0 else 0 for d in diffs]

    fn = Wrapper(2 * w, ceil_log2(r), lambda v: many([v])[0], inner=(C,), name="difference", glue_many=many)
    meta = {"source": "weak_schur"}
    if r != src.r:
        meta["padded_colors"] = r - src.r
    return Reduced(RamseyRInstance(r, 3, fn, node_width=w, meta=meta), {})


def pullback_weak_schur_ramsey(src: WeakSchurInstance, aux: dict, c: Clique):
    a, b, cc = sorted(v + 1 for v in c.nodes)
    return checked(src, SchurTriple(b - a, cc - b), "monochromatic triangle")


register("ramsey2->long_choice", "ramsey2", "long_choice",
         ramsey_to_binary_long_choice, pullback_ramsey_long_choice,
         "binary Long Choice over edge colors")
register("ramsey->long_choice", "ramsey", "long_choice",
         ramsey_to_binary_long_choice, pullback_ramsey_long_choice,
         "binary Long Choice over color bits")
register("sunflower->ramsey", "sunflower", "ramsey",
         sunflower_to_ramsey, pullback_sunflower_ramsey,
         "set-distance coloring")
register("weak_collision->ramsey", "weak_collision", "ramsey",
         weak_collision_to_ramsey, pullback_weak_collision_ramsey,
         "Hamming-distance coloring")
register("weak_schur->ramsey", "weak_schur", "ramsey",
         weak_schur_to_ramsey, pullback_weak_schur_ramsey,
         "difference coloring")
