"""Constructive Ramsey solver: a bitwise majority walk over the nodes,
then subsampling and pigeonholing the forward colors."""

from __future__ import annotations

from typing import Sequence

from ..core.bitvec import ceil_log2
from ..errors import ContractViolation, InternalError
from ..problems.certificates import ChoiceSeq, Clique
from .budget import Meter, SolveBudget


def bits_per_color(I) -> int:
    return ceil_log2(I.num_colors)


def required_width(num_colors: int, target: int) -> int:
    """Smallest node width whose walk still fits the subsample b_0..b_{r(t-1)}."""
    return num_colors * (target - 1) * ceil_log2(num_colors) + 1


def check_width(I):
    need = required_width(I.num_colors, I.target)
    if I.node_width < need:
        raise ContractViolation(
            f"node width {I.node_width} is below {need}, too small for a {I.target}-clique "
            f"with {I.num_colors} colors")


def solve_ramsey_sequence(I, budget: SolveBudget | None = None) -> ChoiceSeq:
    """Node sequence a_0..a_w where every later node sees one forward color.

    Step i splits on bit (i - k) of color(a_k, x), k the largest multiple
    of the bits-per-color not above i; the larger side wins, ties to 0.
    """
    L = bits_per_color(I)
    if L == 0:
        raise ContractViolation("a single color needs no walk")
    check_width(I)
    meter = Meter(budget)
    N = I.node_width
    meter.elements(1 << N, "node set")
    cands = list(range(1 << N))
    seq = [0]
    cache: dict[int, dict[int, int]] = {}
    for i in range(N - 1):
        k = (i // L) * L
        a_i = seq[-1]
        rest = [x for x in cands if x != a_i]
        anchor = seq[k]
        if k not in cache:
            meter.charge(len(rest))
            cache[k] = dict(zip(rest, I.edge_colors(anchor, rest)))
        colors = cache[k]
        bit = i - k
        zeros = [x for x in rest if not (colors[x] >> bit) & 1]
        ones = [x for x in rest if (colors[x] >> bit) & 1]
        side = ones if len(ones) > len(zeros) else zeros
        if not side:
            raise InternalError(f"Ramsey walk emptied at step {i + 1}")
        cands = side
        seq.append(side[0])
    rest = [x for x in cands if x != seq[-1]]
    if not rest:
        raise InternalError("no node left for the final position")
    seq.append(rest[0])
    return ChoiceSeq(tuple(seq))


def subsample(seq: Sequence[int], bits: int, num_colors: int, target: int) -> list[int]:
    """b_i = a_{i*bits} for i = 0..r(t-1)."""
    return [seq[i * bits] for i in range(num_colors * (target - 1) + 1)]


def forward_colors(I, nodes: Sequence[int]) -> list[int]:
    """Common color of each node's edges to all later nodes; the last node gets 0."""
    colors = []
    for i, u in enumerate(nodes[:-1]):
        later = I.edge_colors(u, list(nodes[i + 1:]))
        if len(set(later)) != 1:
            raise InternalError(f"node {u} sees several forward colors {sorted(set(later))}")
        colors.append(later[0])
    return colors + [0]


def extract_clique(nodes: Sequence[int], colors: Sequence[int], target: int) -> Clique:
    """Pigeonhole: the largest color class (ties to the lowest color), first ``target`` nodes."""
    if len(nodes) != len(colors):
        raise ContractViolation("one color per node required")
    counts: dict[int, int] = {}
    for c in colors:
        counts[c] = counts.get(c, 0) + 1
    best = min(counts, key=lambda c: (-counts[c], c))
    if counts[best] < target:
        raise InternalError(f"largest color class has {counts[best]} nodes, need {target}")
    chosen = [v for v, c in zip(nodes, colors) if c == best][:target]
    return Clique(tuple(chosen), best)


def solve_ramsey(I, budget: SolveBudget | None = None) -> Clique:
    if I.num_colors == 1:
        if I.target > 1 << I.node_width:
            raise InternalError("fewer nodes than the clique target")
        return Clique(tuple(range(I.target)), 0)
    seq = solve_ramsey_sequence(I, budget)
    b = subsample(seq.elements, bits_per_color(I), I.num_colors, I.target)
    return extract_clique(b, forward_colors(I, b), I.target)
