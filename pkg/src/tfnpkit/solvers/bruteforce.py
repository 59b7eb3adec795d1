"""Exhaustive ground-truth solvers.

``iter_certificates`` lists candidate certificates for an instance in a
fixed canonical order (certificate kinds in the order of the ADMISSIBLE
table, each kind by ascending index tuples).  Candidates may be pruned on
structure, but ``solve_bruteforce`` only returns one that ``verify``
accepts.  For clique-shaped kinds one representative is listed per node
set.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterator

from ..errors import BudgetExceeded, InternalError, NoCertificate
from ..problems import certificates as cert
from ..problems.verify import first_extension, konig_walk, verify
from .budget import Meter, SolveBudget


def _table(f, size: int, meter: Meter) -> list[int]:
    meter.elements(size, "domain")
    meter.charge(size)
    return f.eval_many(range(size))


def _pairs_by_value(values: list[int]) -> Iterator[tuple[int, int]]:
    """All (i, j), i < j, with values[i] == values[j], in lexicographic order."""
    groups: dict[int, list[int]] = {}
    for i, v in enumerate(values):
        groups.setdefault(v, []).append(i)
    for i, v in enumerate(values):
        for j in groups[v]:
            if j > i:
                yield i, j


def _collision(I, meter):
    table = _table(I.f, 1 << I.n, meter)
    if I.kind == "collision":
        for x, y in enumerate(table):
            if y == 0:
                yield cert.Zero(x)
    for i, j in _pairs_by_value(table):
        yield cert.Collision(i, j)


def _choice_sequences(I, size: int, length: int, last_pred: int, meter: Meter, first=None):
    """Depth-first, lexicographic sequences of distinct elements that are
    predicate-consistent for predicates 0..last_pred-1."""
    meter.elements(size)

    def extend(seq):
        yield tuple(seq)
        if len(seq) == length:
            return
        j = len(seq)
        for x in range(size):
            if x in seq:
                continue
            ok = True
            for i in range(min(j - 1, last_pred)):
                meter.charge(2)
                if I.predicate(i, seq[:i + 1], x) != I.predicate(i, seq[:i + 1], seq[i + 1]):
                    ok = False
                    break
            if ok:
                seq.append(x)
                yield from extend(seq)
                seq.pop()

    starts = [first] if first is not None else range(size)
    for a0 in starts:
        yield from extend([a0])


def _long_choice(I, meter):
    first = I.start if I.variant == "constrained" else None
    for seq in _choice_sequences(I, I.universe_size, I.n + 1, I.n - 1, meter, first):
        if len(seq) == I.n + 1:
            yield cert.ChoiceSeq(seq)


def _short_choice(I, meter):
    meter.charge(I.universe_size)
    for seq in _choice_sequences(I, I.universe_size, I.n - 1, I.n - 2, meter):
        for c in (0, 1):
            meter.charge(I.universe_size * len(seq))
            if first_extension(I, seq, c) is None:
                yield cert.ShortCert(seq, c)


def _cliques(I, meter) -> Iterator[cert.Clique]:
    size = 1 << I.node_width
    meter.elements(size, "node set")
    t = I.target
    if t == 1:
        for v in range(size):
            yield cert.Clique((v,), 0)
        return
    rows: dict[int, list[int]] = {}

    def row(u):
        if u not in rows:
            meter.charge(size)
            rows[u] = I.edge_colors(u, list(range(size)))
        return rows[u]

    def grow(chosen, cands, color):
        if len(chosen) == t:
            yield cert.Clique(tuple(chosen), color)
            return
        for idx, v in enumerate(cands):
            if len(chosen) + len(cands) - idx < t:
                return
            rv = row(v)
            nxt = [w for w in cands[idx + 1:] if rv[w] == color]
            chosen.append(v)
            yield from grow(chosen, nxt, color)
            chosen.pop()

    for v0 in range(size):
        r0 = row(v0)
        for v1 in range(v0 + 1, size):
            color = r0[v1]
            r1 = row(v1)
            cands = [w for w in range(v1 + 1, size) if r0[w] == color and r1[w] == color]
            yield from grow([v0, v1], cands, color)


def _sunflower(I, meter):
    size = 1 << I.index_width
    meter.elements(size, "index set")
    meter.charge(size)
    sets = [I.member_set(i) for i in range(size)]
    for i, s in enumerate(sets):
        if s is None:
            yield cert.SunflowerError(i)
    raw = [frozenset(I.members(i)) for i in range(size)]
    for i, j in _pairs_by_value(raw):
        yield cert.SunflowerDup(i, j)
    t = I.target

    def grow(chosen, core, start):
        if len(chosen) == t:
            yield cert.Sunflower(tuple(chosen))
            return
        for v in range(start, size):
            s = sets[v]
            if s is None:
                continue
            if core is None:
                new_core = sets[chosen[0]] & s if chosen else None
            else:
                new_core = core
            if any(sets[u] == s or sets[u] & s != new_core for u in chosen):
                continue
            chosen.append(v)
            yield from grow(chosen, new_core, v + 1)
            chosen.pop()

    if t == 1:
        for i, s in enumerate(sets):
            if s is not None:
                yield cert.Sunflower((i,))
        return
    yield from grow([], None, 0)


def _konig(I, meter):
    size = 1 << I.n
    meter.elements(size)
    meter.charge(size * (I.n + 1))
    yield cert.InvalidRoot()
    parents = [I.parent_of(u) for u in range(size)]
    for s in range(size):
        if s != I.root and parents[s][0] == s:
            yield cert.NonUniqueRoot(s)
    keyed = [p if p[0] != u else None for u, p in enumerate(parents)]
    for a, b in _pairs_by_value(keyed):
        if keyed[a] is not None:
            yield cert.IdenticalChildren(a, b)
    walks = [konig_walk(I, s, I.n) for s in range(size)]
    for s in range(size):
        if I.root not in walks[s]:
            yield cert.FarAway(s)
    for s in range(size):
        yield cert.LongPath(s)


def _ekr(I, meter):
    size = 1 << I.n
    meter.elements(size)
    meter.charge(size)
    pairs = [I.pair(i) for i in range(size)]
    for i, (a, b) in enumerate(pairs):
        if a == b:
            yield cert.EKRError(i)
    keyed = [frozenset(p) for p in pairs]
    for i, j in _pairs_by_value(keyed):
        yield cert.EKRDup(i, j)
    for i, j in combinations(range(size), 2):
        if not keyed[i] & keyed[j]:
            yield cert.EKRDisjoint(i, j)


def _graph(I, meter):
    m = I.edge_count
    meter.elements(m, "edge index set")
    meter.charge(m)
    edges = [I.valid_edge(i) for i in range(m)]
    for i, e in enumerate(edges):
        if e is None:
            yield cert.EdgeError(i)
    keyed = [e if e is not None else ("invalid", i) for i, e in enumerate(edges)]
    for i, j in _pairs_by_value(keyed):
        yield cert.EdgeDup(i, j)
    if I.kind == "bad_coloring":
        for i, e in enumerate(edges):
            if e is not None and I.color_of(e[0]) == I.color_of(e[1]):
                yield cert.BadEdge(i)
        return
    index = {}
    adj: dict[int, set[int]] = {}
    for i, e in enumerate(edges):
        if e is not None and e not in index:
            index[e] = i
            adj.setdefault(e[0], set()).add(e[1])
            adj.setdefault(e[1], set()).add(e[0])
    t = I.k + 1

    def grow(chosen, cands):
        if len(chosen) == t:
            yield cert.CliqueEdges(tuple(index[(u, v)] for u, v in combinations(chosen, 2)))
            return
        for idx, v in enumerate(cands):
            chosen.append(v)
            yield from grow(chosen, [w for w in cands[idx + 1:] if w in adj[v]])
            chosen.pop()

    for v in sorted(adj):
        yield from grow([v], sorted(w for w in adj[v] if w > v))


def _bad_kset(I, meter):
    size = I.set_count
    meter.elements(size, "set system")
    meter.charge(size * (I.k + 1))
    for i in range(size):
        if I.is_bad(i):
            yield cert.BadSet(i)
    keyed = [tuple(sorted(I.members(i))) for i in range(size)]
    for i, j in _pairs_by_value(keyed):
        yield cert.SetDup(i, j)


def _empty(I, meter):
    image = set(_table(I.f, 1 << I.n, meter)[:I.domain_size])
    for e in range(I.range_size):
        if e not in image:
            yield cert.EmptyHole(e)


def _weak_schur(I, meter):
    top = 1 << I.width
    colors = [None] + _table(I.C, top, meter)
    for a in range(1, top):
        for b in range(1, top - a + 1):
            if colors[a] == colors[b] == colors[a + b]:
                yield cert.SchurTriple(a, b)


_ENUMERATORS = {
    "collision": _collision,
    "weak_collision": _collision,
    "long_choice": _long_choice,
    "short_choice": _short_choice,
    "ramsey2": _cliques,
    "ramsey": _cliques,
    "sunflower": _sunflower,
    "konig": _konig,
    "ekr": _ekr,
    "bad_coloring": _graph,
    "turan": _graph,
    "bad_kset": _bad_kset,
    "empty": _empty,
    "weak_schur": _weak_schur,
}


def iter_certificates(I, budget: SolveBudget | None = None) -> Iterator[cert.Certificate]:
    """Every certificate the verifier accepts, in canonical order."""
    meter = Meter(budget)
    for c in _ENUMERATORS[I.kind](I, meter):
        if verify(I, c):
            yield c


def solve_bruteforce(I, budget: SolveBudget | None = None) -> cert.Certificate:
    for c in iter_certificates(I, budget):
        return c
    if getattr(I, "weak_guarantee", False):
        raise NoCertificate(f"no certificate exists for this {I.kind} instance at its reduced width")
    raise InternalError(f"exhaustive search found no certificate for a {I.kind} instance")


__all__ = ["BudgetExceeded", "iter_certificates", "solve_bruteforce"]
