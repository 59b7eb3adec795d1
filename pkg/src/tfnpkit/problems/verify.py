"""Certificate verifiers.

Every verifier is pure and reports the first violated clause.  Short
Choice and Empty verification scan the whole universe, so both refuse
n > MAX_SCAN_N.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from ..errors import ContractViolation, DeskScaleExceeded
from . import certificates as cert
from . import instances as inst

MAX_SCAN_N = 24
SCAN_CHUNK = 1 << 14


class Reason:
    OK = "OK"
    KIND_MISMATCH = "KIND_MISMATCH"
    OUT_OF_RANGE = "OUT_OF_RANGE"
    NOT_DISTINCT = "NOT_DISTINCT"
    WRONG_LENGTH = "WRONG_LENGTH"
    WRONG_START = "WRONG_START"
    PREDICATE_MISMATCH = "PREDICATE_MISMATCH"
    EXTENSION_EXISTS = "EXTENSION_EXISTS"
    NOT_ZERO = "NOT_ZERO"
    NO_COLLISION = "NO_COLLISION"
    WRONG_COLOR = "WRONG_COLOR"
    INVALID_SET = "INVALID_SET"
    SET_VALID = "SET_VALID"
    DUPLICATE_SET = "DUPLICATE_SET"
    SETS_DIFFER = "SETS_DIFFER"
    UNEQUAL_INTERSECTIONS = "UNEQUAL_INTERSECTIONS"
    NOT_DISJOINT = "NOT_DISJOINT"
    ROOT_LIKE = "ROOT_LIKE"
    PARENTS_DIFFER = "PARENTS_DIFFER"
    ROOT_VALID = "ROOT_VALID"
    IS_ROOT = "IS_ROOT"
    NOT_ROOT = "NOT_ROOT"
    REACHES_ROOT = "REACHES_ROOT"
    PATH_INVALID = "PATH_INVALID"
    EDGE_VALID = "EDGE_VALID"
    INVALID_EDGE = "INVALID_EDGE"
    EDGES_DIFFER = "EDGES_DIFFER"
    DUPLICATE_EDGE = "DUPLICATE_EDGE"
    COLORS_DIFFER = "COLORS_DIFFER"
    NOT_CLIQUE = "NOT_CLIQUE"
    SET_GOOD = "SET_GOOD"
    HAS_PREIMAGE = "HAS_PREIMAGE"


@dataclass(frozen=True)
class VerifyReport:
    accepted: bool
    code: str
    message: str = ""
    args: tuple = ()

    def __bool__(self):
        return self.accepted

    def __str__(self):
        if self.accepted:
            return "ACCEPT"
        suffix = f"({', '.join(map(str, self.args))})" if self.args else ""
        return f"REJECT {self.code}{suffix}: {self.message}"


ACCEPT = VerifyReport(True, Reason.OK)


def _reject(code: str, message: str, *args) -> VerifyReport:
    return VerifyReport(False, code, message, tuple(args))


def _range_check(values: Sequence[int], limit: int, what: str) -> VerifyReport | None:
    for v in values:
        if not 0 <= v < limit:
            return _reject(Reason.OUT_OF_RANGE, f"{what} {v} outside [0, {limit - 1}]", v)
    return None


def _distinct_check(values: Sequence[int], what: str) -> VerifyReport | None:
    seen = set()
    for v in values:
        if v in seen:
            return _reject(Reason.NOT_DISTINCT, f"{what} {v} appears twice", v)
        seen.add(v)
    return None


def _sequence_check(values: Sequence[int], limit: int, what: str) -> VerifyReport | None:
    # Reports are falsy when rejecting, so chain on None rather than with ``or``.
    bad = _range_check(values, limit, what)
    return bad if bad is not None else _distinct_check(values, what)


def edge_color2(instance: inst.Ramsey2Instance, a: int, b: int) -> int:
    """1 (blue) iff both directed edge bits are set, else 0 (red)."""
    if a == b:
        raise ContractViolation("edge color of a node with itself is undefined")
    return instance.edge_color(a, b)


def set_distance(a: Sequence[int], b: Sequence[int]) -> int:
    """Half the size of the symmetric difference of two equal-size sets."""
    sa, sb = set(a), set(b)
    if len(sa) != len(a) or len(sb) != len(b):
        raise ContractViolation("sets must not repeat elements")
    if len(sa) != len(sb):
        raise ContractViolation("sets must have equal size")
    return len(sa ^ sb) // 2


# --- pigeonhole problems ---------------------------------------------------

def _verify_collision(I, c):
    n = I.n
    if isinstance(c, cert.Zero):
        bad = _range_check([c.x], 1 << n, "input")
        if bad is not None:
            return bad
        y = I.f(c.x)
        return ACCEPT if y == 0 else _reject(Reason.NOT_ZERO, f"f({c.x}) = {y}", c.x)
    bad = _range_check([c.x, c.y], 1 << n, "input")
    if bad is not None:
        return bad
    if c.x == c.y:
        return _reject(Reason.NOT_DISTINCT, "collision needs two distinct inputs", c.x)
    fx, fy = I.f(c.x), I.f(c.y)
    if fx != fy:
        return _reject(Reason.NO_COLLISION, f"f({c.x}) = {fx} but f({c.y}) = {fy}", c.x, c.y)
    return ACCEPT


# --- choice problems -------------------------------------------------------

def _predicate_clause(I, seq: Sequence[int], last: int) -> VerifyReport | None:
    """P_i(a_0..a_i, a_j) = P_i(a_0..a_i, a_{i+1}) for i < last and i < j <= len-1."""
    for i in range(last):
        prefix = seq[:i + 1]
        later = seq[i + 1:]
        vals = I.predicate_many(i, prefix, later)
        for j, v in enumerate(vals[1:], start=i + 2):
            if v != vals[0]:
                return _reject(Reason.PREDICATE_MISMATCH,
                               f"P_{i} differs between a_{i + 1} and a_{j}", i, j)
    return None


def verify_long_choice(I: inst.LongChoiceInstance, c: cert.ChoiceSeq) -> VerifyReport:
    seq = c.elements
    if len(seq) != I.n + 1:
        return _reject(Reason.WRONG_LENGTH, f"expected {I.n + 1} elements, got {len(seq)}", len(seq))
    bad = _sequence_check(seq, I.universe_size, "element")
    if bad is not None:
        return bad
    if I.variant == "constrained" and seq[0] != I.start:
        return _reject(Reason.WRONG_START, f"sequence must start at {I.start}", seq[0])
    bad = _predicate_clause(I, seq, I.n - 1)
    return ACCEPT if bad is None else bad


def _scan_guard(n: int):
    if n > MAX_SCAN_N:
        raise DeskScaleExceeded(f"exhaustive scan at n={n} exceeds the cap n <= {MAX_SCAN_N}")


def verify_short_choice(I: inst.ShortChoiceInstance, c: cert.ShortCert) -> VerifyReport:
    _scan_guard(I.n)
    seq = c.elements
    k = len(seq) - 1
    if k < 0 or k > I.n - 2:
        return _reject(Reason.WRONG_LENGTH, f"subcertificate length {len(seq)} not in [1, {I.n - 1}]", len(seq))
    if c.c not in (0, 1):
        return _reject(Reason.OUT_OF_RANGE, f"bit c = {c.c}", c.c)
    bad = _sequence_check(seq, I.universe_size, "element")
    if bad is None:
        bad = _predicate_clause(I, seq, k)
    if bad is not None:
        return bad
    x = first_extension(I, seq, c.c)
    if x is not None:
        return _reject(Reason.EXTENSION_EXISTS, f"{x} extends the subcertificate with P_{k} = {c.c}", x)
    return ACCEPT


def first_extension(I: inst.ShortChoiceInstance, seq: Sequence[int], bit: int) -> int | None:
    """Smallest x that extends the subcertificate and has P_k(seq, x) = bit."""
    k = len(seq) - 1
    targets = [I.predicate(i, seq[:i + 1], seq[i + 1]) for i in range(k)]
    taken = set(seq)
    for lo in range(0, I.universe_size, SCAN_CHUNK):
        xs = [x for x in range(lo, min(lo + SCAN_CHUNK, I.universe_size)) if x not in taken]
        for i in range(k):
            vals = I.predicate_many(i, seq[:i + 1], xs)
            xs = [x for x, v in zip(xs, vals) if v == targets[i]]
            if not xs:
                break
        if xs:
            vals = I.predicate_many(k, seq, xs)
            for x, v in zip(xs, vals):
                if v == bit:
                    return x
    return None


# --- Ramsey ----------------------------------------------------------------

def _verify_clique(I, c: cert.Clique) -> VerifyReport:
    nodes = c.nodes
    if len(nodes) != I.target:
        return _reject(Reason.WRONG_LENGTH, f"expected {I.target} nodes, got {len(nodes)}", len(nodes))
    if not 0 <= c.color < I.num_colors:
        return _reject(Reason.OUT_OF_RANGE, f"color {c.color} not in [0, {I.num_colors - 1}]", c.color)
    bad = _sequence_check(nodes, 1 << I.node_width, "node")
    if bad is not None:
        return bad
    for a, b in combinations(nodes, 2):
        col = I.edge_color(a, b)
        if col != c.color:
            return _reject(Reason.WRONG_COLOR, f"edge ({a}, {b}) has color {col}", a, b)
    return ACCEPT


# --- sunflowers ------------------------------------------------------------

def _verify_sunflower(I: inst.SunflowerInstance, c) -> VerifyReport:
    limit = 1 << I.index_width
    if isinstance(c, cert.SunflowerError):
        bad = _range_check([c.i], limit, "index")
        if bad is not None:
            return bad
        if I.member_set(c.i) is not None:
            return _reject(Reason.SET_VALID, f"F({c.i}) is a valid {I.k}-set", c.i)
        return ACCEPT
    if isinstance(c, cert.SunflowerDup):
        bad = _range_check([c.i, c.j], limit, "index")
        if bad is not None:
            return bad
        if c.i == c.j:
            return _reject(Reason.NOT_DISTINCT, "indices must differ", c.i)
        if set(I.members(c.i)) != set(I.members(c.j)):
            return _reject(Reason.SETS_DIFFER, f"F({c.i}) and F({c.j}) differ", c.i, c.j)
        return ACCEPT
    idx = c.indices
    if len(idx) != I.target:
        return _reject(Reason.WRONG_LENGTH, f"expected {I.target} sets, got {len(idx)}", len(idx))
    bad = _sequence_check(idx, limit, "index")
    if bad is not None:
        return bad
    sets = []
    for i in idx:
        s = I.member_set(i)
        if s is None:
            return _reject(Reason.INVALID_SET, f"F({i}) is not a {I.k}-set", i)
        sets.append(s)
    for (i, a), (j, b) in combinations(zip(idx, sets), 2):
        if a == b:
            return _reject(Reason.DUPLICATE_SET, f"F({i}) = F({j})", i, j)
    core = sets[0] & sets[1] if len(sets) > 1 else None
    for (i, a), (j, b) in combinations(zip(idx, sets), 2):
        if a & b != core:
            return _reject(Reason.UNEQUAL_INTERSECTIONS, f"F({i}) and F({j}) meet outside the core", i, j)
    return ACCEPT


# --- Konig -----------------------------------------------------------------

def konig_walk(I: inst.KonigInstance, s: int, steps: int) -> list[int]:
    path = [s]
    for _ in range(steps):
        path.append(I.parent_of(path[-1])[0])
    return path


def _verify_konig(I: inst.KonigInstance, c) -> VerifyReport:
    limit = 1 << I.n
    r = I.root
    if isinstance(c, cert.InvalidRoot):
        if I.parent_of(r)[0] == r:
            return _reject(Reason.ROOT_VALID, f"the root {r} is its own parent")
        return ACCEPT
    if isinstance(c, cert.IdenticalChildren):
        bad = _range_check([c.a, c.b], limit, "node")
        if bad is not None:
            return bad
        if c.a == c.b:
            return _reject(Reason.NOT_DISTINCT, "nodes must differ", c.a)
        pa, pb = I.parent_of(c.a), I.parent_of(c.b)
        for node, p in ((c.a, pa), (c.b, pb)):
            if p[0] == node:
                return _reject(Reason.ROOT_LIKE, f"node {node} is its own parent", node)
        if pa != pb:
            return _reject(Reason.PARENTS_DIFFER, f"P({c.a}) = {pa}, P({c.b}) = {pb}", c.a, c.b)
        return ACCEPT
    if isinstance(c, cert.NonUniqueRoot):
        bad = _range_check([c.s], limit, "node")
        if bad is not None:
            return bad
        if c.s == r:
            return _reject(Reason.IS_ROOT, "the designated root is not a second root", c.s)
        if I.parent_of(c.s)[0] != c.s:
            return _reject(Reason.NOT_ROOT, f"node {c.s} is not its own parent", c.s)
        return ACCEPT
    if isinstance(c, cert.FarAway):
        bad = _range_check([c.s], limit, "node")
        if bad is not None:
            return bad
        if r in konig_walk(I, c.s, I.n):
            return _reject(Reason.REACHES_ROOT, f"node {c.s} reaches the root within {I.n} steps", c.s)
        return ACCEPT
    bad = _range_check([c.node], limit, "node")
    if bad is not None:
        return bad
    path = konig_walk(I, c.node, I.n)
    if path[-1] != r or len(set(path)) != len(path):
        return _reject(Reason.PATH_INVALID,
                       f"walking up from {c.node} does not give {I.n + 1} distinct nodes ending at the root",
                       c.node)
    return ACCEPT


# --- Erdos-Ko-Rado ---------------------------------------------------------

def _verify_ekr(I: inst.EKRInstance, c) -> VerifyReport:
    limit = 1 << I.n
    if isinstance(c, cert.EKRError):
        bad = _range_check([c.i], limit, "index")
        if bad is not None:
            return bad
        a, b = I.pair(c.i)
        return ACCEPT if a == b else _reject(Reason.SET_VALID, f"F({c.i}) = {{{a}, {b}}} is valid", c.i)
    bad = _range_check([c.i, c.j], limit, "index")
    if bad is not None:
        return bad
    if c.i == c.j:
        return _reject(Reason.NOT_DISTINCT, "indices must differ", c.i)
    si, sj = set(I.pair(c.i)), set(I.pair(c.j))
    if isinstance(c, cert.EKRDup):
        return ACCEPT if si == sj else _reject(Reason.SETS_DIFFER, f"F({c.i}) != F({c.j})", c.i, c.j)
    if si & sj:
        return _reject(Reason.NOT_DISJOINT, f"F({c.i}) and F({c.j}) intersect", c.i, c.j)
    return ACCEPT


# --- graphs ------------------------------------------------------------------

def _verify_graph(I, c) -> VerifyReport:
    limit = I.edge_count
    if isinstance(c, cert.EdgeError):
        bad = _range_check([c.i], limit, "edge index")
        if bad is not None:
            return bad
        if I.valid_edge(c.i) is not None:
            return _reject(Reason.EDGE_VALID, f"edge {c.i} is a valid edge", c.i)
        return ACCEPT
    if isinstance(c, cert.EdgeDup):
        bad = _range_check([c.i, c.j], limit, "edge index")
        if bad is not None:
            return bad
        if c.i == c.j:
            return _reject(Reason.NOT_DISTINCT, "indices must differ", c.i)
        ei, ej = I.valid_edge(c.i), I.valid_edge(c.j)
        for i, e in ((c.i, ei), (c.j, ej)):
            if e is None:
                return _reject(Reason.INVALID_EDGE, f"edge {i} is invalid", i)
        if ei != ej:
            return _reject(Reason.EDGES_DIFFER, f"edges {c.i} and {c.j} differ", c.i, c.j)
        return ACCEPT
    if isinstance(c, cert.BadEdge):
        bad = _range_check([c.i], limit, "edge index")
        if bad is not None:
            return bad
        e = I.valid_edge(c.i)
        if e is None:
            return _reject(Reason.INVALID_EDGE, f"edge {c.i} is invalid", c.i)
        cu, cv = I.color_of(e[0]), I.color_of(e[1])
        if cu != cv:
            return _reject(Reason.COLORS_DIFFER, f"endpoints colored {cu} and {cv}", c.i)
        return ACCEPT
    idx = c.indices
    want = (I.k + 1) * I.k // 2
    if len(idx) != want:
        return _reject(Reason.WRONG_LENGTH, f"expected {want} edges, got {len(idx)}", len(idx))
    bad = _sequence_check(idx, limit, "edge index")
    if bad is not None:
        return bad
    edges = {}
    for i in idx:
        e = I.valid_edge(i)
        if e is None:
            return _reject(Reason.INVALID_EDGE, f"edge {i} is invalid", i)
        if e in edges:
            return _reject(Reason.DUPLICATE_EDGE, f"edges {edges[e]} and {i} coincide", edges[e], i)
        edges[e] = i
    nodes = {v for e in edges for v in e}
    if len(nodes) != I.k + 1:
        return _reject(Reason.NOT_CLIQUE, f"edges span {len(nodes)} nodes, not {I.k + 1}", len(nodes))
    return ACCEPT


def _verify_bad_kset(I: inst.BadKSetInstance, c) -> VerifyReport:
    limit = I.set_count
    if isinstance(c, cert.BadSet):
        bad = _range_check([c.i], limit, "index")
        if bad is not None:
            return bad
        return ACCEPT if I.is_bad(c.i) else _reject(Reason.SET_GOOD, f"F({c.i}) is properly colored", c.i)
    bad = _range_check([c.i, c.j], limit, "index")
    if bad is not None:
        return bad
    if c.i == c.j:
        return _reject(Reason.NOT_DISTINCT, "indices must differ", c.i)
    if sorted(I.members(c.i)) != sorted(I.members(c.j)):
        return _reject(Reason.SETS_DIFFER, f"F({c.i}) and F({c.j}) differ", c.i, c.j)
    return ACCEPT


# --- empty pigeonhole and Schur -------------------------------------------

def first_preimage(I: inst.EmptyInstance, e: int) -> int | None:
    for lo in range(0, I.domain_size, SCAN_CHUNK):
        xs = range(lo, min(lo + SCAN_CHUNK, I.domain_size))
        for x, y in zip(xs, I.f.eval_many(xs)):
            if y == e:
                return x
    return None


def verify_empty(I: inst.EmptyInstance, c: cert.EmptyHole) -> VerifyReport:
    _scan_guard(I.n)
    bad = _range_check([c.e], I.range_size, "hole")
    if bad is not None:
        return bad
    x = first_preimage(I, c.e)
    if x is not None:
        return _reject(Reason.HAS_PREIMAGE, f"f({x}) = {c.e}", x)
    return ACCEPT


def _verify_schur(I: inst.WeakSchurInstance, c: cert.SchurTriple) -> VerifyReport:
    top = 1 << I.width
    for v in (c.a, c.b):
        if v < 1:
            return _reject(Reason.OUT_OF_RANGE, f"{v} is not a positive integer", v)
    if c.a + c.b > top:
        return _reject(Reason.OUT_OF_RANGE, f"{c.a} + {c.b} exceeds {top}", c.a + c.b)
    cols = [I.color_of_int(v) for v in (c.a, c.b, c.a + c.b)]
    if len(set(cols)) != 1:
        return _reject(Reason.COLORS_DIFFER, f"colors of {c.a}, {c.b}, {c.a + c.b} are {cols}", c.a, c.b)
    return ACCEPT


_VERIFIERS = {
    "collision": _verify_collision,
    "weak_collision": _verify_collision,
    "long_choice": verify_long_choice,
    "short_choice": verify_short_choice,
    "ramsey2": _verify_clique,
    "ramsey": _verify_clique,
    "sunflower": _verify_sunflower,
    "konig": _verify_konig,
    "ekr": _verify_ekr,
    "bad_coloring": _verify_graph,
    "turan": _verify_graph,
    "bad_kset": _verify_bad_kset,
    "empty": verify_empty,
    "weak_schur": _verify_schur,
}


def verify(instance, certificate) -> VerifyReport:
    allowed = cert.ADMISSIBLE[instance.kind]
    if not isinstance(certificate, allowed):
        return _reject(Reason.KIND_MISMATCH,
                       f"{certificate.kind} is not a certificate for {instance.kind}", certificate.kind)
    return _VERIFIERS[instance.kind](instance, certificate)


def verify_konig(instance: inst.KonigInstance, certificate) -> VerifyReport:
    return verify(instance, certificate)
