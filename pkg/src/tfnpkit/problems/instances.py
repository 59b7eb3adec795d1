"""Instance types for the fourteen search problems.

Every interval domain is encoded as consecutive unsigned integers starting
at 0.  Where a problem is naturally stated over {1, ..., N} the shift is
noted on the class.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import ClassVar, Sequence

from ..core.bitvec import ceil_log2, is_power_of_two, pack, unpack, width_for_count
from ..core.function import ContractViolation, Function


def _check(f: Function, name: str, in_w: int, out_w: int):
    if f.input_width != in_w or f.output_width != out_w:
        raise ContractViolation(
            f"{name} must map {in_w} -> {out_w} bits, got {f.input_width} -> {f.output_width}")


def _meta():
    return field(default_factory=dict, compare=False, hash=False)


@dataclass(frozen=True)
class CollisionInstance:
    n: int
    f: Function
    meta: dict = _meta()
    kind: ClassVar[str] = "collision"

    def __post_init__(self):
        if self.n < 1:
            raise ContractViolation("n must be at least 1")
        _check(self.f, "f", self.n, self.n)

    def params(self):
        return {"n": self.n}

    def functions(self):
        return {"f": self.f}


@dataclass(frozen=True)
class WeakCollisionInstance:
    n: int
    m: int
    f: Function
    meta: dict = _meta()
    kind: ClassVar[str] = "weak_collision"

    def __post_init__(self):
        if not 1 <= self.m < self.n:
            raise ContractViolation(f"need 1 <= m < n, got n={self.n}, m={self.m}")
        _check(self.f, "f", self.n, self.m)

    def params(self):
        return {"n": self.n, "m": self.m}

    def functions(self):
        return {"f": self.f}


VARIANTS = ("general", "unary", "binary", "constrained")


class _ChoiceMixin:
    n: int
    predicates: tuple[Function, ...]

    def predicate(self, i: int, prefix: Sequence[int], x: int) -> int:
        """P_i(a_0..a_i, x) with a_0 in the lowest n bits and x on top."""
        if len(prefix) != i + 1:
            raise ContractViolation(f"P_{i} takes a prefix of length {i + 1}, got {len(prefix)}")
        return self.predicates[i](pack(prefix, self.n) | (x << ((i + 1) * self.n)))

    def predicate_many(self, i: int, prefix: Sequence[int], xs: Sequence[int]) -> list[int]:
        if len(prefix) != i + 1:
            raise ContractViolation(f"P_{i} takes a prefix of length {i + 1}, got {len(prefix)}")
        base = pack(prefix, self.n)
        shift = (i + 1) * self.n
        return self.predicates[i].eval_many([base | (x << shift) for x in xs])

    def _check_predicates(self, count: int):
        if len(self.predicates) != count:
            raise ContractViolation(f"expected {count} predicates, got {len(self.predicates)}")
        for i, p in enumerate(self.predicates):
            _check(p, f"P_{i}", (i + 2) * self.n, 1)


@dataclass(frozen=True)
class LongChoiceInstance(_ChoiceMixin):
    """Universe is all n-bit strings; n-1 predicates P_0..P_{n-2}.

    ``variant`` is structural metadata only: verification treats every
    variant as general.  ``deps`` lists k_i for the binary variant and
    ``start`` is the forced first element of the constrained variant.
    """
    n: int
    predicates: tuple
    variant: str = "general"
    start: int | None = None
    deps: tuple | None = None
    meta: dict = _meta()
    kind: ClassVar[str] = "long_choice"

    def __post_init__(self):
        object.__setattr__(self, "predicates", tuple(self.predicates))
        if self.n < 1:
            raise ContractViolation("n must be at least 1")
        if self.variant not in VARIANTS:
            raise ContractViolation(f"unknown variant {self.variant!r}")
        self._check_predicates(self.n - 1)
        if self.variant == "constrained":
            if self.start is None or not 0 <= self.start < 1 << self.n:
                raise ContractViolation("constrained variant needs a start element in range")
        elif self.start is not None:
            raise ContractViolation("only the constrained variant has a start element")
        if self.variant == "binary":
            if self.deps is None or len(self.deps) != self.n - 1:
                raise ContractViolation("binary variant needs one dependence index per predicate")
            object.__setattr__(self, "deps", tuple(self.deps))
            for i, k in enumerate(self.deps):
                if not 0 <= k <= i:
                    raise ContractViolation(f"dependence index k_{i}={k} must lie in [0, {i}]")

    @property
    def universe_size(self) -> int:
        return 1 << self.n

    def params(self):
        p = {"n": self.n, "variant": self.variant}
        if self.start is not None:
            p["start"] = self.start
        if self.deps is not None:
            p["deps"] = list(self.deps)
        return p

    def functions(self):
        return {f"P{i}": p for i, p in enumerate(self.predicates)}


@dataclass(frozen=True)
class ShortChoiceInstance(_ChoiceMixin):
    """Universe is the integers 0..2^n-3, each encoded in n bits."""
    n: int
    predicates: tuple
    meta: dict = _meta()
    kind: ClassVar[str] = "short_choice"

    def __post_init__(self):
        object.__setattr__(self, "predicates", tuple(self.predicates))
        if self.n < 2:
            raise ContractViolation("n must be at least 2")
        self._check_predicates(self.n - 1)

    @property
    def universe_size(self) -> int:
        return (1 << self.n) - 2

    def params(self):
        return {"n": self.n}

    def functions(self):
        return {f"P{i}": p for i, p in enumerate(self.predicates)}


@dataclass(frozen=True)
class Ramsey2Instance:
    """Two-colored complete graph on 2^(2n) nodes; blue (1) needs both directions."""
    n: int
    edge: Function
    meta: dict = _meta()
    kind: ClassVar[str] = "ramsey2"
    num_colors: ClassVar[int] = 2

    def __post_init__(self):
        if self.n < 1:
            raise ContractViolation("n must be at least 1")
        _check(self.edge, "edge", 4 * self.n, 1)

    @property
    def node_width(self) -> int:
        return 2 * self.n

    @property
    def target(self) -> int:
        return self.n

    def edge_color(self, a: int, b: int) -> int:
        w = self.node_width
        return self.edge(a | (b << w)) & self.edge(b | (a << w))

    def edge_colors(self, a: int, xs: Sequence[int]) -> list[int]:
        w = self.node_width
        fwd = self.edge.eval_many([a | (x << w) for x in xs])
        back = self.edge.eval_many([x | (a << w) for x in xs])
        return [p & q for p, q in zip(fwd, back)]

    def params(self):
        return {"n": self.n}

    def functions(self):
        return {"edge": self.edge}


@dataclass(frozen=True)
class RamseyRInstance:
    """r-colored complete graph on 2^node_width nodes.

    The color of {u, v} is color(min, max) with the smaller node in the low
    bits.  The color of a self-pair is never consulted.
    """
    r: int
    n: int
    color: Function
    node_width: int | None = None
    meta: dict = _meta()
    kind: ClassVar[str] = "ramsey"

    def __post_init__(self):
        if not is_power_of_two(self.r):
            raise ContractViolation(f"color count {self.r} is not a power of two")
        if self.n < 1:
            raise ContractViolation("clique target must be at least 1")
        if self.node_width is None:
            object.__setattr__(self, "node_width", self.default_width(self.r, self.n))
        if self.node_width < 0:
            raise ContractViolation("node width must be non-negative")
        _check(self.color, "color", 2 * self.node_width, self.color_width)

    @staticmethod
    def default_width(r: int, n: int) -> int:
        return r * n * ceil_log2(r)

    @property
    def color_width(self) -> int:
        return ceil_log2(self.r)

    @property
    def num_colors(self) -> int:
        return self.r

    @property
    def target(self) -> int:
        return self.n

    @property
    def weak_guarantee(self) -> bool:
        return self.node_width < self.default_width(self.r, self.n)

    def edge_color(self, a: int, b: int) -> int:
        lo, hi = (a, b) if a < b else (b, a)
        return self.color(lo | (hi << self.node_width))

    def edge_colors(self, a: int, xs: Sequence[int]) -> list[int]:
        w = self.node_width
        return self.color.eval_many([(a | (x << w)) if a < x else (x | (a << w)) for x in xs])

    def params(self):
        return {"r": self.r, "n": self.n, "node_width": self.node_width}

    def functions(self):
        return {"color": self.color}


@dataclass(frozen=True)
class SunflowerInstance:
    """F(i) lists k elements, element j in bits [j*w, (j+1)*w)."""
    k: int
    F: Function
    index_width: int | None = None
    element_width: int | None = None
    meta: dict = _meta()
    kind: ClassVar[str] = "sunflower"

    def __post_init__(self):
        if self.k < 1:
            raise ContractViolation("k must be at least 1")
        default = self.default_width(self.k)
        if self.index_width is None:
            object.__setattr__(self, "index_width", default)
        if self.element_width is None:
            object.__setattr__(self, "element_width", default)
        _check(self.F, "F", self.index_width, self.k * self.element_width)

    @staticmethod
    def default_width(k: int) -> int:
        return k ** 3 * ceil_log2(k)

    @property
    def target(self) -> int:
        return self.k * self.k

    def members(self, i: int) -> list[int]:
        return unpack(self.F(i), self.element_width, self.k)

    def member_set(self, i: int) -> frozenset | None:
        """The k-set at index i, or None when entries repeat."""
        m = self.members(i)
        s = frozenset(m)
        return s if len(s) == self.k else None

    def params(self):
        return {"k": self.k, "index_width": self.index_width, "element_width": self.element_width}

    def functions(self):
        return {"F": self.F}


@dataclass(frozen=True)
class KonigInstance:
    """parent(u) packs the parent node in the low n bits and the side bit on top."""
    n: int
    parent: Function
    root: int
    meta: dict = _meta()
    kind: ClassVar[str] = "konig"

    def __post_init__(self):
        if self.n < 1:
            raise ContractViolation("n must be at least 1")
        _check(self.parent, "parent", self.n, self.n + 1)
        if not 0 <= self.root < 1 << self.n:
            raise ContractViolation("root out of range")

    def parent_of(self, u: int) -> tuple[int, int]:
        p = self.parent(u)
        return p & ((1 << self.n) - 1), p >> self.n

    def params(self):
        return {"n": self.n, "root": self.root}

    def functions(self):
        return {"parent": self.parent}


@dataclass(frozen=True)
class EKRInstance:
    """2-set system with 2^n indices; F(i) holds two n-bit elements."""
    n: int
    F: Function
    meta: dict = _meta()
    kind: ClassVar[str] = "ekr"

    def __post_init__(self):
        if self.n < 1:
            raise ContractViolation("n must be at least 1")
        _check(self.F, "F", self.n, 2 * self.n)

    def pair(self, i: int) -> tuple[int, int]:
        v = self.F(i)
        return v & ((1 << self.n) - 1), v >> self.n

    def params(self):
        return {"n": self.n}

    def functions(self):
        return {"F": self.F}


class _GraphMixin:
    k: int
    n: int
    E: Function

    @property
    def node_count(self) -> int:
        return self.k << self.n

    @property
    def node_width(self) -> int:
        return self.n + ceil_log2(self.k)

    @property
    def edge_count(self) -> int:
        return comb(self.k, 2) * (1 << (2 * self.n)) + 1

    @property
    def index_width(self) -> int:
        return width_for_count(self.edge_count)

    def endpoints(self, i: int) -> tuple[int, int]:
        v = self.E(i)
        w = self.node_width
        return v & ((1 << w) - 1), v >> w

    def valid_edge(self, i: int) -> tuple[int, int] | None:
        """Sorted endpoints of edge i, or None for a loop or an out-of-range node."""
        u, v = self.endpoints(i)
        if u == v or u >= self.node_count or v >= self.node_count:
            return None
        return (u, v) if u < v else (v, u)

    def _check_graph(self):
        if self.k < 2:
            raise ContractViolation("k must be at least 2")
        if self.n < 1:
            raise ContractViolation("n must be at least 1")
        _check(self.E, "E", self.index_width, 2 * self.node_width)


@dataclass(frozen=True)
class BadColoringInstance(_GraphMixin):
    """Graph on nodes 0..k*2^n-1 with edges indexed 0..C(k,2)*4^n.

    Colors are 0-based; a raw color value c is read as c mod k.
    """
    k: int
    n: int
    E: Function
    C: Function
    meta: dict = _meta()
    kind: ClassVar[str] = "bad_coloring"

    def __post_init__(self):
        self._check_graph()
        _check(self.C, "C", self.node_width, width_for_count(self.k))

    def color_of(self, v: int) -> int:
        return self.C(v) % self.k

    def params(self):
        return {"k": self.k, "n": self.n}

    def functions(self):
        return {"E": self.E, "C": self.C}


@dataclass(frozen=True)
class TuranInstance(_GraphMixin):
    k: int
    n: int
    E: Function
    meta: dict = _meta()
    kind: ClassVar[str] = "turan"

    def __post_init__(self):
        self._check_graph()

    def params(self):
        return {"k": self.k, "n": self.n}

    def functions(self):
        return {"E": self.E}


@dataclass(frozen=True)
class BadKSetInstance:
    """k-set system with 2^(kn)+1 sets over nodes 0..k*2^n-1.

    Colors are 0-based and read mod k, as for bad colorings.
    """
    k: int
    n: int
    F: Function
    C: Function
    meta: dict = _meta()
    kind: ClassVar[str] = "bad_kset"

    def __post_init__(self):
        if self.k < 1 or self.n < 1:
            raise ContractViolation("k and n must be at least 1")
        _check(self.F, "F", self.index_width, self.k * self.node_width)
        _check(self.C, "C", self.node_width, width_for_count(self.k))

    @property
    def node_count(self) -> int:
        return self.k << self.n

    @property
    def node_width(self) -> int:
        return self.n + ceil_log2(self.k)

    @property
    def set_count(self) -> int:
        return (1 << (self.k * self.n)) + 1

    @property
    def index_width(self) -> int:
        return self.k * self.n + 1

    def members(self, i: int) -> list[int]:
        return unpack(self.F(i), self.node_width, self.k)

    def color_of(self, v: int) -> int:
        return self.C(v) % self.k

    def is_bad(self, i: int) -> bool:
        """An entry out of range, or two entries of one color (repeats included)."""
        seen = set()
        for v in self.members(i):
            if v >= self.node_count:
                return True
            c = self.color_of(v)
            if c in seen:
                return True
            seen.add(c)
        return False

    def params(self):
        return {"k": self.k, "n": self.n}

    def functions(self):
        return {"F": self.F, "C": self.C}


@dataclass(frozen=True)
class EmptyInstance:
    """f maps the domain 0..2^n-3 into the range 0..2^n-2.

    Both ranges are the 1-based ones shifted down by one.  Inputs above the
    domain are ignored; outputs above the range count as hitting no hole.
    """
    n: int
    f: Function
    meta: dict = _meta()
    kind: ClassVar[str] = "empty"

    def __post_init__(self):
        if self.n < 2:
            raise ContractViolation("n must be at least 2")
        _check(self.f, "f", self.n, self.n)

    @property
    def domain_size(self) -> int:
        return (1 << self.n) - 2

    @property
    def range_size(self) -> int:
        return (1 << self.n) - 1

    def params(self):
        return {"n": self.n}

    def functions(self):
        return {"f": self.f}


@dataclass(frozen=True)
class WeakSchurInstance:
    """Colors the integers 1..2^width; integer i has color C(i-1)."""
    r: int
    C: Function
    width: int | None = None
    meta: dict = _meta()
    kind: ClassVar[str] = "weak_schur"

    def __post_init__(self):
        if self.r < 1:
            raise ContractViolation("r must be at least 1")
        if self.width is None:
            object.__setattr__(self, "width", self.default_width(self.r))
        if self.width < 1:
            raise ContractViolation("width must be at least 1")
        _check(self.C, "C", self.width, ceil_log2(self.r))

    @staticmethod
    def default_width(r: int) -> int:
        return max(1, 2 * r * ceil_log2(r))

    def color_of_int(self, i: int) -> int:
        return self.C(i - 1)

    def params(self):
        return {"r": self.r, "width": self.width}

    def functions(self):
        return {"C": self.C}


INSTANCE_TYPES = {cls.kind: cls for cls in (
    CollisionInstance, WeakCollisionInstance, LongChoiceInstance, ShortChoiceInstance,
    Ramsey2Instance, RamseyRInstance, SunflowerInstance, KonigInstance, EKRInstance,
    BadColoringInstance, TuranInstance, BadKSetInstance, EmptyInstance, WeakSchurInstance,
)}
