"""Certificate shapes.  Each has a stable ``kind`` string and a flat
integer ``data`` list used by the JSON interchange format."""

from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar


class Certificate:
    kind: ClassVar[str]

    @property
    def data(self) -> list[int]:
        raise NotImplementedError

    @classmethod
    def from_data(cls, data: list[int]) -> Certificate:
        raise NotImplementedError


def _fixed(kind: str, *names: str):
    """Decorator for certificates made of a fixed number of integer fields."""
    def wrap(cls):
        cls.kind = kind

        def data(self):
            return [getattr(self, f) for f in names]

        def from_data(c, values):
            if len(values) != len(names):
                raise ValueError(f"{kind} expects {len(names)} integers, got {len(values)}")
            return c(*values)
        cls.data = property(data)
        cls.from_data = classmethod(from_data)
        return cls
    return wrap


@_fixed("zero", "x")
@dataclass(frozen=True)
class Zero(Certificate):
    x: int


@_fixed("collision", "x", "y")
@dataclass(frozen=True)
class Collision(Certificate):
    x: int
    y: int


@dataclass(frozen=True)
class ChoiceSeq(Certificate):
    elements: tuple
    kind: ClassVar[str] = "choice_seq"

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))

    @property
    def data(self):
        return list(self.elements)

    @classmethod
    def from_data(cls, values):
        return cls(tuple(values))


@dataclass(frozen=True)
class ShortCert(Certificate):
    """Subcertificate a_0..a_k plus the bit c; data is [a_0, ..., a_k, c]."""
    elements: tuple
    c: int
    kind: ClassVar[str] = "short_cert"

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))

    @property
    def data(self):
        return list(self.elements) + [self.c]

    @classmethod
    def from_data(cls, values):
        if len(values) < 2:
            raise ValueError("short_cert needs at least one element and the bit")
        return cls(tuple(values[:-1]), values[-1])


@dataclass(frozen=True)
class Clique(Certificate):
    """Monochromatic clique; data is [color, node, node, ...]."""
    nodes: tuple
    color: int
    kind: ClassVar[str] = "clique"

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))

    @property
    def data(self):
        return [self.color] + list(self.nodes)

    @classmethod
    def from_data(cls, values):
        if not values:
            raise ValueError("clique needs a color")
        return cls(tuple(values[1:]), values[0])


class _IndexList(Certificate):
    indices: tuple

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(self.indices))

    @property
    def data(self):
        return list(self.indices)

    @classmethod
    def from_data(cls, values):
        return cls(tuple(values))


@dataclass(frozen=True)
class Sunflower(_IndexList):
    indices: tuple
    kind: ClassVar[str] = "sunflower"


@dataclass(frozen=True)
class CliqueEdges(_IndexList):
    indices: tuple
    kind: ClassVar[str] = "clique_edges"


@_fixed("sunflower_error", "i")
@dataclass(frozen=True)
class SunflowerError(Certificate):
    i: int


@_fixed("sunflower_dup", "i", "j")
@dataclass(frozen=True)
class SunflowerDup(Certificate):
    i: int
    j: int


@_fixed("identical_children", "a", "b")
@dataclass(frozen=True)
class IdenticalChildren(Certificate):
    a: int
    b: int


@_fixed("invalid_root")
@dataclass(frozen=True)
class InvalidRoot(Certificate):
    pass


@_fixed("non_unique_root", "s")
@dataclass(frozen=True)
class NonUniqueRoot(Certificate):
    s: int


@_fixed("far_away", "s")
@dataclass(frozen=True)
class FarAway(Certificate):
    s: int


@_fixed("long_path", "node")
@dataclass(frozen=True)
class LongPath(Certificate):
    """The deepest node of a root-anchored path with n+1 nodes."""
    node: int


@_fixed("ekr_error", "i")
@dataclass(frozen=True)
class EKRError(Certificate):
    i: int


@_fixed("ekr_dup", "i", "j")
@dataclass(frozen=True)
class EKRDup(Certificate):
    i: int
    j: int


@_fixed("ekr_disjoint", "i", "j")
@dataclass(frozen=True)
class EKRDisjoint(Certificate):
    i: int
    j: int


@_fixed("edge_error", "i")
@dataclass(frozen=True)
class EdgeError(Certificate):
    i: int


@_fixed("edge_dup", "i", "j")
@dataclass(frozen=True)
class EdgeDup(Certificate):
    i: int
    j: int


@_fixed("bad_edge", "i")
@dataclass(frozen=True)
class BadEdge(Certificate):
    i: int


@_fixed("bad_set", "i")
@dataclass(frozen=True)
class BadSet(Certificate):
    i: int


@_fixed("set_dup", "i", "j")
@dataclass(frozen=True)
class SetDup(Certificate):
    i: int
    j: int


@_fixed("empty_hole", "e")
@dataclass(frozen=True)
class EmptyHole(Certificate):
    e: int


@_fixed("schur_triple", "a", "b")
@dataclass(frozen=True)
class SchurTriple(Certificate):
    a: int
    b: int


KONIG_KINDS = (IdenticalChildren, InvalidRoot, NonUniqueRoot, FarAway, LongPath)

CERTIFICATE_TYPES = {cls.kind: cls for cls in (
    Zero, Collision, ChoiceSeq, ShortCert, Clique, Sunflower, SunflowerError, SunflowerDup,
    *KONIG_KINDS, EKRError, EKRDup, EKRDisjoint, EdgeError, EdgeDup, BadEdge, CliqueEdges,
    BadSet, SetDup, EmptyHole, SchurTriple,
)}

# which certificate kinds each instance kind admits
ADMISSIBLE = {
    "collision": (Zero, Collision),
    "weak_collision": (Collision,),
    "long_choice": (ChoiceSeq,),
    "short_choice": (ShortCert,),
    "ramsey2": (Clique,),
    "ramsey": (Clique,),
    "sunflower": (Sunflower, SunflowerError, SunflowerDup),
    "konig": KONIG_KINDS,
    "ekr": (EKRError, EKRDup, EKRDisjoint),
    "bad_coloring": (EdgeError, EdgeDup, BadEdge),
    "turan": (EdgeError, EdgeDup, CliqueEdges),
    "bad_kset": (BadSet, SetDup),
    "empty": (EmptyHole,),
    "weak_schur": (SchurTriple,),
}


def certificate_from_data(kind: str, data: list[int]) -> Certificate:
    if kind not in CERTIFICATE_TYPES:
        raise ValueError(f"unknown certificate kind {kind!r}")
    if not all(isinstance(v, int) and not isinstance(v, bool) for v in data):
        raise ValueError("certificate data must be integers")
    return CERTIFICATE_TYPES[kind].from_data(list(data))
