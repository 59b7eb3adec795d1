"""Pure bit-vector functions with declared widths.

A Function is backed by a gate circuit, an explicit truth table, or a
wrapper that runs Python glue over inner Functions.  Calling a Function
with a plain int is the fast path used inside solvers and reductions;
``evaluate`` is the width-checked entry point for BitVec values.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .bitvec import BitVec
from .circuit import Circuit, CircuitBuilder, Gate

MAX_TABLE_WIDTH = 20


class ContractViolation(ValueError):
    """A caller broke a documented precondition (widths, ranges, arity)."""


class Function:
    input_width: int
    output_width: int

    def __call__(self, x: int) -> int:
        if x < 0 or x >> self.input_width:
            raise ContractViolation(f"input {x} does not fit in {self.input_width} bits")
        return self._apply(x)

    def _apply(self, x: int) -> int:
        raise NotImplementedError

    def eval_many(self, xs: Sequence[int]) -> list[int]:
        for x in xs:
            if x < 0 or x >> self.input_width:
                raise ContractViolation(f"input {x} does not fit in {self.input_width} bits")
        return self._apply_many(xs)

    def _apply_many(self, xs: Sequence[int]) -> list[int]:
        return [self._apply(x) for x in xs]

    def table(self) -> list[int]:
        if self.input_width > MAX_TABLE_WIDTH:
            raise ContractViolation(f"input width {self.input_width} too large to tabulate")
        return self._apply_many(range(1 << self.input_width))


class CircuitFunction(Function):
    def __init__(self, circuit: Circuit):
        self.circuit = circuit
        self.input_width = circuit.input_width
        self.output_width = circuit.output_width

    def _apply(self, x: int) -> int:
        return self.circuit(x)

    def _apply_many(self, xs):
        return self.circuit.eval_many(xs)

    def __eq__(self, other):
        return isinstance(other, CircuitFunction) and other.circuit == self.circuit

    def __hash__(self):
        return hash(self.circuit)

    def __repr__(self):
        return f"CircuitFunction({self.input_width}->{self.output_width}, {len(self.circuit.gates)} gates)"


class TruthTable(Function):
    def __init__(self, input_width: int, output_width: int, outputs: Sequence[int]):
        if input_width > MAX_TABLE_WIDTH:
            raise ContractViolation(f"truth tables are limited to input width {MAX_TABLE_WIDTH}")
        outputs = tuple(int(v) for v in outputs)
        if len(outputs) != 1 << input_width:
            raise ContractViolation(f"table has {len(outputs)} rows, expected {1 << input_width}")
        for v in outputs:
            if v < 0 or v >> output_width:
                raise ContractViolation(f"table entry {v} does not fit in {output_width} bits")
        self.input_width = input_width
        self.output_width = output_width
        self.outputs = outputs

    def _apply(self, x: int) -> int:
        return self.outputs[x]

    def _apply_many(self, xs):
        out = self.outputs
        return [out[x] for x in xs]

    def __eq__(self, other):
        return (isinstance(other, TruthTable) and other.input_width == self.input_width
                and other.output_width == self.output_width and other.outputs == self.outputs)

    def __hash__(self):
        return hash((self.input_width, self.output_width, self.outputs))

    def __repr__(self):
        return f"TruthTable({self.input_width}->{self.output_width})"


class Wrapper(Function):
    """Glue logic over inner Functions.

    ``glue`` maps an input int to an output int.  ``glue_many``, when
    given, evaluates a whole batch and must agree pointwise with ``glue``.
    """

    def __init__(self, input_width: int, output_width: int, glue: Callable[[int], int],
                 inner: Sequence[Function] = (), name: str = "wrapper",
                 glue_many: Callable[[Sequence[int]], list[int]] | None = None):
        self.input_width = input_width
        self.output_width = output_width
        self.glue = glue
        self.glue_many = glue_many
        self.inner = tuple(inner)
        self.name = name

    def _apply(self, x: int) -> int:
        y = self.glue(x)
        if y < 0 or y >> self.output_width:
            raise ContractViolation(f"{self.name} produced {y}, wider than {self.output_width} bits")
        return y

    def _apply_many(self, xs):
        if self.glue_many is None:
            return [self._apply(x) for x in xs]
        ys = self.glue_many(xs)
        for y in ys:
            if y < 0 or y >> self.output_width:
                raise ContractViolation(f"{self.name} produced {y}, wider than {self.output_width} bits")
        return ys

    def __repr__(self):
        return f"Wrapper({self.name}, {self.input_width}->{self.output_width})"


def evaluate(f: Function, x: BitVec) -> BitVec:
    if x.width != f.input_width:
        raise ContractViolation(f"input has width {x.width}, function expects {f.input_width}")
    return BitVec(f(x.value), f.output_width)


def compose(outer: Function, inner: Function) -> Function:
    """The function x -> outer(inner(x))."""
    if inner.output_width != outer.input_width:
        raise ContractViolation(
            f"inner output width {inner.output_width} != outer input width {outer.input_width}")
    if isinstance(outer, CircuitFunction) and isinstance(inner, CircuitFunction):
        return CircuitFunction(_splice(outer.circuit, inner.circuit))
    return Wrapper(inner.input_width, outer.output_width, lambda x: outer(inner(x)),
                   inner=(outer, inner), name="compose",
                   glue_many=lambda xs: outer.eval_many(inner.eval_many(xs)))


def _splice(outer: Circuit, inner: Circuit) -> Circuit:
    gates = list(inner.gates)
    remap = {}
    for i, g in enumerate(outer.gates):
        if g.op == "INPUT":
            remap[i] = inner.outputs[g.args[0]]
            continue
        if g.op == "CONST":
            gates.append(g)
        else:
            gates.append(Gate(g.op, tuple(remap[r] for r in g.args)))
        remap[i] = len(gates) - 1
    return Circuit(inner.input_width, outer.output_width, tuple(gates),
                   tuple(remap[r] for r in outer.outputs))


def from_truth_table(table: Sequence[BitVec | int], output_width: int | None = None) -> TruthTable:
    """Build a table-backed Function; entry x is the output for input x."""
    n = len(table)
    if n == 0 or n & (n - 1):
        raise ContractViolation(f"table length {n} is not a power of two")
    input_width = n.bit_length() - 1
    values = []
    widths = set()
    for v in table:
        if isinstance(v, BitVec):
            widths.add(v.width)
            values.append(v.value)
        else:
            values.append(int(v))
    if len(widths) > 1:
        raise ContractViolation(f"ragged output widths {sorted(widths)}")
    if widths:
        (w,) = widths
        if output_width is not None and output_width != w:
            raise ContractViolation(f"declared output width {output_width} != entry width {w}")
        output_width = w
    if output_width is None:
        output_width = max(1, max(values).bit_length())
    return TruthTable(input_width, output_width, values)


def synthesize(f: Function) -> CircuitFunction:
    """Gate-level circuit for a small function via a multiplexer tree.

    Size grows as 2^input_width, so this is for desk-scale generators only.
    """
    if f.input_width > 12:
        raise ContractViolation("synthesis is limited to input width 12")
    rows = f.table()
    b = CircuitBuilder(f.input_width)
    outputs = []
    for bit in range(f.output_width):
        column = [(y >> bit) & 1 for y in rows]
        outputs.append(_mux_tree(b, column, 0))
    return CircuitFunction(b.build(outputs))


def _mux_tree(b: CircuitBuilder, column: list[int], level: int) -> int:
    if len(column) == 1:
        return b.const(column[0])
    lo = _mux_tree(b, column[0::2], level + 1)
    hi = _mux_tree(b, column[1::2], level + 1)
    if lo == hi:
        return lo
    sel = b.input(level)
    if lo == b.const(0) and hi == b.const(1):
        return sel
    return b.mux(sel, lo, hi)


def identity(width: int) -> CircuitFunction:
    b = CircuitBuilder(width)
    return CircuitFunction(b.build([b.input(i) for i in range(width)]))


def constant(input_width: int, output_width: int, value: int) -> CircuitFunction:
    b = CircuitBuilder(input_width)
    return CircuitFunction(b.build([b.const((value >> i) & 1) for i in range(output_width)]))
