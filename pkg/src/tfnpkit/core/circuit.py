"""Gate-DAG circuits over {CONST, INPUT, NOT, AND, OR, XOR}.

Gates are numbered topologically: every reference points at a strictly
earlier gate.  Circuits compile lazily to straight-line Python, once for
single inputs and once for bitsliced batches where each Python int holds
one bit position across many inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

OPS = {"CONST": 1, "INPUT": 1, "NOT": 1, "AND": 2, "OR": 2, "XOR": 2}


class CircuitError(ValueError):
    pass


class CircuitParseError(CircuitError):
    def __init__(self, line: int, token: str, message: str):
        super().__init__(f"line {line}: {message} (at {token!r})")
        self.line = line
        self.token = token


@dataclass(frozen=True)
class Gate:
    op: str
    args: tuple[int, ...]

    def __post_init__(self):
        if self.op not in OPS:
            raise CircuitError(f"unknown gate op {self.op!r}")
        if len(self.args) != OPS[self.op]:
            raise CircuitError(f"{self.op} takes {OPS[self.op]} argument(s), got {len(self.args)}")
        if self.op == "CONST" and self.args[0] not in (0, 1):
            raise CircuitError(f"CONST value must be 0 or 1, got {self.args[0]}")

    @property
    def refs(self) -> tuple[int, ...]:
        return () if self.op in ("CONST", "INPUT") else self.args


@dataclass(frozen=True, eq=True)
class Circuit:
    input_width: int
    output_width: int
    gates: tuple[Gate, ...]
    outputs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        if self.input_width < 0 or self.output_width < 0:
            raise CircuitError("widths must be non-negative")
        for i, g in enumerate(self.gates):
            if g.op == "INPUT" and not 0 <= g.args[0] < self.input_width:
                raise CircuitError(f"g{i}: input position {g.args[0]} out of range")
            for r in g.refs:
                if not 0 <= r < i:
                    raise CircuitError(f"g{i}: reference g{r} is not an earlier gate")
        if len(self.outputs) != self.output_width:
            raise CircuitError(f"{len(self.outputs)} outputs declared for width {self.output_width}")
        for r in self.outputs:
            if not 0 <= r < len(self.gates):
                raise CircuitError(f"output reference g{r} out of range")

    # the compiled evaluators are caches; equality and hashing ignore them
    def __hash__(self):
        return hash((self.input_width, self.output_width, self.gates, self.outputs))

    @cached_property
    def _scalar(self):
        lines = ["def _f(x):"]
        for i, g in enumerate(self.gates):
            lines.append(f"    g{i} = {_expr(g, scalar=True)}")
        terms = [f"(g{r} << {b})" for b, r in enumerate(self.outputs)]
        lines.append("    return " + (" | ".join(terms) if terms else "0"))
        return _compile(lines)

    @cached_property
    def _sliced(self):
        lines = ["def _f(c, M):"]
        for i, g in enumerate(self.gates):
            lines.append(f"    g{i} = {_expr(g, scalar=False)}")
        lines.append("    return (" + "".join(f"g{r}, " for r in self.outputs) + ")")
        return _compile(lines)

    @cached_property
    def used_inputs(self) -> tuple[int, ...]:
        return tuple(sorted({g.args[0] for g in self.gates if g.op == "INPUT"}))

    def __call__(self, x: int) -> int:
        return self._scalar(x)

    def eval_many(self, xs: Sequence[int]) -> list[int]:
        xs = list(xs)
        count = len(xs)
        if count < 16:
            f = self._scalar
            return [f(x) for x in xs]
        mask = (1 << count) - 1
        cols = _columns(xs, self.used_inputs, mask)
        out_cols = self._sliced(cols, mask)
        return _rows(out_cols, count)


def _expr(g: Gate, scalar: bool) -> str:
    a = g.args
    if g.op == "CONST":
        if scalar:
            return str(a[0])
        return "M" if a[0] else "0"
    if g.op == "INPUT":
        return f"(x >> {a[0]}) & 1" if scalar else f"c[{a[0]}]"
    if g.op == "NOT":
        return f"g{a[0]} ^ " + ("1" if scalar else "M")
    sym = {"AND": "&", "OR": "|", "XOR": "^"}[g.op]
    return f"g{a[0]} {sym} g{a[1]}"


def _compile(lines: list[str]):
    namespace: dict = {}
    exec(compile("\n".join(lines), "<circuit>", "exec"), namespace)
    return namespace["_f"]


def _columns(xs: list[int], positions: Sequence[int], mask: int) -> dict[int, int]:
    """Transpose inputs into per-position bit columns (bit j = input j)."""
    all_and, all_or = -1, 0
    for x in xs:
        all_and &= x
        all_or |= x
    varying = all_and ^ all_or
    cols = {}
    wanted = []
    for p in positions:
        if (varying >> p) & 1:
            wanted.append(p)
        else:
            cols[p] = mask if (all_and >> p) & 1 else 0
    if not wanted:
        return cols
    lo, hi = wanted[0], wanted[-1]
    if hi - lo < 64:
        window = (1 << (hi - lo + 1)) - 1
        arr = np.fromiter(((x >> lo) & window for x in xs), dtype=np.uint64, count=len(xs))
        for p in wanted:
            bits = ((arr >> np.uint64(p - lo)) & np.uint64(1)).astype(np.uint8)
            cols[p] = int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")
    else:
        for p in wanted:
            col = 0
            for j, x in enumerate(xs):
                if (x >> p) & 1:
                    col |= 1 << j
            cols[p] = col
    return cols


def _rows(out_cols: Sequence[int], count: int) -> list[int]:
    if not out_cols:
        return [0] * count
    nbytes = (count + 7) // 8
    if len(out_cols) <= 62:
        acc = np.zeros(count, dtype=np.int64)
        for b, col in enumerate(out_cols):
            raw = np.frombuffer(col.to_bytes(nbytes, "little"), dtype=np.uint8)
            bits = np.unpackbits(raw, bitorder="little")[:count].astype(np.int64)
            acc |= bits << b
        return acc.tolist()
    rows = [0] * count
    for b, col in enumerate(out_cols):
        for j in range(count):
            if (col >> j) & 1:
                rows[j] |= 1 << b
    return rows


def serialize_circuit(c: Circuit) -> str:
    lines = [f"circuit {c.input_width} {c.output_width}"]
    for i, g in enumerate(c.gates):
        if g.op in ("CONST", "INPUT"):
            lines.append(f"g{i} = {g.op} {g.args[0]}")
        else:
            lines.append(f"g{i} = {g.op} " + " ".join(f"g{r}" for r in g.args))
    lines.append(" ".join(["out"] + [f"g{r}" for r in c.outputs]))
    return "\n".join(lines) + "\n"


def _gate_ref(tok: str, lineno: int) -> int:
    if len(tok) < 2 or tok[0] != "g" or not tok[1:].isdigit():
        raise CircuitParseError(lineno, tok, "expected a gate reference g<index>")
    return int(tok[1:])


def _number(tok: str, lineno: int) -> int:
    if not tok.isdigit():
        raise CircuitParseError(lineno, tok, "expected a decimal integer")
    return int(tok)


def parse_circuit(text: str) -> Circuit:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise CircuitParseError(1, "", "empty circuit text")
    head = lines[0].split(" ")
    if len(head) != 3 or head[0] != "circuit":
        raise CircuitParseError(1, lines[0], "expected 'circuit <input_width> <output_width>'")
    in_w, out_w = _number(head[1], 1), _number(head[2], 1)
    gates: list[Gate] = []
    outputs = None
    for lineno, line in enumerate(lines[1:], start=2):
        toks = line.split(" ")
        if outputs is not None:
            raise CircuitParseError(lineno, toks[0], "content after the out line")
        if toks[0] == "out":
            outputs = [_gate_ref(t, lineno) for t in toks[1:]]
            for t, r in zip(toks[1:], outputs):
                if r >= len(gates):
                    raise CircuitParseError(lineno, t, "output refers to an undefined gate")
            if len(outputs) != out_w:
                raise CircuitParseError(lineno, line, f"expected {out_w} output references")
            continue
        if len(toks) < 3 or toks[1] != "=":
            raise CircuitParseError(lineno, toks[0], "expected 'g<i> = OP ...'")
        idx = _gate_ref(toks[0], lineno)
        if idx != len(gates):
            raise CircuitParseError(lineno, toks[0], f"expected gate g{len(gates)}")
        op = toks[2]
        if op not in OPS:
            raise CircuitParseError(lineno, op, "unknown gate op")
        args_tok = toks[3:]
        if len(args_tok) != OPS[op]:
            raise CircuitParseError(lineno, line, f"{op} takes {OPS[op]} argument(s)")
        if op in ("CONST", "INPUT"):
            val = _number(args_tok[0], lineno)
            if op == "CONST" and val > 1:
                raise CircuitParseError(lineno, args_tok[0], "CONST must be 0 or 1")
            if op == "INPUT" and val >= in_w:
                raise CircuitParseError(lineno, args_tok[0], "input position out of range")
            gates.append(Gate(op, (val,)))
        else:
            refs = []
            for t in args_tok:
                r = _gate_ref(t, lineno)
                if r >= idx:
                    raise CircuitParseError(lineno, t, "reference to a gate that is not earlier")
                refs.append(r)
            gates.append(Gate(op, tuple(refs)))
    if outputs is None:
        raise CircuitParseError(len(lines) + 1, "", "missing out line")
    return Circuit(in_w, out_w, tuple(gates), tuple(outputs))


class CircuitBuilder:
    """Small helper for assembling circuits gate by gate."""

    def __init__(self, input_width: int):
        self.input_width = input_width
        self.gates: list[Gate] = []
        self._inputs: dict[int, int] = {}
        self._consts: dict[int, int] = {}

    def _add(self, op: str, *args: int) -> int:
        self.gates.append(Gate(op, tuple(args)))
        return len(self.gates) - 1

    def const(self, bit: int) -> int:
        if bit not in self._consts:
            self._consts[bit] = self._add("CONST", bit)
        return self._consts[bit]

    def input(self, pos: int) -> int:
        if pos not in self._inputs:
            self._inputs[pos] = self._add("INPUT", pos)
        return self._inputs[pos]

    def not_(self, a: int) -> int:
        return self._add("NOT", a)

    def and_(self, a: int, b: int) -> int:
        return self._add("AND", a, b)

    def or_(self, a: int, b: int) -> int:
        return self._add("OR", a, b)

    def xor(self, a: int, b: int) -> int:
        return self._add("XOR", a, b)

    def mux(self, sel: int, if0: int, if1: int) -> int:
        return self.or_(self.and_(self.not_(sel), if0), self.and_(sel, if1))

    def build(self, outputs: Sequence[int]) -> Circuit:
        return Circuit(self.input_width, len(outputs), tuple(self.gates), tuple(outputs))
