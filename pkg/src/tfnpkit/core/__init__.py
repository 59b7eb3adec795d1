from .bitvec import BitVec, ceil_log2, is_power_of_two, next_power_of_two, pack, unpack, width_for_count
from .circuit import Circuit, CircuitBuilder, CircuitError, CircuitParseError, Gate, parse_circuit, serialize_circuit
from .function import (
    CircuitFunction,
    ContractViolation,
    Function,
    TruthTable,
    Wrapper,
    compose,
    constant,
    evaluate,
    from_truth_table,
    identity,
    synthesize,
)
