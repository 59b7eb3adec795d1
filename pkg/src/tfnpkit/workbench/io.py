"""JSON interchange for instances and certificates.

Instance file::

    {"kind": "collision", "params": {"n": 3},
     "functions": {"f": "circuit 3 3\\n..." | {"table": [...], "output_width": 3}},
     "meta": {...}}

Reduced instances hold Wrapper functions, which have no standalone text
form; they are stored as a derivation that is replayed on load::

    {"derived": {"reduction": "collision->long_choice", "params": {},
                 "source": <instance file>}, "aux": {...}}

Certificate file: ``{"kind": "collision", "data": [x, y]}``.
"""

from __future__ import annotations

import json
import re

from ..core.circuit import parse_circuit, serialize_circuit
from ..core.function import CircuitFunction, Function, TruthTable
from ..problems.certificates import Certificate, certificate_from_data
from ..problems.instances import INSTANCE_TYPES
from ..reductions import Reduced, get_reduction


class FormatError(ValueError):
    """A file that does not follow the interchange format."""


def dumps(doc) -> str:
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def function_to_json(f: Function):
    if isinstance(f, CircuitFunction):
        return serialize_circuit(f.circuit)
    if isinstance(f, TruthTable):
        return {"table": list(f.outputs), "output_width": f.output_width}
    raise FormatError(f"{f!r} has no standalone file form; store the derivation instead")


def function_from_json(doc) -> Function:
    if isinstance(doc, str):
        return CircuitFunction(parse_circuit(doc))
    if isinstance(doc, dict) and "table" in doc:
        table = doc["table"]
        size = len(table)
        if size == 0 or size & (size - 1):
            raise FormatError(f"table length {size} is not a power of two")
        width = doc.get("output_width")
        if width is None:
            width = max(1, max(table).bit_length())
        return TruthTable(size.bit_length() - 1, width, table)
    raise FormatError("a function is circuit text or an object with a 'table' list")


_PREDICATE = re.compile(r"^P(\d+)$")


def instance_to_json(instance) -> dict:
    return {
        "kind": instance.kind,
        "params": instance.params(),
        "functions": {name: function_to_json(f) for name, f in instance.functions().items()},
        "meta": instance.meta,
    }


def derived_to_json(reduction: str, params: dict, source_doc: dict, aux: dict) -> dict:
    return {"derived": {"reduction": reduction, "params": params, "source": source_doc}, "aux": aux}


def instance_from_json(doc: dict):
    if not isinstance(doc, dict):
        raise FormatError("an instance file holds a JSON object")
    if "derived" in doc:
        d = doc["derived"]
        source = instance_from_json(d["source"])
        outcome = get_reduction(d["reduction"])(source, **d.get("params", {}))
        if not isinstance(outcome, Reduced):
            raise FormatError(f"{d['reduction']} answers this source immediately; there is no derived instance")
        return outcome.target
    try:
        kind, params, functions = doc["kind"], dict(doc["params"]), doc["functions"]
    except KeyError as exc:
        raise FormatError(f"instance file lacks {exc.args[0]!r}") from None
    if kind not in INSTANCE_TYPES:
        raise FormatError(f"unknown instance kind {kind!r}")
    fns = {name: function_from_json(body) for name, body in functions.items()}
    if kind in ("long_choice", "short_choice"):
        preds = {}
        for name, f in fns.items():
            m = _PREDICATE.match(name)
            if not m:
                raise FormatError(f"unexpected function {name!r} in a {kind} instance")
            preds[int(m.group(1))] = f
        if sorted(preds) != list(range(len(preds))):
            raise FormatError("predicates must be numbered P0, P1, ... without gaps")
        fns = {"predicates": [preds[i] for i in range(len(preds))]}
    if "deps" in params and params["deps"] is not None:
        params["deps"] = tuple(params["deps"])
    return INSTANCE_TYPES[kind](**params, **fns, meta=dict(doc.get("meta", {})))


def certificate_to_json(c: Certificate) -> dict:
    return {"kind": c.kind, "data": list(c.data)}


def certificate_from_json(doc: dict) -> Certificate:
    if not isinstance(doc, dict) or "kind" not in doc or "data" not in doc:
        raise FormatError("a certificate file is an object with 'kind' and 'data'")
    data = doc["data"]
    if not isinstance(data, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in data):
        raise FormatError("certificate data must be a list of integers")
    try:
        return certificate_from_data(doc["kind"], data)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def read_json(path: str):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def write_text(path: str | None, text: str):
    if path is None or path == "-":
        print(text, end="")
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
