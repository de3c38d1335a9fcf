"""
Circuit file format (.qc.json).

A JSON object with one op per line inside "ops":

    {"format": "globalgates.circuit", "version": 1, "n_qubits": 3,
     "name": "...", "metadata": {...},
     "ops": [
      {"kind": "Pulse", "qubits": [0], "angle": "pi/2"},
      ...
     ]}

Angles are written as exact pi tokens when possible (see core.angles).
"""
import json
import logging
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from globalgates.core.angles import format_angle, parse_angle
from globalgates.core.errors import CircuitParseError
from globalgates.enums import GateKind
from globalgates.schemas.circuit import Circuit
from globalgates.schemas.gate_op import GateOp

logger = logging.getLogger(__name__)

FORMAT_NAME = "globalgates.circuit"
FORMAT_VERSION = 1
FILE_SUFFIX = ".qc.json"

_KINDS = {k.value: k for k in GateKind}


def _op_to_dict(op: GateOp) -> dict[str, Any]:
    out: dict[str, Any] = {"kind": op.kind.value, "qubits": list(op.qubits)}
    if op.angle is not None:
        out["angle"] = format_angle(op.angle)
    if op.couplings is not None:
        out["couplings"] = [[float(x) for x in row] for row in op.couplings]
    return out


def serialize(circuit: Circuit) -> str:
    header = {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "n_qubits": circuit.n_qubits,
        "name": circuit.name,
        "metadata": dict(circuit.metadata),
    }
    head = json.dumps(header, ensure_ascii=False)[:-1]
    lines = [json.dumps(_op_to_dict(op), ensure_ascii=False) for op in circuit.ops]
    if not lines:
        return head + ', "ops": []}\n'
    return head + ', "ops": [\n ' + ",\n ".join(lines) + "\n]}\n"


def _op_from_dict(raw: Any, location: str) -> GateOp:
    if not isinstance(raw, dict):
        raise CircuitParseError("op must be an object", location)
    kind_name = raw.get("kind")
    if kind_name not in _KINDS:
        raise CircuitParseError(f"unknown gate kind {kind_name!r}", location)
    qubits = raw.get("qubits")
    if not isinstance(qubits, list) or not all(isinstance(q, int) and not isinstance(q, bool) for q in qubits):
        raise CircuitParseError("qubits must be a list of integers", location)

    angle = None
    if "angle" in raw and raw["angle"] is not None:
        try:
            angle = parse_angle(raw["angle"])
        except ValueError as exc:
            raise CircuitParseError(str(exc), location) from exc

    try:
        return GateOp(kind=_KINDS[kind_name], qubits=qubits, angle=angle, couplings=raw.get("couplings"))
    except ValidationError as exc:
        message = "; ".join(err["msg"] for err in exc.errors())
        raise CircuitParseError(f"bad op: {message}", location) from exc


def parse(text: str) -> Circuit:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CircuitParseError(f"malformed document: {exc.msg}", f"line {exc.lineno}, column {exc.colno}") from exc

    if not isinstance(doc, dict):
        raise CircuitParseError("document must be a JSON object", "document")
    if doc.get("format", FORMAT_NAME) != FORMAT_NAME:
        raise CircuitParseError(f"unsupported format {doc.get('format')!r}", "format")
    n_qubits = doc.get("n_qubits")
    if not isinstance(n_qubits, int) or isinstance(n_qubits, bool):
        raise CircuitParseError("n_qubits must be an integer", "n_qubits")
    raw_ops = doc.get("ops", [])
    if not isinstance(raw_ops, list):
        raise CircuitParseError("ops must be a list", "ops")

    ops = [_op_from_dict(raw, f"ops[{i}]") for i, raw in enumerate(raw_ops)]
    for i, op in enumerate(ops):
        if any(q >= n_qubits for q in op.qubits):
            raise CircuitParseError(f"bad qubit index {max(op.qubits)} for {n_qubits} qubits", f"ops[{i}]")

    metadata = doc.get("metadata") or {}
    try:
        return Circuit(
            n_qubits=n_qubits,
            ops=tuple(ops),
            name=doc.get("name"),
            metadata={str(k): str(v) for k, v in dict(metadata).items()},
        )
    except (ValidationError, TypeError, ValueError) as exc:
        raise CircuitParseError(f"invalid circuit: {exc}", "document") from exc


def save_circuit(path: str | Path, circuit: Circuit) -> Path:
    path = Path(path)
    path.write_text(serialize(circuit), encoding="utf-8")
    logger.info("save_circuit: wrote %s ops=%d", path, len(circuit.ops))
    return path


def load_circuit(path: str | Path) -> Circuit:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    return parse(text)
