"""Realization documents: JSON parse/emit and DOT export.

The on-disk format is one JSON object: field order, symbol and state
declarations, and one generator-row list per constraint. Emission is
canonical: ids in natural order (digit runs compared numerically),
generators in reduced echelon form, explicit negate_at. Parsing nudges
any document into the same order, so parse(emit(parse(text))) equals
parse(text).
"""

from __future__ import annotations

import json
import re
from typing import Any

import numpy as np

from .blockcode import BlockedCode, BlockStructure
from .errors import DocumentError
from .fields import MatrixF, PrimeField
from .realization import (
    Constraint,
    Realization,
    StateVar,
    SymbolVar,
    Topology,
)

_CHUNKS = re.compile(r"\d+|\D+")


def natural_key(text: str) -> tuple:
    """Sort key treating digit runs as numbers: a2 before a10."""
    return tuple((0, int(c)) if c.isdigit() else (1, c)
                 for c in _CHUNKS.findall(text))


def _require(obj: Any, key: str, kind: type, path: str) -> Any:
    if not isinstance(obj, dict):
        raise DocumentError(path, "expected an object")
    if key not in obj:
        raise DocumentError(f"{path}.{key}", "missing required field")
    value = obj[key]
    if kind is int and isinstance(value, bool):
        raise DocumentError(f"{path}.{key}", "expected an integer")
    if not isinstance(value, kind):
        raise DocumentError(f"{path}.{key}", f"expected {kind.__name__}")
    return value


def _int_rows(raw: Any, path: str) -> list[list[int]]:
    if not isinstance(raw, list):
        raise DocumentError(path, "expected a list of rows")
    rows = []
    for i, row in enumerate(raw):
        if not isinstance(row, list):
            raise DocumentError(f"{path}[{i}]", "expected a list of integers")
        for j, x in enumerate(row):
            if isinstance(x, bool) or not isinstance(x, int):
                raise DocumentError(f"{path}[{i}][{j}]", "expected an integer")
        rows.append([int(x) for x in row])
    return rows


def parse_realization(text: str) -> Realization:
    """Read a realization document; structural soundness is checked later.

    Raises DocumentError with a JSON-path location for malformed input.
    Whether the parsed realization satisfies the graph invariants is the
    validate step's job; ids are preserved for its messages.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError("$", f"not valid JSON: {e}") from None
    if not isinstance(doc, dict):
        raise DocumentError("$", "expected a JSON object")

    p = _require(doc, "field", int, "$")
    try:
        field = PrimeField(p)
    except ValueError as e:
        raise DocumentError("$.field", str(e)) from None

    symbols = []
    for i, entry in enumerate(_require(doc, "symbols", list, "$")):
        path = f"$.symbols[{i}]"
        sid = _require(entry, "id", str, path)
        dim = _require(entry, "dim", int, path)
        try:
            symbols.append(SymbolVar(sid, dim))
        except ValueError as e:
            raise DocumentError(path, str(e)) from None

    states = []
    for i, entry in enumerate(_require(doc, "states", list, "$")):
        path = f"$.states[{i}]"
        sid = _require(entry, "id", str, path)
        dim = _require(entry, "dim", int, path)
        left = _require(entry, "left", str, path)
        right = _require(entry, "right", str, path)
        negate_at = entry.get("negate_at", "right") if isinstance(entry, dict) else "right"
        if not isinstance(negate_at, str):
            raise DocumentError(f"{path}.negate_at", "expected a string")
        try:
            states.append(StateVar(sid, dim, left, right, negate_at))
        except ValueError as e:
            raise DocumentError(path, str(e)) from None

    dim_of = {v.id: v.dim for v in symbols}
    dim_of.update({v.id: v.dim for v in states})

    constraints = []
    codes: dict[str, BlockedCode] = {}
    for i, entry in enumerate(_require(doc, "constraints", list, "$")):
        path = f"$.constraints[{i}]"
        cid = _require(entry, "id", str, path)
        raw_vars = _require(entry, "vars", list, path)
        for j, v in enumerate(raw_vars):
            if not isinstance(v, str):
                raise DocumentError(f"{path}.vars[{j}]", "expected a variable id")
            if v not in dim_of:
                raise DocumentError(f"{path}.vars[{j}]", f"undeclared variable {v!r}")
        rows = _int_rows(_require(entry, "generators", list, path), f"{path}.generators")
        width = sum(dim_of[v] for v in raw_vars)
        for j, row in enumerate(rows):
            if len(row) != width:
                raise DocumentError(
                    f"{path}.generators[{j}]",
                    f"row length {len(row)} != total var dim {width}")
        constraints.append(Constraint(cid, tuple(raw_vars)))
        structure = BlockStructure(tuple((v, dim_of[v]) for v in raw_vars))
        matrix = MatrixF(field, np.array(rows, dtype=np.int64).reshape(len(rows), width))
        if cid in codes:
            raise DocumentError(path, f"constraint id {cid!r} declared twice")
        codes[cid] = BlockedCode.from_rows(field, structure, matrix)

    symbols.sort(key=lambda v: natural_key(v.id))
    states.sort(key=lambda v: natural_key(v.id))
    constraints.sort(key=lambda c: natural_key(c.id))
    topo = Topology(tuple(symbols), tuple(states), tuple(constraints))
    return Realization(field, topo, codes)


def emit_realization(r: Realization) -> str:
    """Canonical document text for a realization."""
    topo = r.topology
    doc = {
        "field": r.field.p,
        "symbols": [
            {"id": s.id, "dim": s.dim}
            for s in sorted(topo.symbols, key=lambda v: natural_key(v.id))
        ],
        "states": [
            {"id": s.id, "dim": s.dim, "left": s.left, "right": s.right,
             "negate_at": s.negate_at}
            for s in sorted(topo.states, key=lambda v: natural_key(v.id))
        ],
        "constraints": [
            {"id": c.id, "vars": list(c.vars),
             "generators": r.code(c.id).space.basis.tolist()}
            for c in sorted(topo.constraints, key=lambda c: natural_key(c.id))
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def parse_code_document(text: str) -> BlockedCode:
    """Read an expected-code document: field, generators, optional width."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError("$", f"not valid JSON: {e}") from None
    if not isinstance(doc, dict):
        raise DocumentError("$", "expected a JSON object")
    p = _require(doc, "field", int, "$")
    try:
        field = PrimeField(p)
    except ValueError as e:
        raise DocumentError("$.field", str(e)) from None
    rows = _int_rows(_require(doc, "generators", list, "$"), "$.generators")
    width = doc.get("width")
    if width is None:
        if not rows:
            raise DocumentError("$.width", "required when generators is empty")
        width = len(rows[0])
    if isinstance(width, bool) or not isinstance(width, int) or width < 0:
        raise DocumentError("$.width", "expected a nonnegative integer")
    for j, row in enumerate(rows):
        if len(row) != width:
            raise DocumentError(f"$.generators[{j}]",
                                f"row length {len(row)} != width {width}")
    structure = BlockStructure((("word", width),))
    matrix = MatrixF(field, np.array(rows, dtype=np.int64).reshape(len(rows), width))
    return BlockedCode.from_rows(field, structure, matrix)


def _quote(s: str) -> str:
    # double quotes escaped; backslashes left alone so \n stays a DOT newline
    return '"' + s.replace('"', '\\"') + '"'


def export_dot(r: Realization) -> str:
    """DOT text: constraint boxes, state edges, symbol stubs."""
    r.ensure_valid()
    topo = r.topology
    lines = ["graph realization {", "  node [shape=box];"]
    for c in topo.constraints:
        label = c.id + "\\ndim " + str(r.code(c.id).dim)
        lines.append(f"  {_quote(c.id)} [label={_quote(label)}];")
    for s in topo.states:
        lines.append(f"  {_quote(s.left)} -- {_quote(s.right)} "
                     f"[label={_quote(f'{s.id}:{s.dim}')}];")
    for sym in topo.symbols:
        owner = next(c.id for c in topo.constraints if sym.id in c.vars)
        stub = f"sym:{sym.id}"
        lines.append(f"  {_quote(stub)} [shape=none, label={_quote(f'{sym.id}:{sym.dim}')}];")
        lines.append(f"  {_quote(owner)} -- {_quote(stub)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
