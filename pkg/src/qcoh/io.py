"""JSON file formats.

All matrices share one row-major layout, each entry a ``[re, im]`` pair::

    {"dim": d, "rows": [[[re, im], ...], ...]}

* state:        the layout above;
* basis:        the layout above, columns are the basis vectors;
* channel:      ``{"dim": d, "kraus": [matrix, ...]}``, each matrix either a
                bare ``rows`` list or an object with ``"rows"``;
* Hamiltonian:  the layout above plus an optional ``"energy_unit"`` tag.

Bare real numbers are accepted in place of ``[re, 0]`` pairs.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .channels import KrausChannel
from .errors import MalformedInput
from .qstate import Basis, DensityMatrix
from .thermo import Hamiltonian


def _entry(x: Any) -> complex:
    if isinstance(x, bool):
        raise MalformedInput(f"matrix entry must be a number or [re, im] pair, got {x!r}")
    if isinstance(x, (int, float)):
        return complex(x, 0.0)
    if isinstance(x, (list, tuple)) and len(x) == 2 and all(
        isinstance(c, (int, float)) and not isinstance(c, bool) for c in x
    ):
        return complex(x[0], x[1])
    raise MalformedInput(f"matrix entry must be a number or [re, im] pair, got {x!r}")


def matrix_from_rows(rows: Any, dim: int | None = None) -> np.ndarray:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise MalformedInput("'rows' must be a non-empty list of rows")
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise MalformedInput(f"'rows' must form a square matrix; got row lengths {[len(r) for r in rows]}")
    if dim is not None and dim != n:
        raise MalformedInput(f"declared dim {dim} does not match matrix size {n}")
    return np.array([[_entry(x) for x in r] for r in rows], dtype=complex)


def matrix_to_rows(m: np.ndarray) -> list:
    m = np.asarray(m, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def _matrix_doc(doc: Any) -> np.ndarray:
    if not isinstance(doc, dict) or "rows" not in doc:
        raise MalformedInput("expected a JSON object with a 'rows' field")
    dim = doc.get("dim")
    if dim is not None and (not isinstance(dim, int) or isinstance(dim, bool) or dim < 1):
        raise MalformedInput(f"'dim' must be a positive integer, got {dim!r}")
    return matrix_from_rows(doc["rows"], dim)


def _load(path: str | Path) -> Any:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def state_to_json(rho: DensityMatrix) -> dict:
    return {"dim": rho.dim, "rows": matrix_to_rows(rho.data)}


def state_from_json(doc: Any) -> DensityMatrix:
    return DensityMatrix(_matrix_doc(doc))


def basis_to_json(b: Basis) -> dict:
    return {"dim": b.dim, "rows": matrix_to_rows(b.matrix)}


def basis_from_json(doc: Any) -> Basis:
    return Basis(_matrix_doc(doc))


def channel_to_json(ch: KrausChannel) -> dict:
    return {"dim": ch.dim, "kraus": [matrix_to_rows(k) for k in ch.operators]}


def channel_from_json(doc: Any) -> KrausChannel:
    if not isinstance(doc, dict) or not isinstance(doc.get("kraus"), list):
        raise MalformedInput("expected a JSON object with a 'kraus' list")
    dim = doc.get("dim")
    ops = []
    for k in doc["kraus"]:
        rows = k["rows"] if isinstance(k, dict) and "rows" in k else k
        ops.append(matrix_from_rows(rows, dim))
    return KrausChannel(ops)


def hamiltonian_to_json(h: Hamiltonian) -> dict:
    return {"dim": h.dim, "rows": matrix_to_rows(h.matrix), "energy_unit": h.energy_unit}


def hamiltonian_from_json(doc: Any) -> Hamiltonian:
    unit = doc.get("energy_unit", "J") if isinstance(doc, dict) else "J"
    return Hamiltonian(_matrix_doc(doc), energy_unit=str(unit))


def load_state(path: str | Path) -> DensityMatrix:
    return state_from_json(_load(path))


def load_basis(path: str | Path) -> Basis:
    return basis_from_json(_load(path))


def load_channel(path: str | Path) -> KrausChannel:
    return channel_from_json(_load(path))


def load_hamiltonian(path: str | Path) -> Hamiltonian:
    return hamiltonian_from_json(_load(path))


def dump(doc: Any, path: str | Path) -> None:
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")
