"""State files: UTF-8 JSON with [re, im] pairs.

Pure states:    {"kind": "pure", "amplitudes": [[re, im], ...4]}
Density files:  {"kind": "density", "matrix": [[[re, im], ...4], ...4]}

Amplitude order is |00>, |01>, |10>, |11>; matrices are row-major in the
same basis.  Floats are written with repr precision so a write/read round
trip is exact.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .states import DensityMatrix, PureState


class FileFormatError(ValueError):
    """Raised when a state file cannot be read or parsed."""


def _pairs_to_complex(pairs, shape) -> np.ndarray:
    arr = np.asarray(pairs, dtype=float)
    if arr.shape != shape + (2,):
        raise FileFormatError(f"expected shape {shape + (2,)}, got {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def _complex_to_pairs(values: np.ndarray):
    return [
        [float(z.real), float(z.imag)] for z in np.asarray(values).reshape(-1)
    ]


def _parse_payload(doc: dict, key: str, shape) -> np.ndarray:
    if key not in doc:
        raise FileFormatError(f"missing field {key!r}")
    try:
        return _pairs_to_complex(doc[key], shape)
    except FileFormatError:
        raise
    except (TypeError, ValueError) as exc:
        raise FileFormatError(f"malformed {key!r} payload: {exc}") from exc


def load_state_file(path) -> PureState | DensityMatrix:
    """Parse a state file; FileFormatError on unreadable/ill-formed input.

    Semantic problems (non-normalized, non-PSD) surface as StateError from
    the state constructors, not as FileFormatError.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileFormatError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"invalid JSON in {path}: {exc}") from exc

    if not isinstance(doc, dict):
        raise FileFormatError("top-level value must be an object")
    kind = doc.get("kind")
    if kind == "pure":
        return PureState(_parse_payload(doc, "amplitudes", (4,)))
    if kind == "density":
        return DensityMatrix(_parse_payload(doc, "matrix", (4, 4)))
    raise FileFormatError(f"unknown kind {kind!r} (expected 'pure' or 'density')")


def state_to_payload(state: PureState | DensityMatrix) -> dict:
    """JSON-ready dict in the state-file schema."""
    if isinstance(state, PureState):
        return {"kind": "pure", "amplitudes": _complex_to_pairs(state.amplitudes)}
    if isinstance(state, DensityMatrix):
        rows = [
            [[float(z.real), float(z.imag)] for z in row] for row in state.matrix
        ]
        return {"kind": "density", "matrix": rows}
    raise TypeError(f"unsupported state type {type(state)!r}")


def write_state_file(path, state: PureState | DensityMatrix) -> None:
    Path(path).write_text(
        json.dumps(state_to_payload(state), indent=2) + "\n", encoding="utf-8"
    )
