"""MatrixFile JSON: ``{"d", "dim", "hermitian", "re", "im"}``.

Real and imaginary parts are stored as separate nested lists of floats.
Python's float repr is the shortest string that round-trips, so a save/load
cycle is bit-exact.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .densecore import HermitianOperator, as_hermitian, as_matrix


class MatrixFileError(ValueError):
    pass


def to_dict(m, d: int | None = None, hermitian: bool | None = None) -> dict:
    is_herm = isinstance(m, HermitianOperator) if hermitian is None else hermitian
    a = as_matrix(m)
    dim = a.shape[0]
    if d is None:
        r = int(round(np.sqrt(dim)))
        d = r if r * r == dim else dim
    return {
        "d": int(d),
        "dim": int(dim),
        "hermitian": bool(is_herm),
        "re": a.real.tolist(),
        "im": a.imag.tolist(),
    }


def save(path, m, d: int | None = None, hermitian: bool | None = None) -> None:
    Path(path).write_text(json.dumps(to_dict(m, d, hermitian), indent=1) + "\n")


def from_dict(obj) -> tuple[int, np.ndarray | HermitianOperator]:
    """Parse a MatrixFile object; returns ``(d, matrix)``."""
    if not isinstance(obj, dict):
        raise MatrixFileError("top-level JSON value must be an object")
    missing = [k for k in ("d", "dim", "re", "im") if k not in obj]
    if missing:
        raise MatrixFileError(f"missing field(s): {', '.join(missing)}")
    d, dim = obj["d"], obj["dim"]
    if not isinstance(d, int) or not isinstance(dim, int) or d < 1 or dim < 1:
        raise MatrixFileError("d and dim must be positive integers")
    if dim not in (d, d * d):
        raise MatrixFileError(f"dim must equal d or d^2 (d={d}, dim={dim})")
    try:
        re = np.array(obj["re"], dtype=float)
        im = np.array(obj["im"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise MatrixFileError(f"re/im must be rectangular numeric arrays: {exc}") from exc
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise MatrixFileError(f"re/im must both be {dim}x{dim}, got {re.shape} and {im.shape}")
    if not (np.all(np.isfinite(re)) and np.all(np.isfinite(im))):
        raise MatrixFileError("entries must be finite")
    # re + 1j*im would turn -0.0 into 0.0
    m = np.empty((dim, dim), dtype=np.complex128)
    m.real, m.imag = re, im
    if obj.get("hermitian", False):
        try:
            return d, as_hermitian(m)
        except ValueError as exc:
            raise MatrixFileError(f"declared hermitian but {exc}") from exc
    return d, m


def load(path) -> tuple[int, np.ndarray | HermitianOperator]:
    try:
        obj = json.loads(Path(path).read_text())
    except OSError as exc:
        raise MatrixFileError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MatrixFileError(f"{path} is not valid JSON: {exc}") from exc
    return from_dict(obj)
