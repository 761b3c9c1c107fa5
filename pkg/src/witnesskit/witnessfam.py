"""Shift-structured generalization of the Choi witness.

A positive operator ``Wt`` on C^d (x) C^d is assembled block by block from
non-negative weights ``a`` and a real corner weight ``x``::

    Wt_ii = S^i diag(a) S^-i
    Wt_ij = S^i (x e_00) S^-j = x |i><j|      (i != j)

with ``S`` the cyclic shift. The candidate witness is ``W = (1 (x) R) Wt``.
Indices are 0-based here; ``a[0]`` is the weight that lands on every
``|ii><ii|`` diagonal entry.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .densecore import DEFAULT_TOL, HermitianOperator, is_psd
from .errors import InvalidParams
from .superops import _unblocks, partial_apply, reduction_map


@dataclass(frozen=True)
class ChoiFamilyParams:
    d: int
    a: tuple[float, ...]
    x: float

    def __post_init__(self):
        if isinstance(self.x, complex) or np.iscomplexobj(self.x):
            raise InvalidParams("x must be real")
        a = tuple(float(v) for v in self.a)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "x", float(self.x))
        if int(self.d) != self.d or self.d < 2:
            raise InvalidParams(f"d >= 2 violated (d={self.d})")
        if len(a) != self.d:
            raise InvalidParams(f"len(a) == d violated (got {len(a)} weights for d={self.d})")
        if not all(np.isfinite(a)) or not np.isfinite(self.x):
            raise InvalidParams("a and x must be finite")
        if any(v < 0 for v in a):
            raise InvalidParams("a_i >= 0 violated")


@dataclass(frozen=True)
class FeasibilityReport:
    """Positivity bookkeeping for one family member.

    ``eigen_confirmed`` (smallest eigenvalue of ``Wt`` >= -tol) is the
    authoritative gate. ``psd_interval_ok`` is the closed-form interval
    ``x in [-a_0/(d-1), a_0]``. ``y``, ``y_nonneg`` and ``printed_conditions_ok``
    record the alternative conditions built from
    ``y_k = sum(a)/(d-1) - a_k``; they are informational only and reject the
    Choi point itself.
    """

    psd_interval_ok: bool
    y: tuple[float, ...]
    y_nonneg: bool
    eigen_confirmed: bool
    printed_conditions_ok: bool
    interval: tuple[float, float] = field(default=(0.0, 0.0))

    def as_dict(self) -> dict:
        return {
            "psd_interval_ok": self.psd_interval_ok,
            "interval": list(self.interval),
            "y": list(self.y),
            "y_nonneg": self.y_nonneg,
            "printed_conditions_ok": self.printed_conditions_ok,
            "eigen_confirmed": self.eigen_confirmed,
        }


def shift_operator(d: int) -> np.ndarray:
    """Cyclic shift S|i> = |i+1 mod d>, as a real permutation matrix."""
    if d < 2:
        raise ValueError("need d >= 2")
    return np.roll(np.eye(d), 1, axis=0)


def build_wtilde(params: ChoiFamilyParams) -> HermitianOperator:
    d = params.d
    s = shift_operator(d)
    blocks = np.zeros((d, d, d, d))
    corner = np.zeros((d, d))
    corner[0, 0] = params.x
    base = np.diag(params.a)
    si = np.eye(d)
    powers = []
    for _ in range(d):
        powers.append(si)
        si = s @ si
    for i in range(d):
        for j in range(d):
            inner = base if i == j else corner
            blocks[i, j] = powers[i] @ inner @ powers[j].T
    return HermitianOperator(_unblocks(blocks, d))


def interval_bounds(params: ChoiFamilyParams) -> tuple[float, float]:
    a0 = params.a[0]
    return -a0 / (params.d - 1), a0


def feasibility_report(params: ChoiFamilyParams, tol: float = DEFAULT_TOL) -> FeasibilityReport:
    d, a, x = params.d, np.asarray(params.a), params.x
    lo, hi = interval_bounds(params)
    y = a.sum() / (d - 1) - a
    y_nonneg = bool(np.all(y >= 0))
    printed = lo <= x <= hi and -y[0] <= x <= y[0] / (d - 1) and y_nonneg
    return FeasibilityReport(
        psd_interval_ok=bool(lo <= x <= hi),
        y=tuple(float(v) for v in y),
        y_nonneg=y_nonneg,
        eigen_confirmed=is_psd(build_wtilde(params), tol),
        printed_conditions_ok=bool(printed),
        interval=(lo, hi),
    )


def build_witness(params: ChoiFamilyParams) -> HermitianOperator:
    """W = (1 (x) R) Wt."""
    return partial_apply(reduction_map(params.d), build_wtilde(params))
