"""Linear maps on d x d matrices in explicit matrix form.

Convention: column stacking. ``vec(A)`` stacks the columns of ``A``, so the
matrix unit ``e_ij = |i><j|`` maps to basis vector ``j*d + i`` (0-based).
Under this convention the Hilbert-Schmidt adjoint of a map is the conjugate
transpose of its representation.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .densecore import HERMITIAN_REJECT_TOL, HermitianOperator, as_matrix, hermiticity_defect
from .errors import DimensionMismatch


def vec(a: np.ndarray) -> np.ndarray:
    return np.asarray(a).reshape(-1, order="F")


def unvec(v: np.ndarray, d: int) -> np.ndarray:
    return np.asarray(v).reshape((d, d), order="F")


@dataclass(frozen=True, eq=False)
class SuperOperator:
    """A linear map B(C^d) -> B(C^d) stored as its d^2 x d^2 matrix."""

    d: int
    rep: np.ndarray
    name: str = "custom"

    def __post_init__(self):
        rep = as_matrix(self.rep).copy()
        if rep.shape != (self.d * self.d, self.d * self.d):
            raise DimensionMismatch(f"rep must be {self.d**2}x{self.d**2}, got {rep.shape}")
        rep.setflags(write=False)
        object.__setattr__(self, "rep", rep)

    def __call__(self, a) -> np.ndarray:
        return apply(self, a)

    def __matmul__(self, other: "SuperOperator") -> "SuperOperator":
        return compose(self, other)


def from_function(d: int, fn, name: str = "custom") -> SuperOperator:
    """Tabulate ``fn`` on the matrix units to get its representation."""
    rep = np.zeros((d * d, d * d), dtype=np.complex128)
    for j in range(d):
        for i in range(d):
            e = np.zeros((d, d), dtype=np.complex128)
            e[i, j] = 1.0
            rep[:, j * d + i] = vec(fn(e))
    return SuperOperator(d, rep, name)


def apply(lam: SuperOperator, a) -> np.ndarray:
    a = as_matrix(a)
    if a.shape != (lam.d, lam.d):
        raise DimensionMismatch(f"map acts on {lam.d}x{lam.d} matrices, got {a.shape}")
    return unvec(lam.rep @ vec(a), lam.d)


def compose(outer: SuperOperator, inner: SuperOperator) -> SuperOperator:
    """``outer o inner``: apply ``inner`` first."""
    if outer.d != inner.d:
        raise DimensionMismatch("cannot compose maps of different dimension")
    return SuperOperator(outer.d, outer.rep @ inner.rep, f"{outer.name}*{inner.name}")


def identity_map(d: int) -> SuperOperator:
    return SuperOperator(d, np.eye(d * d), "identity")


def _trace_shift_map(d: int, coeff: float, name: str) -> SuperOperator:
    # A -> coeff * Tr(A) * 1 - A
    v1 = vec(np.eye(d))
    rep = coeff * np.outer(v1, v1) - np.eye(d * d)
    return SuperOperator(d, rep, name)


def reduction_map(d: int) -> SuperOperator:
    """R(A) = Tr(A) 1 - A."""
    if d < 2:
        raise ValueError("reduction map needs d >= 2")
    return _trace_shift_map(d, 1.0, "reduction")


def inverse_reduction_map(d: int) -> SuperOperator:
    """R^{-1}(A) = Tr(A)/(d-1) 1 - A, the compositional inverse of R.

    Not positive for d >= 3, but it sends rank-(d-1) projectors P to 1 - P.
    """
    if d < 2:
        raise ValueError("inverse reduction map needs d >= 2")
    return _trace_shift_map(d, 1.0 / (d - 1), "inverse-reduction")


def adjoint_map(lam: SuperOperator) -> SuperOperator:
    """Hilbert-Schmidt adjoint: Tr(A^dag lam(B)) == Tr(adjoint(A)^dag B)."""
    return SuperOperator(lam.d, lam.rep.conj().T, f"{lam.name}^dag")


def _blocks(w: np.ndarray, d: int) -> np.ndarray:
    # blocks[i, j] is the (row-block i, column-block j) d x d submatrix
    return w.reshape(d, d, d, d).transpose(0, 2, 1, 3)


def _unblocks(b: np.ndarray, d: int) -> np.ndarray:
    return b.transpose(0, 2, 1, 3).reshape(d * d, d * d)


def partial_apply(lam: SuperOperator, w):
    """Apply ``1 (x) lam``: map every d x d block of ``w`` through ``lam``.

    Returns a :class:`HermitianOperator` when the result is Hermitian within
    ``1e-8`` and a plain array otherwise.
    """
    d = lam.d
    m = as_matrix(w)
    if m.shape != (d * d, d * d):
        raise DimensionMismatch(f"expected a {d*d}x{d*d} operator, got {m.shape}")
    blocks = _blocks(m, d)
    # column-stack every block, transform, unstack
    flat = blocks.transpose(0, 1, 3, 2).reshape(d, d, d * d)
    out = np.einsum("kl,ijl->ijk", lam.rep, flat).reshape(d, d, d, d).transpose(0, 1, 3, 2)
    result = _unblocks(out, d)
    if hermiticity_defect(result) <= HERMITIAN_REJECT_TOL:
        return HermitianOperator(result)
    return result


def maximally_entangled_vector(d: int) -> np.ndarray:
    return np.eye(d, dtype=np.complex128).reshape(-1) / np.sqrt(d)


def maximally_entangled_projector(d: int) -> HermitianOperator:
    """P_d^+ = |psi+><psi+| with |psi+> = sum_i |ii> / sqrt(d)."""
    if d < 2:
        raise ValueError("need d >= 2")
    psi = maximally_entangled_vector(d)
    return HermitianOperator(np.outer(psi, psi.conj()))


def choi_matrix(lam: SuperOperator):
    return partial_apply(lam, maximally_entangled_projector(lam.d))


MAPS = {
    "identity": identity_map,
    "reduction": reduction_map,
    "inverse-reduction": inverse_reduction_map,
}


def map_by_name(name: str, d: int) -> SuperOperator:
    try:
        return MAPS[name](d)
    except KeyError:
        raise ValueError(f"unknown map {name!r}; choose from {sorted(MAPS)}") from None
