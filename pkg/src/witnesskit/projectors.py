"""Orthogonal projectors and the rank-k <-> rank-(d-k) complement bijection."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .densecore import HermitianOperator, as_hermitian, eigvalsh, hermitian_eigen, kron, orthonormalize
from .errors import InvalidRank, NotNormalized, NotOrthonormal

IDEMPOTENT_TOL = 1e-10
SPECTRUM_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class OrthoProjector:
    """Hermitian idempotent of trace ``rank``.

    ``degenerate`` marks the zero projector, which only arises as the
    complement of the identity.
    """

    matrix: HermitianOperator
    rank: int
    degenerate: bool = False

    @property
    def d(self) -> int:
        return self.matrix.dim

    @property
    def array(self) -> np.ndarray:
        return self.matrix.matrix


def projector_rank(m, tol: float = SPECTRUM_TOL) -> int:
    """Rank of a numerical projector: rounded trace, spectrum checked against {0, 1}."""
    h = as_hermitian(m)
    ev = eigvalsh(h)
    if np.any(np.minimum(np.abs(ev), np.abs(ev - 1.0)) > tol):
        raise InvalidRank(f"spectrum not within {tol:g} of {{0, 1}}: {ev}")
    return int(round(float(np.trace(h.matrix).real)))


def as_projector(m) -> OrthoProjector:
    h = as_hermitian(m)
    p = h.matrix
    if np.linalg.norm(p @ p - p) > IDEMPOTENT_TOL:
        raise InvalidRank("matrix is not idempotent")
    k = projector_rank(h)
    return OrthoProjector(h, k, degenerate=(k == 0))


def _check_orthonormal(vectors: list[np.ndarray], tol: float = 1e-10) -> np.ndarray:
    cols = np.column_stack([np.asarray(v, dtype=np.complex128).ravel() for v in vectors])
    gram = cols.conj().T @ cols
    if np.abs(gram - np.eye(cols.shape[1])).max() > tol:
        raise NotOrthonormal("vectors are not orthonormal")
    return cols


def from_orthonormal_vectors(vectors) -> OrthoProjector:
    """P = sum_i |v_i><v_i| for orthonormal ``vectors``."""
    vectors = list(vectors)
    if not vectors:
        raise InvalidRank("need at least one vector")
    cols = _check_orthonormal(vectors)
    return OrthoProjector(HermitianOperator(cols @ cols.conj().T), cols.shape[1])


def random_projector(d: int, k: int, seed: int | np.random.Generator) -> OrthoProjector:
    """Unitarily invariant random rank-k projector on C^d.

    Orthonormalizes the columns of a d x k standard complex Gaussian matrix
    drawn from ``np.random.default_rng(seed)``.
    """
    if not 1 <= k <= d:
        raise InvalidRank(f"rank must lie in [1, {d}], got {k}")
    rng = np.random.default_rng(seed)
    g = (rng.standard_normal((d, k)) + 1j * rng.standard_normal((d, k))) / np.sqrt(2)
    return from_orthonormal_vectors(orthonormalize(g.T))


def complement(p: OrthoProjector) -> OrthoProjector:
    """1 - P, of rank d - k. The identity maps to the (degenerate) zero projector."""
    q = np.eye(p.d) - p.array
    k = p.d - p.rank
    return OrthoProjector(HermitianOperator(q), k, degenerate=(k == 0))


def product_projector(psi, phis) -> OrthoProjector:
    """|psi><psi| (x) sum_i |phi_i><phi_i| on C^d (x) C^d, rank len(phis)."""
    psi = np.asarray(psi, dtype=np.complex128).ravel()
    if abs(np.linalg.norm(psi) - 1.0) > 1e-10:
        raise NotNormalized(f"|psi| = {np.linalg.norm(psi)}")
    phis = list(phis)
    cols = _check_orthonormal(phis)
    right = cols @ cols.conj().T
    return OrthoProjector(HermitianOperator(kron(np.outer(psi, psi.conj()), right)), cols.shape[1])


def kernel_vector(p: OrthoProjector) -> np.ndarray:
    """Unit vector spanning ker(P) for a rank-(d-1) projector (defined up to phase)."""
    if p.rank != p.d - 1:
        raise InvalidRank("kernel is one-dimensional only for rank d-1")
    return hermitian_eigen(p.matrix).min_eigenvector
