"""Dense complex linear algebra for small operators.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. The only
wrapper type is :class:`HermitianOperator`, which validates and
symmetrizes its input once so downstream code can rely on ``M == M^dagger``.

Eigendecompositions are computed with a cyclic complex Jacobi method. The
rotations of one sweep are grouped into round-robin rounds of disjoint index
pairs so that each round is a single vectorized update.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConvergenceFailure, DimensionMismatch, NotHermitian, RankDeficient

DEFAULT_TOL = 1e-9
HERMITIAN_REJECT_TOL = 1e-8
JACOBI_OFFDIAG_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
# below this size plain Python loops beat per-round numpy overhead
SMALL_N = 6


def as_matrix(a) -> np.ndarray:
    """Return ``a`` as a finite 2-D complex128 array."""
    if isinstance(a, HermitianOperator):
        return a.matrix
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def hermiticity_defect(m: np.ndarray) -> float:
    """Frobenius norm of ``M - M^dagger`` relative to ``max(1, ||M||_F)``."""
    m = np.asarray(m)
    return float(np.linalg.norm(m - m.conj().T) / max(1.0, np.linalg.norm(m)))


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    """Square complex matrix that is Hermitian up to rounding.

    The constructor rejects inputs whose relative Hermiticity defect exceeds
    ``1e-8`` and stores the symmetrized matrix ``(M + M^dagger)/2``.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = as_matrix(self.matrix)
        if m.shape[0] != m.shape[1]:
            raise DimensionMismatch(f"Hermitian operator must be square, got {m.shape}")
        defect = hermiticity_defect(m)
        if defect > HERMITIAN_REJECT_TOL:
            raise NotHermitian(f"Hermiticity defect {defect:.3e} exceeds {HERMITIAN_REJECT_TOL:g}")
        sym = 0.5 * (m + m.conj().T)
        sym.setflags(write=False)
        object.__setattr__(self, "matrix", sym)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)

    def __repr__(self):
        return f"HermitianOperator(dim={self.dim})"


def as_hermitian(a) -> HermitianOperator:
    return a if isinstance(a, HermitianOperator) else HermitianOperator(a)


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues with eigenvectors stored column-wise."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def min_eigenvalue(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def min_eigenvector(self) -> np.ndarray:
        return self.eigenvectors[:, 0]


def kron(a, b) -> np.ndarray:
    """Kronecker product of two matrices (or vectors)."""
    return np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))


@lru_cache(maxsize=None)
def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    # Circle method: every unordered pair appears exactly once per sweep and
    # pairs within a round are disjoint. Odd n gets a dummy index n.
    players = list(range(n + (n % 2)))
    m = len(players)
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for k in range(m // 2):
            p, q = players[k], players[m - 1 - k]
            if p < n and q < n:
                ps.append(min(p, q))
                qs.append(max(p, q))
        rounds.append((np.array(ps, dtype=int), np.array(qs, dtype=int)))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def _rotation(app: float, aqq: float, apq: complex) -> tuple[float, complex]:
    # (c, s*phase) that zero the (p, q) entry of a Hermitian 2x2 block
    mag = abs(apq)
    zeta = (aqq - app) / (2.0 * mag)
    t = (1.0 if zeta >= 0 else -1.0) / (abs(zeta) + math.hypot(1.0, zeta))
    c = 1.0 / math.sqrt(1.0 + t * t)
    return c, t * c * (apq / mag)


def _jacobi_small(m: np.ndarray, max_sweeps: int, threshold: float) -> tuple[np.ndarray, np.ndarray]:
    n = m.shape[0]
    a = m.tolist()
    v = [[1.0 + 0j if i == j else 0j for j in range(n)] for i in range(n)]

    def off() -> float:
        return math.sqrt(sum(abs(a[i][j]) ** 2 for i in range(n) for j in range(n) if i != j))

    sweeps = 0
    while off() > threshold:
        if sweeps >= max_sweeps:
            raise ConvergenceFailure(f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal norm {off():.3e})")
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                if abs(apq) <= 1e-300:
                    continue
                c, sp = _rotation(a[p][p].real, a[q][q].real, apq)
                spc = sp.conjugate()
                for row in a:
                    x, y = row[p], row[q]
                    row[p] = x * c - y * spc
                    row[q] = x * sp + y * c
                rp, rq = a[p], a[q]
                for k in range(n):
                    x, y = rp[k], rq[k]
                    rp[k] = c * x - sp * y
                    rq[k] = spc * x + c * y
                a[p][q] = a[q][p] = 0j
                for row in v:
                    x, y = row[p], row[q]
                    row[p] = x * c - y * spc
                    row[q] = x * sp + y * c
        sweeps += 1
    return np.array([a[i][i].real for i in range(n)]), np.array(v, dtype=np.complex128)


def _offdiag_norm(a: np.ndarray) -> float:
    # Direct sum; ||A||^2 - ||diag||^2 cancels catastrophically near convergence.
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def hermitian_eigen(m, max_sweeps: int = JACOBI_MAX_SWEEPS, tol: float = JACOBI_OFFDIAG_TOL) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Iterates until the off-diagonal Frobenius norm drops to
    ``tol * max(1, ||M||_F)``; raises :class:`ConvergenceFailure` if that has
    not happened after ``max_sweeps`` sweeps.
    """
    a = np.array(as_hermitian(m).matrix, dtype=np.complex128)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    threshold = tol * max(1.0, float(np.linalg.norm(a)))
    if n <= SMALL_N:
        w, v = _jacobi_small(a, max_sweeps, threshold)
        order = np.argsort(w, kind="stable")
        return EigenDecomposition(eigenvalues=w[order], eigenvectors=v[:, order])
    rounds = _round_robin(n)

    sweeps = 0
    while _offdiag_norm(a) > threshold:
        if sweeps >= max_sweeps:
            raise ConvergenceFailure(
                f"Jacobi did not converge in {max_sweeps} sweeps "
                f"(off-diagonal norm {_offdiag_norm(a):.3e})"
            )
        for p, q in rounds:
            apq = a[p, q]
            mag = np.abs(apq)
            active = mag > 1e-300
            if not np.any(active):
                continue
            p, q, apq, mag = p[active], q[active], apq[active], mag[active]
            app = a[p, p].real
            aqq = a[q, q].real
            phase = apq / mag
            zeta = (aqq - app) / (2.0 * mag)
            t = np.where(zeta >= 0, 1.0, -1.0) / (np.abs(zeta) + np.hypot(1.0, zeta))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            # J[p,p]=c, J[q,q]=c, J[p,q]=s*phase, J[q,p]=-s*conj(phase); A <- J^dagger A J
            sp = s * phase
            ap, aq = a[:, p].copy(), a[:, q].copy()
            a[:, p] = ap * c - aq * sp.conj()
            a[:, q] = ap * sp + aq * c
            rp, rq = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * rp - sp[:, None] * rq
            a[q, :] = sp.conj()[:, None] * rp + c[:, None] * rq
            a[p, q] = 0.0
            a[q, p] = 0.0
            vp, vq = v[:, p].copy(), v[:, q].copy()
            v[:, p] = vp * c - vq * sp.conj()
            v[:, q] = vp * sp + vq * c
        sweeps += 1

    w = np.diag(a).real.copy()
    order = np.argsort(w, kind="stable")
    return EigenDecomposition(eigenvalues=w[order], eigenvectors=v[:, order])


def eigvalsh(m) -> np.ndarray:
    return hermitian_eigen(m).eigenvalues


def min_eigenvalue(m) -> float:
    return hermitian_eigen(m).min_eigenvalue


def is_psd(m, tol: float = DEFAULT_TOL) -> bool:
    """True iff the smallest eigenvalue of ``m`` is at least ``-tol``."""
    if tol < 0:
        raise ValueError("tol must be non-negative")
    return min_eigenvalue(m) >= -tol


def orthonormalize(vectors, pivot_tol: float = 1e-10) -> list[np.ndarray]:
    """Modified Gram-Schmidt with one re-orthogonalization pass.

    Raises :class:`RankDeficient` when a residual norm falls below
    ``pivot_tol``.
    """
    vecs = [np.asarray(x, dtype=np.complex128).ravel() for x in vectors]
    if not vecs:
        return []
    dim = vecs[0].shape[0]
    if any(x.shape[0] != dim for x in vecs):
        raise DimensionMismatch("vectors must share a common dimension")
    basis: list[np.ndarray] = []
    for i, x in enumerate(vecs):
        r = x.copy()
        for _ in range(2):
            for b in basis:
                r = r - np.vdot(b, r) * b
        norm = np.linalg.norm(r)
        if norm < pivot_tol:
            raise RankDeficient(f"vector {i} is (numerically) in the span of the previous ones")
        basis.append(r / norm)
    return basis
