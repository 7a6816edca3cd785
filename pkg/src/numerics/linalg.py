# SPDX-FileCopyrightText: 2025 Yannick Kees
# SPDX-FileCopyrightText: 2026 Yannick Kees
#
# SPDX-License-Identifier: MIT
"""Hermitian and unitary eigenproblems by Jacobi rotations, and entropy functionals."""

from dataclasses import dataclass
from itertools import combinations

import numpy as np
from numpy.typing import NDArray

from ..utils.config import config
from ..utils.errors import (
    DensityMatrixError,
    LinearAlgebraError,
    NotHermitianError,
    NotUnitaryError,
    PreconditionError,
)
from ..utils.logger import setup_logger

logger = setup_logger(__name__)

ComplexMatrix = NDArray[np.complex128]
RealVector = NDArray[np.float64]

SUPPORTED_DIMS = (2, 4)

# Eigenvalues of H_r closer than this are treated as one block when H_i is diagonalized.
_BLOCK_TOL = 1e-3
# Weight of H_r added to H_i inside a block; separates phases with equal sine.
_TIEBREAK = 0.25


@dataclass(frozen=True)
class HermitianEigenResult:
    """Eigenvalues (ascending) and orthonormal eigenvectors (columns) of a Hermitian matrix."""

    eigenvalues: RealVector
    eigenvectors: ComplexMatrix

    def reconstruct(self) -> ComplexMatrix:
        """Return V diag(w) V†."""
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


@dataclass(frozen=True)
class SpectralDecomposition:
    """Distinct eigenphases of a unitary with their orthogonal spectral projectors."""

    phases: tuple[float, ...]
    projectors: tuple[ComplexMatrix, ...]

    @property
    def dim(self) -> int:
        """Dimension of the decomposed operator."""
        return self.projectors[0].shape[0]

    @property
    def ranks(self) -> tuple[int, ...]:
        """Rank of each projector."""
        return tuple(int(round(np.trace(p).real)) for p in self.projectors)

    def reconstruct(self) -> ComplexMatrix:
        """Return Σ e^{iω} P_ω."""
        return sum(np.exp(1j * w) * p for w, p in zip(self.phases, self.projectors))


def as_complex_matrix(a, name: str = "matrix") -> ComplexMatrix:
    """
    Convert input to a finite square complex matrix of supported dimension.

    Args:
        a: Array-like input
        name: Name used in error messages

    Returns:
        Complex128 copy of the input

    Raises:
        PreconditionError: If the shape is unsupported or entries are not finite
    """
    m = np.array(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in SUPPORTED_DIMS:
        raise PreconditionError(f"{name} must be 2x2 or 4x4, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise PreconditionError(f"{name} has non-finite entries")
    return m


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose over the last two axes."""
    return np.conj(np.swapaxes(a, -1, -2))


def is_hermitian(a: np.ndarray, tol: float | None = None) -> bool:
    """Check ‖A − A†‖_max ≤ tol."""
    tol = config.HERMITIAN_TOL if tol is None else tol
    return bool(np.max(np.abs(a - dagger(a))) <= tol)


def is_unitary(a: np.ndarray, tol: float | None = None) -> bool:
    """Check ‖A†A − I‖_max ≤ tol."""
    tol = config.UNITARY_TOL if tol is None else tol
    n = a.shape[-1]
    return bool(np.max(np.abs(dagger(a) @ a - np.eye(n))) <= tol)


def angular_distance(a, b):
    """Distance between angles on the circle, in [0, π]."""
    d = np.mod(np.asarray(a) - np.asarray(b), 2 * np.pi)
    return np.minimum(d, 2 * np.pi - d)


def wrap_phase(phases):
    """Map angles into (−π, π]."""
    w = np.mod(np.asarray(phases, dtype=np.float64) + np.pi, 2 * np.pi) - np.pi
    return np.where(w <= -np.pi, w + 2 * np.pi, w)


def _off_norm(a: np.ndarray, mask: np.ndarray | None) -> np.ndarray:
    """Frobenius norm of the (masked) off-diagonal part of each matrix in a stack."""
    n = a.shape[-1]
    off = np.abs(a) ** 2 * (1.0 - np.eye(n))
    if mask is not None:
        off = off * mask
    return np.sqrt(off.sum(axis=(1, 2)))


def _jacobi_batch(
    a: np.ndarray,
    mask: np.ndarray | None = None,
    tol: float | None = None,
    max_sweeps: int | None = None,
) -> tuple[RealVector, ComplexMatrix]:
    """
    Diagonalize a stack of Hermitian matrices by cyclic complex Jacobi rotations.

    Each rotation first removes the phase of a_pq with diag(1, e^{-iφ}) and then
    applies the real rotation with tan 2θ = 2|a_pq| / (a_qq − a_pp).

    Args:
        a: Stack of Hermitian matrices, shape (B, n, n)
        mask: Optional boolean stack (B, n, n); only pairs with mask[b, p, q] are rotated
        tol: Off-diagonal Frobenius norm at which a sweep loop stops (relative to ‖A‖)
        max_sweeps: Maximum number of cyclic sweeps

    Returns:
        Tuple of (eigenvalues ascending, shape (B, n); eigenvectors as columns, (B, n, n))
    """
    tol = config.JACOBI_TOL if tol is None else tol
    max_sweeps = config.JACOBI_MAX_SWEEPS if max_sweeps is None else max_sweeps

    a = np.array(a, dtype=np.complex128, copy=True)
    batch, n, _ = a.shape
    v = np.tile(np.eye(n, dtype=np.complex128), (batch, 1, 1))
    scale = np.maximum(1.0, np.sqrt((np.abs(a) ** 2).sum(axis=(1, 2))))

    for sweep in range(max_sweeps):
        if np.all(_off_norm(a, mask) <= tol * scale):
            break

        for p, q in combinations(range(n), 2):
            apq = a[:, p, q]
            mag = np.abs(apq)
            active = mag > 0.0
            if mask is not None:
                active &= mask[:, p, q]
            if not active.any():
                continue

            safe = np.where(active, mag, 1.0)
            e = np.where(active, apq / safe, 1.0)  # e^{iφ}
            theta = 0.5 * np.arctan2(2.0 * mag, (a[:, q, q] - a[:, p, p]).real)
            theta = np.where(active, theta, 0.0)
            c = np.cos(theta)
            s = np.sin(theta)

            # columns: A ← A G with G = [[c, s], [-s e^{-iφ}, c e^{-iφ}]]
            g_qp = -s * np.conj(e)
            g_qq = c * np.conj(e)
            col_p = a[:, :, p].copy()
            col_q = a[:, :, q].copy()
            a[:, :, p] = col_p * c[:, None] + col_q * g_qp[:, None]
            a[:, :, q] = col_p * s[:, None] + col_q * g_qq[:, None]

            # rows: A ← G† A
            row_p = a[:, p, :].copy()
            row_q = a[:, q, :].copy()
            a[:, p, :] = row_p * c[:, None] + row_q * np.conj(g_qp)[:, None]
            a[:, q, :] = row_p * s[:, None] + row_q * np.conj(g_qq)[:, None]

            vp = v[:, :, p].copy()
            vq = v[:, :, q].copy()
            v[:, :, p] = vp * c[:, None] + vq * g_qp[:, None]
            v[:, :, q] = vp * s[:, None] + vq * g_qq[:, None]
    else:
        worst = float(np.max(_off_norm(a, mask) / scale))
        logger.debug(f"Jacobi stopped after {max_sweeps} sweeps (off-diagonal {worst:.2e})")

    w = np.diagonal(a, axis1=1, axis2=2).real.copy()
    order = np.argsort(w, axis=1, kind="stable")
    w = np.take_along_axis(w, order, axis=1)
    v = np.take_along_axis(v, order[:, None, :], axis=2)
    return w, v


def hermitian_eigen_batch(stack: np.ndarray) -> tuple[RealVector, ComplexMatrix]:
    """
    Eigen-decompose a stack of Hermitian matrices.

    Args:
        stack: Array of shape (B, n, n)

    Returns:
        Tuple of (eigenvalues ascending (B, n), eigenvectors (B, n, n))

    Raises:
        NotHermitianError: If any matrix is not Hermitian within tolerance
    """
    stack = np.asarray(stack, dtype=np.complex128)
    if not is_hermitian(stack):
        raise NotHermitianError("Stack contains a non-Hermitian matrix")
    return _jacobi_batch(0.5 * (stack + dagger(stack)))


def hermitian_eigen(h) -> HermitianEigenResult:
    """
    Eigen-decompose a Hermitian matrix.

    Args:
        h: Hermitian 2x2 or 4x4 matrix

    Returns:
        HermitianEigenResult with ascending eigenvalues

    Raises:
        NotHermitianError: If ‖H − H†‖_max exceeds the tolerance
    """
    m = as_complex_matrix(h, "H")
    if not is_hermitian(m):
        raise NotHermitianError(
            f"Matrix is not Hermitian: max deviation {np.max(np.abs(m - m.conj().T)):.2e}",
        )
    w, v = _jacobi_batch(0.5 * (m + m.conj().T)[None])
    return HermitianEigenResult(eigenvalues=w[0], eigenvectors=v[0])


def _block_mask(wr: np.ndarray) -> np.ndarray:
    """Transitive mask of index pairs whose sorted eigenvalues form one block."""
    gaps = np.diff(wr, axis=1) > _BLOCK_TOL
    first = np.zeros((wr.shape[0], 1), dtype=int)
    labels = np.concatenate([first, np.cumsum(gaps, axis=1)], axis=1)
    return labels[:, :, None] == labels[:, None, :]


def unitary_eigen_batch(stack: np.ndarray) -> tuple[RealVector, ComplexMatrix]:
    """
    Eigenphases and eigenvectors of a stack of unitary matrices.

    H_r = (U + U†)/2 is diagonalized first; inside each block of (nearly) equal
    H_r eigenvalues the commuting part H_i = (U − U†)/(2i) is diagonalized.

    Args:
        stack: Array of shape (B, n, n), each entry unitary

    Returns:
        Tuple of (phases in (−π, π], shape (B, n); eigenvectors as columns (B, n, n))
    """
    u = np.asarray(stack, dtype=np.complex128)
    ud = dagger(u)
    hr = 0.5 * (u + ud)
    hi = -0.5j * (u - ud)

    wr, v = _jacobi_batch(hr)
    block = _block_mask(wr)
    inner = dagger(v) @ (hi + _TIEBREAK * hr) @ v
    inner = np.where(block, inner, 0.0)
    inner = 0.5 * (inner + dagger(inner))
    _, r = _jacobi_batch(inner, mask=block)

    w = v @ r
    lam = np.einsum("bji,bjk,bki->bi", w.conj(), u, w)
    return wrap_phase(np.angle(lam)), w


def _cluster(phases: np.ndarray, tol: float) -> list[list[int]]:
    """Single-linkage clustering of angles on the circle."""
    n = len(phases)
    order = [int(i) for i in np.argsort(phases)]
    if n == 1:
        return [order]

    linked = [
        bool(angular_distance(phases[order[i]], phases[order[(i + 1) % n]]) <= tol)
        for i in range(n)
    ]
    if all(linked):
        clusters = [order]
    else:
        start = (linked.index(False) + 1) % n
        clusters, current = [], []
        for step in range(n):
            pos = (start + step) % n
            current.append(order[pos])
            if not linked[pos]:
                clusters.append(current)
                current = []
        if current:
            clusters.append(current)

    for members in clusters:
        diameter = max(
            (float(angular_distance(phases[i], phases[j])) for i in members for j in members),
            default=0.0,
        )
        if diameter > tol:
            raise LinearAlgebraError(
                f"Phase clustering is inconsistent: cluster diameter {diameter:.3e} "
                f"exceeds tolerance {tol:.1e}",
            )
    return clusters


def spectral_from_eigensystem(
    phases: np.ndarray,
    vectors: np.ndarray,
    degeneracy_tol: float | None = None,
) -> SpectralDecomposition:
    """
    Group eigenpairs of a unitary into distinct phases and spectral projectors.

    Args:
        phases: Eigenphases, shape (n,)
        vectors: Orthonormal eigenvectors as columns, shape (n, n)
        degeneracy_tol: Angular tolerance under which phases are merged

    Returns:
        SpectralDecomposition with phases sorted ascending
    """
    tol = config.DEGENERACY_TOL if degeneracy_tol is None else degeneracy_tol
    entries = []
    for members in _cluster(np.asarray(phases), tol):
        rep = float(wrap_phase(np.angle(np.sum(np.exp(1j * phases[members])))))
        cols = vectors[:, members]
        entries.append((rep, cols @ cols.conj().T))
    entries.sort(key=lambda item: item[0])
    return SpectralDecomposition(
        phases=tuple(p for p, _ in entries),
        projectors=tuple(m for _, m in entries),
    )


def unitary_eigen(u, degeneracy_tol: float | None = None) -> SpectralDecomposition:
    """
    Spectral decomposition of a unitary matrix.

    Args:
        u: Unitary 2x2 or 4x4 matrix
        degeneracy_tol: Angular tolerance for merging phases (default: config.DEGENERACY_TOL)

    Returns:
        SpectralDecomposition whose phases are pairwise separated by more than the tolerance

    Raises:
        NotUnitaryError: If ‖U†U − I‖_max exceeds the tolerance
        LinearAlgebraError: If phase clustering is inconsistent
    """
    m = as_complex_matrix(u, "U")
    if not is_unitary(m):
        deviation = np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0])))
        raise NotUnitaryError(f"Matrix is not unitary: max deviation {deviation:.2e}")
    phases, vectors = unitary_eigen_batch(m[None])
    return spectral_from_eigensystem(phases[0], vectors[0], degeneracy_tol)


def entropy_from_eigenvalues(eigenvalues, eig_floor: float | None = None) -> float:
    """
    Shannon entropy in bits of a spectrum, with 0·log₂0 = 0.

    Args:
        eigenvalues: Non-negative values summing to one
        eig_floor: Values at or below this are dropped before the sum

    Returns:
        Entropy in bits
    """
    floor = config.EIG_FLOOR if eig_floor is None else eig_floor
    lam = np.asarray(eigenvalues, dtype=np.float64)
    lam = lam[lam > max(floor, 0.0)]
    # A single surviving value is a pure state.
    if lam.size <= 1:
        return 0.0
    return float(-np.sum(lam * np.log2(lam)))


def von_neumann_entropy(rho, eig_floor: float | None = None) -> float:
    """
    Von Neumann entropy S(ρ) = −tr ρ log₂ ρ in bits.

    Args:
        rho: Hermitian positive semidefinite density matrix
        eig_floor: Eigenvalues below this are clamped to zero (default: config.EIG_FLOOR)

    Returns:
        Entropy in [0, log₂ dim]

    Raises:
        NotHermitianError: If rho is not Hermitian
        DensityMatrixError: If the trace is not 1 or an eigenvalue is below −floor
    """
    floor = config.EIG_FLOOR if eig_floor is None else eig_floor
    m = as_complex_matrix(rho, "rho")
    trace = np.trace(m)
    if abs(trace - 1.0) > config.TRACE_TOL:
        raise DensityMatrixError(f"Density matrix trace is {trace.real:.10f}, expected 1")

    lam = hermitian_eigen(m).eigenvalues
    if lam[0] < -floor:
        raise DensityMatrixError(f"Density matrix has negative eigenvalue {lam[0]:.3e}")

    entropy = entropy_from_eigenvalues(np.clip(lam, 0.0, None), floor)
    return float(np.clip(entropy, 0.0, np.log2(m.shape[0])))


def binary_entropy(p: float) -> float:
    """
    Binary entropy h(p) = −p log₂ p − (1−p) log₂(1−p).

    Args:
        p: Probability in [0, 1]

    Returns:
        Entropy in bits
    """
    p = float(np.clip(p, 0.0, 1.0))
    return entropy_from_eigenvalues([p, 1.0 - p], eig_floor=0.0)
