# SPDX-FileCopyrightText: 2025 Yannick Kees
# SPDX-FileCopyrightText: 2026 Yannick Kees
#
# SPDX-License-Identifier: MIT
"""
Asymptotic reduced coin density from k-space integration.

For a fixed coin and position distribution the long-time density is linear in
|χ⟩⟨χ|: ρ̂ = Σ_ab L[:, a, b, :] (|χ⟩⟨χ|)_ab with
L = ∫ w(k) Σ_ω P_ω(k) ⊗ P_ω(k) d²k/4π². The tensor L is computed once per grid
size and reused for every coin state.
"""

from collections.abc import Iterator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ..models.schemas import PositionDistribution, QuadratureSpec, UniformLimit
from ..numerics.linalg import (
    ComplexMatrix,
    SpectralDecomposition,
    angular_distance,
    as_complex_matrix,
    hermitian_eigen,
    is_hermitian,
    unitary_eigen,
    von_neumann_entropy,
    wrap_phase,
)
from ..utils.config import config
from ..utils.errors import (
    DensityMatrixError,
    NotHermitianError,
    OscillatingLimitError,
    PreconditionError,
    QuadratureNotConvergedError,
    UnsupportedVariantError,
)
from ..utils.logger import setup_logger
from ..walk.coin import CoinOperator
from ..walk.kspace import batch_spectra, kgrid
from ..walk.states import CoinState, fourier_weight_grid

logger = setup_logger(__name__)

# Generators of the shift phases: d/dk of diag(e^{-ikx}, e^{iky}, e^{-iky}, e^{ikx}) / i.
_GEN_X = np.diag([-1.0, 0.0, 0.0, 1.0]).astype(np.complex128)
_GEN_Y = np.diag([0.0, 1.0, -1.0, 0.0]).astype(np.complex128)

# Gaps are compared after rounding to this many decimals.
_GAP_DECIMALS = 7
_GAP_FLOOR = 1e-6


@dataclass(frozen=True)
class ReducedDensity:
    """Hermitian, unit-trace, positive semidefinite coin density with provenance."""

    matrix: ComplexMatrix
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        """Validate the density invariants and store the Hermitian part."""
        m = as_complex_matrix(self.matrix, "density")
        if not is_hermitian(m, config.HERMITIAN_TOL):
            raise NotHermitianError("Reduced density is not Hermitian")
        m = 0.5 * (m + m.conj().T)
        trace = np.trace(m).real
        if abs(trace - 1.0) > config.TRACE_TOL:
            raise DensityMatrixError(f"Reduced density trace is {trace:.12f}")
        lowest = hermitian_eigen(m).eigenvalues[0]
        if lowest < -config.EIG_FLOOR:
            raise DensityMatrixError(f"Reduced density has negative eigenvalue {lowest:.3e}")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues ascending, clamped at zero."""
        return np.clip(hermitian_eigen(self.matrix).eigenvalues, 0.0, None)

    def entropy(self) -> float:
        """Von Neumann entropy in bits."""
        return von_neumann_entropy(self.matrix)


@dataclass
class EntanglementReport:
    """Asymptotic entanglement with its density and convergence record."""

    entropy: float
    density: ReducedDensity
    eigenvalues: np.ndarray
    converged: bool
    refinement_history: list[tuple[int, float]]
    oscillation_gaps: tuple[float, ...] = ()


@dataclass(frozen=True)
class AsymptoticChannel:
    """Linear map |χ⟩⟨χ| ↦ ρ̂ at one grid size."""

    tensor: np.ndarray  # L[i, a, b, j]
    grid_points: int

    def apply_matrix(self, x: np.ndarray) -> np.ndarray:
        """Apply the channel to an arbitrary 4x4 matrix."""
        return np.einsum("iabj,ab->ij", self.tensor, x)

    def apply(self, chi: CoinState) -> np.ndarray:
        """Asymptotic density matrix for initial coin chi."""
        return self.apply_matrix(chi.projector)


def pointwise_p_matrix(spec: SpectralDecomposition, chi: CoinState) -> ComplexMatrix:
    """
    Stationary-phase integrand P(k) = Σ_ω P_ω |χ⟩⟨χ| P_ω.

    Args:
        spec: Spectral decomposition of U_k
        chi: Initial coin state

    Returns:
        Hermitian PSD matrix with unit trace
    """
    x = chi.projector
    return sum(p @ x @ p for p in spec.projectors)


def _sandwich_tensor(
    phases: np.ndarray,
    vectors: np.ndarray,
    weights: np.ndarray,
    degeneracy_tol: float,
) -> np.ndarray:
    """
    Σ_n w_n Σ_{j,l same phase} A_j ⊗ A_l over a batch, as a (16, 16) matrix.

    A_j = v_j v_j† are the rank-one eigenprojectors; entry [(i,a), (b,j)].
    """
    proj = np.einsum("nij,naj->njia", vectors, vectors.conj()).reshape(len(phases), 4, 16)
    same = angular_distance(phases[:, :, None], phases[:, None, :]) <= degeneracy_tol
    total = np.zeros((16, 16), dtype=np.complex128)
    for j in range(4):
        for l in range(4):
            m = weights * same[:, j, l]
            if j != l and not m.any():
                continue
            total += (proj[:, j, :].T * m) @ proj[:, l, :]
    return total


def constant_phase_gaps(phases: np.ndarray, share: float | None = None) -> tuple[float, ...]:
    """
    Eigenphase differences that take the same value across a k-grid.

    Cross terms between two bands whose gap does not depend on k pick up a
    factor e^{i n Δ} at step n and never average out. Such a coin (grover4 has
    flat bands at 0 and π) has no single long-time density.

    Args:
        phases: Eigenphases of U_k, shape (N, 4)
        share: Fraction of the N points at which a gap must appear
            (default: config.GAP_SHARE)

    Returns:
        Sorted gap values in (0, π]; empty when every gap disperses
    """
    share = config.GAP_SHARE if share is None else share
    j, l = np.triu_indices(phases.shape[1], k=1)
    gaps = np.round(np.abs(wrap_phase(phases[:, j] - phases[:, l])), _GAP_DECIMALS)
    gaps = np.sort(np.where(gaps > _GAP_FLOOR, gaps, np.nan), axis=1)
    # Each value counts once per k-point.
    first = np.ones_like(gaps, dtype=bool)
    first[:, 1:] = gaps[:, 1:] != gaps[:, :-1]
    values, counts = np.unique(gaps[first & ~np.isnan(gaps)], return_counts=True)
    return tuple(float(v) for v in values[counts >= share * len(phases)])


def coin_constant_gaps(coin: CoinOperator) -> tuple[float, ...]:
    """Constant eigenphase gaps of U_k for a coin, scanned on a config.GAP_GRID grid."""
    return _cached_gaps(coin.key, config.GAP_GRID)


def _coin_from_key(coin_key: tuple[str, bytes]) -> CoinOperator:
    label, raw = coin_key
    matrix = np.frombuffer(raw, dtype=np.complex128).reshape(4, 4).copy()
    return CoinOperator(matrix, label)


@lru_cache(maxsize=64)
def _cached_gaps(coin_key: tuple[str, bytes], m: int) -> tuple[float, ...]:
    axis = kgrid(m, config.DEFAULT_OFFSET)
    kx, ky = np.meshgrid(axis, axis, indexing="ij")
    phases, _ = batch_spectra(_coin_from_key(coin_key), kx.ravel(), ky.ravel())
    gaps = constant_phase_gaps(phases)
    if gaps:
        logger.warning(f"Coin {coin_key[0]} has constant eigenphase gaps {gaps}")
    return gaps


def _oscillation_error(gaps: tuple[float, ...]) -> OscillatingLimitError:
    listed = ", ".join(f"{g:.6f}" for g in gaps)
    return OscillatingLimitError(
        f"Eigenphase gaps {{{listed}}} do not depend on k; "
        "the coin density oscillates and has no long-time limit",
        gaps,
    )


class AsymptoticEngine:
    """Computes asymptotic coin densities for one coin and position distribution."""

    def __init__(
        self,
        coin: CoinOperator,
        position: PositionDistribution,
        quadrature: QuadratureSpec | None = None,
        workers: int = 1,
        degeneracy_tol: float | None = None,
    ):
        """
        Initialize the engine.

        Args:
            coin: Two-qubit coin
            position: Initial position distribution (UniformLimit uses no quadrature)
            quadrature: Grid and refinement settings (default: QuadratureSpec())
            workers: Threads used for chunk partial sums
            degeneracy_tol: Angular tolerance for merging eigenphases
        """
        if coin.dim != 4:
            raise PreconditionError(
                f"Asymptotic engine needs a 4x4 coin, got {coin.dim}x{coin.dim}",
            )
        self.coin = coin
        self.position = position
        self.quadrature = quadrature or QuadratureSpec()
        self.workers = max(1, workers)
        self.degeneracy_tol = config.DEGENERACY_TOL if degeneracy_tol is None else degeneracy_tol

    @property
    def is_uniform(self) -> bool:
        """True for the uniform-limit position."""
        return isinstance(self.position, UniformLimit)

    @property
    def oscillation_gaps(self) -> tuple[float, ...]:
        """Constant eigenphase gaps of the coin; empty when a long-time limit exists."""
        return coin_constant_gaps(self.coin)

    def grid_sizes(self) -> list[int]:
        """Grid sizes of the refinement ladder."""
        m = self.quadrature.grid_points_per_axis
        return [m * 2**r for r in range(self.quadrature.max_refinements + 1)]

    def channel(self, m: int) -> AsymptoticChannel:
        """Channel on the M×M grid (cached across engines)."""
        return _cached_channel(
            self.coin.key,
            self.position,
            m,
            self.quadrature.offset_fraction,
            self.degeneracy_tol,
            self.workers,
        )

    def ladder(self) -> Iterator[AsymptoticChannel]:
        """Channels for successive grid doublings."""
        for m in self.grid_sizes():
            yield self.channel(m)

    def _metadata(self, chi: CoinState, grid: int | None) -> dict:
        return {
            "coin": self.coin.label,
            "state": chi.label,
            "position": self.position.model_dump(),
            "quadrature": {
                "grid_points_per_axis": grid,
                "offset_fraction": self.quadrature.offset_fraction,
                "refine_tol": self.quadrature.refine_tol,
            }
            if grid
            else "uniform-limit",
        }

    def evaluate(self, chi: CoinState) -> EntanglementReport:
        """
        Refine the density for chi by doubling M; never raises on non-convergence.

        Args:
            chi: Initial coin state

        Returns:
            EntanglementReport; converged is False if refinement did not settle or
            the coin has constant eigenphase gaps, in which case the density is
            the time average of the oscillating one
        """
        gaps = self.oscillation_gaps

        if self.is_uniform:
            density = uniform_limit_reduced_density(self.coin, chi, self.degeneracy_tol)
            entropy = density.entropy()
            return EntanglementReport(
                entropy, density, density.eigenvalues, not gaps, [], oscillation_gaps=gaps,
            )

        history: list[tuple[int, float]] = []
        previous = None
        converged = self.quadrature.max_refinements == 0
        grid = None
        for channel in self.ladder():
            rho = channel.apply(chi)
            grid = channel.grid_points
            history.append((grid, von_neumann_entropy(rho)))
            if previous is not None:
                change = float(np.max(np.abs(rho - previous)))
                logger.debug(f"  M={grid}: max entry change {change:.3e}")
                if change < self.quadrature.refine_tol:
                    converged = True
                    previous = rho
                    break
            previous = rho

        density = ReducedDensity(previous, self._metadata(chi, grid))
        return EntanglementReport(
            entropy=history[-1][1],
            density=density,
            eigenvalues=density.eigenvalues,
            converged=converged and not gaps,
            refinement_history=history,
            oscillation_gaps=gaps,
        )

    def run(self, chi: CoinState) -> EntanglementReport:
        """
        Compute the asymptotic entanglement for chi, raising on non-convergence.

        Args:
            chi: Initial coin state

        Returns:
            Converged EntanglementReport

        Raises:
            OscillatingLimitError: If the coin has constant eigenphase gaps
            QuadratureNotConvergedError: If refinement does not reach refine_tol
        """
        logger.info("=" * 80)
        logger.info("Starting asymptotic entanglement computation")
        logger.info("=" * 80)
        logger.info(f"Coin: {self.coin.label}")
        logger.info(f"Coin state: {chi.label}")
        logger.info(f"Position: {self.position.kind}")
        if not self.is_uniform:
            logger.info(f"Grid sizes: {self.grid_sizes()}")
        logger.info("=" * 80)

        if self.oscillation_gaps:
            error = _oscillation_error(self.oscillation_gaps)
            logger.error(str(error))
            raise error

        try:
            report = self.evaluate(chi)
        except Exception as e:
            logger.error(f"Quadrature failed: {e}")
            raise

        for m, entropy in report.refinement_history:
            logger.info(f"  M={m}: E={entropy:.12f}")

        if not report.converged:
            raise QuadratureNotConvergedError(
                f"Quadrature did not converge to {self.quadrature.refine_tol:.1e} "
                f"after {self.quadrature.max_refinements} refinements",
                report.refinement_history,
            )

        logger.info(f"Asymptotic entanglement E = {report.entropy:.12f}")
        return report


def compute_channel(
    coin: CoinOperator,
    position: PositionDistribution,
    m: int,
    offset: float,
    degeneracy_tol: float | None = None,
    workers: int = 1,
) -> AsymptoticChannel:
    """
    Integrate the weighted projector sandwich over the offset M×M grid.

    The grid is split into chunks of config.CHUNK_SIZE points; partial sums are
    added in chunk order, so the result does not depend on the worker count.

    Args:
        coin: Two-qubit coin
        position: Position distribution with a pointwise Fourier weight
        m: Grid points per axis
        offset: Grid offset in units of the spacing
        degeneracy_tol: Angular merge tolerance
        workers: Threads for chunk evaluation

    Returns:
        AsymptoticChannel with the weight normalized to unit grid mean
    """
    tol = config.DEGENERACY_TOL if degeneracy_tol is None else degeneracy_tol
    axis = kgrid(m, offset)
    n_points = m * m
    chunk = config.CHUNK_SIZE
    bounds = [(s, min(s + chunk, n_points)) for s in range(0, n_points, chunk)]

    def chunk_sum(bound: tuple[int, int]) -> tuple[np.ndarray, float]:
        idx = np.arange(*bound)
        kx = axis[idx // m]
        ky = axis[idx % m]
        weights = fourier_weight_grid(position, kx, ky)
        phases, vectors = batch_spectra(coin, kx, ky)
        return _sandwich_tensor(phases, vectors, weights, tol), float(weights.sum())

    logger.debug(f"Integrating {n_points} k-points in {len(bounds)} chunks (M={m})")
    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            partials = list(executor.map(chunk_sum, bounds))
    else:
        partials = [chunk_sum(b) for b in bounds]

    total = np.zeros((16, 16), dtype=np.complex128)
    weight_sum = 0.0
    for partial, wsum in partials:
        total += partial
        weight_sum += wsum

    return AsymptoticChannel(tensor=(total / weight_sum).reshape(4, 4, 4, 4), grid_points=m)


@lru_cache(maxsize=64)
def _cached_channel(
    coin_key: tuple[str, bytes],
    position: PositionDistribution,
    m: int,
    offset: float,
    degeneracy_tol: float,
    workers: int,
) -> AsymptoticChannel:
    return compute_channel(_coin_from_key(coin_key), position, m, offset, degeneracy_tol, workers)


def uniform_limit_tensor(
    coin: CoinOperator,
    degeneracy_tol: float | None = None,
    directions: int | None = None,
) -> np.ndarray:
    """
    Channel tensor of the k → 0 limit, averaged over directions of approach.

    Inside each degenerate eigenspace Q of the coin, the limiting eigenvectors
    along direction ψ diagonalize Q K(ψ) Q with K(ψ) = cos ψ K_x + sin ψ K_y.

    Args:
        coin: Two-qubit coin (U_k at k = 0)
        degeneracy_tol: Merge tolerance for phases and first-order splittings
        directions: Number of midpoint approach angles

    Returns:
        Tensor L[i, a, b, j]
    """
    tol = config.DEGENERACY_TOL if degeneracy_tol is None else degeneracy_tol
    n_dir = directions or config.UNIFORM_DIRECTIONS
    spec = unitary_eigen(coin.matrix, tol)
    identity = np.eye(4, dtype=np.complex128)

    tensor = np.zeros((4, 4, 4, 4), dtype=np.complex128)
    for j in range(n_dir):
        psi = (j + 0.5) * 2.0 * np.pi / n_dir
        generator = np.cos(psi) * _GEN_X + np.sin(psi) * _GEN_Y
        for q, rank in zip(spec.projectors, spec.ranks):
            if rank == 1:
                tensor += np.einsum("ia,bj->iabj", q, q)
                continue
            shifted = q @ generator @ q + 3.0 * (identity - q)
            eig = hermitian_eigen(0.5 * (shifted + shifted.conj().T))
            inside = eig.eigenvalues < 2.0
            values = eig.eigenvalues[inside]
            vectors = eig.eigenvectors[:, inside]
            start = 0
            for stop in range(1, len(values) + 1):
                if stop == len(values) or values[stop] - values[stop - 1] > tol:
                    block = vectors[:, start:stop]
                    r = block @ block.conj().T
                    tensor += np.einsum("ia,bj->iabj", r, r)
                    start = stop
    return tensor / n_dir


def uniform_limit_reduced_density(
    coin: CoinOperator,
    chi: CoinState,
    degeneracy_tol: float | None = None,
) -> ReducedDensity:
    """
    Asymptotic density for a uniformly extended initial position.

    Args:
        coin: Two-qubit coin
        chi: Initial coin state
        degeneracy_tol: Merge tolerance

    Returns:
        ReducedDensity
    """
    tensor = uniform_limit_tensor(coin, degeneracy_tol)
    rho = np.einsum("iabj,ab->ij", tensor, chi.projector)
    return ReducedDensity(
        rho,
        {"coin": coin.label, "state": chi.label, "position": "uniform", "quadrature": None},
    )


def asymptotic_reduced_density(
    coin: CoinOperator,
    chi: CoinState,
    pos: PositionDistribution,
    quad: QuadratureSpec | None = None,
) -> ReducedDensity:
    """
    Asymptotic reduced coin density by k-space quadrature.

    Args:
        coin: Two-qubit coin
        chi: Initial coin state
        pos: Position distribution other than UniformLimit
        quad: Quadrature settings

    Returns:
        ReducedDensity at the converged grid

    Raises:
        UnsupportedVariantError: For UniformLimit (use uniform_limit_reduced_density)
        OscillatingLimitError: If the coin has constant eigenphase gaps
        QuadratureNotConvergedError: If refinement does not settle
    """
    if isinstance(pos, UniformLimit):
        raise UnsupportedVariantError(
            "UniformLimit has no quadrature; use uniform_limit_reduced_density",
        )
    report = AsymptoticEngine(coin, pos, quad).evaluate(chi)
    _require_limit(report)
    return report.density


def asymptotic_entanglement(
    coin: CoinOperator,
    chi: CoinState,
    pos: PositionDistribution,
    quad: QuadratureSpec | None = None,
) -> EntanglementReport:
    """
    Asymptotic coin-position entanglement E in bits.

    Args:
        coin: Two-qubit coin
        chi: Initial coin state
        pos: Position distribution (UniformLimit routes to the uniform-limit density)
        quad: Quadrature settings

    Returns:
        EntanglementReport

    Raises:
        OscillatingLimitError: If the coin has constant eigenphase gaps
        QuadratureNotConvergedError: If refinement does not settle
    """
    report = AsymptoticEngine(coin, pos, quad).evaluate(chi)
    _require_limit(report)
    return report



def _require_limit(report: EntanglementReport) -> None:
    """Raise unless the report holds a converged long-time limit."""
    if report.oscillation_gaps:
        raise _oscillation_error(report.oscillation_gaps)
    if not report.converged:
        raise QuadratureNotConvergedError(
            "Quadrature did not converge", report.refinement_history,
        )
