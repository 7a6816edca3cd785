# SPDX-FileCopyrightText: 2025 Yannick Kees
# SPDX-FileCopyrightText: 2026 Yannick Kees
#
# SPDX-License-Identifier: MIT
"""
Coin operators.

Two-qubit coins act on the basis (LL, LR, RL, RR); one-qubit coins on (L, R).
"""

from dataclasses import dataclass

import numpy as np

from ..numerics.linalg import ComplexMatrix, as_complex_matrix, is_unitary
from ..utils.errors import NotUnitaryError, PreconditionError
from ..utils.logger import setup_logger

logger = setup_logger(__name__)

COIN_UNITARY_TOL = 1e-12

_HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / np.sqrt(2.0)
_HADAMARD_PRODUCT = np.kron(_HADAMARD, _HADAMARD)


@dataclass(frozen=True)
class CoinOperator:
    """A unitary coin matrix with a human-readable label."""

    matrix: ComplexMatrix
    label: str = "custom"

    def __post_init__(self):
        """Validate and freeze the matrix."""
        m = as_complex_matrix(self.matrix, f"coin '{self.label}'")
        if not is_unitary(m, COIN_UNITARY_TOL):
            raise NotUnitaryError(f"Coin '{self.label}' is not unitary")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        """Coin dimension (2 or 4)."""
        return self.matrix.shape[0]

    @property
    def is_hadamard_product(self) -> bool:
        """True when the coin equals H⊗H."""
        if self.dim != 4:
            return False
        return bool(np.allclose(self.matrix, _HADAMARD_PRODUCT, rtol=0, atol=1e-14))

    @property
    def key(self) -> tuple[str, bytes]:
        """Hashable identity used for caching."""
        return self.label, self.matrix.tobytes()

    def apply(self, vector) -> np.ndarray:
        """Apply the coin to a coin-space vector."""
        return self.matrix @ np.asarray(vector, dtype=np.complex128)


def hadamard2() -> CoinOperator:
    """Return the one-qubit Hadamard coin (1/√2)[[1, 1], [1, −1]]."""
    return CoinOperator(_HADAMARD.copy(), "hadamard2")


def identity(dim: int = 4) -> CoinOperator:
    """Return the identity coin of dimension 2 or 4."""
    return CoinOperator(np.eye(dim, dtype=np.complex128), f"identity{dim}")


def tensor(a: CoinOperator, b: CoinOperator) -> CoinOperator:
    """
    Kronecker product of two one-qubit coins.

    Args:
        a: Coin acting on the first qubit
        b: Coin acting on the second qubit

    Returns:
        Two-qubit coin in basis order (LL, LR, RL, RR)

    Raises:
        PreconditionError: If either coin is not 2x2
    """
    if a.dim != 2 or b.dim != 2:
        raise PreconditionError(f"tensor needs two 2x2 coins, got dims {a.dim} and {b.dim}")
    return CoinOperator(np.kron(a.matrix, b.matrix), f"{a.label}⊗{b.label}")


def grover4() -> CoinOperator:
    """Return the Grover coin 2|s⟩⟨s| − I with |s⟩ the uniform superposition."""
    return CoinOperator(np.full((4, 4), 0.5, dtype=np.complex128) - np.eye(4), "grover4")


def dft4() -> CoinOperator:
    """Return the DFT coin with entries ω^{jk}/2, ω = e^{2πi/4} = i."""
    jk = np.outer(np.arange(4), np.arange(4))
    return CoinOperator((1j**jk) / 2.0, "dft4")


def custom(matrix, label: str = "custom") -> CoinOperator:
    """
    Validate a user-supplied coin.

    Matrices unitary within 1e-10 are projected onto the nearest unitary
    (polar factor) so the stored coin is unitary to rounding.

    Args:
        matrix: 2x2 or 4x4 complex matrix
        label: Coin label

    Returns:
        CoinOperator

    Raises:
        NotUnitaryError: If the matrix is not unitary within 1e-10
    """
    m = as_complex_matrix(matrix, f"coin '{label}'")
    if not is_unitary(m):
        raise NotUnitaryError(f"Custom coin '{label}' is not unitary within tolerance")
    w, _, vh = np.linalg.svd(m)
    return CoinOperator(w @ vh, label)


def from_real_values(values: list[float], label: str = "custom") -> CoinOperator:
    """
    Build a custom coin from interleaved (re, im) values in row-major order.

    Args:
        values: 32 reals for a 4x4 coin or 8 reals for a 2x2 coin
        label: Coin label

    Returns:
        CoinOperator

    Raises:
        PreconditionError: If the value count is not 8 or 32
    """
    if len(values) not in (8, 32):
        raise PreconditionError(f"Custom coin needs 8 or 32 reals, got {len(values)}")
    arr = np.asarray(values, dtype=np.float64)
    dim = 2 if len(values) == 8 else 4
    return custom((arr[0::2] + 1j * arr[1::2]).reshape(dim, dim), label)


def random_unitary(dim: int, rng: np.random.Generator | None = None) -> CoinOperator:
    """
    Haar-random coin from the QR factorization of a complex Ginibre matrix.

    Args:
        dim: Coin dimension (2 or 4)
        rng: Optional random generator

    Returns:
        CoinOperator labelled "haar"
    """
    rng = rng or np.random.default_rng()
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    q = q * (d / np.abs(d))
    return CoinOperator(q, "haar")


def coin_from_name(name: str, values: list[float] | None = None) -> CoinOperator:
    """
    Map the configuration vocabulary to a coin.

    Args:
        name: One of hadamard2x2, grover4, dft4, identity4, custom
        values: Interleaved reals for the custom coin

    Returns:
        CoinOperator

    Raises:
        PreconditionError: For unknown names or a custom coin without values
    """
    if name == "hadamard2x2":
        return tensor(hadamard2(), hadamard2())
    if name == "grover4":
        return grover4()
    if name == "dft4":
        return dft4()
    if name == "identity4":
        return identity(4)
    if name == "custom":
        if values is None:
            raise PreconditionError("Custom coin requires 'values'")
        return from_real_values(values)
    raise PreconditionError(f"Unknown coin '{name}'")
