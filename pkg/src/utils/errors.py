# SPDX-FileCopyrightText: 2025 Yannick Kees
# SPDX-FileCopyrightText: 2026 Yannick Kees
#
# SPDX-License-Identifier: MIT
"""Exception hierarchy with command-line exit codes."""


class WalkError(Exception):
    """Base class for errors raised by this package."""

    exit_code: int = 1


class PreconditionError(WalkError, ValueError):
    """An input violates a numeric or structural precondition."""

    exit_code = 2


class NotHermitianError(PreconditionError):
    """Matrix is not Hermitian within tolerance."""


class NotUnitaryError(PreconditionError):
    """Matrix is not unitary within tolerance."""


class DensityMatrixError(PreconditionError):
    """Density matrix violates trace or positivity."""


class UnsupportedVariantError(PreconditionError):
    """Position variant not supported by the requested operation."""


class LinearAlgebraError(WalkError, ArithmeticError):
    """Eigen-solver or clustering failure."""

    exit_code = 3


class DegeneratePointError(LinearAlgebraError):
    """Closed-form eigenvector formula degenerates at this wave vector."""


class QuadratureNotConvergedError(WalkError):
    """Doubling refinement did not reach the requested tolerance."""

    exit_code = 3

    def __init__(self, message: str, history: list[tuple[int, float]]):
        super().__init__(message)
        self.history = history


class ConfigError(WalkError):
    """Configuration file or flags are malformed."""

    exit_code = 2


class OutputError(WalkError, OSError):
    """Output could not be written."""

    exit_code = 4


class OscillatingLimitError(WalkError):
    """Eigenphase gaps of U_k do not depend on k, so the density never settles."""

    exit_code = 3

    def __init__(self, message: str, gaps: tuple[float, ...]):
        super().__init__(message)
        self.gaps = gaps
