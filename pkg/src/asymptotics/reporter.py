# SPDX-FileCopyrightText: 2025 Yannick Kees
# SPDX-FileCopyrightText: 2026 Yannick Kees
#
# SPDX-License-Identifier: MIT
"""Render entanglement reports and write CSV outputs."""

from pathlib import Path

import numpy as np
import pandas as pd

from ..utils.errors import OutputError
from ..utils.logger import setup_logger
from .engine import EntanglementReport, ReducedDensity

logger = setup_logger(__name__)

FLOAT_FORMAT = "%.12g"


def _write_csv(df: pd.DataFrame, output_path: Path, what: str) -> None:
    try:
        output_path.parent.mkdir(parents=True, exist_ok=True)
        df.to_csv(output_path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    except OSError as e:
        logger.error(f"Failed to save {what}: {e}")
        raise OutputError(f"Cannot write {what} to {output_path}: {e}") from e
    logger.info(f"{what.capitalize()} saved to: {output_path}")


def density_frame(density: ReducedDensity) -> pd.DataFrame:
    """Density entries as rows of (row, col, real, imag), 1-based indices."""
    m = density.matrix
    rows = [
        {"row": i + 1, "col": j + 1, "real": float(m[i, j].real), "imag": float(m[i, j].imag)}
        for i in range(m.shape[0])
        for j in range(m.shape[1])
    ]
    return pd.DataFrame(rows, columns=["row", "col", "real", "imag"])


def save_density(density: ReducedDensity, output_path: Path) -> None:
    """
    Save a reduced density as CSV.

    Args:
        density: Reduced coin density
        output_path: Destination CSV path

    Raises:
        OutputError: If the file cannot be written
    """
    _write_csv(density_frame(density), Path(output_path), "density")


def save_sweep(results: pd.DataFrame, output_path: Path) -> None:
    """Save sweep results (axis columns, entropy_bits, converged) as CSV."""
    _write_csv(results, Path(output_path), "sweep results")


def save_trajectory(trajectory: list[tuple[int, float]], output_path: Path) -> None:
    """
    Save an entanglement trajectory as CSV with columns n, entropy_bits.

    Args:
        trajectory: List of (n, E(n))
        output_path: Destination CSV path
    """
    df = pd.DataFrame(trajectory, columns=["n", "entropy_bits"])
    _write_csv(df, Path(output_path), "trajectory")


def _format_complex(z: complex) -> str:
    return f"{z.real:+.10f}{z.imag:+.10f}i"


def print_entanglement_report(report: EntanglementReport) -> None:
    """
    Print an entanglement report to console.

    Args:
        report: EntanglementReport
    """
    meta = report.density.metadata
    print("\n" + "=" * 80)
    print("ASYMPTOTIC COIN-POSITION ENTANGLEMENT")
    print("=" * 80)

    print(f"\n  Coin: {meta.get('coin', '?')}")
    print(f"  State: {meta.get('state', '?')}")
    position = meta.get("position")
    if isinstance(position, dict):
        position = ", ".join(f"{k}={v}" for k, v in position.items())
    print(f"  Position: {position}")

    print(f"\n  E = {report.entropy:.12f} bits")
    print("\nEigenvalues:")
    for value in np.sort(report.eigenvalues)[::-1]:
        print(f"  {value:.12f}")

    print("\nReduced density:")
    for row in report.density.matrix:
        print("  " + "  ".join(_format_complex(z) for z in row))

    print("\nConvergence:")
    if report.refinement_history:
        for m, entropy in report.refinement_history:
            print(f"  M={m:5d} : E={entropy:.12f}")
    else:
        print("  uniform limit (no quadrature)")
    print(f"  Converged: {'yes' if report.converged else 'no'}")
    print("=" * 80)
