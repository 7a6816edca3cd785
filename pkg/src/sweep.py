# SPDX-FileCopyrightText: 2025 Yannick Kees
# SPDX-FileCopyrightText: 2026 Yannick Kees
#
# SPDX-License-Identifier: MIT
"""Parameter sweeps of the asymptotic entanglement over one or two axes."""

import itertools
from concurrent.futures import ProcessPoolExecutor

import pandas as pd

from .asymptotics.engine import AsymptoticEngine
from .models.schemas import (
    CoinConfig,
    PositionConfig,
    QuadratureSpec,
    StateConfig,
    SweepSettings,
)
from .utils.config import config
from .utils.errors import ConfigError
from .utils.logger import setup_logger
from .walk.coin import CoinOperator, coin_from_name
from .walk.states import state_from_config

logger = setup_logger(__name__)

POSITION_AXES = frozenset({"alpha", "beta"})


def _split(point: dict[str, float]) -> tuple[dict[str, float], dict[str, float]]:
    state = {k: v for k, v in point.items() if k not in POSITION_AXES}
    position = {k: v for k, v in point.items() if k in POSITION_AXES}
    return state, position


def _evaluate_position_point(
    coin_cfg: CoinConfig,
    state_cfg: StateConfig,
    position_cfg: PositionConfig,
    quadrature: QuadratureSpec,
    point: dict[str, float],
) -> tuple[float, bool]:
    """Evaluate one sweep point in a worker process."""
    state_update, position_update = _split(point)
    coin = coin_from_name(coin_cfg.kind, coin_cfg.values)
    chi = state_from_config(state_cfg.model_copy(update=state_update))
    position = PositionConfig.model_validate(
        {**position_cfg.model_dump(), **position_update},
    ).to_distribution()
    report = AsymptoticEngine(coin, position, quadrature).evaluate(chi)
    return report.entropy, report.converged


class SweepEngine:
    """Evaluates E over a row-major grid of swept parameters."""

    def __init__(
        self,
        coin_cfg: CoinConfig,
        state_cfg: StateConfig,
        position_cfg: PositionConfig,
        sweep: SweepSettings,
        quadrature: QuadratureSpec | None = None,
        workers: int | None = None,
    ):
        """
        Initialize sweep engine.

        Args:
            coin_cfg: Coin section
            state_cfg: Fixed state parameters (swept ones are overridden)
            position_cfg: Fixed position parameters (swept ones are overridden)
            sweep: Axes to sweep, values in units of π
            quadrature: Quadrature settings (None = defaults)
            workers: Worker count (None = config.DEFAULT_WORKERS)

        Raises:
            ConfigError: If an axis changes neither the state nor the position
        """
        unused = sweep.unused_axes(state_cfg.family, position_cfg.kind)
        if unused:
            raise ConfigError(
                f"Sweep axes {unused} have no effect on state family '{state_cfg.family}' "
                f"with position '{position_cfg.kind}'",
            )
        self.coin_cfg = coin_cfg
        self.state_cfg = state_cfg
        self.position_cfg = position_cfg
        self.sweep = sweep
        self.quadrature = quadrature or QuadratureSpec()
        self.workers = max(1, workers or config.DEFAULT_WORKERS)

    @property
    def axis_names(self) -> list[str]:
        """Swept parameter names in column order."""
        return [axis.name for axis in self.sweep.axes]

    @property
    def varies_position(self) -> bool:
        """True when an axis changes the Fourier weight."""
        return any(name in POSITION_AXES for name in self.axis_names)

    def points(self) -> list[dict[str, float]]:
        """Grid points in row-major order (last axis fastest)."""
        grids = [axis.values() for axis in self.sweep.axes]
        return [dict(zip(self.axis_names, combo)) for combo in itertools.product(*grids)]

    def run(self) -> pd.DataFrame:
        """
        Execute the sweep.

        Returns:
            DataFrame with the axis columns (units of π), entropy_bits and converged
        """
        points = self.points()
        logger.info("=" * 80)
        logger.info("Starting parameter sweep")
        logger.info("=" * 80)
        logger.info(f"Axes: {', '.join(self.axis_names)}")
        logger.info(f"Points: {len(points)}")
        logger.info(f"Workers: {self.workers}")
        logger.info("=" * 80)

        coin = coin_from_name(self.coin_cfg.kind, self.coin_cfg.values)

        try:
            if self.varies_position:
                logger.info("\n[Step 1/2] Evaluating points in worker pool...")
                results = self._run_position_sweep(points)
            else:
                logger.info("\n[Step 1/2] Evaluating points against shared channels...")
                results = self._run_state_sweep(coin, points)
        except Exception as e:
            logger.error(f"Sweep evaluation failed: {e}")
            raise

        logger.info("\n[Step 2/2] Collecting results...")
        df = pd.DataFrame(points, columns=self.axis_names)
        df["entropy_bits"] = [entropy for entropy, _ in results]
        df["converged"] = [converged for _, converged in results]

        failed = int((~df["converged"]).sum())
        if failed:
            logger.warning(f"{failed} of {len(df)} points did not converge")

        logger.info("=" * 80)
        logger.info(
            f"Sweep complete! E in [{df['entropy_bits'].min():.6f}, "
            f"{df['entropy_bits'].max():.6f}]",
        )
        logger.info("=" * 80)
        return df

    def _run_state_sweep(
        self,
        coin: CoinOperator,
        points: list[dict[str, float]],
    ) -> list[tuple[float, bool]]:
        """Coin-state sweeps reuse one channel per grid size."""
        position = self.position_cfg.to_distribution()
        engine = AsymptoticEngine(coin, position, self.quadrature, workers=self.workers)
        results = []
        for i, point in enumerate(points, 1):
            chi = state_from_config(self.state_cfg.model_copy(update=point))
            report = engine.evaluate(chi)
            results.append((report.entropy, report.converged))
            if i % 100 == 0:
                logger.debug(f"  {i}/{len(points)} points done")
        return results

    def _run_position_sweep(self, points: list[dict[str, float]]) -> list[tuple[float, bool]]:
        """Each position needs its own channel; points go to a process pool."""
        args = (
            [self.coin_cfg] * len(points),
            [self.state_cfg] * len(points),
            [self.position_cfg] * len(points),
            [self.quadrature] * len(points),
            points,
        )
        if self.workers == 1:
            return list(map(_evaluate_position_point, *args))
        with ProcessPoolExecutor(max_workers=self.workers) as executor:
            return list(executor.map(_evaluate_position_point, *args))
