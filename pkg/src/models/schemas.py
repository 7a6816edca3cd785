# SPDX-FileCopyrightText: 2025 Yannick Kees
# SPDX-FileCopyrightText: 2026 Yannick Kees
#
# SPDX-License-Identifier: MIT
"""Pydantic models for type safety and data validation."""

import math
from typing import Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, field_validator, model_validator

from ..utils.config import config

_ANGLE_SLACK = 1e-12


class WaveVector(BaseModel):
    """Quasi-momentum k = (kx, ky) in the Brillouin zone [−π, π]²."""

    model_config = ConfigDict(frozen=True)

    kx: float = Field(..., description="x component in radians")
    ky: float = Field(..., description="y component in radians")

    @field_validator("kx", "ky")
    @classmethod
    def validate_component(cls, v: float) -> float:
        """Validate the component lies in [−π, π]."""
        if not -math.pi - _ANGLE_SLACK <= v <= math.pi + _ANGLE_SLACK:
            raise ValueError(f"Wave vector component {v} outside [-pi, pi]")
        return v


class QuadratureSpec(BaseModel):
    """Uniform offset k-grid and its doubling refinement."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    grid_points_per_axis: int = Field(config.DEFAULT_GRID, description="Grid size M per axis")
    offset_fraction: float = Field(config.DEFAULT_OFFSET, description="Grid shift in spacings")
    refine_tol: float = Field(config.REFINE_TOL, description="Max entry change to stop refining")
    max_refinements: int = Field(config.MAX_REFINEMENTS, description="Maximum doublings of M")

    @field_validator("grid_points_per_axis")
    @classmethod
    def validate_grid(cls, v: int) -> int:
        """Validate M is a power of two and at least 16."""
        if v < 16 or v & (v - 1):
            raise ValueError(f"grid_points_per_axis must be a power of 2 and >= 16, got {v}")
        return v

    @field_validator("offset_fraction")
    @classmethod
    def validate_offset(cls, v: float) -> float:
        """Validate the offset lies in [0, 1)."""
        if not 0.0 <= v < 1.0:
            raise ValueError(f"offset_fraction must be in [0, 1), got {v}")
        return v

    @field_validator("refine_tol")
    @classmethod
    def validate_tol(cls, v: float) -> float:
        """Validate the tolerance is positive."""
        if v <= 0:
            raise ValueError("refine_tol must be positive")
        return v

    @field_validator("max_refinements")
    @classmethod
    def validate_refinements(cls, v: int) -> int:
        """Validate the refinement count is non-negative."""
        if v < 0:
            raise ValueError("max_refinements must be >= 0")
        return v


# Position distributions. Angles are in radians.


class PointMass(BaseModel):
    """Walker localized at (x0, y0)."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["point"] = "point"
    x0: int = 0
    y0: int = 0


class TwoSiteSeparable(BaseModel):
    """cos α |−1, 0⟩ + e^{iβ} sin α |1, 0⟩."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["two-site-separable"] = "two-site-separable"
    alpha: float = Field(..., description="Mixing angle in radians")
    beta: float = Field(0.0, description="Relative phase in radians")


class TwoSiteEntangled(BaseModel):
    """cos α |−1, 1⟩ + e^{iβ} sin α |1, −1⟩."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["two-site-entangled"] = "two-site-entangled"
    alpha: float = Field(..., description="Mixing angle in radians")
    beta: float = Field(0.0, description="Relative phase in radians")


class GaussianIsotropic(BaseModel):
    """a(r) ∝ exp(−(x² + y²)/2σ²)."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["gaussian"] = "gaussian"
    sigma: float = Field(..., gt=0, description="Width in lattice units")


class UniformLimit(BaseModel):
    """Infinitely extended position distribution (delta weight at k = 0)."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["uniform"] = "uniform"


PositionDistribution = Annotated[
    Union[PointMass, TwoSiteSeparable, TwoSiteEntangled, GaussianIsotropic, UniformLimit],
    Field(discriminator="kind"),
]

# Run configuration. Angles are in units of π.

STATE_FAMILIES = (
    "I",
    "II",
    "III",
    "separable",
    "bell-psi-plus",
    "bell-psi-minus",
    "bell-phi-plus",
    "bell-phi-minus",
    "LL",
    "LR",
    "RL",
    "RR",
    "custom",
)

SWEEP_AXES = {
    "theta": (-0.5, 0.5),
    "phi": (-1.0, 1.0),
    "theta1": (-0.5, 0.5),
    "phi1": (-1.0, 1.0),
    "theta2": (-0.5, 0.5),
    "phi2": (-1.0, 1.0),
    "alpha": (-0.5, 0.5),
    "beta": (-1.0, 1.0),
}

_ANGLE_FIELDS = SWEEP_AXES

# Axes that change the state of a family or the weight of a position kind.
FAMILY_AXES = {
    "I": ("theta", "phi"),
    "II": ("theta", "phi"),
    "III": ("theta", "phi"),
    "separable": ("theta1", "phi1", "theta2", "phi2"),
}
POSITION_KIND_AXES = {
    "two-site-separable": ("alpha", "beta"),
    "two-site-entangled": ("alpha", "beta"),
}


class CoinConfig(BaseModel):
    """Coin section of the run configuration."""

    model_config = ConfigDict(extra="forbid")

    kind: str = Field("hadamard2x2", description="hadamard2x2, grover4, dft4, identity4, custom")
    values: list[float] | None = Field(None, description="32 reals, row-major, re/im interleaved")

    @field_validator("kind")
    @classmethod
    def validate_kind(cls, v: str) -> str:
        """Validate the coin name."""
        if v not in config.SUPPORTED_COINS:
            raise ValueError(f"Coin kind must be one of {sorted(config.SUPPORTED_COINS)}")
        return v

    @model_validator(mode="after")
    def validate_values(self) -> "CoinConfig":
        """Custom coins need 32 values."""
        if self.kind == "custom" and (self.values is None or len(self.values) != 32):
            raise ValueError("Custom coin needs exactly 32 values")
        return self


class StateConfig(BaseModel):
    """Initial coin state section (angles in units of π)."""

    model_config = ConfigDict(extra="forbid")

    family: str = Field("LL", description=f"One of {', '.join(STATE_FAMILIES)}")
    theta: float = 0.0
    phi: float = 0.0
    theta1: float = 0.0
    phi1: float = 0.0
    theta2: float = 0.0
    phi2: float = 0.0
    amplitudes: list[float] | None = Field(None, description="8 reals, re/im interleaved")

    @field_validator("family")
    @classmethod
    def validate_family(cls, v: str) -> str:
        """Validate the state family name."""
        if v not in STATE_FAMILIES:
            raise ValueError(f"State family must be one of {STATE_FAMILIES}")
        return v

    @field_validator("theta", "phi", "theta1", "phi1", "theta2", "phi2")
    @classmethod
    def validate_angle(cls, v: float, info: ValidationInfo) -> float:
        """Validate the angle lies in its domain."""
        lo, hi = _ANGLE_FIELDS[info.field_name]
        if not lo <= v <= hi:
            raise ValueError(f"{info.field_name} must be in [{lo}, {hi}] (units of pi)")
        return v

    @model_validator(mode="after")
    def validate_amplitudes(self) -> "StateConfig":
        """Custom states need 8 values."""
        if self.family == "custom" and (self.amplitudes is None or len(self.amplitudes) != 8):
            raise ValueError("Custom state needs exactly 8 amplitude values")
        return self


class PositionConfig(BaseModel):
    """Initial position section (angles in units of π)."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["point", "two-site-separable", "two-site-entangled", "gaussian", "uniform"] = (
        "point"
    )
    x0: int = 0
    y0: int = 0
    alpha: float = 0.0
    beta: float = 0.0
    sigma: float = Field(1.0, gt=0)

    @field_validator("alpha", "beta")
    @classmethod
    def validate_angle(cls, v: float, info: ValidationInfo) -> float:
        """Validate the angle lies in its domain."""
        lo, hi = _ANGLE_FIELDS[info.field_name]
        if not lo <= v <= hi:
            raise ValueError(f"{info.field_name} must be in [{lo}, {hi}] (units of pi)")
        return v

    def to_distribution(self) -> "PositionDistribution":
        """Convert to the radian-valued position model."""
        if self.kind == "point":
            return PointMass(x0=self.x0, y0=self.y0)
        if self.kind == "two-site-separable":
            return TwoSiteSeparable(alpha=self.alpha * math.pi, beta=self.beta * math.pi)
        if self.kind == "two-site-entangled":
            return TwoSiteEntangled(alpha=self.alpha * math.pi, beta=self.beta * math.pi)
        if self.kind == "gaussian":
            return GaussianIsotropic(sigma=self.sigma)
        return UniformLimit()


class SweepAxis(BaseModel):
    """One swept parameter (values in units of π)."""

    model_config = ConfigDict(extra="forbid")

    name: str = Field(..., description=f"One of {', '.join(SWEEP_AXES)}")
    min: float
    max: float
    count: int = Field(..., ge=2)

    @field_validator("name")
    @classmethod
    def validate_name(cls, v: str) -> str:
        """Validate the axis name."""
        if v not in SWEEP_AXES:
            raise ValueError(f"Axis must be one of {list(SWEEP_AXES)}")
        return v

    @model_validator(mode="after")
    def validate_range(self) -> "SweepAxis":
        """Validate the range lies within the parameter domain."""
        lo, hi = SWEEP_AXES[self.name]
        if not lo <= self.min <= self.max <= hi:
            raise ValueError(f"Axis {self.name} range must satisfy {lo} <= min <= max <= {hi}")
        return self

    def values(self) -> list[float]:
        """Evenly spaced axis values, endpoints included."""
        step = (self.max - self.min) / (self.count - 1)
        return [self.min + i * step for i in range(self.count)]


class SweepSettings(BaseModel):
    """Sweep section: one or two axes."""

    model_config = ConfigDict(extra="forbid")

    axes: list[SweepAxis] = Field(..., min_length=1, max_length=2)

    @model_validator(mode="after")
    def validate_distinct(self) -> "SweepSettings":
        """Axes must differ."""
        names = [a.name for a in self.axes]
        if len(set(names)) != len(names):
            raise ValueError("Sweep axes must be distinct")
        return self

    def unused_axes(self, family: str, position_kind: str) -> list[str]:
        """Axes that change neither the coin state nor the position weight."""
        relevant = set(FAMILY_AXES.get(family, ())) | set(POSITION_KIND_AXES.get(position_kind, ()))
        return [a.name for a in self.axes if a.name not in relevant]


class SimulationConfig(BaseModel):
    """Simulation section."""

    model_config = ConfigDict(extra="forbid")

    steps: int = Field(200, ge=0, description="Number of walk steps n_max")
    window: int = Field(config.WINDOW, ge=1, description="Steps averaged for the final mean")


class RunConfig(BaseModel):
    """Complete run configuration, loaded from a JSON file."""

    model_config = ConfigDict(extra="forbid")

    coin: CoinConfig = Field(default_factory=CoinConfig)
    state: StateConfig = Field(default_factory=StateConfig)
    position: PositionConfig = Field(default_factory=PositionConfig)
    quadrature: QuadratureSpec = Field(default_factory=QuadratureSpec)
    sweep: SweepSettings | None = None
    simulation: SimulationConfig = Field(default_factory=SimulationConfig)
    output: str | None = Field(None, description="Output CSV path")

    @model_validator(mode="after")
    def validate_sweep_axes(self) -> "RunConfig":
        """Every swept axis must act on the configured state family or position kind."""
        if self.sweep is not None:
            unused = self.sweep.unused_axes(self.state.family, self.position.kind)
            if unused:
                raise ValueError(
                    f"Sweep axes {unused} have no effect on state family "
                    f"'{self.state.family}' with position '{self.position.kind}'",
                )
        return self
