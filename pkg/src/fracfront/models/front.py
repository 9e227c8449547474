"""
Front track, run trajectory and speed-sweep models.
"""

from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, model_validator

from fracfront.models.simulation import RunStatus, SimConfig


class FrontTrack(BaseModel):
    """
    Level-set positions x*(t) of one run.

    x_star holds None where the profile does not cross the level.
    """
    level: float = 0.1
    times: List[float] = Field(default_factory=list)
    x_star: List[Optional[float]] = Field(default_factory=list)
    stop_time: Optional[float] = None
    c_num: Optional[float] = None
    c_num_signed: Optional[float] = None
    c_num_smoothed: Optional[float] = None
    max_crossings: int = 0

    def record(self, t: float, position: Optional[float], crossings: int) -> None:
        self.times.append(t)
        self.x_star.append(position)
        self.max_crossings = max(self.max_crossings, crossings)

    def position_at(self, t: float, tol: float = 1e-9) -> Optional[float]:
        for ti, xi in zip(reversed(self.times), reversed(self.x_star)):
            if abs(ti - t) <= tol * max(1.0, abs(t)):
                return xi
        return None

    @property
    def has_crossing(self) -> bool:
        return any(x is not None for x in self.x_star)


class Trajectory(BaseModel):
    config: SimConfig
    x: np.ndarray
    snapshots: List[Tuple[float, np.ndarray]] = Field(default_factory=list)
    track: FrontTrack
    status: RunStatus
    steps: int
    range_violation: float = 0.0
    wall_seconds: float = 0.0

    class Config:
        arbitrary_types_allowed = True
        use_enum_values = True


class SweepConfig(BaseModel):
    """Base simulation plus the alpha grid (explicit list or arithmetic progression)."""
    base: SimConfig
    alphas: Optional[List[float]] = None
    alpha_start: Optional[float] = None
    alpha_step: Optional[float] = None
    alpha_count: Optional[int] = Field(default=None, ge=1)

    class Config:
        extra = 'forbid'

    @model_validator(mode='after')
    def _check_grid(self) -> 'SweepConfig':
        progression = (self.alpha_start, self.alpha_step, self.alpha_count)
        if self.alphas is None and any(v is None for v in progression):
            raise ValueError("give either alphas or alpha_start/alpha_step/alpha_count")
        if self.alphas is not None and any(v is not None for v in progression):
            raise ValueError("alphas and alpha_start/alpha_step/alpha_count are exclusive")
        for a in self.grid():
            if not 0.0 < a <= 1.0:
                raise ValueError(f"alpha {a} outside (0, 1]")
        return self

    def grid(self) -> List[float]:
        if self.alphas is not None:
            return list(self.alphas)
        return [round(self.alpha_start + k * self.alpha_step, 12) for k in range(self.alpha_count)]


class SweepRow(BaseModel):
    alpha: float
    c_num: Optional[float] = None
    c_num_smoothed: Optional[float] = None
    c_star: float
    rel_error: Optional[float] = None
    rel_error_smoothed: Optional[float] = None
    stop_time: Optional[float] = None
    status: str
    message: str = ""
