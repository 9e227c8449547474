"""
Models of the asymptotic traveling-wave construction.
"""

from typing import Dict, List, Optional

import numpy as np
from pydantic import BaseModel, Field

from fracfront.models.nonlinearity import Nonlinearity


class UpperSolutionParams(BaseModel):
    lambda1: float = Field(gt=0.0)
    epsilon: float = Field(gt=0.0)
    R_eps: float = Field(gt=0.0)


class LowerSolutionParams(BaseModel):
    lambda1: float = Field(gt=0.0)
    epsilon: float = Field(gt=0.0)
    nu: float = Field(gt=1.0)
    h: float = Field(gt=1.0)
    xi0: float = Field(lt=0.0)
    xi_star: float


class ProfileOptions(BaseModel):
    domain_factor: float = Field(default=60.0, gt=0.0)     # L = domain_factor / lambda1
    step_factor: float = Field(default=0.02, gt=0.0)       # h = min(step_factor / lambda2, max_step)
    max_step: float = Field(default=0.05, gt=0.0)
    epsilon: Optional[float] = Field(default=None, gt=0.0)
    nu: Optional[float] = Field(default=None, gt=1.0)
    kappa: Optional[float] = Field(default=None, gt=0.0)
    outer_tol: float = Field(default=1e-8, gt=0.0)
    max_iterations: int = Field(default=50000, ge=1)
    monotone_tol: float = Field(default=1e-10, ge=0.0)
    critical_offset: float = Field(default=1e-3, gt=0.0)
    grid_shift: float = 0.0
    max_epsilon_halvings: int = Field(default=12, ge=0)

    class Config:
        extra = 'forbid'


class ProfileConfig(BaseModel):
    """Run configuration of the profile subcommand."""
    alpha: float = Field(gt=0.0, lt=1.0)
    c: float = Field(gt=0.0)
    nonlinearity: Nonlinearity = Field(default_factory=Nonlinearity)
    at_critical: bool = False
    options: ProfileOptions = Field(default_factory=ProfileOptions)
    subsolution_times: List[float] = Field(default_factory=lambda: [1.0, 5.0, 20.0])
    subsolution_x_min: float = -5.0
    subsolution_x_max: float = 15.0
    subsolution_x_count: int = Field(default=20, ge=1)

    class Config:
        extra = 'forbid'


class DecayFit(BaseModel):
    exponent: float
    amplitude: float
    points: int


class WaveProfile(BaseModel):
    """
    Converged profile on the normalized grid (phi = 1/2 at xi = 0).
    """
    c: float
    c_requested: float
    alpha: float
    lambda1: float
    lambda2: float
    lambda1_discrete: float
    kappa: float
    theta_bound: float          # sup-norm bound of P^-1 N for the grid operator
    nonlinearity: Nonlinearity
    xi: np.ndarray
    phi: np.ndarray
    upper: np.ndarray
    lower: np.ndarray
    shift: float
    h: float
    upper_params: UpperSolutionParams
    lower_params: LowerSolutionParams
    iterations: int
    final_increment: float
    max_monotone_violation: float
    residual_sup: float = 0.0
    decay_exponent: Optional[float] = None
    decay_amplitude: Optional[float] = None
    right_deficit: float = 0.0
    right_exponent: Optional[float] = None
    interior_margin: int = 1
    diagnostics: Dict[str, float] = Field(default_factory=dict)

    class Config:
        arbitrary_types_allowed = True

    @property
    def critical_offset(self) -> float:
        return self.c / self.c_requested - 1.0
