"""
Models of the traveling-wave kernels K_0, K_alpha and the Green operator.
"""

from typing import List, Optional

import numpy as np
from pydantic import BaseModel, Field


class KernelConfig(BaseModel):
    alpha: float = Field(gt=0.0, lt=1.0)
    c: float = Field(gt=0.0)
    kappa: float = Field(gt=0.0)
    theta_bound: Optional[float] = None   # measured L1 norm of K_alpha

    class Config:
        extra = 'forbid'


class KernelTable(BaseModel):
    """
    K_alpha sampled on xi_i = -L + i h, with its primitive at half-offset lags.

    q_half[m] = Q((m - n + 1/2) h), m = 0..2n-1, where Q is the primitive of
    K_alpha vanishing at -inf; Q(+inf) = 0.
    """
    cfg: KernelConfig
    L: float
    h: float
    xi: np.ndarray
    samples: np.ndarray
    q_half: np.ndarray
    neg_coefficient: float       # K_alpha(xi) = neg_coefficient * exp(kappa xi) for xi <= 0
    tail_coefficient: float      # lim xi^(1+alpha) K_alpha(xi)
    l1_norm: float
    negative_mass: float
    zero_mean: float

    class Config:
        arbitrary_types_allowed = True

    @property
    def n(self) -> int:
        return int(self.xi.size)


class GreenResult(BaseModel):
    psi: np.ndarray
    iterations: int
    increments: List[float] = Field(default_factory=list)

    class Config:
        arbitrary_types_allowed = True

    @property
    def contraction_ratios(self) -> List[float]:
        inc = self.increments
        return [inc[i + 1] / inc[i] for i in range(len(inc) - 1) if inc[i] > 0.0]
