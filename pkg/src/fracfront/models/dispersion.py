"""
Dispersion report model.
"""

from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field


class RootRegime(str, Enum):
    NONE = "none"
    CRITICAL = "critical"
    TWO_ROOTS = "two_roots"


class DispersionReport(BaseModel):
    alpha: float = Field(gt=0.0, le=1.0)
    c: float = Field(gt=0.0)
    fprime0: float = Field(gt=0.0)
    cstar: float = Field(gt=0.0)
    lambda_star: float = Field(gt=0.0)
    v_at_lambda_star: float
    regime: RootRegime
    roots: List[float] = Field(default_factory=list)  # ascending, 0, 1 or 2 entries
    residuals: List[float] = Field(default_factory=list)

    @property
    def lambda1(self) -> Optional[float]:
        return self.roots[0] if self.roots else None

    @property
    def lambda2(self) -> Optional[float]:
        return self.roots[-1] if self.roots else None

    class Config:
        use_enum_values = True
