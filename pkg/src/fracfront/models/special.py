"""
Parameter model for the Mittag-Leffler function.
"""

import math

from pydantic import BaseModel, Field, field_validator


class MLParams(BaseModel):
    """Arguments of E_{alpha,beta}(z)."""
    alpha: float = Field(gt=0.0, le=1.0)
    beta: float = Field(default=1.0, gt=0.0)
    z: float

    @field_validator('z')
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError('z must be finite')
        return value

    class Config:
        frozen = True
