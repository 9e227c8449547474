"""
Run manifest written next to every output set.
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class RunManifest(BaseModel):
    """Subcommand, fully resolved configuration and the files it produced."""
    subcommand: str
    version: str
    config: Dict[str, Any]
    outputs: List[str] = Field(default_factory=list)
    wall_seconds: float = 0.0
    steps: Optional[int] = None

    class Config:
        extra = 'forbid'
