"""Configuration module for momangle.

This module handles the configuration of momangle through environment variables.
"""

import os
from enum import Enum

from pydantic import BaseModel, Field, field_validator, model_validator

# Faces are stored as bitmasks of Python ints, but full enumeration is 2^m.
HARD_MAX_M = 32


class CheckName(str, Enum):
    """Enumeration of the duality checks momangle can run.

    This provides a more readable way to select checks than passing class names around.
    """

    ALEXANDER = "alexander"
    GHS = "ghs"
    PD = "pd"
    GORENSTEIN = "gorenstein"

    @classmethod
    def parse_list(cls, value: str) -> list["CheckName"]:
        """Parse a comma-separated list of check names.

        Args:
            value: Names such as "alexander,ghs". The word "all" selects every check.

        Returns:
            The checks in the order given, without duplicates.
        """
        names = [token.strip().lower() for token in value.split(",") if token.strip()]
        if "all" in names:
            return list(cls)
        checks: list[CheckName] = []
        for name in names:
            check = cls(name)
            if check not in checks:
                checks.append(check)
        return checks


class MomangleConfig(BaseModel):
    """Configuration class for momangle.

    Attributes:
        max_m: Largest vertex count accepted by the Hochster decomposition (2^m subset computations).
        direct_max_m: Largest vertex count accepted by the direct cellular chain complex of Z_K and by the
            Poincaré duality certificate.
        iso_max_vertices: Largest number of non-ghost vertices the isomorphism search accepts.
        workers: Number of processes used for per-subset computations. 1 means in-process.
        checks: Duality checks run by default.
    """

    max_m: int = Field(default=16, json_schema_extra={"env": "MOMANGLE_MAX_M"})
    direct_max_m: int = Field(default=10, json_schema_extra={"env": "MOMANGLE_DIRECT_MAX_M"})
    iso_max_vertices: int = Field(default=12, json_schema_extra={"env": "MOMANGLE_ISO_MAX_VERTICES"})
    workers: int = Field(default=1, json_schema_extra={"env": "MOMANGLE_WORKERS"})
    checks: list[CheckName] = Field(
        default_factory=lambda: list(CheckName),
        json_schema_extra={"env": "MOMANGLE_CHECKS"},
    )

    @field_validator("max_m", "direct_max_m", "iso_max_vertices")
    def validate_cap(cls, v):
        """Validate that caps are positive and within the bitmask ceiling"""
        if not 0 < v <= HARD_MAX_M:
            raise ValueError(f"Cap must be in range 1-{HARD_MAX_M}, got {v}")
        return v

    @field_validator("workers")
    def validate_workers(cls, v):
        """Validate that at least one worker is requested"""
        if v < 1:
            raise ValueError("workers must be at least 1")
        return v

    @model_validator(mode="after")
    def validate_caps_order(self):
        """The direct oracle cannot accept more vertices than the Hochster decomposition"""
        if self.direct_max_m > self.max_m:
            raise ValueError(f"direct_max_m ({self.direct_max_m}) must not exceed max_m ({self.max_m})")
        return self

    @classmethod
    def from_env(cls):
        """Create a config instance from environment variables."""
        max_m = int(os.getenv("MOMANGLE_MAX_M", "16"))
        direct_max_m = int(os.getenv("MOMANGLE_DIRECT_MAX_M", str(min(10, max_m))))
        iso_max_vertices = int(os.getenv("MOMANGLE_ISO_MAX_VERTICES", "12"))
        workers = int(os.getenv("MOMANGLE_WORKERS", "1"))

        checks_str = os.getenv("MOMANGLE_CHECKS", "all")
        try:
            checks = CheckName.parse_list(checks_str)
        except ValueError:
            checks = list(CheckName)

        return cls(
            max_m=max_m,
            direct_max_m=direct_max_m,
            iso_max_vertices=iso_max_vertices,
            workers=workers,
            checks=checks,
        )


DEFAULT_CONFIG = MomangleConfig()
