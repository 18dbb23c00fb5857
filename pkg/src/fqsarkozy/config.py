"""Run-time limits and defaults, optionally loaded from a JSON file."""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass

from .errors import ValidationError

CONFIG_ENV_VAR = "FQSARKOZY_CONFIG"


@dataclass(frozen=True)
class Config:
    max_field: int = 2**16
    max_enumeration: int = 3**12
    max_matrix: int = 4096
    max_vertices: int = 2**12
    support_exhaustive: int = 3**10
    support_samples: int = 2000
    symbolic_terms: int = 200_000
    seed: int = 0
    d_mode: str = "paper"
    output: str = "json"

    def __post_init__(self):
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            if isinstance(value, int) and f.name != "seed" and value <= 0:
                raise ValidationError(f"config limit {f.name} must be positive, got {value}")
        if self.d_mode not in ("paper", "exact"):
            raise ValidationError(f"d_mode must be 'paper' or 'exact', got {self.d_mode!r}")
        if self.output not in ("json", "csv", "pretty"):
            raise ValidationError(f"output must be json, csv or pretty, got {self.output!r}")

    @classmethod
    def from_dict(cls, data: dict) -> "Config":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValidationError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def load(cls, path: str | None = None) -> "Config":
        """Read a config file; falls back to the env var, then to defaults."""
        path = path or os.environ.get(CONFIG_ENV_VAR)
        if not path:
            return cls()
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


DEFAULT = Config()
