"""Settings loader for bers-horizon.

Reads services/config/bers_config.yml with pathlib + yaml, validates it into
pydantic models and caches the result.
"""
from functools import lru_cache
from pathlib import Path
from typing import Optional

import yaml
from pydantic import BaseModel


class LimitsSettings(BaseModel):
    i_max: int = 20
    tolerance: float = 1e-3
    l_max: Optional[float] = None
    max_modulus: int = 4
    tail_window: int = 3
    dart_budget: int = 400000


class StableSettings(BaseModel):
    power_bound: int = 50
    convergence: float = 1e-12
    max_iterations: int = 100000
    approximant_budget: int = 60000
    invariance_tolerance: float = 1e-9


class EnumerationSettings(BaseModel):
    weight_cap: int = 2
    max_invariants: int = 20000


class BoundarySettings(BaseModel):
    approximation_tolerance: float = 1e-6
    approximation_steps: int = 6


class LoggingSettings(BaseModel):
    level: str = "INFO"
    base_dir: str = "./logs"


class BersSettings(BaseModel):
    limits: LimitsSettings = LimitsSettings()
    demo: LimitsSettings = LimitsSettings(i_max=8)
    stable: StableSettings = StableSettings()
    enumeration: EnumerationSettings = EnumerationSettings()
    boundary: BoundarySettings = BoundarySettings()
    logging: LoggingSettings = LoggingSettings()


def default_config_path() -> Path:
    # services/shared/bh_utilities/settings.py -> services/config/bers_config.yml
    return Path(__file__).parent.parent.parent / "config" / "bers_config.yml"


def load_settings_from(config_path: Path) -> BersSettings:
    """Load settings from an explicit YAML file."""
    try:
        if not config_path.exists():
            raise FileNotFoundError(f"bers config not found at: {config_path}")
        with open(config_path, 'r') as file:
            raw = yaml.safe_load(file) or {}
        return BersSettings.model_validate(raw)
    except Exception as e:
        raise RuntimeError(f"Failed to load bers configuration: {e}")


@lru_cache(maxsize=1)
def load_settings() -> BersSettings:
    """Load and cache the repository settings."""
    return load_settings_from(default_config_path())
