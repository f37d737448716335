from pydantic import BaseModel, Field, ValidationError, field_validator
from typing import Optional, Tuple, Union
import yaml
import os
from pathlib import Path

from analysis.interp import DEFAULT_FUEL

# --- Pydantic Models for Config Structure ---

class EvalSettings(BaseModel):
    fuel: int = Field(DEFAULT_FUEL, gt=0)  # step budget per evaluation
    trace: bool = False

class SamplingSettings(BaseModel):
    samples: int = Field(50, gt=0)  # environments per sampled inequality
    seed: int = 0
    certificates: int = Field(500, ge=0)  # generated certificate instances sampled by `fuzz`

class FuzzSettings(BaseModel):
    count: int = Field(1000, ge=0)
    depth: int = Field(6, ge=1)
    seed: int = 0
    shrink_budget: int = Field(200, ge=0)  # candidate terms tried per violation

class SplaySettings(BaseModel):
    max_size: int = Field(64, ge=1)
    trials: int = Field(200, ge=0)
    seed: int = 0
    sequence_length: int = Field(32, ge=0)
    okasaki_limit: int = Field(64, ge=1)

class VerifySettings(BaseModel):
    max_bits: int = Field(8, ge=0)  # bit lists enumerated up to this length
    max_nat: int = Field(64, ge=0)

class SolveSettings(BaseModel):
    sizes: Tuple[int, int] = (0, 100)

    @field_validator("sizes")
    @classmethod
    def _ordered(cls, v):
        lo, hi = v
        if lo < 0 or hi < lo:
            raise ValueError(f"size range must satisfy 0 <= lo <= hi, got {lo}..{hi}")
        return v

class AppConfig(BaseModel):
    eval: EvalSettings = Field(default_factory=EvalSettings)
    sampling: SamplingSettings = Field(default_factory=SamplingSettings)
    fuzz: FuzzSettings = Field(default_factory=FuzzSettings)
    splay: SplaySettings = Field(default_factory=SplaySettings)
    verify: VerifySettings = Field(default_factory=VerifySettings)
    solve: SolveSettings = Field(default_factory=SolveSettings)

# --- Config Loading Function ---

CONFIG_FILENAME = "config.yaml"
TEMPLATE_FILENAME = "config.yaml.template"
FUEL_ENV_VAR = "AMORTFLOW_FUEL"


def apply_env_overrides(config: AppConfig) -> AppConfig:
    """Applies AMORTFLOW_FUEL on top of the file values; a malformed value is ignored."""
    raw = os.environ.get(FUEL_ENV_VAR)
    if raw is None or raw.strip() == "":
        return config
    try:
        fuel = int(raw)
        if fuel <= 0:
            raise ValueError("must be positive")
    except ValueError as e:
        print(f"Warning: Ignoring {FUEL_ENV_VAR}={raw!r}: {e}")
        return config
    config.eval.fuel = fuel
    return config


def load_config(config_path: Union[str, Path] = CONFIG_FILENAME,
                template_path: Optional[Union[str, Path]] = None) -> AppConfig:
    """Loads the analysis configuration from config.yaml, falling back to the template."""
    config_file = Path(config_path)
    if not config_file.is_file():
        template_file = Path(template_path) if template_path else config_file.parent / TEMPLATE_FILENAME
        if template_file.is_file():
            print(f"Warning: '{config_file}' not found. Using defaults from '{template_file}'.")
            config_file = template_file
        else:
            print(f"INFO: Neither '{config_file}' nor '{template_file}' found. Using built-in defaults.")
            return apply_env_overrides(AppConfig())

    try:
        with open(config_file, 'r', encoding='utf-8') as f:
            raw_config = yaml.safe_load(f)
        if raw_config is None:
            print(f"Warning: '{config_file}' is empty. Using default configuration.")
            config = AppConfig()
        else:
            config = AppConfig(**raw_config)
        return apply_env_overrides(config)

    except yaml.YAMLError as e:
        print(f"Error parsing YAML file '{config_file}': {e}"); raise
    except ValidationError as e:
        print(f"Configuration validation error in '{config_file}':\n{e}"); raise
