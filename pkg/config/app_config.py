from pathlib import Path
from typing import Literal

import yaml
from pydantic import BaseModel, Field, model_validator

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent / "config.yaml"


class AppConfigModel(BaseModel):
    """
    Pydantic model for validating application settings from YAML.
    """

    name: str = Field(..., description="Application name")
    version: str = Field(..., description="Application version")


class GridConfigModel(BaseModel):
    """
    Pydantic model for a log-uniform grid x = exp(t), t in [t_min, t_max].
    """

    t_min: float = Field(-12.0, description="Left end of the t interval")
    t_max: float = Field(12.0, description="Right end of the t interval")
    n: int = Field(1024, ge=16, description="Number of nodes")

    @model_validator(mode="after")
    def check_interval(self):
        if not self.t_min < self.t_max:
            raise ValueError(
                f"t_min must be smaller than t_max, got [{self.t_min}, {self.t_max}]"
            )
        return self


class TolerancesModel(BaseModel):
    """
    Named numerical thresholds. Every value must be strictly positive.
    """

    boundary: float = 1e-12
    coefficient: float = 1e-4
    membership: float = 1e-4
    stability: float = 0.05
    growth: float = 0.20
    green_residual: float = 1e-3
    form: float = 1e-6
    correlation: float = 0.99
    bessel_precondition: float = 1e-2

    @model_validator(mode="after")
    def check_positive(self):
        for name, value in self.model_dump().items():
            if not value > 0:
                raise ValueError(f"Tolerance '{name}' must be positive, got {value}")
        return self


class RunConfigModel(BaseModel):
    """
    Run-level options shared by the CLI and the HTTP layer.
    """

    output_format: Literal["json", "csv"] = "json"
    seed: int = Field(20240101, description="Seed for randomized suites")


class ConfigModel(BaseModel):
    """
    Root Pydantic model for validating the entire configuration file.
    """

    app: AppConfigModel
    grid: GridConfigModel = GridConfigModel()
    tolerances: TolerancesModel = TolerancesModel()
    run: RunConfigModel = RunConfigModel()


def load_config(file_path=DEFAULT_CONFIG_PATH) -> ConfigModel:
    """
    Reads and validates YAML configuration file using Pydantic.

    Args:
        file_path (str | Path): Path to the YAML config file.

    Returns:
        ConfigModel: Validated configuration model.
    """
    with open(file_path, "r") as file:
        raw_config = yaml.safe_load(file)
    return ConfigModel(**raw_config)
