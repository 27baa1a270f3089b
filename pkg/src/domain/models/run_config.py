"""Configuration d'une execution CLI (validee par pydantic) et son resultat."""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

import sympy as sp
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.config import settings
from src.domain.enums import Command, ExportFormat, Side
from src.domain.exceptions import ConfigError

VERSION = "0.1.0"


def parse_angle(value: Any) -> float:
    """Accepte un nombre ou une expression en pi ("pi", "pi/2", "3*pi/4")."""
    if isinstance(value, (int, float)):
        return float(value)
    try:
        return float(sp.sympify(str(value), locals={"pi": sp.pi}))
    except (sp.SympifyError, TypeError) as exc:
        raise ValueError(f"angle illisible: {value!r}") from exc


class RunConfig(BaseModel):
    """
    Parametres d'une commande. Les valeurs par defaut sont reprises dans
    l'en-tete de chaque artefact (provenance complete).
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    command: Command
    N: int = Field(1, ge=1)
    hbar: float = Field(0.5, gt=0)
    hbar_sweep: list[float] = Field(default_factory=list)
    theta: float = 0.0
    theta_sweep: list[float] = Field(default_factory=list)
    orders: int = Field(settings.QUANTIZE_DW_ORDER, ge=0)
    bands: int = Field(2, ge=1)
    airy: bool = False
    side: Side = Side.MEDIAN
    energy: float = 1.0
    arg_hbar: float = 0.1
    window_periods: int = Field(1, ge=1, le=4)
    level: int = Field(0, ge=0)
    max_order: int = Field(24, ge=9)
    ray_angle: float = Field(0.1, gt=0)
    sector_order: int = Field(6, ge=1)
    spot_checks: int = Field(100, ge=0)
    seed: int = 0
    out: str = settings.EWKB_OUTPUT_DIR
    format: ExportFormat = ExportFormat.CSV

    @field_validator("theta", "arg_hbar", mode="before")
    @classmethod
    def _angle(cls, value):
        return parse_angle(value)

    @field_validator("theta_sweep", mode="before")
    @classmethod
    def _angles(cls, value):
        if isinstance(value, str):
            value = [v for v in value.split(",") if v.strip()]
        return [parse_angle(v) for v in value]

    @field_validator("hbar_sweep", mode="before")
    @classmethod
    def _hbars(cls, value):
        if isinstance(value, str):
            value = [float(v) for v in value.split(",") if v.strip()]
        return value

    @model_validator(mode="after")
    def _consistency(self) -> RunConfig:
        if any(h <= 0 for h in self.hbar_sweep):
            raise ValueError("toutes les valeurs de hbar_sweep doivent etre > 0")
        if abs(self.arg_hbar) >= math.pi / 2:
            raise ValueError("arg_hbar doit etre dans (-pi/2, pi/2)")
        if self.ray_angle >= math.pi / 2:
            raise ValueError("ray_angle doit etre dans (0, pi/2)")
        if self.format is ExportFormat.SVG and self.command is not Command.STOKES_GRAPH:
            raise ValueError("le format svg est reserve a la commande stokes-graph")
        return self

    @property
    def hbars(self) -> list[float]:
        return list(self.hbar_sweep) or [self.hbar]

    @property
    def thetas(self) -> list[float]:
        return list(self.theta_sweep) or [self.theta]

    def header(self) -> dict[str, Any]:
        """En-tete de provenance: configuration complete et version."""
        header = self.model_dump(mode="json")
        header["version"] = VERSION
        return header

    def artifact_path(self, stem: str) -> Path:
        return Path(self.out) / f"{stem}_N{self.N}"

    @classmethod
    def from_sources(cls, config_path: Optional[str], overrides: dict[str, Any]) -> RunConfig:
        """
        Fusion fichier TOML puis options CLI (les options gagnent).

        Raises:
            ConfigError: Si le fichier est illisible
            pydantic.ValidationError: Si le schema n'est pas respecte
        """
        values: dict[str, Any] = {}
        if config_path:
            try:
                with open(config_path, "rb") as handle:
                    values.update(tomllib.load(handle))
            except (OSError, tomllib.TOMLDecodeError) as exc:
                raise ConfigError(f"fichier de configuration {config_path}: {exc}") from exc
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)


@dataclass
class RunResult:
    """Artefacts ecrits et lignes de resume affichees a l'utilisateur."""

    artifacts: list[Path] = field(default_factory=list)
    summary: list[str] = field(default_factory=list)
