import os
from dataclasses import dataclass, fields, replace
from typing import Any, ClassVar, Dict

from .exceptions import ConfigurationError


@dataclass(frozen=True)
class EngineOptions:
    """
    Tunables shared by the resolution engine and the net-of-conics search.

    Options are resolved in three layers: the defaults below, then environment variables,
    then explicit keyword overrides (the CLI passes its flags as overrides).
    """

    column_budget: int = 20000
    seed: int = 0
    trial_budget: int = 2000
    coefficient_bound: int = 2
    verify_exactness: bool = True

    # Environment variable name -> option name.
    environment: ClassVar[Dict[str, str]] = {
        "POINCARE_COLUMN_BUDGET": "column_budget",
    }

    @classmethod
    def from_env(cls, **overrides: Any) -> "EngineOptions":
        values: Dict[str, Any] = {}
        for variable, option in cls.environment.items():
            raw = os.environ.get(variable)
            if raw is None or raw.strip() == "":
                continue
            try:
                parsed = int(raw)
            except ValueError as e:
                raise ConfigurationError(
                    f"environment variable {variable} must be an integer, got '{raw}'"
                ) from e
            if parsed <= 0:
                raise ConfigurationError(
                    f"environment variable {variable} must be positive, got {parsed}"
                )
            values[option] = parsed

        known = {f.name for f in fields(cls)}
        for key, value in overrides.items():
            if key not in known:
                raise ConfigurationError(f"unknown engine option '{key}'")
            if value is not None:
                values[key] = value

        return replace(cls(), **values)
