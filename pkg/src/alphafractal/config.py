"""JSON problem configs.

::

    {
      "interval": [0, 1],
      "partition": {"uniform": 5},
      "f": "x^3 + x",
      "b": "2*x",
      "alpha": [0.2, -0.3, 0.5, 0.3, 0.4]
    }

``partition`` may also be an explicit list of knots whose ends match
``interval``.  Unknown keys are rejected.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .core import AlphaFractalSpec, make_spec
from .exceptions import SpecError

__all__ = ["SpecConfig", "ConfigError", "load_config", "save_config"]

_KEYS = ("interval", "partition", "f", "b", "alpha")


class ConfigError(SpecError):
    pass


@dataclass(frozen=True)
class SpecConfig:
    interval: tuple
    partition: object  # tuple of knots or {"uniform": N}
    f: str
    b: str
    alpha: tuple

    @classmethod
    def from_dict(cls, data):
        try:
            return cls._from_dict(data)
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"malformed config: {exc}") from exc

    @classmethod
    def _from_dict(cls, data):
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        unknown = sorted(set(data) - set(_KEYS))
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        missing = [k for k in _KEYS if k not in data]
        if missing:
            raise ConfigError(f"missing config keys: {', '.join(missing)}")

        interval = data["interval"]
        if not (isinstance(interval, list) and len(interval) == 2):
            raise ConfigError("interval must be a list [x0, xN]")
        part = data["partition"]
        if isinstance(part, dict):
            if set(part) != {"uniform"} or not isinstance(part["uniform"], int) or isinstance(part["uniform"], bool):
                raise ConfigError('partition object must be {"uniform": N} with integer N')
            partition = {"uniform": part["uniform"]}
        elif isinstance(part, list):
            partition = tuple(float(k) for k in part)
        else:
            raise ConfigError("partition must be a knot list or {\"uniform\": N}")
        for key in ("f", "b"):
            if not isinstance(data[key], str):
                raise ConfigError(f"{key} must be an expression string")
        if not isinstance(data["alpha"], list):
            raise ConfigError("alpha must be a list of numbers")
        return cls(
            interval=(float(interval[0]), float(interval[1])),
            partition=partition,
            f=data["f"],
            b=data["b"],
            alpha=tuple(float(a) for a in data["alpha"]),
        )

    def to_dict(self):
        part = dict(self.partition) if isinstance(self.partition, dict) else list(self.partition)
        return {
            "interval": list(self.interval),
            "partition": part,
            "f": self.f,
            "b": self.b,
            "alpha": list(self.alpha),
        }

    @property
    def is_uniform(self):
        return isinstance(self.partition, dict)

    def to_spec(self) -> AlphaFractalSpec:
        if self.is_uniform:
            return make_spec(self.f, self.b, self.alpha,
                             uniform=self.partition["uniform"], interval=self.interval)
        knots = self.partition
        if (knots[0], knots[-1]) != tuple(self.interval):
            raise ConfigError(
                f"partition ends {knots[0]!r}, {knots[-1]!r} do not match interval "
                f"{list(self.interval)}"
            )
        return make_spec(self.f, self.b, self.alpha, knots=knots)

    @classmethod
    def from_spec(cls, spec: AlphaFractalSpec, uniform: bool = False):
        # + 0.0 turns -0.0 into 0.0
        partition = {"uniform": spec.n} if uniform else tuple(k + 0.0 for k in spec.knots)
        return cls(
            interval=tuple(x + 0.0 for x in spec.interval),
            partition=partition,
            f=str(spec.f),
            b=str(spec.b),
            alpha=tuple(spec.alpha.alphas),
        )


def load_config(path) -> SpecConfig:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from exc
    return SpecConfig.from_dict(data)


def save_config(config: SpecConfig, path) -> None:
    Path(path).write_text(json.dumps(config.to_dict(), indent=2) + "\n")
