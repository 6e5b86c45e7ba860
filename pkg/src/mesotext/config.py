"""Run configuration shared by every pipeline stage."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from .features import ALL_MEASUREMENTS
from .mesonet import DEFAULT_K_VALUES
from .textproc import DEFAULT_DELTA


class ConfigError(ValueError):
    pass


def parse_k_list(text: str) -> tuple[float, ...]:
    """``start:stop:step`` (inclusive stop) or a comma-separated list."""
    text = text.strip()
    try:
        if ":" in text:
            start, stop, step = (float(p) for p in text.split(":"))
            if step <= 0 or stop < start:
                raise ConfigError(f"bad k range {text!r}")
            n = int(round((stop - start) / step))
            values = [start + i * step for i in range(n + 1) if start + i * step <= stop + 1e-9]
        else:
            values = [float(p) for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise ConfigError(f"cannot parse k list {text!r}: {exc}") from None
    if not values or any(v <= 0 for v in values):
        raise ConfigError(f"k values must be positive: {text!r}")
    return tuple(sorted(set(values)))


@dataclass
class RunConfig:
    manifest: str = ""
    delta: int = DEFAULT_DELTA
    k_values: tuple[float, ...] = DEFAULT_K_VALUES
    measurements: tuple[str, ...] = ALL_MEASUREMENTS
    classifier: str = "both"
    seed: int = 0
    out: str = "runs/default"
    stopwords: str | None = None
    lemmas: str | None = None
    cache_dir: str | None = None
    books_dir: str | None = None
    jobs: int = 1
    n_trees: int = 50
    c_param: float = 1.0
    top_n: int = 20
    render_k: float = 10.0
    layout_iterations: int = 1000
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        self.k_values = tuple(float(k) for k in self.k_values)
        self.measurements = tuple(self.measurements)
        if self.delta < 1:
            raise ConfigError("delta must be >= 1")
        if self.classifier not in ("svm", "rf", "both"):
            raise ConfigError(f"unknown classifier {self.classifier!r}")
        unknown = set(self.measurements) - set(ALL_MEASUREMENTS)
        if unknown:
            raise ConfigError(f"unknown measurements: {', '.join(sorted(unknown))}")

    @property
    def classifiers(self) -> tuple[str, ...]:
        return ("rf", "svm") if self.classifier == "both" else (self.classifier,)

    @property
    def out_dir(self) -> Path:
        return Path(self.out)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        data = json.loads(text)
        known = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in data.items() if k in known})
