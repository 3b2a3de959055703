"""Run configuration: flat ``key = value`` text parsed into a validated model."""

import hashlib
import json
import logging
import os
import re
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, ValidationError, field_validator

from .errors import ConfigError
from .manifest import SCATTER_SCHEDULE

load_dotenv()

logger = logging.getLogger(__name__)

THREADS_ENV = "HARTREE_LAB_THREADS"

_INTEGER_OR_RATIO = re.compile(r"^[+-]?\d+(/\d+)?$")
_DECIMAL = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")

COMMANDS = ("gate", "scan", "verify", "simulate", "picard", "scatter", "depend")

# Keys a config file must spell out for each subcommand
REQUIRED_KEYS: Dict[str, Tuple[str, ...]] = {
    "gate": ("n", "s", "alpha", "b"),
    "scan": ("n", "s"),
    "verify": ("suite",),
    "simulate": ("n", "s", "alpha", "b", "points", "half_width", "dt", "horizon"),
    "picard": ("n", "s", "alpha", "b", "points", "half_width", "horizon"),
    "scatter": ("n", "s", "alpha", "b", "points", "half_width"),
    "depend": ("n", "s", "alpha", "b", "points", "half_width", "horizon"),
}

VERIFY_SUITES = ("identities", "holder", "hls", "sobolev", "strichartz")


def parse_rational(text: str) -> Fraction:
    """Parse ``num/den`` or a terminating decimal into an exact Fraction.

    Raises:
        ValueError: If the text is neither form or has a zero denominator
    """
    token = text.strip()
    if not (_INTEGER_OR_RATIO.match(token) or _DECIMAL.match(token)):
        raise ValueError(f"malformed rational {text!r}")
    try:
        return Fraction(token)
    except ZeroDivisionError as e:
        raise ValueError(f"zero denominator in {text!r}") from e


def _to_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("boolean is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        # Floats only reach here from code, never from config text
        return Fraction(repr(value))
    if isinstance(value, str):
        return parse_rational(value)
    raise ValueError(f"cannot convert {value!r} to a rational")


class RunConfig(BaseModel):
    """Validated configuration for one CLI run.

    Rational fields hold exact ``Fraction`` values; grid sizes are integers.
    """

    model_config = ConfigDict(extra="forbid", arbitrary_types_allowed=True, frozen=True)

    command: str = "gate"
    # Parameter point
    n: int = 3
    s: Fraction = Fraction(0)
    alpha: Fraction = Fraction(2)
    b: Fraction = Fraction(1, 2)
    lam: int = 1
    # Grid and time stepping
    points: int = 32
    half_width: Fraction = Fraction(8)
    dt: Fraction = Fraction(1, 1000)
    horizon: Fraction = Fraction(1)
    save_every: int = 10
    amplitude: Fraction = Fraction(1, 10)
    seed: int = 0
    diagnostics: List[str] = ["mass", "energy"]
    # Space-time exponents; None means the gate's sampled pair
    q: Optional[Fraction] = None
    r: Optional[Fraction] = None
    # Picard / dependence / scattering
    iteration_cap: int = 8
    picard_nodes: int = 21
    epsilon: Fraction = Fraction(1, 10)
    perturbations: List[Fraction] = [Fraction(1, 100), Fraction(1, 1000), Fraction(1, 10000)]
    checkpoints: int = int(SCATTER_SCHEDULE["checkpoints"])
    first_checkpoint: Fraction = SCATTER_SCHEDULE["first_checkpoint"]
    # Scan grid
    alpha_min: Fraction = Fraction(1, 2)
    alpha_max: Fraction = Fraction(5, 2)
    alpha_steps: int = 10
    b_min: Fraction = Fraction(1, 20)
    b_max: Fraction = Fraction(1)
    b_steps: int = 10
    # Verify
    suite: str = "identities"
    # Output
    out: Optional[str] = None

    @field_validator(
        "s", "alpha", "b", "half_width", "dt", "horizon", "amplitude", "epsilon",
        "first_checkpoint", "alpha_min", "alpha_max", "b_min", "b_max",
        mode="before",
    )
    @classmethod
    def _rational(cls, value):
        return _to_fraction(value)

    @field_validator("q", "r", mode="before")
    @classmethod
    def _optional_rational(cls, value):
        if value is None:
            return None
        return _to_fraction(value)

    @field_validator("perturbations", mode="before")
    @classmethod
    def _rational_list(cls, value):
        if isinstance(value, str):
            value = [v for v in value.split(",") if v.strip()]
        return [_to_fraction(v) for v in value]

    @field_validator("diagnostics", mode="before")
    @classmethod
    def _name_list(cls, value):
        if isinstance(value, str):
            value = [v.strip() for v in value.split(",") if v.strip()]
        return list(value)

    @field_validator("command")
    @classmethod
    def _known_command(cls, value):
        if value not in COMMANDS:
            raise ValueError(f"unknown command {value!r}; expected one of {', '.join(COMMANDS)}")
        return value

    @field_validator("suite")
    @classmethod
    def _known_suite(cls, value):
        if value not in VERIFY_SUITES:
            raise ValueError(f"unknown suite {value!r}; expected one of {', '.join(VERIFY_SUITES)}")
        return value

    @field_validator("lam")
    @classmethod
    def _sign(cls, value):
        if value not in (-1, 0, 1):
            raise ValueError("lam must be -1 (focusing), +1 (defocusing) or 0 (linear control)")
        return value

    @field_validator("n")
    @classmethod
    def _dimension(cls, value):
        if value < 3:
            raise ValueError("dimension n must be at least 3")
        return value

    @field_validator("points")
    @classmethod
    def _power_of_two(cls, value):
        if value < 8 or value & (value - 1):
            raise ValueError("points must be a power of two and at least 8")
        return value

    def canonical_json(self) -> str:
        """Canonical JSON used for hashing; Fractions are written as strings."""
        data = {}
        for key, value in self.model_dump().items():
            if isinstance(value, Fraction):
                value = str(value)
            elif isinstance(value, list):
                value = [str(v) if isinstance(v, Fraction) else v for v in value]
            data[key] = value
        return json.dumps(data, sort_keys=True, separators=(",", ":"))

    def config_hash(self) -> str:
        return hashlib.sha256(self.canonical_json().encode("utf-8")).hexdigest()


def _split_line(raw: str, line_no: int) -> Optional[Tuple[str, str]]:
    text = raw.split("#", 1)[0].strip()
    if not text:
        return None
    if "=" not in text:
        raise ConfigError(f"expected 'key = value', got {text!r}", line=line_no)
    key, value = (part.strip() for part in text.split("=", 1))
    if not key:
        raise ConfigError("empty key", line=line_no)
    return key, value


def parse_config(text: str, command: Optional[str] = None) -> RunConfig:
    """Parse configuration text into a RunConfig.

    Args:
        text: Flat ``key = value`` lines; ``#`` starts a comment
        command: Subcommand whose required keys must be present; defaults to
            the ``command`` key of the text, if any

    Returns:
        Validated configuration

    Raises:
        ConfigError: Unknown key, malformed value, duplicate or missing key,
            with the offending line number
    """
    values: Dict[str, str] = {}
    lines: Dict[str, int] = {}
    raw_lines = text.splitlines()
    for line_no, raw in enumerate(raw_lines, start=1):
        parsed = _split_line(raw, line_no)
        if parsed is None:
            continue
        key, value = parsed
        if key not in RunConfig.model_fields:
            raise ConfigError(f"unknown key {key!r}", line=line_no)
        if key in values:
            raise ConfigError(f"duplicate key {key!r}", line=line_no)
        values[key] = value
        lines[key] = line_no

    command = command or values.get("command")
    if command is not None:
        values.setdefault("command", command)
        end_line = len(raw_lines) + 1
        for key in REQUIRED_KEYS.get(command, ()):
            if key not in values:
                raise ConfigError(f"missing required key {key!r} for {command}", line=end_line)

    try:
        config = RunConfig(**values)
    except ValidationError as e:
        first = e.errors()[0]
        key = str(first["loc"][0]) if first.get("loc") else None
        message = first.get("msg", str(e))
        raise ConfigError(f"{key}: {message}" if key else message, line=lines.get(key)) from e

    logger.debug("Parsed config for %s (hash %s)", config.command, config.config_hash()[:12])
    return config


def thread_count() -> int:
    """Worker cap from ``HARTREE_LAB_THREADS``; defaults to the CPU count."""
    raw = os.getenv(THREADS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            logger.warning("Ignoring non-integer %s=%r", THREADS_ENV, raw)
    return max(1, os.cpu_count() or 1)
