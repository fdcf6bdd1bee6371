"""
Configuration management for numerical tolerances and run settings.

Values come from environment variables, optionally loaded from the .env file
at the project root. Every setting has a default, so an empty environment is
a valid configuration.
"""
import os
from typing import Callable, TypeVar

from dotenv import load_dotenv

from core.paths import paths

# Load environment variables from .env file
env_file = paths.ENV_FILE
load_dotenv(dotenv_path=env_file)

T = TypeVar("T")


def _read(name: str, default: T, cast: Callable[[str], T]) -> T:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    return cast(raw.strip())


class Config:
    """Configuration values loaded from environment variables."""

    @classmethod
    def cluster_tol(cls) -> float:
        """Eigenvalue clustering tolerance used wherever multiplicities matter."""
        return _read("SBKIT_CLUSTER_TOL", 1e-9, float)

    @classmethod
    def sqrt_max_steps(cls) -> int:
        """Step cap of the square-root recursion."""
        return _read("SBKIT_SQRT_MAX_STEPS", 10_000, int)

    @classmethod
    def sqrt_step_tol(cls) -> float:
        """Stop the square-root recursion once a step is this small."""
        return _read("SBKIT_SQRT_STEP_TOL", 1e-12, float)

    @classmethod
    def sup_exact_max_n(cls) -> int:
        """Largest atom count for which sup_distance enumerates all subsets."""
        return _read("SBKIT_SUP_EXACT_MAX_N", 16, int)

    @classmethod
    def upset_enum_max(cls) -> int:
        """Largest catalog size for which up-closed sets are enumerated."""
        return _read("SBKIT_UPSET_ENUM_MAX", 20, int)

    @classmethod
    def log_level(cls) -> str:
        """Logging level name for get_logger."""
        return _read("SBKIT_LOG_LEVEL", "INFO", str.upper)

    @classmethod
    def seed(cls) -> int:
        """Default seed for randomized sweeps."""
        return _read("SBKIT_SEED", 0, int)

    @classmethod
    def validate(cls) -> None:
        """Validate that every configured value parses and is in range."""
        problems = []
        checks = {
            "SBKIT_CLUSTER_TOL": (cls.cluster_tol, lambda v: v > 0),
            "SBKIT_SQRT_MAX_STEPS": (cls.sqrt_max_steps, lambda v: v > 0),
            "SBKIT_SQRT_STEP_TOL": (cls.sqrt_step_tol, lambda v: v > 0),
            "SBKIT_SUP_EXACT_MAX_N": (cls.sup_exact_max_n, lambda v: 0 < v <= 24),
            "SBKIT_UPSET_ENUM_MAX": (cls.upset_enum_max, lambda v: v > 0),
            "SBKIT_LOG_LEVEL": (
                cls.log_level,
                lambda v: v in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"},
            ),
            "SBKIT_SEED": (cls.seed, lambda v: v >= 0),
        }

        for name, (accessor, in_range) in checks.items():
            try:
                if not in_range(accessor()):
                    problems.append(name)
            except ValueError:
                problems.append(name)

        if problems:
            raise ValueError(
                f"Invalid configuration values: {', '.join(problems)}. "
                f"Please fix them in your environment or in {env_file}"
            )
