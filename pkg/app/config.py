import logging
import os
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

load_dotenv()

BUNDLED_NETWORK_DIR = Path(__file__).parent / "data" / "networks"

# Exhaustive enumeration is refused above this many switches
ENUMERATION_HARD_CAP = 20

LOG_LEVELS = {"CRITICAL", "ERROR", "WARNING", "INFO", "DEBUG"}


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}")


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return float(raw)
    except ValueError:
        raise ValueError(f"{name} must be a number, got {raw!r}")


class Settings:
    """Process-wide defaults, read from the environment (or a .env file)."""

    def __init__(self):
        self.DEFAULT_BUDGET: int = _env_int("FEEDER_DEFAULT_BUDGET", 1000)
        self.DEFAULT_SEED: int = _env_int("FEEDER_DEFAULT_SEED", 0)
        self.PF_TOLERANCE: float = _env_float("FEEDER_PF_TOLERANCE", 1e-6)
        self.PF_MAX_ITERATIONS: int = _env_int("FEEDER_PF_MAX_ITERATIONS", 100)
        self.MESH_RADIUS_CAP: int = _env_int("FEEDER_MESH_RADIUS_CAP", 2)
        self.ENUMERATION_CAP: int = _env_int("FEEDER_ENUMERATION_CAP", ENUMERATION_HARD_CAP)
        self.DATA_DIR: Path = Path(os.getenv("FEEDER_DATA_DIR", str(BUNDLED_NETWORK_DIR)))
        self.OUTPUT_DIR: Path = Path(os.getenv("FEEDER_OUTPUT_DIR", "output"))
        self.LOG_LEVEL: str = os.getenv("FEEDER_LOG_LEVEL", "WARNING").upper()

        if self.DEFAULT_BUDGET < 1:
            raise ValueError("FEEDER_DEFAULT_BUDGET must be at least 1")
        if not 0 <= self.DEFAULT_SEED < 2 ** 64:
            raise ValueError("FEEDER_DEFAULT_SEED must fit in an unsigned 64-bit integer")
        if self.PF_TOLERANCE <= 0:
            raise ValueError("FEEDER_PF_TOLERANCE must be positive")
        if self.PF_MAX_ITERATIONS < 1:
            raise ValueError("FEEDER_PF_MAX_ITERATIONS must be at least 1")
        if self.MESH_RADIUS_CAP < 1:
            raise ValueError("FEEDER_MESH_RADIUS_CAP must be at least 1")
        if not 1 <= self.ENUMERATION_CAP <= ENUMERATION_HARD_CAP:
            raise ValueError(f"FEEDER_ENUMERATION_CAP must be between 1 and {ENUMERATION_HARD_CAP}")
        if self.LOG_LEVEL not in LOG_LEVELS:
            raise ValueError(f"FEEDER_LOG_LEVEL is not a logging level: {self.LOG_LEVEL}")


def configure_logging(level: Optional[str] = None) -> None:
    """Send library logs to stderr at the given level (defaults to FEEDER_LOG_LEVEL)."""
    level = (level or settings.LOG_LEVEL).upper()
    root = logging.getLogger("app")
    root.setLevel(level)
    if not any(getattr(h, "_feeder_handler", False) for h in root.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s"))
        handler._feeder_handler = True
        root.addHandler(handler)


settings = Settings()
