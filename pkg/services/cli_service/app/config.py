"""Application configuration module."""
import os

VERSION = "0.1.0"

# Thread cap for enumeration, tower search and per-piece limits; unset means os.cpu_count()
THREADS = os.getenv("BERS_HORIZON_THREADS")

# Logging overrides for bers_config.yml
LOG_DIR = os.getenv("BERS_HORIZON_LOG_DIR", "./logs")
LOG_LEVEL = os.getenv("BERS_HORIZON_LOG_LEVEL", "INFO")


def environment() -> dict:
    """Effective environment values, echoed in the meta block of every report."""
    return {
        "BERS_HORIZON_THREADS": os.getenv("BERS_HORIZON_THREADS", THREADS),
        "BERS_HORIZON_LOG_DIR": os.getenv("BERS_HORIZON_LOG_DIR", LOG_DIR),
        "BERS_HORIZON_LOG_LEVEL": os.getenv("BERS_HORIZON_LOG_LEVEL", LOG_LEVEL),
    }
