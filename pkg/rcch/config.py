"""
config.py — runtime settings for rcch.

Every value is read once from the environment (a local .env is loaded first when
python-dotenv is installed). CLI flags override these per invocation.

Usage:
    from rcch.config import MAX_QUBITS, DEFAULT_BUDGET, setup_logging
"""

import logging
import os

# Load .env early so the CLI and the test-suite see the same settings
try:
    from dotenv import load_dotenv  # type: ignore
    load_dotenv()
except Exception:
    # Without python-dotenv the process environment is used as-is.
    pass

from rcch.errors import ConfigError


# =================================================
# Config
# =================================================
def _getenv(name: str, default: str = "") -> str:
    return (os.getenv(name) or default).strip()


def _getint(name: str, default: str) -> int:
    raw = _getenv(name, default) or default
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}")


MAX_QUBITS = _getint("RCCH_MAX_QUBITS", "12")        # width cap for circuit semantics
DEFAULT_BUDGET = _getint("RCCH_BUDGET", "2000")      # instances per schema before sampling
DEFAULT_SEED = _getint("RCCH_SEED", "0")
ENUM_LIMIT = _getint("RCCH_ENUM_LIMIT", "200000")    # raw assignment space enumerated eagerly
LOG_LEVEL = _getenv("RCCH_LOG_LEVEL", "INFO").upper()

if MAX_QUBITS < 1:
    raise ConfigError(f"RCCH_MAX_QUBITS must be positive, got {MAX_QUBITS}")
if DEFAULT_BUDGET < 1:
    raise ConfigError(f"RCCH_BUDGET must be positive, got {DEFAULT_BUDGET}")


# =================================================
# Logging
# =================================================
def setup_logging(level: str | None = None) -> None:
    """Configure root logging the same way for every entry point."""
    logging.basicConfig(
        level=getattr(logging, (level or LOG_LEVEL), logging.INFO),
        format="%(asctime)s %(levelname)s %(message)s",
    )
