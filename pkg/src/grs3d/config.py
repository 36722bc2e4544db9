"""
Configuration module for grs3d.
Loads environment variables and defines numerical defaults.
"""

import os
import logging

from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        return float(raw)
    except ValueError:
        logger.warning("Ignoring malformed %s=%r, using %s", name, raw, default)
        return default


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning("Ignoring malformed %s=%r, using %s", name, raw, default)
        return default


# Residual acceptance
DEFAULT_TOL: float = _env_float("GRS3D_TOL", 1e-9)

# Exact-constraint and Jacobi checks on floating inputs
CONSTRAINT_TOL: float = 1e-12

# Eigenvalue coincidence when labelling Segre types
SEGRE_TOL: float = _env_float("GRS3D_SEGRE_TOL", 1e-9)

# Curvature predicates, relative to the largest curvature entry
CURVATURE_TOL: float = _env_float("GRS3D_CURVATURE_TOL", 1e-10)
CURVATURE_FLOOR: float = 1e-12

# Solver
DEFAULT_STARTS: int = _env_int("GRS3D_STARTS", 200)
DEFAULT_BOX: float = _env_float("GRS3D_BOX", 10.0)
DEFAULT_MAX_ITERS: int = _env_int("GRS3D_MAX_ITERS", 200)
DEFAULT_DEDUP_RADIUS: float = _env_float("GRS3D_DEDUP_RADIUS", 1e-4)
DEFAULT_WORKERS: int = _env_int("GRS3D_WORKERS", 1)

# Logging
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_LEVEL_STR = os.getenv("LOG_LEVEL", "INFO")

try:
    LOG_LEVEL = getattr(logging, LOG_LEVEL_STR.upper())
except AttributeError:
    LOG_LEVEL = logging.INFO

logging.basicConfig(format=LOG_FORMAT, level=LOG_LEVEL)


def resolve_tol(explicit: float | None = None) -> float:
    """Residual tolerance: explicit value, else GRS3D_TOL read now, else default."""
    if explicit is not None:
        return explicit
    return _env_float("GRS3D_TOL", 1e-9)
