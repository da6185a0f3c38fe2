# path: dunkl/utils.py
import logging
import sys
from typing import Any


LOGGER_NAME = "dunkl"
_logger = logging.getLogger(LOGGER_NAME)


def configure_logging(level: int = logging.INFO) -> None:
    """Attach a timestamped stderr handler once."""
    if not _logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(
            logging.Formatter("[%(asctime)s] %(message)s", datefmt="%Y-%m-%d %H:%M:%S")
        )
        _logger.addHandler(handler)
    _logger.setLevel(level)


def log(*args: Any, level: int = logging.INFO) -> None:
    """Very simple logger: joins args like print()."""
    if _logger.isEnabledFor(level):
        _logger.log(level, " ".join(str(a) for a in args))


# Default configuration

# group generation
TOL_ROOT = 1e-10
TOL_GROUP = 1e-10
MAX_GROUP_ORDER = 1024

# grids
RANK1_NODES = 2048
RANK1_HALF_WIDTH = 20.0
PLANE_NODES = 256
PLANE_HALF_WIDTH = 10.0
MIN_BALL_NODES = 8
TAIL_FRACTION = 0.9

# kernel series
TOL_SERIES = 1e-14
MAX_SERIES_TERMS = 512
SERIES_RADIUS = 8.0
GAUSSIAN_TAIL_GUARD = 1e-12

# translations
TOL_SUPPORT = 1e-6
FLOOR_SUPPORT = 1e-3
ROESLER_NODES = 200

# riesz
RIESZ_EPS = 1e-2
RIESZ_OUTER_REACH = 2.0  # multiples of the half diagonal sqrt(N) L
SPECTRUM_CHUNK = 512
HEAT_EPS = 1e-4
HEAT_MAX = 1e3
CERT_MAX_ORDER = 8
CERT_SHELL_FRACTION = 0.1
CERT_TOL = 1e-8
INNER_REFINE_CELLS = 4
INNER_REFINE_FACTOR = 32

# bmo
BMO_CENTERS_PER_AXIS = 9
BMO_RESOLVED_CELLS = 8
STABILITY_TOL = 0.15
SPLIT_TOL = 0.10

DEFAULT_SEED = 0
