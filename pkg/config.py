"""
Configuration settings for the parity-psi verification engine.
"""

import logging
import os

# Application settings
APP_TITLE = "parity-psi"
APP_VERSION = "0.1.0"

# Defaults for a run
DEFAULT_RING = os.environ.get("PARITY_PSI_RING", "z")
DEFAULT_MODE = "affine"  # affine | global
DEFAULT_FORMAT = "text"  # text | json | latex
MAX_N = 12

MODES = ["affine", "global"]
FORMATS = ["text", "json", "latex"]
COMMANDS = ["verify", "psi", "grm", "weyl", "chart", "usage"]

# Suite names accepted by --suite for the verify command
SUITES = [
    "scalars",
    "strata",
    "morphcalc",
    "lemmas",
    "pushforwards",
    "shriek-mon",
    "theorem",
    "recursion",
    "usage",
    "monodromy",
    "weyl",
    "geometry",
]


def _read_threads():
    raw = os.environ.get("PARITY_PSI_THREADS", "1")
    try:
        value = int(raw)
    except ValueError:
        logging.getLogger(__name__).warning(
            "PARITY_PSI_THREADS=%r is not an integer, using 1", raw
        )
        return 1
    return max(1, value)


# Worker pool
WORKER_THREADS = _read_threads()

# Export settings
EXPORT_DIR = os.environ.get("PARITY_PSI_EXPORT_DIR", "exports")

# Logging
LOG_LEVEL = os.environ.get("PARITY_PSI_LOG_LEVEL", "WARNING").upper()
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

# Rendering
# diagrams with at least LATEX_TALL_ROWS rows get the wider row separation and a steeper bend
LATEX_ROW_SEP = "large"
LATEX_TALL_ROWS = 4
LATEX_BEND = 60
LATEX_TALL_BEND = 80
