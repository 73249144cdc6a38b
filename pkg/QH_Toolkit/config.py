"""Runtime configuration for the highest-weight toolkit.

Values are read once from the environment (a local `.env` is merged first)
and exposed as module-level constants. Library functions use them as keyword
defaults; the CLI overrides them per invocation.
"""

import logging
import os

from dotenv import load_dotenv


load_dotenv()

# ─────────────────────────────────────────────
# Configuration
# ─────────────────────────────────────────────
FIELD_CHARACTERISTIC = int(os.getenv("QH_FIELD_CHAR", "5"))
PATH_LENGTH_BOUND = int(os.getenv("QH_PATH_LENGTH_BOUND", "12"))
SEARCH_NODE_BUDGET = int(os.getenv("QH_SEARCH_BUDGET", "1000000"))
RESOLUTION_CAP = int(os.getenv("QH_RESOLUTION_CAP", "32"))
ISO_ENUMERATION_CAP = int(os.getenv("QH_ISO_CAP", str(5 ** 6)))
ISO_RANDOM_TRIALS = int(os.getenv("QH_ISO_TRIALS", "256"))
HOM_ENUMERATION_DIM = int(os.getenv("QH_HOM_ENUM_DIM", "6"))
ASSOC_EXHAUSTIVE_DIM = int(os.getenv("QH_ASSOC_EXHAUSTIVE_DIM", "64"))
ASSOC_SAMPLES = int(os.getenv("QH_ASSOC_SAMPLES", "4096"))
RANDOM_SEED = int(os.getenv("QH_SEED", "20240617"))
N_JOBS = int(os.getenv("QH_JOBS", "1"))

# fuzz corpora
FUZZ_MODULES = int(os.getenv("QH_FUZZ_MODULES", "200"))
FUZZ_MAX_DIM = int(os.getenv("QH_FUZZ_MAX_DIM", "30"))
KERNEL_LEMMA_MODULES = int(os.getenv("QH_KERNEL_LEMMA_MODULES", "50"))
PACK_CHECK_MODULES = int(os.getenv("QH_PACK_CHECK_MODULES", "20"))

LOG_LEVEL = os.getenv("QH_LOG_LEVEL", "WARNING")
LOG_FORMAT = "[%(levelname)s] %(name)s: %(message)s"


def configure_logging(level: str | int | None = None) -> None:
    """Attach a single stream handler to the package logger."""
    root = logging.getLogger("QH_Toolkit")
    if not root.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        root.addHandler(handler)
    root.setLevel(level if level is not None else LOG_LEVEL.upper())
