"""Defaults and environment-driven settings.

Numeric defaults are plain module constants so services can import them
directly. The only value read from the environment is the default thread
count for Monte Carlo sampling (`SUBFREE_THREADS`).
"""
import os
from dataclasses import dataclass
from typing import Mapping, Optional

from subfree.errors import SettingsError

# graph-core
DEFAULT_TOLERANCE = 1e-12
DEFAULT_MAX_ITER = 100_000

# power-series / free-prob
DEFAULT_SERIES_ORDER = 16
MAX_SERIES_ORDER = 32
FLOAT_TOLERANCE = 1e-12
CONSISTENCY_RTOL = 1e-9

# pairing-oracle
DEFAULT_WORD_CAP = 16
BRUTE_FORCE_CAP = 10

# matrix-mc
DEFAULT_MC_DIM = 400
DEFAULT_MC_SAMPLES = 100
DEFAULT_MC_KMAX = 4
DEFAULT_SEED = 20240601
DEFAULT_HIST_BINS = 60

# output
DISPLAY_DIGITS = 12

THREADS_ENV = "SUBFREE_THREADS"


@dataclass(frozen=True)
class Settings:
    threads: int = 1


def load_settings(environ: Optional[Mapping[str, str]] = None) -> Settings:
    env = os.environ if environ is None else environ
    raw = env.get(THREADS_ENV, "1")
    try:
        threads = int(raw)
    except ValueError:
        raise SettingsError(f"{THREADS_ENV} must be an integer, got {raw!r}")
    if threads < 1:
        raise SettingsError(f"{THREADS_ENV} must be >= 1, got {threads}")
    return Settings(threads=threads)
