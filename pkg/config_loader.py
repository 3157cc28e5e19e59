# ===============================================================
#  File: config_loader.py
#  Description: Configuration loader for Combgraft.
#               Resolves engine caps and logging settings from
#               CLI overrides, environment variables, and
#               settings.py, in that order.
#
#  Author: ac.craft8
#  Created: 2025-06-15
#
#  License: MIT
#  Requirements: settings.py in the working directory.
# ===============================================================

import logging
import os
from dataclasses import dataclass, replace

import settings

logger = logging.getLogger(__name__)

ENV_PREFIX = "COMBGRAFT_"

# ================================
#  Engine Options
# ================================

@dataclass(frozen=True)
class EngineOptions:
    max_terminals: int = 20
    max_edges: int = 20
    max_path_len: int = 12
    relabel_search_cap: int = 50000


# ================================
#  Configuration Loading Functions
# ================================

# ==== Integer setting with environment override ====
def _env_int(name, fallback):
    """Read COMBGRAFT_<name> as a positive int, falling back on bad values"""
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None or not raw.strip():
        return fallback
    try:
        value = int(raw)
    except ValueError:
        logger.error("ERROR: %s%s=%r is not an integer; using %s", ENV_PREFIX, name, raw, fallback)
        return fallback
    if value < 0:
        logger.error("ERROR: %s%s=%r is negative; using %s", ENV_PREFIX, name, raw, fallback)
        return fallback
    return value


# ==== Engine caps ====
def load_engine_options(overrides=None):
    """Build EngineOptions from settings.py, the environment, and explicit overrides"""
    options = EngineOptions(
        max_terminals=_env_int("MAX_T", settings.max_t),
        max_edges=_env_int("MAX_E", settings.max_e),
        max_path_len=_env_int("MAX_PATH_LEN", settings.max_path_len),
        relabel_search_cap=_env_int("RELABEL_SEARCH_CAP", settings.relabel_search_cap),
    )
    if overrides:
        options = replace(options, **{k: v for k, v in overrides.items() if v is not None})
    return options


# ==== Logging ====
def load_log_settings():
    """Return (level name, log file path or None)"""
    level = os.environ.get(ENV_PREFIX + "LOG_LEVEL", settings.log_level).strip().upper()
    if not isinstance(logging.getLevelName(level), int):
        logger.error("ERROR: unknown log level %r; using WARNING", level)
        level = "WARNING"
    log_file = os.environ.get(ENV_PREFIX + "LOG_FILE", settings.log_file).strip()
    return level, log_file or None


DEFAULT_OPTIONS = load_engine_options()
