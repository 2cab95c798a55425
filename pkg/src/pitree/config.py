"""Configuration for pitree."""

import os
from dataclasses import dataclass, field

try:
    from dotenv import load_dotenv

    load_dotenv()
except ImportError:
    pass


def _env_bool(name: str, default: str) -> bool:
    return os.getenv(name, default).lower() in ("true", "1", "yes")


@dataclass
class PitreeConfig:
    """Defaults for materialization, verification and sampling."""

    # Verification / materialization depth
    depth: int = field(default_factory=lambda: int(os.getenv("PITREE_DEPTH", "6")))

    # Explicit son bound per node
    sons: int = field(default_factory=lambda: int(os.getenv("PITREE_SONS", "32")))

    # Leading sons expanded per node by suites (son N-1 is always expanded)
    probe: int = field(default_factory=lambda: int(os.getenv("PITREE_PROBE", "2")))

    # Thread pool size for node-level checks
    workers: int = field(default_factory=lambda: int(os.getenv("PITREE_WORKERS", "4")))

    seed: int = field(default_factory=lambda: int(os.getenv("PITREE_SEED", "0")))

    # Cap on linear searches (son lookup, witness search, scope divergence)
    search_cap: int = field(default_factory=lambda: int(os.getenv("PITREE_SEARCH_CAP", "256")))

    log_level: str = field(default_factory=lambda: os.getenv("PITREE_LOG", "WARNING").upper())

    # Validate scope uniqueness against the first N sons plus residual
    strict_scope: bool = field(default_factory=lambda: _env_bool("PITREE_STRICT_SCOPE", "true"))
