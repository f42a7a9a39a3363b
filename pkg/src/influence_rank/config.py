"""Numeric defaults shared by the library and the command line.

Every default lives here so that a run's effective configuration can be
echoed into its manifest.  The CLI lets ``INFLUENCE_RANK_<FLAG>``
environment variables replace these defaults; ``--paper-defaults`` turns
that off so a run uses exactly the values below.
"""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass

__all__ = ["ENV_PREFIX", "BUILTIN_DEFAULTS", "Settings", "env_override"]

ENV_PREFIX = "INFLUENCE_RANK_"


@dataclass(frozen=True)
class Settings:
    tolerance: float = 1e-10
    max_iterations: int = 10_000
    step_constant: float = 0.5
    window: int = 100
    min_stories: int = 2
    min_fans: int = 10
    trials: int = 10_000
    horizon: int = 50
    seed: int = 0
    threads: int = 1

    def as_dict(self) -> dict:
        return asdict(self)


BUILTIN_DEFAULTS = Settings()


def env_override(dest: str, environ: dict | None = None) -> str | None:
    """Raw environment value for option ``dest`` (``max_iter`` -> ``INFLUENCE_RANK_MAX_ITER``)."""
    env = os.environ if environ is None else environ
    return env.get(ENV_PREFIX + dest.upper())
