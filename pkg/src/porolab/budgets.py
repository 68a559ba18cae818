"""Enumeration budgets, overridable through the POROLAB_BUDGET variable."""

from __future__ import annotations

import os

from .errors import ConfigError

BUDGET_ENV = "POROLAB_BUDGET"

# Words enumerated by the porosity engine per run.
DEFAULT_WORD_BUDGET = 1 << 24
# Leaf visits per exhaustive cylinder check.
DEFAULT_LEAF_BUDGET = 1 << 20


def resolve_budget(explicit: int | None, default: int) -> int:
    """Explicit argument wins, then the environment override, then the default."""
    if explicit is None:
        raw = os.environ.get(BUDGET_ENV)
        if raw is None:
            return default
        try:
            explicit = int(raw)
        except ValueError:
            raise ConfigError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    if explicit <= 0:
        raise ConfigError("budget must be positive")
    return explicit
