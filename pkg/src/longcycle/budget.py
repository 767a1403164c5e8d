"""Resource guard shared by every exhaustive routine."""

from __future__ import annotations

import os

DEFAULT_BUDGET = 10**8
ENV_VAR = "LONGCYCLE_BUDGET"


class BudgetExceeded(RuntimeError):
    """Raised when a requested computation is larger than the allowed budget."""


def current_budget(override: int | None = None) -> int:
    if override is not None:
        return int(override)
    env = os.environ.get(ENV_VAR)
    if env:
        return int(float(env))
    return DEFAULT_BUDGET


def check_budget(cost: int, what: str, budget: int | None = None) -> None:
    limit = current_budget(budget)
    if cost > limit:
        raise BudgetExceeded(
            f"{what} needs about {cost:.3g} steps, over the budget of {limit:.3g}; "
            f"pass a larger budget or set {ENV_VAR}"
        )
