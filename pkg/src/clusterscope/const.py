### IMPORTS
### ============================================================================
# Future
from __future__ import annotations

# Standard Library
import enum

### CONSTANTS
### ============================================================================
## Budgets
## -----------------------------------------------------------------------------
DEFAULT_CLASS_BUDGET = 10_000
DEFAULT_DEPTH_BUDGET = 8
DEFAULT_NODE_BUDGET = 100_000

## Environment
## -----------------------------------------------------------------------------
THREADS_ENV_VAR = "CLUSTERSCOPE_THREADS"


## Search
## -----------------------------------------------------------------------------
class StopPredicate(enum.Enum):
    """Local properties a Banff leaf may be required to satisfy.

    Every one of these is equivalent to local acyclicity when used as the stop
    condition of a Banff run.
    """

    ACYCLIC = "acyclic"
    TREE = "tree"
    FINITE = "finite"
    A_TYPE = "a-type"
    ISOLATED = "isolated"


class Verdict(enum.Enum):
    """Outcome of a bounded search over a mutation class."""

    FOUND = "found"
    PROVEN_ABSENT = "proven-absent"
    BUDGET_EXHAUSTED = "budget-exhausted"


class FailureReason(enum.Enum):
    NO_COVERING_PAIR = "no-covering-pair-in-complete-class"
    BUDGET_EXHAUSTED = "budget-exhausted"


class CoverMode(enum.Enum):
    """How a Banff branch removes a covering pair endpoint."""

    FREEZE = "freeze"
    DELETE = "delete"


## Application
## -----------------------------------------------------------------------------
class ExitStatus(enum.IntEnum):
    OK = 0
    NEGATIVE = 1
    USAGE = 2
    INDETERMINATE = 3
