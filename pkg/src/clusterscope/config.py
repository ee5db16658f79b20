"""Configuration models.

Budgets and strategies are plain pydantic models so that they can be built from
CLI flags, survey config files and keyword arguments alike.
"""

### IMPORTS
### ============================================================================
# Future
from __future__ import annotations

# Standard Library
import os
from typing import Dict, List, Literal

# Installed
from pydantic import BaseModel, Field

# Local
from .const import (
    DEFAULT_CLASS_BUDGET,
    DEFAULT_DEPTH_BUDGET,
    DEFAULT_NODE_BUDGET,
    THREADS_ENV_VAR,
)
from .log import logger


### FUNCTIONS
### ============================================================================
def threads_from_env(default: int = 1) -> int:
    """Read the default worker thread count from the environment.

    Missing, non-integer and non-positive values fall back to `default`.
    """
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None:
        return default
    try:
        threads = int(raw)
    except ValueError:
        logger.warning(f"Ignoring non-integer {THREADS_ENV_VAR}={raw!r}")
        return default
    if threads < 1:
        logger.warning(f"Ignoring non-positive {THREADS_ENV_VAR}={raw!r}")
        return default
    return threads


### CLASSES
### ============================================================================
class BaseConfig(BaseModel):  # pylint: disable=too-few-public-methods
    """Base for all clusterscope config models."""


class SearchBudget(BaseConfig):
    """Limits for mutation-class exploration.

    Attributes:
        max_members: maximum number of distinct canonical forms per exploration
        max_depth: maximum mutation depth per exploration
        max_nodes: maximum number of class members visited over a whole Banff run
    """

    max_members: int = Field(default=DEFAULT_CLASS_BUDGET, gt=0)
    max_depth: int = Field(default=DEFAULT_DEPTH_BUDGET, gt=0)
    max_nodes: int = Field(default=DEFAULT_NODE_BUDGET, gt=0)


class Strategy(BaseConfig):
    """Choices left open by the Banff algorithm.

    Attributes:
        vertex_order: order in which vertices are mutated when expanding a class.
            `descending` reproduces the certificates shown in `docs/formats.md`.
        pair_order: order in which the covering pairs of a quiver are tried
        backtrack: try the next covering pair when a branch fails
        seed: random seed used by `shuffled`
    """

    vertex_order: Literal["ascending", "descending", "shuffled"] = "descending"
    pair_order: Literal["canonical", "reverse"] = "canonical"
    backtrack: bool = True
    seed: int = 0


class SurveyConfig(BaseConfig):
    """Config for the survey application.

    Attributes:
        catalog: catalog entries to survey
        files: extra quivers to survey, as a mapping of name to `.qvr` path
        stop: Banff stop predicate
        reduced: use the reduced Banff algorithm. It needs the `acyclic` stop predicate
            and skips quivers with frozen vertices.
        workers: number of worker processes
        budget: search limits per quiver
        strategy: Banff strategy
    """

    catalog: List[str] = Field(default_factory=list)
    files: Dict[str, str] = Field(default_factory=dict)
    stop: Literal["acyclic", "tree", "finite", "a-type", "isolated"] = "acyclic"
    reduced: bool = False
    workers: int = Field(default=1, gt=0)
    budget: SearchBudget = Field(default_factory=SearchBudget)
    strategy: Strategy = Field(default_factory=Strategy)
