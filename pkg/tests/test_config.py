### IMPORTS
### ============================================================================
# Future
from __future__ import annotations

# Installed
from pydantic import ValidationError
import pytest

# Package
from clusterscope.config import SearchBudget, Strategy, SurveyConfig, threads_from_env
from clusterscope.const import (
    DEFAULT_CLASS_BUDGET,
    DEFAULT_DEPTH_BUDGET,
    DEFAULT_NODE_BUDGET,
    THREADS_ENV_VAR,
)

### SETUP
### ============================================================================


### TESTS
### ============================================================================
## Budgets and strategies
## -----------------------------------------------------------------------------
def test_budget_defaults():
    budget = SearchBudget()
    assert budget.max_members == DEFAULT_CLASS_BUDGET
    assert budget.max_depth == DEFAULT_DEPTH_BUDGET
    assert budget.max_nodes == DEFAULT_NODE_BUDGET
    return


@pytest.mark.parametrize("field", ["max_members", "max_depth", "max_nodes"])
@pytest.mark.parametrize("value", [0, -3])
def test_budget_must_be_positive(field, value):
    with pytest.raises(ValidationError):
        SearchBudget(**{field: value})
    return


def test_strategy_defaults():
    strategy = Strategy()
    assert strategy.vertex_order == "descending"
    assert strategy.pair_order == "canonical"
    assert strategy.backtrack
    return


@pytest.mark.parametrize(
    "kwargs",
    [{"vertex_order": "random"}, {"pair_order": "sorted"}],
)
def test_invalid_strategy(kwargs):
    with pytest.raises(ValidationError):
        Strategy(**kwargs)
    return


## Survey
## -----------------------------------------------------------------------------
def test_survey_config_nested_values():
    config = SurveyConfig(
        catalog=["markov", "x6"],
        files={"mine": "quivers/mine.qvr"},
        stop="tree",
        workers=2,
        budget={"max_members": 50, "max_depth": 3},
        strategy={"pair_order": "reverse", "backtrack": False},
    )
    assert config.catalog == ["markov", "x6"]
    assert config.budget.max_members == 50
    assert config.budget.max_nodes == DEFAULT_NODE_BUDGET
    assert config.strategy.pair_order == "reverse"
    assert config.strategy.vertex_order == "descending"
    assert not config.reduced
    return


@pytest.mark.parametrize(
    "kwargs",
    [{"stop": "cyclic"}, {"workers": 0}, {"budget": {"max_depth": 0}}],
)
def test_invalid_survey_config(kwargs):
    with pytest.raises(ValidationError):
        SurveyConfig(**kwargs)
    return


## Environment
## -----------------------------------------------------------------------------
@pytest.mark.parametrize(
    "raw, expected",
    [("4", 4), ("1", 1), ("four", 1), ("0", 1), ("-2", 1)],
)
def test_threads_from_env(monkeypatch, raw, expected):
    monkeypatch.setenv(THREADS_ENV_VAR, raw)
    assert threads_from_env() == expected
    return


def test_threads_from_env_default(monkeypatch):
    monkeypatch.delenv(THREADS_ENV_VAR, raising=False)
    assert threads_from_env() == 1
    assert threads_from_env(default=3) == 3
    return


@pytest.mark.parametrize("stop", ["acyclic", "isolated"])
def test_reduced_survey_config_accepts_any_stop(stop):
    config = SurveyConfig(stop=stop, reduced=True)
    assert config.reduced
    assert config.stop == stop
    return
