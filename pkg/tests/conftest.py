import time

import pytest

from covid_ocp.config import load_config
from covid_ocp.metrics import summarize
from covid_ocp.model import ModelParams
from covid_ocp.pmp import ObjectiveWeights, fbs_solve
from covid_ocp.strategies import NO_CONTROL, all_strategies


@pytest.fixture(scope="session")
def default_config():
    return load_config()


@pytest.fixture(scope="session")
def params():
    return ModelParams.table_defaults()


@pytest.fixture(scope="session")
def weights():
    return ObjectiveWeights()


@pytest.fixture(scope="session")
def solved(default_config):
    """Baseline plus all 14 strategies under the default config, solved once per session."""
    c = default_config
    start = time.perf_counter()
    baseline = fbs_solve(c.params, c.weights, c.init, NO_CONTROL, c.sweep)
    solutions = {m.id: fbs_solve(c.params, c.weights, c.init, m, c.sweep) for m in all_strategies()}
    elapsed = time.perf_counter() - start
    summaries = {sid: summarize(sol, baseline, c.params, c.weights) for sid, sol in solutions.items()}
    return {"config": c, "baseline": baseline, "solutions": solutions, "summaries": summaries,
            "solve_seconds": elapsed}
