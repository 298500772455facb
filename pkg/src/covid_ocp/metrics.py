"""Scalar outcomes of solved trajectories: costs, incidence, recoveries, efficacy."""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .errors import DomainError, NumericalError
from .integrate import trapezoid
from .model import ModelParams
from .pmp import ObjectiveWeights, OptimalSolution, running_cost

EFFICACY_COMPARTMENTS = {"E": 1, "I": 2, "A": 3, "B": 5}


@dataclass(frozen=True)
class OutcomeSummary:
    strategy_id: int
    infections_averted: float
    total_cost: float
    recoveries: float
    objective_J: float
    peak_I: float
    time_to_efficacy_1: float | None
    converged: bool = True
    iterations: int = 0

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "OutcomeSummary":
        return cls(**data)


def control_cost(solution: OptimalSolution, weights: ObjectiveWeights) -> float:
    """Trapezoidal estimate of 1/2 * int sum_i D_i u_i^2 dt."""
    u = np.asarray(solution.controls, dtype=float)
    return trapezoid(0.5 * (u**2) @ np.asarray(weights.D), solution.h)


def state_burden(solution: OptimalSolution, weights: ObjectiveWeights) -> float:
    x = np.asarray(solution.states, dtype=float)
    return trapezoid(x[:, [1, 2, 3, 5]] @ np.asarray(weights.A), solution.h)


def incidence(solution: OptimalSolution, params: ModelParams) -> np.ndarray:
    """New infections per day (inflow into E) at each grid node."""
    S, E, I, A, R, B = np.asarray(solution.states, dtype=float).T
    u1, u2 = solution.controls[:, 0], solution.controls[:, 1]
    N = S + E + I + A + R
    if np.any(N <= 0):
        raise NumericalError("total population vanishes on the grid", index=int(np.argmax(N <= 0)))
    p = params
    return ((1 - u1) * (p.beta1 * E + p.beta2 * I + p.beta3 * A) + (1 - u1 - u2) * p.beta4 * B) * S / N


def cumulative_infections(solution: OptimalSolution, params: ModelParams) -> float:
    """Cumulative incidence over the horizon (persons newly exposed)."""
    return trapezoid(incidence(solution, params), solution.h)


def cumulative_recoveries(solution: OptimalSolution, params: ModelParams) -> float:
    x = np.asarray(solution.states, dtype=float)
    return trapezoid(params.gamma1 * x[:, 2] + params.gamma2 * x[:, 3], solution.h)


def efficacy_curves(solution: OptimalSolution, init) -> dict[str, np.ndarray]:
    """Relative reduction ``(X(0) - X(t)) / X(0)`` for X in E, I, A, B."""
    curves = {}
    for name, col in EFFICACY_COMPARTMENTS.items():
        x0 = float(init[col])
        if x0 <= 0:
            raise DomainError(f"efficacy of {name} is undefined: initial value {name}(0) = {x0!r}")
        curves[name] = (x0 - solution.states[:, col]) / x0
    return curves


def time_to_efficacy(solution: OptimalSolution, init, compartment: str = "I", level: float = 0.99) -> float | None:
    """First grid time at which the efficacy of ``compartment`` reaches ``level``."""
    curve = efficacy_curves(solution, init)[compartment]
    hits = np.flatnonzero(curve >= level)
    return float(solution.t[hits[0]]) if hits.size else None


def _same_grid(a: OptimalSolution, b: OptimalSolution) -> bool:
    return a.t.shape == b.t.shape and np.array_equal(a.t, b.t)


def summarize(
    solution: OptimalSolution,
    baseline: OptimalSolution,
    params: ModelParams,
    weights: ObjectiveWeights,
    efficacy_level: float = 0.99,
) -> OutcomeSummary:
    """Collect the outcome metrics of ``solution`` relative to the no-control ``baseline``.

    ``infections_averted`` is reported as computed and may be negative.
    """
    if not _same_grid(solution, baseline):
        raise DomainError("solution and baseline are on different time grids")
    averted = cumulative_infections(baseline, params) - cumulative_infections(solution, params)
    init = solution.states[0]
    try:
        t_eff = time_to_efficacy(solution, init, "I", efficacy_level)
    except DomainError:
        t_eff = None
    return OutcomeSummary(
        strategy_id=solution.strategy_id,
        infections_averted=float(averted),
        total_cost=control_cost(solution, weights),
        recoveries=cumulative_recoveries(solution, params),
        objective_J=float(solution.J),
        peak_I=float(np.max(solution.states[:, 2])),
        time_to_efficacy_1=t_eff,
        converged=bool(solution.converged),
        iterations=int(solution.iterations),
    )


def objective(solution: OptimalSolution, weights: ObjectiveWeights) -> float:
    """J recomputed from the trajectories (state burden plus control cost)."""
    return trapezoid(running_cost(solution.states, solution.controls, weights), solution.h)
