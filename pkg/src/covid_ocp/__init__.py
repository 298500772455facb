"""Optimal control and cost-effectiveness analysis for a COVID-19 SEIARB model."""
from .cea import CeaRecord, CeaReport, acer, analyze, cross_scenario_report, eliminate, iar, icer_ladder
from .errors import ConfigError, DomainError, NumericalError, SingularParameterError, UndefinedMetricError
from .model import ControlVec, ModelParams, StateVec, compute_r0, rhs_autonomous, rhs_controlled, total_population
from .pmp import (
    AdjointVec,
    ObjectiveWeights,
    OptimalSolution,
    SweepConfig,
    characterize_controls,
    fbs_solve,
    hamiltonian,
    rhs_adjoint,
)
from .strategies import StrategyMask, all_strategies, apply_mask, by_scenario, get_strategy

__version__ = "0.1.0"
