"""Pontryagin optimality system and the RK4 forward-backward sweep.

The objective is

    J(u) = int_0^T [A1 E + A2 I + A3 A + A4 B + 1/2 sum_i D_i u_i^2] dt

subject to the controlled SEIARB dynamics, with each u_i in [0, u_i_max].

The adjoint right-hand side is derived mechanically as -dH/dx from the
Hamiltonian H = L + sum_i lambda_i f_i, and the control characterization
solves dH/du_i = 0 before projecting onto the box. Both are checked against
finite differences of :func:`hamiltonian` in the test suite.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import DomainError, NumericalError
from .integrate import rk4_backward, rk4_forward, trapezoid
from .model import ControlVec, ModelParams, StateVec, make_dynamics
from .strategies import StrategyMask

log = logging.getLogger(__name__)

__all__ = [
    "AdjointVec",
    "ObjectiveWeights",
    "SweepConfig",
    "OptimalSolution",
    "hamiltonian",
    "rhs_adjoint",
    "characterize_controls",
    "fbs_solve",
    "running_cost",
]


class AdjointVec(NamedTuple):
    lambda1: float
    lambda2: float
    lambda3: float
    lambda4: float
    lambda5: float
    lambda6: float


@dataclass(frozen=True)
class ObjectiveWeights:
    """State-burden weights ``A1..A4`` and quadratic control-cost factors ``D1..D4``.

    Construction does not validate, so degenerate weights can be used to probe
    the kernels; :meth:`validate` enforces strict positivity and is called by
    the solver and the config loader.
    """

    A1: float = 1.0
    A2: float = 1.0
    A3: float = 1.0
    A4: float = 1.0
    D1: float = 50.0
    D2: float = 50.0
    D3: float = 100.0
    D4: float = 200.0

    @property
    def A(self) -> tuple[float, float, float, float]:
        return (self.A1, self.A2, self.A3, self.A4)

    @property
    def D(self) -> tuple[float, float, float, float]:
        return (self.D1, self.D2, self.D3, self.D4)

    def validate(self) -> "ObjectiveWeights":
        for name in ("A1", "A2", "A3", "A4", "D1", "D2", "D3", "D4"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0:
                raise DomainError(f"weight {name} must be finite and > 0, got {value!r}")
        return self


@dataclass(frozen=True)
class SweepConfig:
    t_final: float = 120.0
    n_steps: int = 1200
    relaxation: float = 0.5
    tol: float = 1e-8
    max_iters: int = 500
    u_max: tuple[float, float, float, float] = (0.5, 0.5, 0.75, 0.75)
    adaptive: bool = True
    min_relaxation: float = 0.01

    def __post_init__(self):
        if not (math.isfinite(self.t_final) and self.t_final > 0):
            raise DomainError("t_final must be positive")
        if int(self.n_steps) != self.n_steps or self.n_steps < 2:
            raise DomainError("n_steps must be an integer >= 2")
        if not 0 < self.relaxation <= 1:
            raise DomainError("relaxation must lie in (0, 1]")
        if not 0 < self.min_relaxation <= self.relaxation:
            raise DomainError("min_relaxation must lie in (0, relaxation]")
        if not 0 < self.tol < 1:
            raise DomainError("tol must lie in (0, 1)")
        if int(self.max_iters) != self.max_iters or self.max_iters < 1:
            raise DomainError("max_iters must be a positive integer")
        if len(self.u_max) != 4:
            raise DomainError("u_max needs one bound per control")
        object.__setattr__(self, "u_max", tuple(float(u) for u in self.u_max))
        for i, u in enumerate(self.u_max, start=1):
            if not 0 < u <= 1:
                raise DomainError(f"u{i}_max must lie in (0, 1], got {u!r}")
        # (1 - u1 - u2) multiplies environmental transmission and must stay >= 0.
        if self.u_max[0] + self.u_max[1] > 1:
            raise DomainError(
                f"u1_max + u2_max = {self.u_max[0] + self.u_max[1]:g} exceeds 1; "
                "environmental transmission factor (1 - u1 - u2) would turn negative"
            )

    @property
    def h(self) -> float:
        return self.t_final / self.n_steps

    @property
    def grid(self) -> np.ndarray:
        return np.linspace(0.0, self.t_final, self.n_steps + 1)


@dataclass
class OptimalSolution:
    t: np.ndarray
    states: np.ndarray  # (n+1, 6): S, E, I, A, R, B
    adjoints: np.ndarray  # (n+1, 6)
    controls: np.ndarray  # (n+1, 4)
    J: float
    iterations: int
    converged: bool
    strategy_id: int = 0
    history: list[float] = field(default_factory=list)

    @property
    def h(self) -> float:
        return float(self.t[1] - self.t[0])

    @property
    def t_final(self) -> float:
        return float(self.t[-1])


def make_adjoint(params: ModelParams, weights: ObjectiveWeights):
    """Return ``g(S,E,I,A,R,B, l1..l6, u1..u4) -> 6-tuple`` giving d(lambda)/dt = -dH/dx."""
    d = params.d
    b1, b2, b3, b4 = params.beta1, params.beta2, params.beta3, params.beta4
    k1, k2, k3 = params.k1, params.k2, params.k3
    to_i, to_a = (1.0 - params.tau) * params.delta, params.tau * params.delta
    g1, g2 = params.gamma1, params.gamma2
    p1, p2, p3, phi = params.psi1, params.psi2, params.psi3, params.phi
    A1, A2, A3, A4 = weights.A1, weights.A2, weights.A3, weights.A4

    def g(S, E, I, A, R, B, l1, l2, l3, l4, l5, l6, u1, u2, u3, u4):
        N = S + E + I + A + R
        a = 1.0 - u1
        b = 1.0 - u1 - u2
        # infection inflow = force * S / N with force = a*(b1 E + b2 I + b3 A) + b*b4 B
        force = a * (b1 * E + b2 * I + b3 * A) + b * b4 * B
        diff = l2 - l1
        s_n = S / N
        common = force * s_n / N  # d(inflow)/dx for x in {E, I, A, R} picks up -common
        shed = 1.0 - u3
        return (
            -(diff * force * (N - S) / (N * N) - l1 * d),
            -(A1 + diff * (a * b1 * s_n - common) - l2 * k1 + l3 * to_i + l4 * to_a + l6 * shed * p1),
            -(A2 + diff * (a * b2 * s_n - common) - l3 * k2 + l5 * g1 + l6 * shed * p2),
            -(A3 + diff * (a * b3 * s_n - common) - l4 * k3 + l5 * g2 + l6 * shed * p3),
            -(-diff * common - l5 * d),
            -(A4 + diff * b * b4 * s_n - l6 * (u4 + phi)),
        )

    return g


def running_cost(states, controls, weights: ObjectiveWeights) -> np.ndarray:
    """Integrand of J at each grid node."""
    states = np.asarray(states, dtype=float)
    controls = np.asarray(controls, dtype=float)
    burden = states[..., [1, 2, 3, 5]] @ np.asarray(weights.A)
    effort = 0.5 * (controls**2) @ np.asarray(weights.D)
    return burden + effort


def hamiltonian(state, adjoint, control, weights: ObjectiveWeights, params: ModelParams, index=None) -> float:
    """Running cost plus costate-weighted dynamics at one point."""
    state, adjoint, control = StateVec(*state), AdjointVec(*adjoint), ControlVec(*control)
    N = state.S + state.E + state.I + state.A + state.R
    if N <= 0:
        raise DomainError("total population N must be positive")
    rhs = make_dynamics(params)(*state, *control)
    cost = float(running_cost(state, control, weights))
    value = cost + sum(l * f for l, f in zip(adjoint, rhs))
    if not math.isfinite(value):
        where = f" at grid index {index}" if index is not None else ""
        raise NumericalError(f"non-finite Hamiltonian{where}", index=index)
    return value


def rhs_adjoint(state, adjoint, control, weights: ObjectiveWeights, params: ModelParams) -> AdjointVec:
    """Costate derivative ``-dH/dx`` at one point."""
    state = StateVec(*state)
    if state.S + state.E + state.I + state.A + state.R == 0:
        raise NumericalError("adjoint right-hand side is singular at N = 0")
    return AdjointVec(*make_adjoint(params, weights)(*state, *adjoint, *control))


def _theta(S, E, I, A, R, B, l1, l2, l6, weights: ObjectiveWeights, params: ModelParams):
    """Unconstrained minimizers of H in each control; works on floats or arrays."""
    N = S + E + I + A + R
    p = params
    diff = l2 - l1
    theta1 = diff * (p.beta1 * E + p.beta2 * I + p.beta3 * A + p.beta4 * B) * S / (weights.D1 * N)
    theta2 = diff * p.beta4 * B * S / (weights.D2 * N)
    theta3 = l6 * (p.psi1 * E + p.psi2 * I + p.psi3 * A) / weights.D3
    # H depends on u4 only through -lambda6 * u4 * B.
    theta4 = l6 * B / weights.D4
    return theta1, theta2, theta3, theta4


def characterize_controls(state, adjoint, weights: ObjectiveWeights, params: ModelParams, u_max) -> ControlVec:
    """Pointwise minimizer of H over the box ``[0, u_max]^4``."""
    S, E, I, A, R, B = StateVec(*state)
    l1, l2, _, _, _, l6 = AdjointVec(*adjoint)
    if min(weights.D) <= 0:
        raise DomainError("control cost factors D must be > 0")
    if S + E + I + A + R <= 0:
        raise DomainError("total population N must be positive")
    thetas = _theta(S, E, I, A, R, B, l1, l2, l6, weights, params)
    return ControlVec(*(min(max(0.0, th), um) for th, um in zip(thetas, u_max)))


def _project_grid(states, adjoints, weights, params, u_max, active) -> np.ndarray:
    S, E, I, A, R, B = states.T
    thetas = _theta(S, E, I, A, R, B, adjoints[:, 0], adjoints[:, 1], adjoints[:, 5], weights, params)
    u = np.clip(np.column_stack(thetas), 0.0, np.asarray(u_max))
    u[:, ~np.asarray(active)] = 0.0
    return u


def fbs_solve(
    params: ModelParams,
    weights: ObjectiveWeights,
    init,
    mask: StrategyMask,
    config: SweepConfig | None = None,
) -> OptimalSolution:
    """Forward-backward sweep for the optimality system.

    Each iteration integrates the state forward under the current controls,
    the costate backward from lambda(T) = 0 and projects the characterized
    controls onto the box, with masked channels pinned to zero. The next
    iterate is the relaxed step ``u + w * (u_proj - u)``.

    Convergence is declared when the undamped step is small:
    ``max|u_proj - u| / max(max|u_proj|, eps) <= tol``. With ``adaptive``
    set, ``w`` is halved (down to ``min_relaxation``) whenever that residual
    fails to decrease, which breaks the two-cycles multi-control strategies
    otherwise fall into.

    The returned trajectories, controls and J are mutually consistent: states
    and costates are those computed under the returned controls. If the cap is
    hit, the last consistent iterate comes back with ``converged=False``.
    """
    config = config or SweepConfig()
    weights.validate()
    init = StateVec(*(float(v) for v in init))
    if any(v < 0 or not math.isfinite(v) for v in init):
        raise DomainError("initial state must be finite and nonnegative")
    if init.S + init.E + init.I + init.A + init.R <= 0:
        raise DomainError("initial population N(0) must be positive")

    f = make_dynamics(params)
    g = make_adjoint(params, weights)
    h = config.h
    t = config.grid
    active = np.asarray(mask.active, dtype=bool)
    omega = config.relaxation
    eps = 1e-12
    lam_T = (0.0,) * 6

    u = np.zeros((config.n_steps + 1, 4))
    history: list[float] = []
    converged = False
    for it in range(1, config.max_iters + 1):
        try:
            with np.errstate(all="raise"):
                states = rk4_forward(f, init, h, u, iteration=it)
                pops = states[:, :5].sum(axis=1)
                if np.any(pops <= 0):
                    bad = int(np.argmax(pops <= 0))
                    raise NumericalError(f"population vanished at grid index {bad}", iteration=it, index=bad)
                adjoints = rk4_backward(g, lam_T, h, states, u, iteration=it)
                proj = _project_grid(states, adjoints, weights, params, config.u_max, active)
        except (ZeroDivisionError, OverflowError, FloatingPointError) as exc:
            raise NumericalError(f"numeric failure in sweep iteration {it}: {exc}", iteration=it) from exc
        change = float(np.max(np.abs(proj - u))) / max(float(np.max(np.abs(proj))), eps)
        history.append(change)
        log.debug("strategy %d iteration %d: residual %.3e (relaxation %.3g)", mask.id, it, change, omega)
        if change <= config.tol:
            converged = True
            break
        if config.adaptive and len(history) > 1 and change >= history[-2]:
            omega = max(0.5 * omega, config.min_relaxation)
        if it < config.max_iters:
            u = u + omega * (proj - u)

    if not converged:
        log.warning(
            "strategy %d: sweep did not converge in %d iterations (last change %.3e)",
            mask.id, config.max_iters, history[-1],
        )
    J = trapezoid(running_cost(states, u, weights), h)
    return OptimalSolution(
        t=t,
        states=states,
        adjoints=adjoints,
        controls=u,
        J=J,
        iterations=len(history),
        converged=converged,
        strategy_id=mask.id,
        history=history,
    )
