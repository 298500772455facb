"""SEIARB transmission model: parameters, state types and right-hand sides.

Compartments are susceptible (S), exposed (E), symptomatic infected (I),
asymptomatic infected (A), recovered (R) and the environmental viral
concentration (B). B is measured in arbitrary concentration units and is
excluded from the human population total N = S + E + I + A + R.

Four controls act on the dynamics:

* u1 -- physical / social distancing, scales all transmission by (1 - u1)
* u2 -- surface hygiene, further scales environmental transmission by
  (1 - u1 - u2)
* u3 -- safety measures by infected people, scales viral shedding by (1 - u3)
* u4 -- fumigation, adds u4 to the viral decay rate
"""
from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace
from typing import Callable, NamedTuple

from .errors import DomainError, SingularParameterError

__all__ = [
    "ModelParams",
    "StateVec",
    "ControlVec",
    "DAYS_PER_YEAR",
    "LIFE_EXPECTANCY_YEARS",
    "DEFAULT_N0",
    "rhs_autonomous",
    "rhs_controlled",
    "compute_r0",
    "total_population",
    "make_dynamics",
]

LIFE_EXPECTANCY_YEARS = 74.87
DAYS_PER_YEAR = 365.0
DEFAULT_N0 = 34_813_871.0


class StateVec(NamedTuple):
    S: float
    E: float
    I: float  # noqa: E741
    A: float
    R: float
    B: float


class ControlVec(NamedTuple):
    u1: float = 0.0
    u2: float = 0.0
    u3: float = 0.0
    u4: float = 0.0


ZERO_CONTROL = ControlVec()


@dataclass(frozen=True)
class ModelParams:
    """Rate constants of the SEIARB model (time unit: days).

    ``Lambda`` is the recruitment rate in persons/day. The Saudi Arabia
    calibration sets it to ``d * N(0)``; use :meth:`table_defaults` to get
    that calibration for a given initial population.
    """

    Lambda: float
    d: float
    beta1: float
    beta2: float
    beta3: float
    beta4: float
    delta: float
    tau: float
    d1: float
    gamma1: float
    gamma2: float
    psi1: float
    psi2: float
    psi3: float
    phi: float

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise DomainError(f"{f.name} must be a finite number, got {value!r}")
            if value < 0:
                raise DomainError(f"{f.name} must be nonnegative, got {value!r}")
        if self.tau > 1:
            raise DomainError(f"tau must lie in [0, 1], got {self.tau!r}")
        if self.phi <= 0:
            raise DomainError("phi must be strictly positive")
        if self.d <= 0:
            raise DomainError("d must be strictly positive")

    @property
    def k1(self) -> float:
        return self.d + self.delta

    @property
    def k2(self) -> float:
        return self.gamma1 + self.d + self.d1

    @property
    def k3(self) -> float:
        return self.gamma2 + self.d

    @classmethod
    def table_defaults(cls, n0: float = DEFAULT_N0, **overrides) -> "ModelParams":
        """Published Saudi Arabia calibration with ``Lambda = d * n0``."""
        d = 1.0 / (LIFE_EXPECTANCY_YEARS * DAYS_PER_YEAR)
        values = dict(
            Lambda=d * n0,
            d=d,
            beta1=0.1233,
            beta2=0.0542,
            beta3=0.0020,
            beta4=0.1101,
            delta=0.1980,
            tau=0.3085,
            d1=0.0104,
            gamma1=0.3680,
            gamma2=0.2945,
            psi1=0.2574,
            psi2=0.2798,
            psi3=0.1584,
            phi=0.3820,
        )
        values.update(overrides)
        return cls(**values)

    def with_(self, **changes) -> "ModelParams":
        return replace(self, **changes)


def total_population(state) -> float:
    """Human population S + E + I + A + R (the viral pool B is not counted)."""
    S, E, I, A, R = state[:5]
    return S + E + I + A + R


def make_dynamics(params: ModelParams) -> Callable[..., tuple]:
    """Return ``f(S, E, I, A, R, B, u1, u2, u3, u4) -> 6-tuple`` for the controlled system.

    Parameters are bound as closure locals so the integrators can call the
    kernel on bare floats without attribute lookups.
    """
    Lam, d = params.Lambda, params.d
    b1, b2, b3, b4 = params.beta1, params.beta2, params.beta3, params.beta4
    delta, tau, d1 = params.delta, params.tau, params.d1
    g1, g2 = params.gamma1, params.gamma2
    p1, p2, p3, phi = params.psi1, params.psi2, params.psi3, params.phi
    k1, k2, k3 = params.k1, params.k2, params.k3
    to_i, to_a = (1.0 - tau) * delta, tau * delta

    def f(S, E, I, A, R, B, u1, u2, u3, u4):
        N = S + E + I + A + R
        s_frac = S / N
        infection = (1.0 - u1) * (b1 * E + b2 * I + b3 * A) * s_frac + (1.0 - u1 - u2) * b4 * B * s_frac
        return (
            Lam - infection - d * S,
            infection - k1 * E,
            to_i * E - k2 * I,
            to_a * E - k3 * A,
            g1 * I + g2 * A - d * R,
            (1.0 - u3) * (p1 * E + p2 * I + p3 * A) - (u4 + phi) * B,
        )

    return f


def _check_state(state) -> StateVec:
    state = StateVec(*state)
    for name, value in zip(StateVec._fields, state):
        if not math.isfinite(value):
            raise DomainError(f"state component {name} is not finite: {value!r}")
    if total_population(state) <= 0:
        raise DomainError("total population N must be positive")
    return state


def _check_control(control) -> ControlVec:
    control = ControlVec(*control)
    for name, value in zip(ControlVec._fields, control):
        if not (0.0 <= value <= 1.0):
            raise DomainError(f"control {name}={value!r} outside [0, 1]")
    return control


def rhs_controlled(state, control, params: ModelParams) -> StateVec:
    """Time derivative of the state under the given control intensities."""
    state = _check_state(state)
    control = _check_control(control)
    return StateVec(*make_dynamics(params)(*state, *control))


def rhs_autonomous(state, params: ModelParams) -> StateVec:
    """Time derivative of the uncontrolled model."""
    return rhs_controlled(state, ZERO_CONTROL, params)


def compute_r0(params: ModelParams) -> float:
    """Closed-form basic reproduction number.

    Combines direct transmission by E, I and A with the indirect route
    through the environment (shedding psi_i, decay phi, pickup beta4).
    """
    p = params
    k1, k2, k3, phi = p.k1, p.k2, p.k3, p.phi
    denom = k1 * k2 * k3 * phi
    if denom == 0:
        raise SingularParameterError("k1*k2*k3*phi vanishes; R0 is undefined")
    numer = (
        k2 * (p.delta * p.tau * (p.beta4 * p.psi3 + p.beta3 * phi) + k3 * (p.beta4 * p.psi1 + p.beta1 * phi))
        + p.delta * k3 * (1.0 - p.tau) * (p.beta4 * p.psi2 + p.beta2 * phi)
    )
    return numer / denom
