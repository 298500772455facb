"""Fixed-step RK4 passes on a uniform grid, plus trapezoidal quadrature.

Controls live on grid nodes; RK4 midpoint stages use the average of the two
neighbouring nodes (linear interpolation). The backward pass interpolates the
stored forward states the same way, which keeps the state and adjoint passes
aligned on one grid.
"""
from __future__ import annotations

import numpy as np

from .errors import NumericalError


def rk4_forward(f, x0, h: float, controls, iteration=None) -> np.ndarray:
    """Integrate ``x' = f(*x, *u)`` from ``x0`` over ``len(controls) - 1`` steps of size ``h``.

    ``controls`` is an ``(n+1, m)`` array of node values.
    """
    u = controls.tolist() if isinstance(controls, np.ndarray) else [list(c) for c in controls]
    n = len(u) - 1
    out = [tuple(float(v) for v in x0)]
    x = out[0]
    hh = 0.5 * h
    h6 = h / 6.0
    for j in range(n):
        ua = u[j]
        ub = u[j + 1]
        um = [0.5 * (a + b) for a, b in zip(ua, ub)]
        k1 = f(*x, *ua)
        k2 = f(*[xi + hh * ki for xi, ki in zip(x, k1)], *um)
        k3 = f(*[xi + hh * ki for xi, ki in zip(x, k2)], *um)
        k4 = f(*[xi + h * ki for xi, ki in zip(x, k3)], *ub)
        x = tuple(xi + h6 * (a + 2.0 * b + 2.0 * c + e) for xi, a, b, c, e in zip(x, k1, k2, k3, k4))
        out.append(x)
    arr = np.asarray(out)
    if not np.all(np.isfinite(arr)):
        bad = int(np.argmax(~np.all(np.isfinite(arr), axis=1)))
        raise NumericalError(f"non-finite state at grid index {bad}", iteration=iteration, index=bad)
    return arr


def rk4_backward(g, lam_T, h: float, states, controls, iteration=None) -> np.ndarray:
    """Integrate ``lam' = g(*x, *lam, *u)`` backward from ``lam(T) = lam_T``.

    ``states`` and ``controls`` are node arrays from the forward pass; the
    returned array is indexed forward in time, so row ``-1`` equals ``lam_T``.
    """
    xs = states.tolist()
    us = controls.tolist()
    n = len(xs) - 1
    out = [None] * (n + 1)
    lam = tuple(float(v) for v in lam_T)
    out[n] = lam
    dt = -h
    hh = 0.5 * dt
    h6 = dt / 6.0
    for j in range(n - 1, -1, -1):
        xb, xa = xs[j + 1], xs[j]
        ub, ua = us[j + 1], us[j]
        xm = [0.5 * (a + b) for a, b in zip(xa, xb)]
        um = [0.5 * (a + b) for a, b in zip(ua, ub)]
        k1 = g(*xb, *lam, *ub)
        k2 = g(*xm, *[li + hh * ki for li, ki in zip(lam, k1)], *um)
        k3 = g(*xm, *[li + hh * ki for li, ki in zip(lam, k2)], *um)
        k4 = g(*xa, *[li + dt * ki for li, ki in zip(lam, k3)], *ua)
        lam = tuple(li + h6 * (a + 2.0 * b + 2.0 * c + e) for li, a, b, c, e in zip(lam, k1, k2, k3, k4))
        out[j] = lam
    arr = np.asarray(out)
    if not np.all(np.isfinite(arr)):
        bad = int(np.argmax(~np.all(np.isfinite(arr), axis=1)))
        raise NumericalError(f"non-finite adjoint at grid index {bad}", iteration=iteration, index=bad)
    return arr


def trapezoid(y, h: float) -> float:
    """Composite trapezoid rule for samples ``y`` on a uniform grid of spacing ``h``."""
    y = np.asarray(y, dtype=float)
    if y.shape[0] < 2:
        return 0.0
    return float(h * (y.sum(axis=0) - 0.5 * (y[0] + y[-1])))
