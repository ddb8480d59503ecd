"""Explicit Dormand-Prince 5(4) stepper with PI step-size control.

Kept deliberately small: complex state, adaptive steps clipped to land
exactly on every requested output point, no dense-output interpolant.
The embedded fourth-order solution is used only through the difference
weights ``_E`` for the local error estimate; the first-same-as-last
property recycles the seventh stage as the next step's first stage.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError, StiffnessError

_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_E = np.array([71 / 57600, 0.0, -71 / 16695, 71 / 1920,
               -17253 / 339200, 22 / 525, -1 / 40])
_A_ROWS = [np.array(row) for row in _A]


@dataclass
class IntegrationResult:
    s: np.ndarray
    y: np.ndarray
    steps: int
    rhs_evals: int


def _rms(x) -> float:
    return float(np.sqrt(np.mean(np.abs(x) ** 2)))


def _initial_step(rhs, t0, y0, f0, direction, rtol, atol):
    scale = atol + rtol * np.abs(y0)
    d0, d1 = _rms(y0 / scale), _rms(f0 / scale)
    h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
    y1 = y0 + h0 * direction * f0
    f1 = rhs(t0 + h0 * direction, y1)
    d2 = _rms((f1 - f0) / scale) / h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.2
    return min(100 * h0, h1)


def integrate(rhs, y0, s_eval, rtol: float = 1e-8, atol: float = 1e-10,
              max_step: float = np.inf) -> IntegrationResult:
    """Integrate ``dy/ds = rhs(s, y)`` through the points of ``s_eval``.

    ``s_eval`` must be strictly increasing; integration starts at
    ``s_eval[0]`` and the solution is recorded at every entry.  Raises
    :class:`StiffnessError` when the controller drives the step below
    ``1e-14`` times the span.
    """
    pts = np.asarray(s_eval, dtype=float)
    if pts.ndim != 1 or pts.size < 2:
        raise InputError("s_eval needs at least a start and an end point")
    if np.any(np.diff(pts) <= 0):
        raise InputError("s_eval must be strictly increasing")
    y = np.asarray(y0, dtype=complex).copy()
    if y.ndim != 1:
        raise InputError(f"state must be one-dimensional, got shape {y.shape}")

    span = pts[-1] - pts[0]
    h_floor = 1e-14 * span
    t = pts[0]
    f = rhs(t, y)
    nfev = 2
    h = min(_initial_step(rhs, t, y, f, 1.0, rtol, atol), max_step, span)

    out = np.empty((pts.size, y.size), dtype=complex)
    out[0] = y
    K = np.empty((7, y.size), dtype=complex)
    facold = 1e-4
    rejected = False
    steps = 0

    for i in range(1, pts.size):
        target = pts[i]
        while t < target - 1e-14 * span:
            h = min(h, max_step, target - t)
            if h < h_floor:
                raise StiffnessError(
                    f"step size collapsed to {h:.3e} at s = {t:.6f}",
                    s=float(t), step=float(h))
            with np.errstate(over="ignore", invalid="ignore"):
                K[0] = f
                for j in range(1, 7):
                    yj = y + h * (_A_ROWS[j] @ K[:j])
                    K[j] = rhs(t + _C[j] * h, yj)
                nfev += 6
                ynew = yj  # the 7th stage node is b-weighted: FSAL
                err_vec = h * (_E @ K)
                scale = atol + rtol * np.maximum(np.abs(y), np.abs(ynew))
                err = _rms(err_vec / scale)
            if not np.isfinite(err):
                err = np.inf
            steps += 1
            if err <= 1.0:
                t = t + h
                y = ynew
                f = K[6]
                if err == 0.0:
                    factor = 10.0
                else:
                    factor = min(10.0, max(0.2, 0.9 * facold ** 0.04 * err ** -0.17))
                if rejected:
                    factor = min(1.0, factor)
                facold = max(err, 1e-4)
                h = h * factor
                rejected = False
            else:
                h = h * max(0.2, 0.9 * err ** -0.2)
                rejected = True
        out[i] = y
        t = target
    return IntegrationResult(pts, out, steps, nfev)
