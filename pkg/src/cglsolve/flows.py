"""Nonlinear part of the CGL equations: pointwise evaluation and flows.

The nonlinearity acts pointwise in physical space, so its exact flow is a
scalar ODE solved per grid value. The cubic flow

    u(t) = exp(-(alpha3 + i beta3)/(2 alpha3) * log|1 - 2 alpha3 |u0|^2 t|) u0

and the quintic analog (with 4 alpha4 |u0|^4 t and denominator 4 alpha4)
degenerate to pure phase rotations as the real coefficient vanishes; the
branch switch sits at |alpha| < 1e-14. A vanishing argument of the log is
finite-time blow-up and raises DivergenceError, as does any non-finite
flow output.
"""

import numpy as np

from .params import CglParameters

__all__ = [
    "NonlinearSpec",
    "DivergenceError",
    "eval_g",
    "cubic_flow",
    "quintic_flow",
    "rk4_flow",
]

_KINDS = ("cubic", "cubic_quintic", "coupled_cubic_quintic")
_REAL_COEFF_FLOOR = 1e-14


class DivergenceError(RuntimeError):
    """Raised when a flow or a step produces blow-up or NaN/Inf values."""

    def __init__(self, reason, step=None):
        self.reason = reason
        self.step = step
        where = f" at step {step}" if step is not None else ""
        super().__init__(f"{reason}{where}")


class NonlinearSpec:
    """Which nonlinear terms are active, with their coefficients."""

    def __init__(self, kind, params):
        if kind not in _KINDS:
            raise ValueError(f"kind must be one of {_KINDS}, got {kind!r}")
        if not isinstance(params, CglParameters):
            raise TypeError("params must be CglParameters")
        if kind == "cubic" and (params.alpha4 != 0.0 or params.beta4 != 0.0):
            raise ValueError("cubic kind requires alpha4 = beta4 = 0")
        if kind != "coupled_cubic_quintic" and params.alpha5 != 0.0:
            raise ValueError("cross-coupling alpha5 needs the coupled kind")
        self.kind = kind
        self.params = params

    @property
    def components(self):
        return 2 if self.kind == "coupled_cubic_quintic" else 1


def eval_g(spec, fields):
    """Pointwise nonlinearity per component, in physical space."""
    p = spec.params
    if len(fields) != spec.components:
        raise ValueError(f"expected {spec.components} components, "
                         f"got {len(fields)}")
    mods = [np.abs(u) ** 2 for u in fields]
    out = []
    for i, u in enumerate(fields):
        m = mods[i]
        g = p.cubic * m * u
        if spec.kind != "cubic":
            g = g + p.quintic * (m * m) * u
        if spec.kind == "coupled_cubic_quintic":
            g = g + p.alpha5 * mods[1 - i] * u
        out.append(g)
    return tuple(out)


def _check_finite(u, reason):
    if not np.all(np.isfinite(u)):
        raise DivergenceError(reason)
    return u


def cubic_flow(u0, t, params):
    """Exact flow of u' = (alpha3 + i beta3) |u|^2 u over time t."""
    u0 = np.asarray(u0, dtype=complex)
    a = params.alpha3
    mod = np.abs(u0) ** 2
    if abs(a) < _REAL_COEFF_FLOOR:
        return u0 * np.exp(1j * params.beta3 * mod * t)
    y = 2.0 * a * mod * t
    if np.any(y >= 1.0):
        raise DivergenceError("finite-time blow-up in cubic flow")
    factor = -(params.cubic / (2.0 * a))
    # log|1 - y| via log1p keeps precision for small steps
    return _check_finite(u0 * np.exp(factor * np.log1p(-y)),
                         "non-finite cubic flow output")


def quintic_flow(u0, t, params):
    """Exact flow of u' = (alpha4 + i beta4) |u|^4 u over time t."""
    u0 = np.asarray(u0, dtype=complex)
    a = params.alpha4
    mod4 = np.abs(u0) ** 4
    if abs(a) < _REAL_COEFF_FLOOR:
        return u0 * np.exp(1j * params.beta4 * mod4 * t)
    y = 4.0 * a * mod4 * t
    if np.any(y >= 1.0):
        raise DivergenceError("finite-time blow-up in quintic flow")
    factor = -(params.quintic / (4.0 * a))
    return _check_finite(u0 * np.exp(factor * np.log1p(-y)),
                         "non-finite quintic flow output")


def rk4_flow(spec, fields, t):
    """One classical RK4 step of size t on the full nonlinearity.

    Used where no exact flow is available (quintic and coupled terms
    treated together); its O(t^5) one-step error keeps fourth-order
    splitting intact.
    """
    k1 = eval_g(spec, fields)
    k2 = eval_g(spec, tuple(u + 0.5 * t * k for u, k in zip(fields, k1)))
    k3 = eval_g(spec, tuple(u + 0.5 * t * k for u, k in zip(fields, k2)))
    k4 = eval_g(spec, tuple(u + t * k for u, k in zip(fields, k3)))
    out = tuple(u + (t / 6.0) * (a + 2.0 * b + 2.0 * c + d)
                for u, a, b, c, d in zip(fields, k1, k2, k3, k4))
    for u in out:
        _check_finite(u, "non-finite RK4 flow output")
    return out
