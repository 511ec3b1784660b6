"""Central-difference operators for observed (pulled-back) fields.

Observed fields have no analytic derivatives, so the verification checks
differentiate them numerically.  All first derivatives use central
stencils of configurable order (2 or 4); second derivatives use order-2
stencils, which keeps the nested Navier-Stokes check inside its (looser)
tolerance budget.

Jacobians follow the package convention J[k, i] = d v_i / d x_k.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UsageError

_AXES = np.eye(3)


@dataclass(frozen=True)
class FdConfig:
    """Finite-difference steps and stencil order."""
    h: float = 1e-3      # spatial step [m]
    h_t: float = 1e-5    # time step [s]
    order: int = 4       # central-difference order for first derivatives

    def __post_init__(self):
        if self.h <= 0.0 or self.h_t <= 0.0:
            raise UsageError("finite-difference steps must be positive")
        if self.order not in (2, 4):
            raise UsageError(f"unsupported stencil order {self.order}")


DEFAULT_FD = FdConfig()


def _central_samples(f, h, order):
    """Central first derivative of a callable of one offset argument."""
    if order == 2:
        return (np.asarray(f(h), dtype=float) - np.asarray(f(-h), dtype=float)) / (2.0 * h)
    fp2 = np.asarray(f(2.0 * h), dtype=float)
    fp1 = np.asarray(f(h), dtype=float)
    fm1 = np.asarray(f(-h), dtype=float)
    fm2 = np.asarray(f(-2.0 * h), dtype=float)
    return (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h)


def fd_jacobian(field, x_prime, t: float, cfg: FdConfig = DEFAULT_FD) -> np.ndarray:
    """J[k, i] ~= d field_i / d x'_k by central differences."""
    x0 = np.asarray(x_prime, dtype=float)
    j = np.empty((3, 3))
    for k in range(3):
        e = _AXES[k]
        j[k, :] = _central_samples(lambda s: field(x0 + s * e, t), cfg.h, cfg.order)
    return j


def fd_gradient(field, x_prime, t: float, cfg: FdConfig = DEFAULT_FD) -> np.ndarray:
    """Gradient of a scalar observed field by central differences."""
    x0 = np.asarray(x_prime, dtype=float)
    g = np.empty(3)
    for k in range(3):
        e = _AXES[k]
        g[k] = _central_samples(lambda s: field(x0 + s * e, t), cfg.h, cfg.order)
    return g


def fd_time_derivative(field, x_prime, t: float, cfg: FdConfig = DEFAULT_FD):
    """Eulerian time derivative at fixed observed coordinates."""
    x0 = np.asarray(x_prime, dtype=float)
    return _central_samples(lambda s: field(x0, t + s), cfg.h_t, cfg.order)


def fd_second_derivatives(field, x_prime, t: float,
                          cfg: FdConfig = DEFAULT_FD) -> np.ndarray:
    """All second derivatives H[a, b, i] ~= d^2 field_i / dx'_a dx'_b.

    Order-2 stencils; symmetric in (a, b) by construction.
    """
    x0 = np.asarray(x_prime, dtype=float)
    h = cfg.h
    f0 = np.asarray(field(x0, t), dtype=float)
    hess = np.empty((3, 3) + f0.shape)
    for a in range(3):
        ea = _AXES[a]
        fp = np.asarray(field(x0 + h * ea, t), dtype=float)
        fm = np.asarray(field(x0 - h * ea, t), dtype=float)
        hess[a, a] = (fp - 2.0 * f0 + fm) / (h * h)
    for a in range(3):
        for b in range(a + 1, 3):
            ea, eb = _AXES[a], _AXES[b]
            fpp = np.asarray(field(x0 + h * ea + h * eb, t), dtype=float)
            fpm = np.asarray(field(x0 + h * ea - h * eb, t), dtype=float)
            fmp = np.asarray(field(x0 - h * ea + h * eb, t), dtype=float)
            fmm = np.asarray(field(x0 - h * ea - h * eb, t), dtype=float)
            hess[a, b] = hess[b, a] = (fpp - fpm - fmp + fmm) / (4.0 * h * h)
    return hess


def fd_viscous_divergence(field, x_prime, t: float,
                          cfg: FdConfig = DEFAULT_FD) -> np.ndarray:
    """div(grad V + (grad V)^T) of a vector observed field, nested FD."""
    hess = fd_second_derivatives(field, x_prime, t, cfg)
    # component i: sum_k d_k d_k V_i + d_i d_k V_k
    lap = np.einsum("kki->i", hess)
    grad_div = np.einsum("ikk->i", hess)
    return lap + grad_div


def divergence(j) -> float:
    """trace of the velocity gradient."""
    return float(np.trace(np.asarray(j, dtype=float)))


def curl(j) -> np.ndarray:
    """Curl from a Jacobian with J[k, i] = d_k v_i."""
    j = np.asarray(j, dtype=float)
    return np.array([j[1, 2] - j[2, 1],
                     j[2, 0] - j[0, 2],
                     j[0, 1] - j[1, 0]])


def strain_rate(j) -> np.ndarray:
    """Symmetric part of the velocity gradient."""
    j = np.asarray(j, dtype=float)
    return 0.5 * (j + j.T)


def substantial_derivative(field, advecting, x, t: float,
                           cfg: FdConfig = DEFAULT_FD,
                           d_dt=None, jac=None) -> np.ndarray:
    """Material derivative d(field)/dt following the advecting velocity.

    ``field`` and ``advecting`` must give components in the SAME frame;
    the operator acts componentwise on scalars, never on basis vectors.
    Optional analytic callbacks replace the finite-difference pieces.
    """
    x = np.asarray(x, dtype=float)
    dt_part = np.asarray(d_dt(x, t) if d_dt is not None
                         else fd_time_derivative(field, x, t, cfg), dtype=float)
    j = np.asarray(jac(x, t) if jac is not None
                   else fd_jacobian(field, x, t, cfg), dtype=float)
    u = np.asarray(advecting(x, t), dtype=float)
    return dt_part + j.T @ u
