"""Rigid moving observer frames: translation y(t) + rotation alpha(t).

A frame carries its own analytic time derivatives where the family allows
it; user-supplied frames without derivatives fall back to central
differences.  Angular velocity is extracted from alpha and d(alpha)/dt by
the Levi-Civita contraction

    omega_i = 1/2 eps_lik alpha_kj d(alpha_lj)/dt

which in matrix form reads: M = d(alpha)/dt @ alpha.T is antisymmetric and
omega = axial-vector of M (M[i,k] = eps_ijk omega_j).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from numpy.polynomial import polynomial as npoly

from . import tensor_core as tc
from .errors import InvariantViolationError, UsageError

# Identity-residual tolerances: analytic derivatives vs FD fallback.
ID_TOL_ANALYTIC = 1e-8
ID_TOL_FD = 1e-5

# Relative step for the finite-difference derivative fallback.
FD_TIME_STEP = 1e-6


@dataclass(frozen=True)
class AngularVelocity:
    """Rotation rate of the moving frame, in unprimed components."""
    omega: np.ndarray       # [1/s]
    domega_dt: np.ndarray   # [1/s^2]


@dataclass(frozen=True)
class FrameState:
    """Validated kinematic snapshot of a frame at one instant.

    Cached per time value: stencil evaluations hit the same t thousands
    of times, and validating/re-deriving the rotation each time dominates
    the cost of every check otherwise.
    """
    alpha: np.ndarray
    dalpha: np.ndarray
    y: np.ndarray
    dy: np.ndarray
    omega: np.ndarray


class RigidFrameMotion:
    """The moving frame s': trajectory, rotation, and their time derivatives.

    Immutable after construction; all queries are pure.  ``alpha(t)`` is
    validated (and re-orthonormalized if slightly drifted) on every call.
    """

    def __init__(self, name: str,
                 y: Callable[[float], np.ndarray],
                 alpha: Callable[[float], np.ndarray],
                 dy_dt: Optional[Callable] = None,
                 d2y_dt2: Optional[Callable] = None,
                 dalpha_dt: Optional[Callable] = None,
                 d2alpha_dt2: Optional[Callable] = None):
        self.name = name
        self._y = y
        self._alpha = alpha
        self._dy = dy_dt
        self._d2y = d2y_dt2
        self._dalpha = dalpha_dt
        self._d2alpha = d2alpha_dt2
        self.analytic_rates = dalpha_dt is not None and dy_dt is not None
        self.id_tol = ID_TOL_ANALYTIC if self.analytic_rates else ID_TOL_FD
        self._state_cache: dict = {}

    @staticmethod
    def _h(t: float) -> float:
        return FD_TIME_STEP * max(1.0, abs(t))

    def y(self, t: float) -> np.ndarray:
        return tc.vec3(self._y(t))

    def alpha(self, t: float) -> np.ndarray:
        return tc.orthonormalized(self._alpha(t))

    def dy_dt(self, t: float) -> np.ndarray:
        if self._dy is not None:
            return tc.vec3(self._dy(t))
        h = self._h(t)
        return (self.y(t + h) - self.y(t - h)) / (2.0 * h)

    def d2y_dt2(self, t: float) -> np.ndarray:
        if self._d2y is not None:
            return tc.vec3(self._d2y(t))
        h = 1e-4 * max(1.0, abs(t))
        return (self.y(t + h) - 2.0 * self.y(t) + self.y(t - h)) / (h * h)

    def dalpha_dt(self, t: float) -> np.ndarray:
        if self._dalpha is not None:
            return tc.mat3(self._dalpha(t))
        h = self._h(t)
        # Raw alpha samples: repairing them would perturb the difference.
        return (tc.mat3(self._alpha(t + h)) - tc.mat3(self._alpha(t - h))) / (2.0 * h)

    def d2alpha_dt2(self, t: float) -> Optional[np.ndarray]:
        if self._d2alpha is not None:
            return tc.mat3(self._d2alpha(t))
        return None

    def state(self, t: float) -> FrameState:
        """Validated (alpha, dalpha, y, dy, omega) at t, memoized."""
        cached = self._state_cache.get(t)
        if cached is not None:
            return cached
        alpha = self.alpha(t)
        dalpha = self.dalpha_dt(t)
        m = dalpha @ alpha.T
        rate = max(1.0, float(np.max(np.abs(m))))
        if np.max(np.abs(m + m.T)) > 1e-4 * rate:
            raise InvariantViolationError(
                f"alpha is not evolving rigidly at t={t}")
        st = FrameState(alpha=alpha, dalpha=dalpha, y=self.y(t),
                        dy=self.dy_dt(t),
                        omega=np.array([m[2, 1], m[0, 2], m[1, 0]]))
        if len(self._state_cache) > 256:
            self._state_cache.clear()
        self._state_cache[t] = st
        return st


def spin_matrix(frame: RigidFrameMotion, t: float) -> np.ndarray:
    """M = d(alpha)/dt @ alpha.T; antisymmetric for a rigid rotation."""
    st = frame.state(t)
    return st.dalpha @ st.alpha.T


def omega_from_alpha(frame: RigidFrameMotion, t: float,
                     h: float = 1e-4) -> AngularVelocity:
    """Angular velocity (and its rate) of the frame at time t.

    omega comes from the spin matrix M = alpha_dot @ alpha.T.  omega_dot
    uses the analytic second derivative of alpha when the frame provides
    one, else central differences of omega(t +/- h).
    """
    omega = frame.state(t).omega
    d2a = frame.d2alpha_dt2(t)
    if d2a is not None:
        alpha = frame.alpha(t)
        da = frame.dalpha_dt(t)
        mdot = d2a @ alpha.T + da @ da.T
        domega = np.array([mdot[2, 1], mdot[0, 2], mdot[1, 0]])
    else:
        wp = spin_matrix(frame, t + h)
        wm = spin_matrix(frame, t - h)
        md = (wp - wm) / (2.0 * h)
        domega = np.array([md[2, 1], md[0, 2], md[1, 0]])
    return AngularVelocity(omega=omega, domega_dt=domega)


def map_position_to_prime(frame: RigidFrameMotion, x_in_s, t: float) -> np.ndarray:
    """Primed components of the position relative to the moving origin."""
    return tc.to_prime_components(tc.vec3(x_in_s) - frame.y(t), frame.alpha(t))


def map_position_from_prime(frame: RigidFrameMotion, x_prime, t: float) -> np.ndarray:
    """Inertial position of the point with primed coordinates x_prime."""
    return tc.from_prime_components(x_prime, frame.alpha(t)) + frame.y(t)


def observed_velocity(frame: RigidFrameMotion, flow, x_prime, t: float) -> np.ndarray:
    """Primed components of the fluid velocity as seen from the moving frame.

    The observed velocity V satisfies the composition
    v = y_dot + V + omega x X (all as objective vectors); V is returned in
    primed components.
    """
    st = frame.state(t)
    x_rel = st.alpha @ tc.vec3(x_prime)      # X in unprimed components
    x = x_rel + st.y
    v_obs = flow.velocity(x, t) - st.dy - np.cross(st.omega, x_rel)
    return st.alpha.T @ v_obs


# --------------------------------------------------------------------------
# Built-in frame families
# --------------------------------------------------------------------------

def _poly_funcs(coeffs):
    """Value/first/second derivative callables for ascending poly coeffs."""
    c = np.atleast_1d(np.asarray(coeffs, dtype=float))
    if c.ndim != 1 or c.size > 4:
        raise UsageError("polynomial coefficients must be 1-D with degree <= 3")
    c1 = npoly.polyder(c)
    c2 = npoly.polyder(c, 2)
    return (lambda t: float(npoly.polyval(t, c)),
            lambda t: float(npoly.polyval(t, c1)) if c1.size else 0.0,
            lambda t: float(npoly.polyval(t, c2)) if c2.size else 0.0)


def _vector_poly(coeffs_per_axis):
    rows = [_poly_funcs(c) for c in coeffs_per_axis]
    if len(rows) != 3:
        raise UsageError("expected polynomial coefficients for 3 axes")
    return (lambda t: np.array([r[0](t) for r in rows]),
            lambda t: np.array([r[1](t) for r in rows]),
            lambda t: np.array([r[2](t) for r in rows]))


class _RotationFactor:
    """One factor R(theta(t)) about a fixed axis, with time derivatives."""

    def __init__(self, axis, angle_coeffs):
        n = tc.vec3(axis)
        norm = np.linalg.norm(n)
        if norm == 0.0:
            raise UsageError("rotation axis must be nonzero")
        self.k = tc.skew(n / norm)
        self.k2 = self.k @ self.k
        self.theta, self.dtheta, self.d2theta = _poly_funcs(angle_coeffs)

    def _r(self, th):
        return np.eye(3) + np.sin(th) * self.k + (1.0 - np.cos(th)) * self.k2

    def _dr_dth(self, th):
        return np.cos(th) * self.k + np.sin(th) * self.k2

    def _d2r_dth2(self, th):
        return -np.sin(th) * self.k + np.cos(th) * self.k2

    def value(self, t):
        return self._r(self.theta(t))

    def dt(self, t):
        return self._dr_dth(self.theta(t)) * self.dtheta(t)

    def d2t(self, t):
        th, dth = self.theta(t), self.dtheta(t)
        return self._d2r_dth2(th) * dth * dth + self._dr_dth(th) * self.d2theta(t)


def _product_rotation(factors):
    """alpha(t) and derivatives for an ordered product of rotation factors."""
    def alpha(t):
        m = np.eye(3)
        for f in factors:
            m = m @ f.value(t)
        return m

    def dalpha(t):
        vals = [f.value(t) for f in factors]
        total = np.zeros((3, 3))
        for i, f in enumerate(factors):
            term = np.eye(3)
            for j in range(len(factors)):
                term = term @ (f.dt(t) if j == i else vals[j])
            total += term
        return total

    def d2alpha(t):
        vals = [f.value(t) for f in factors]
        d1 = [f.dt(t) for f in factors]
        d2 = [f.d2t(t) for f in factors]
        n = len(factors)
        total = np.zeros((3, 3))
        for i in range(n):
            term = np.eye(3)
            for j in range(n):
                term = term @ (d2[j] if j == i else vals[j])
            total += term
        for i in range(n):
            for k in range(i + 1, n):
                term = np.eye(3)
                for j in range(n):
                    if j == i or j == k:
                        term = term @ d1[j]
                    else:
                        term = term @ vals[j]
                total += 2.0 * term
        return total

    return alpha, dalpha, d2alpha


_ZERO3 = np.zeros(3)
_EYE3 = np.eye(3)


def identity_frame() -> RigidFrameMotion:
    """The trivial frame: s' coincides with s for all time."""
    return RigidFrameMotion(
        "identity",
        y=lambda t: _ZERO3, alpha=lambda t: _EYE3,
        dy_dt=lambda t: _ZERO3, d2y_dt2=lambda t: _ZERO3,
        dalpha_dt=lambda t: np.zeros((3, 3)),
        d2alpha_dt2=lambda t: np.zeros((3, 3)))


def uniform_translation(velocity) -> RigidFrameMotion:
    """Galilean frame translating at constant velocity, no rotation."""
    v = tc.vec3(velocity)
    return RigidFrameMotion(
        "uniform_translation",
        y=lambda t: v * t, alpha=lambda t: _EYE3,
        dy_dt=lambda t: v, d2y_dt2=lambda t: _ZERO3,
        dalpha_dt=lambda t: np.zeros((3, 3)),
        d2alpha_dt2=lambda t: np.zeros((3, 3)))


def accelerated_translation(coeffs) -> RigidFrameMotion:
    """Translation with per-axis polynomial trajectory (degree <= 3)."""
    y, dy, d2y = _vector_poly(coeffs)
    return RigidFrameMotion(
        "accelerated_translation",
        y=y, alpha=lambda t: _EYE3,
        dy_dt=dy, d2y_dt2=d2y,
        dalpha_dt=lambda t: np.zeros((3, 3)),
        d2alpha_dt2=lambda t: np.zeros((3, 3)))


def _rotation_frame(name, factors, y=None, dy=None, d2y=None) -> RigidFrameMotion:
    alpha, dalpha, d2alpha = _product_rotation(factors)
    return RigidFrameMotion(
        name,
        y=y or (lambda t: _ZERO3), alpha=alpha,
        dy_dt=dy or (lambda t: _ZERO3), d2y_dt2=d2y or (lambda t: _ZERO3),
        dalpha_dt=dalpha, d2alpha_dt2=d2alpha)


def constant_rotation(axis, rate: float) -> RigidFrameMotion:
    """Frame spinning at constant rate about a fixed axis through o."""
    return _rotation_frame(
        "constant_rotation", [_RotationFactor(axis, [0.0, float(rate)])])


def wobble(angles_x, angles_y, angles_z) -> RigidFrameMotion:
    """Rx(a(t)) @ Ry(b(t)) @ Rz(c(t)) with polynomial angles (degree <= 3)."""
    factors = [_RotationFactor([1, 0, 0], angles_x),
               _RotationFactor([0, 1, 0], angles_y),
               _RotationFactor([0, 0, 1], angles_z)]
    return _rotation_frame("wobble", factors)


def screw(axis, rate: float, velocity) -> RigidFrameMotion:
    """Constant rotation about an axis combined with uniform translation."""
    v = tc.vec3(velocity)
    return _rotation_frame(
        "screw", [_RotationFactor(axis, [0.0, float(rate)])],
        y=lambda t: v * t, dy=lambda t: v, d2y=lambda t: _ZERO3)


FRAME_CATALOG = {
    "identity": identity_frame,
    "uniform_translation": uniform_translation,
    "accelerated_translation": accelerated_translation,
    "constant_rotation": constant_rotation,
    "wobble": wobble,
    "screw": screw,
}


def make_frame(name: str, **params) -> RigidFrameMotion:
    """Construct a built-in frame by catalog name."""
    if name not in FRAME_CATALOG:
        raise UsageError(
            f"unknown frame {name!r}; valid frames: {sorted(FRAME_CATALOG)}")
    try:
        return FRAME_CATALOG[name](**params)
    except TypeError as exc:
        raise UsageError(f"bad parameters for frame {name!r}: {exc}") from exc
