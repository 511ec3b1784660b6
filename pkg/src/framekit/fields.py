"""Manufactured analytic flow and scalar fields in the inertial frame.

Every catalog entry carries hand-derived derivatives that serve as exact
oracles for the numerical operators.  Jacobians use the package-wide
convention J[k, i] = d v_i / d x_k (derivative direction on the row).

Fields are steady by default; a modulation factor (1 + mod_amp *
sin(mod_freq * t)) multiplies the whole field so the Eulerian time terms
of substantial derivatives are exercised with nonzero values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import tensor_core as tc
from .errors import UsageError
from .frames import RigidFrameMotion, observed_velocity


@dataclass(frozen=True)
class FlowField:
    """Analytic velocity field with exact space and time derivatives."""
    name: str
    velocity: Callable    # (x, t) -> (3,)  [m/s]
    jacobian: Callable    # (x, t) -> (3,3) with J[k,i] = d v_i / d x_k  [1/s]
    dv_dt: Callable       # (x, t) -> (3,)  Eulerian time derivative [m/s^2]
    visc_div: Callable    # (x, t) -> (3,)  div(grad v + (grad v)^T)  [m/s per m^2]


@dataclass(frozen=True)
class ScalarField:
    """Analytic scalar field (temperature, pressure) with exact derivatives."""
    name: str
    value: Callable       # (x, t) -> float
    gradient: Callable    # (x, t) -> (3,)
    dT_dt: Callable       # (x, t) -> float


@dataclass(frozen=True)
class ObservedVectorField:
    """Primed components of the flow as seen from a moving frame."""
    frame: RigidFrameMotion
    flow: FlowField

    def __call__(self, x_prime, t: float) -> np.ndarray:
        return observed_velocity(self.frame, self.flow, x_prime, t)


@dataclass(frozen=True)
class ObservedScalarField:
    """A scalar field read off at moving-frame coordinates."""
    frame: RigidFrameMotion
    scalar: ScalarField

    def __call__(self, x_prime, t: float) -> float:
        st = self.frame.state(t)
        x = st.alpha @ tc.vec3(x_prime) + st.y
        return self.scalar.value(x, t)


def pull_back_velocity(frame: RigidFrameMotion, flow: FlowField) -> ObservedVectorField:
    """Package the observed velocity as a field over (X', t)."""
    return ObservedVectorField(frame, flow)


def pull_back_scalar(frame: RigidFrameMotion, scalar: ScalarField) -> ObservedScalarField:
    """Package the scalar, evaluated at the mapped inertial point."""
    return ObservedScalarField(frame, scalar)


# --------------------------------------------------------------------------
# Catalog
# --------------------------------------------------------------------------

def _modulation(mod_amp: float, mod_freq: float):
    if mod_amp == 0.0:
        return (lambda t: 1.0), (lambda t: 0.0)
    return (lambda t: 1.0 + mod_amp * np.sin(mod_freq * t),
            lambda t: mod_amp * mod_freq * np.cos(mod_freq * t))


def _steady_flow(name, v0, j0, visc0, mod_amp, mod_freq) -> FlowField:
    """Lift steady closed forms to a (possibly time-modulated) FlowField."""
    m, dm = _modulation(float(mod_amp), float(mod_freq))
    return FlowField(
        name=name,
        velocity=lambda x, t: m(t) * v0(x),
        jacobian=lambda x, t: m(t) * j0(x),
        dv_dt=lambda x, t: dm(t) * v0(x),
        visc_div=lambda x, t: m(t) * visc0(x))


def _steady_scalar(name, f0, g0, mod_amp, mod_freq) -> ScalarField:
    m, dm = _modulation(float(mod_amp), float(mod_freq))
    return ScalarField(
        name=name,
        value=lambda x, t: m(t) * f0(x),
        gradient=lambda x, t: m(t) * g0(x),
        dT_dt=lambda x, t: dm(t) * f0(x))


def uniform_flow(velocity=(1.0, 0.0, 0.0), mod_amp=0.0, mod_freq=1.0) -> FlowField:
    """Constant velocity everywhere: irrotational, shear-free."""
    u = tc.vec3(velocity)
    z3, z33 = np.zeros(3), np.zeros((3, 3))
    return _steady_flow("uniform", lambda x: u, lambda x: z33,
                        lambda x: z3, mod_amp, mod_freq)


def shear_flow(rate=3.0, mod_amp=0.0, mod_freq=1.0) -> FlowField:
    """Plane shear v = (rate * x2, 0, 0)."""
    g = float(rate)

    def j0(x):
        j = np.zeros((3, 3))
        j[1, 0] = g              # d v_1 / d x_2
        return j

    return _steady_flow("shear", lambda x: np.array([g * x[1], 0.0, 0.0]),
                        j0, lambda x: np.zeros(3), mod_amp, mod_freq)


def rigid_rotation_flow(omega=(0.0, 0.0, 2.0), mod_amp=0.0, mod_freq=1.0) -> FlowField:
    """Solid-body rotation v = omega x x: zero divergence and strain rate."""
    w = tc.vec3(omega)
    j = -tc.skew(w)              # J[k,i] = d_k (w x x)_i = skew(w).T = -skew(w)
    return _steady_flow("rigid_rotation", lambda x: np.cross(w, x),
                        lambda x: j, lambda x: np.zeros(3), mod_amp, mod_freq)


def taylor_green_flow(amplitude=1.0, wavenumber=1.0, mod_amp=0.0, mod_freq=1.0) -> FlowField:
    """2-D Taylor-Green cell: incompressible, smooth, nontrivial Laplacian."""
    a, k = float(amplitude), float(wavenumber)

    def v0(x):
        return np.array([a * np.cos(k * x[0]) * np.sin(k * x[1]),
                         -a * np.sin(k * x[0]) * np.cos(k * x[1]),
                         0.0])

    def j0(x):
        s1, c1 = np.sin(k * x[0]), np.cos(k * x[0])
        s2, c2 = np.sin(k * x[1]), np.cos(k * x[1])
        j = np.zeros((3, 3))
        j[0, 0] = -a * k * s1 * s2    # d v_1 / d x_1
        j[1, 0] = a * k * c1 * c2     # d v_1 / d x_2
        j[0, 1] = -a * k * c1 * c2    # d v_2 / d x_1
        j[1, 1] = a * k * s1 * s2     # d v_2 / d x_2
        return j

    # Divergence-free, so div(grad v + grad v^T) reduces to the Laplacian.
    def visc0(x):
        return -2.0 * k * k * v0(x)

    return _steady_flow("taylor_green", v0, j0, visc0, mod_amp, mod_freq)


def poly_linear_flow(scale=1.0, mod_amp=0.0, mod_freq=1.0) -> FlowField:
    """v = scale * (x1, x2, x3): constant divergence 3*scale, zero curl."""
    c = float(scale)
    j = c * np.eye(3)
    return _steady_flow("poly_linear", lambda x: c * np.asarray(x, dtype=float),
                        lambda x: j, lambda x: np.zeros(3), mod_amp, mod_freq)


def gaussian_scalar(amplitude=1.0, width=0.8, center=(0.0, 0.0, 0.0),
                    mod_amp=0.0, mod_freq=1.0) -> ScalarField:
    """Gaussian bump with nonuniform gradient."""
    a, w = float(amplitude), float(width)
    if w <= 0.0:
        raise UsageError("gaussian width must be positive")
    c = tc.vec3(center)

    def f0(x):
        r = np.asarray(x, dtype=float) - c
        return a * np.exp(-0.5 * float(r @ r) / (w * w))

    def g0(x):
        r = np.asarray(x, dtype=float) - c
        return -f0(x) / (w * w) * r

    return _steady_scalar("gaussian_T", f0, g0, mod_amp, mod_freq)


def linear_scalar(coeffs=(1.0, -2.0, 0.5), offset=0.0,
                  mod_amp=0.0, mod_freq=1.0) -> ScalarField:
    """Affine scalar T = coeffs . x + offset with constant gradient."""
    c = tc.vec3(coeffs)
    b = float(offset)
    return _steady_scalar("linear_T", lambda x: float(c @ np.asarray(x, dtype=float)) + b,
                          lambda x: c, mod_amp, mod_freq)


FIELD_CATALOG = {
    "uniform": uniform_flow,
    "shear": shear_flow,
    "rigid_rotation": rigid_rotation_flow,
    "taylor_green": taylor_green_flow,
    "poly_linear": poly_linear_flow,
    "gaussian_T": gaussian_scalar,
    "linear_T": linear_scalar,
}


def make_field(name: str, **params):
    """Construct a catalog field (flow or scalar) by id."""
    if name not in FIELD_CATALOG:
        raise UsageError(
            f"unknown field {name!r}; valid fields: {sorted(FIELD_CATALOG)}")
    try:
        return FIELD_CATALOG[name](**params)
    except TypeError as exc:
        raise UsageError(f"bad parameters for field {name!r}: {exc}") from exc
