"""Direction sets and plane-wave steering across the interface.

A direction ``theta`` in the upper half-space is bent into the lower one
along ``phi(theta) = (xi*theta1, sign(theta2)*sqrt(1 - xi^2 theta1^2))``
and its amplitude is scaled by the transmission coefficient ``Phi``.
When ``xi*|theta1| > 1`` the transmitted wave is evanescent and the square
root becomes ``i*sqrt(xi^2 theta1^2 - 1)``, which makes the steering
entries decay with depth.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DegenerateSteering, InvalidArgument
from .medium import LOWER, LayeredMedium, wavenumber, wavenumber_ratio

OBSERVATION = "observation"
INCIDENCE = "incidence"

_UNIT_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class SensorArray:
    """Ordered unit directions; observation points up, incidence points down."""

    role: str
    directions: np.ndarray
    angles: np.ndarray
    angle_min: float
    angle_max: float

    def __post_init__(self):
        if self.role not in (OBSERVATION, INCIDENCE):
            raise InvalidArgument(f"unknown array role {self.role!r}")
        dirs = np.asarray(self.directions, dtype=float)
        if dirs.ndim != 2 or dirs.shape[1] != 2 or len(dirs) < 1:
            raise InvalidArgument("directions must have shape (N, 2)")
        if np.any(np.abs(np.hypot(dirs[:, 0], dirs[:, 1]) - 1.0) > _UNIT_TOL):
            raise InvalidArgument("every direction must have unit norm")
        expected = 1.0 if self.role == OBSERVATION else -1.0
        if np.any(np.sign(dirs[:, 1]) != expected):
            half = "upper" if self.role == OBSERVATION else "lower"
            raise InvalidArgument(f"{self.role} directions must point into the {half} half-space")
        dirs.setflags(write=False)
        angles = np.asarray(self.angles, dtype=float)
        angles.setflags(write=False)
        object.__setattr__(self, "directions", dirs)
        object.__setattr__(self, "angles", angles)

    def __len__(self):
        return len(self.directions)


@dataclass(frozen=True, eq=False)
class SteeringVector:
    values: np.ndarray
    x: tuple[float, float]
    omega: float
    role: str

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.values))


def make_direction_set(role: str, count: int, angle_min: float, angle_max: float) -> SensorArray:
    """Equispaced angles on ``[angle_min, angle_max]`` (both endpoints kept).

    Observation directions are ``(cos a, sin a)``; incidence directions
    are ``-(cos a, sin a)``, so both arrays share the same angle law.
    """
    if count < 2:
        raise InvalidArgument(f"need at least 2 directions, got {count}")
    if not 0.0 < angle_min < angle_max < math.pi:
        raise InvalidArgument(
            f"angle range must satisfy 0 < min < max < pi, got [{angle_min}, {angle_max}]")
    angles = angle_min + np.arange(count) * (angle_max - angle_min) / (count - 1)
    dirs = np.column_stack([np.cos(angles), np.sin(angles)])
    if role == INCIDENCE:
        dirs = -dirs
    elif role != OBSERVATION:
        raise InvalidArgument(f"unknown array role {role!r}")
    return SensorArray(role, dirs, angles, float(angle_min), float(angle_max))


def _as_directions(direction):
    dirs = np.atleast_2d(np.asarray(direction, dtype=float))
    if dirs.shape[-1] != 2:
        raise InvalidArgument("directions must be 2-vectors")
    if np.any(dirs[:, 1] == 0.0):
        raise InvalidArgument("direction on the interface (theta2 = 0) has no defined sign")
    return dirs


def _vertical_root(dirs, xi):
    # sqrt(1 - t^2) on the propagating branch, i*sqrt(t^2 - 1) beyond it
    t2 = (xi * dirs[:, 0]) ** 2
    root = np.where(t2 <= 1.0,
                    np.sqrt(np.clip(1.0 - t2, 0.0, None)) + 0j,
                    1j * np.sqrt(np.clip(t2 - 1.0, 0.0, None)))
    return np.sign(dirs[:, 1]) * root


def phi_vectors(dirs, xi: float) -> np.ndarray:
    """Transmitted directions for an (N, 2) array of unit vectors, shape (N, 2)."""
    dirs = _as_directions(dirs)
    return np.column_stack([xi * dirs[:, 0] + 0j, _vertical_root(dirs, xi)])


def transmission_coeffs(dirs, xi: float, mu_plus: float, mu_minus: float) -> np.ndarray:
    dirs = _as_directions(dirs)
    num = 2.0 * mu_minus * xi * dirs[:, 1]
    return num / (mu_minus * xi * dirs[:, 1] + mu_plus * _vertical_root(dirs, xi))


def phi_vector(direction, xi: float) -> np.ndarray:
    return phi_vectors(direction, xi)[0]


def transmission_coeff(direction, xi: float, mu_plus: float, mu_minus: float) -> complex:
    return complex(transmission_coeffs(direction, xi, mu_plus, mu_minus)[0])


def array_weights(array: SensorArray, c, medium: LayeredMedium):
    """Per-direction amplitude ``c . (1, phi) * Phi`` and the transmitted directions."""
    xi = wavenumber_ratio(medium)
    phi = phi_vectors(array.directions, xi)
    big_phi = transmission_coeffs(array.directions, xi, medium.mu_plus, medium.mu_minus)
    c = np.asarray(c, dtype=float)
    amp = (c[0] + c[1] * phi[:, 0] + c[2] * phi[:, 1]) * big_phi
    return amp, phi


def steering_rows(points, omega: float, array: SensorArray, c, medium: LayeredMedium,
                  normalized: bool = True) -> np.ndarray:
    """Steering vectors for many points at once, shape (P, N).

    Observation arrays use ``exp(-i k_- phi . x)``, incidence arrays
    ``exp(+i k_- phi . x)``.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    amp, phi = array_weights(array, c, medium)
    sign = -1.0 if array.role == OBSERVATION else 1.0
    k_minus = wavenumber(medium, LOWER, omega)
    # bilinear phi . x, complex on the evanescent branch
    proj = pts[:, :1] * phi[None, :, 0] + pts[:, 1:2] * phi[None, :, 1]
    rows = amp[None, :] * np.exp(sign * 1j * k_minus * proj)
    if not normalized:
        return rows
    norms = np.sqrt(np.sum(rows.real ** 2 + rows.imag ** 2, axis=1))
    if np.any(norms == 0.0):
        raise DegenerateSteering("steering vector vanishes at some search point")
    return rows / norms[:, None]


def _steering(x, omega, array, c, medium, role):
    if array.role != role:
        raise InvalidArgument(f"expected an {role} array, got {array.role}")
    values = steering_rows(x, omega, array, c, medium, normalized=False)[0]
    if not np.any(values):
        raise DegenerateSteering(f"{role} steering vector vanishes at x={tuple(x)}")
    return SteeringVector(values, tuple(float(v) for v in x), float(omega), role)


def steering_d(x, omega: float, obs: SensorArray, c_d, medium: LayeredMedium) -> SteeringVector:
    return _steering(x, omega, obs, c_d, medium, OBSERVATION)


def steering_h(x, omega: float, inc: SensorArray, c_h, medium: LayeredMedium) -> SteeringVector:
    return _steering(x, omega, inc, c_h, medium, INCIDENCE)


def normalize(v):
    """Scale to unit Euclidean norm; accepts a SteeringVector or a plain array."""
    values = v.values if isinstance(v, SteeringVector) else np.asarray(v, dtype=complex)
    norm = np.linalg.norm(values)
    if norm == 0.0:
        raise DegenerateSteering("cannot normalize a zero vector")
    if isinstance(v, SteeringVector):
        return replace(v, values=values / norm)
    return values / norm
