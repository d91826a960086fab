"""Two-layered background, buried inclusions and frequency sets.

The upper half-space ``x2 > 0`` holds the sources and receivers; every
inclusion sits strictly inside the lower half-space ``x2 < 0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgument

UPPER = "upper"
LOWER = "lower"

LINEAR_OMEGA = "linear-in-omega"
LINEAR_LAMBDA = "linear-in-lambda"
SPACING_MODES = (LINEAR_OMEGA, LINEAR_LAMBDA)

UNIT_DISK_AREA = math.pi


def _positive_finite(name, value):
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise InvalidArgument(f"{name} must be positive and finite, got {value!r}")
    return value


@dataclass(frozen=True)
class LayeredMedium:
    """Relative permittivity and permeability of both half-spaces."""

    eps_plus: float
    eps_minus: float
    mu_plus: float = 1.0
    mu_minus: float = 1.0

    def __post_init__(self):
        for name in ("eps_plus", "eps_minus", "mu_plus", "mu_minus"):
            object.__setattr__(self, name, _positive_finite(name, getattr(self, name)))

    @property
    def xi(self) -> float:
        return wavenumber_ratio(self)


@dataclass(frozen=True)
class Inhomogeneity:
    """A small disk ``center + radius * B`` with B the unit disk."""

    center: tuple[float, float]
    radius: float
    eps: float = 1.0
    mu: float = 1.0
    area: float = UNIT_DISK_AREA

    def __post_init__(self):
        center = tuple(float(c) for c in self.center)
        if len(center) != 2 or not all(math.isfinite(c) for c in center):
            raise InvalidArgument(f"center must be a finite 2-vector, got {self.center!r}")
        if center[1] >= 0.0:
            raise InvalidArgument(f"center must lie in the lower half-space (x2 < 0), got {center}")
        object.__setattr__(self, "center", center)
        for name in ("radius", "eps", "mu", "area"):
            object.__setattr__(self, name, _positive_finite(name, getattr(self, name)))


@dataclass(frozen=True)
class FrequencySet:
    omegas: tuple[float, ...]
    mode: str = LINEAR_OMEGA

    def __post_init__(self):
        omegas = tuple(float(w) for w in self.omegas)
        if not omegas:
            raise InvalidArgument("frequency set is empty")
        if any(not math.isfinite(w) or w <= 0 for w in omegas):
            raise InvalidArgument("angular frequencies must be positive and finite")
        if any(b <= a for a, b in zip(omegas, omegas[1:])):
            raise InvalidArgument("angular frequencies must be strictly increasing")
        if self.mode not in SPACING_MODES:
            raise InvalidArgument(f"unknown spacing mode {self.mode!r}")
        object.__setattr__(self, "omegas", omegas)

    def __len__(self):
        return len(self.omegas)

    def __getitem__(self, index):
        return self.omegas[index]

    def __iter__(self):
        return iter(self.omegas)

    @property
    def wavelengths(self) -> tuple[float, ...]:
        return tuple(2.0 * math.pi / w for w in self.omegas)

    def head(self, count: int) -> "FrequencySet":
        """The first ``count`` frequencies."""
        if not 1 <= count <= len(self.omegas):
            raise InvalidArgument(f"frequency count {count} outside 1..{len(self.omegas)}")
        return FrequencySet(self.omegas[:count], self.mode)


def wavenumber(medium: LayeredMedium, halfspace: str, omega: float) -> float:
    """``omega * sqrt(eps * mu)`` of the requested half-space."""
    if not omega > 0:
        raise InvalidArgument(f"omega must be positive, got {omega!r}")
    if halfspace == UPPER:
        return omega * math.sqrt(medium.eps_plus * medium.mu_plus)
    if halfspace == LOWER:
        return omega * math.sqrt(medium.eps_minus * medium.mu_minus)
    raise InvalidArgument(f"halfspace must be {UPPER!r} or {LOWER!r}, got {halfspace!r}")


def wavenumber_ratio(medium: LayeredMedium) -> float:
    # k+/k- does not depend on omega: both scale linearly in it
    return math.sqrt(medium.eps_plus * medium.mu_plus / (medium.eps_minus * medium.mu_minus))


def contrasts(s: Inhomogeneity, medium: LayeredMedium) -> tuple[float, float, float]:
    """Return ``(gamma_eps, gamma_mu, pol_scalar)`` for one inclusion.

    ``pol_scalar`` is the diagonal entry of the isotropic polarization
    tensor ``2 mu_- |B| / (mu_- + mu_m) * I``.
    """
    gamma_eps = s.eps / medium.eps_minus - 1.0
    gamma_mu = s.mu / medium.mu_minus - 1.0
    # ratio first so a matched inclusion gives exactly |B|
    pol_scalar = (2.0 * medium.mu_minus / (medium.mu_minus + s.mu)) * s.area
    return gamma_eps, gamma_mu, pol_scalar


def make_frequency_set(omega_min: float, omega_max: float, count: int,
                       mode: str = LINEAR_OMEGA) -> FrequencySet:
    """Equispaced frequencies between ``omega_min`` and ``omega_max``.

    In ``linear-in-lambda`` mode the wavelengths ``2 pi / omega`` are
    equispaced instead, which places the samples densely at low omega.
    """
    if count < 1:
        raise InvalidArgument(f"frequency count must be >= 1, got {count}")
    if not 0 < omega_min <= omega_max:
        raise InvalidArgument(f"need 0 < omega_min <= omega_max, got {omega_min}, {omega_max}")
    if mode not in SPACING_MODES:
        raise InvalidArgument(f"unknown spacing mode {mode!r}")
    if count == 1:
        return FrequencySet((float(omega_min),), mode)
    if omega_min == omega_max:
        raise InvalidArgument("a degenerate interval admits a single frequency only")
    if mode == LINEAR_OMEGA:
        omegas = omega_min + np.arange(count) * (omega_max - omega_min) / (count - 1)
    else:
        lam_max = 2.0 * math.pi / omega_min
        lam_min = 2.0 * math.pi / omega_max
        lam = lam_max - np.arange(count) * (lam_max - lam_min) / (count - 1)
        omegas = 2.0 * math.pi / lam
    return FrequencySet(tuple(omegas.tolist()), mode)
