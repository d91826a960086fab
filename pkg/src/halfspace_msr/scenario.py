"""Complete description of one experiment."""
from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ScenarioError
from .grid import DEFAULT_GRID, ImagingGrid
from .medium import FrequencySet, Inhomogeneity, LayeredMedium, wavenumber_ratio
from .steering import INCIDENCE, OBSERVATION, SensorArray, phi_vectors, transmission_coeffs

# relative size below which c.(1, phi) or Phi counts as vanishing
SELECTION_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Scenario:
    medium: LayeredMedium
    scatterers: tuple[Inhomogeneity, ...]
    obs: SensorArray
    inc: SensorArray
    frequencies: FrequencySet
    c_d: tuple[float, float, float] = (1.0, 0.0, 0.0)
    c_h: tuple[float, float, float] | None = None
    snr_db: float | None = None
    seed: int = 0
    grid: ImagingGrid = DEFAULT_GRID
    method: dict = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "scatterers", tuple(self.scatterers))
        c_d = _test_vector(self.c_d, "test_vectors.c_d")
        c_h = c_d if self.c_h is None else _test_vector(self.c_h, "test_vectors.c_h")
        object.__setattr__(self, "c_d", c_d)
        object.__setattr__(self, "c_h", c_h)
        if self.obs.role != OBSERVATION:
            raise ScenarioError("arrays.observation", "must be an observation array")
        if self.inc.role != INCIDENCE:
            raise ScenarioError("arrays.incidence", "must be an incidence array")
        if self.snr_db is not None and not np.isfinite(self.snr_db):
            raise ScenarioError("noise.snr_db", "must be finite")
        # phi and Phi do not depend on omega, so one pass covers every frequency
        xi = wavenumber_ratio(self.medium)
        for array, c, path in ((self.obs, c_d, "test_vectors.c_d"), (self.inc, c_h, "test_vectors.c_h")):
            phi = phi_vectors(array.directions, xi)
            big_phi = transmission_coeffs(array.directions, xi, self.medium.mu_plus, self.medium.mu_minus)
            dots = c[0] + c[1] * phi[:, 0] + c[2] * phi[:, 1]
            scale = np.linalg.norm(c)
            bad = np.flatnonzero((np.abs(dots) <= SELECTION_TOL * scale) | (np.abs(big_phi) <= SELECTION_TOL))
            if bad.size:
                raise ScenarioError(
                    path, f"selection condition c.(1, phi) != 0 and Phi != 0 fails for "
                          f"{array.role} direction index {int(bad[0])}")

    @property
    def truths(self) -> list[tuple[float, float]]:
        return [s.center for s in self.scatterers]

    def with_(self, **changes) -> "Scenario":
        return replace(self, **changes)


def _test_vector(c, path):
    try:
        c = tuple(float(v) for v in c)
    except (TypeError, ValueError):
        raise ScenarioError(path, "must be a list of three numbers") from None
    if len(c) != 3 or not all(np.isfinite(c)):
        raise ScenarioError(path, "must be a finite real 3-vector")
    if not any(c):
        raise ScenarioError(path, "must be nonzero (selection condition)")
    return c
