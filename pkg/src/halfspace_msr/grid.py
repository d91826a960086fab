"""Rectangular search lattice in the lower half-space."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgument


@dataclass(frozen=True)
class ImagingGrid:
    """Lattice ``x1_min + i*h`` by ``x2_min + j*h``, stored x2-outer, x1-inner."""

    x1_min: float
    x1_max: float
    x2_min: float
    x2_max: float
    step: float

    def __post_init__(self):
        for name in ("x1_min", "x1_max", "x2_min", "x2_max", "step"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise InvalidArgument(f"{name} must be finite")
            object.__setattr__(self, name, value)
        if self.step <= 0:
            raise InvalidArgument("grid step must be positive")
        if self.x1_max < self.x1_min or self.x2_max < self.x2_min:
            raise InvalidArgument("grid bounds are inverted")
        if self.x2_max > 0:
            raise InvalidArgument("the search grid must lie in the lower half-space (x2_max <= 0)")

    @staticmethod
    def _count(lo, hi, h):
        # tolerate representation error in (hi - lo) / h
        return int(math.floor((hi - lo) / h + 1e-9)) + 1

    @property
    def shape(self) -> tuple[int, int]:
        """``(n2, n1)``: rows follow x2, columns follow x1."""
        return (self._count(self.x2_min, self.x2_max, self.step),
                self._count(self.x1_min, self.x1_max, self.step))

    @property
    def size(self) -> int:
        n2, n1 = self.shape
        return n2 * n1

    @property
    def x1(self) -> np.ndarray:
        return np.round(self.x1_min + np.arange(self.shape[1]) * self.step, 12)

    @property
    def x2(self) -> np.ndarray:
        return np.round(self.x2_min + np.arange(self.shape[0]) * self.step, 12)

    def points(self) -> np.ndarray:
        """All lattice points, shape (n2*n1, 2), row-major."""
        x1g, x2g = np.meshgrid(self.x1, self.x2)
        return np.column_stack([x1g.ravel(), x2g.ravel()])


DEFAULT_GRID = ImagingGrid(-3.0, 3.0, -6.0, 0.0, 0.05)
