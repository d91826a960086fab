"""Imaging functionals over a search grid.

* ``filter``: multi-frequency subspace filter,
  ``(1/F) |sum_f sum_{m<=M_f} (W_D^H U_m)(W_H^H conj(V_m))|``
* ``music``: reciprocal norm of the noise-subspace projection of ``W_D``
* ``kirchhoff``: ``|W_D^H K conj(W_H)|`` at a single frequency

Points are processed in fixed-size chunks with per-point arithmetic only
(``einsum`` without BLAS contraction), so a map is bitwise identical for
any number of worker threads.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyNoiseSubspace, InvalidArgument
from .forward import MSRMatrix, synthesize
from .grid import ImagingGrid
from .spectral import DEFAULT_TAU, SpectralData, svd
from .steering import steering_rows

CHUNK = 2048
MUSIC_CAP = 1e12


@dataclass(frozen=True, eq=False)
class ImagingMap:
    grid: ImagingGrid
    values: np.ndarray
    method: str
    params: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float).reshape(self.grid.shape)
        if not np.all(np.isfinite(values)) or np.any(values < 0):
            raise InvalidArgument("map values must be finite and non-negative")
        object.__setattr__(self, "values", values)

    @property
    def tag(self) -> str:
        inner = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.method}({inner})"

    def argmax(self) -> tuple[float, float]:
        i, j = np.unravel_index(int(np.argmax(self.values)), self.values.shape)
        return float(self.grid.x1[j]), float(self.grid.x2[i])


def _evaluate(func, points, workers=1):
    chunks = [points[i:i + CHUNK] for i in range(0, len(points), CHUNK)]
    if workers is None or workers <= 1 or len(chunks) == 1:
        parts = [func(c) for c in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(func, chunks))
    return np.concatenate(parts)


def _check_points(points):
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if np.any(pts[:, 1] > 0):
        raise InvalidArgument("search points must lie in the lower half-space")
    return pts


def _filter_terms(points, spectra, scenario, cap):
    acc = np.zeros(len(points), dtype=complex)
    for s in spectra:
        m = s.m_hat if cap is None else min(s.m_hat, cap)
        if m == 0:
            continue
        wd = steering_rows(points, s.omega, scenario.obs, scenario.c_d, scenario.medium)
        wh = steering_rows(points, s.omega, scenario.inc, scenario.c_h, scenario.medium)
        left = np.einsum("pn,nm->pm", wd.conj(), s.U[:, :m])
        right = np.einsum("pn,nm->pm", wh.conj(), s.V[:, :m].conj())
        acc += np.sum(left * right, axis=1)
    return acc


def filter_values(points, spectra, scenario, cap=None, workers=1) -> np.ndarray:
    if not spectra:
        raise InvalidArgument("the filter needs at least one frequency")
    pts = _check_points(points)
    count = len(spectra)
    return _evaluate(lambda c: np.abs(_filter_terms(c, spectra, scenario, cap)) / count, pts, workers)


def filter_value(x, spectra: list[SpectralData], scenario, cap=None) -> float:
    """Filter at one point; ``spectra`` carry their frequency and rank."""
    return float(filter_values([x], spectra, scenario, cap)[0])


def music_values(points, s: SpectralData, scenario, cap=MUSIC_CAP, workers=1) -> np.ndarray:
    n_obs = len(scenario.obs)
    if s.m_hat >= n_obs:
        raise EmptyNoiseSubspace(f"signal rank {s.m_hat} leaves no noise subspace in C^{n_obs}")
    pts = _check_points(points)
    Us = s.U[:, :s.m_hat]

    def chunk(c):
        wd = steering_rows(c, s.omega, scenario.obs, scenario.c_d, scenario.medium)
        coef = np.einsum("pn,nm->pm", wd, Us.conj())
        resid = wd - np.einsum("pm,nm->pn", coef, Us)
        norm = np.sqrt(np.sum(resid.real ** 2 + resid.imag ** 2, axis=1))
        with np.errstate(divide="ignore"):
            return np.minimum(1.0 / norm, cap)

    return _evaluate(chunk, pts, workers)


def kirchhoff_values(points, m: MSRMatrix, scenario, workers=1) -> np.ndarray:
    pts = _check_points(points)
    K = np.asarray(m.data)

    def chunk(c):
        wd = steering_rows(c, m.omega, scenario.obs, scenario.c_d, scenario.medium)
        wh = steering_rows(c, m.omega, scenario.inc, scenario.c_h, scenario.medium)
        return np.abs(np.einsum("pn,nl,pl->p", wd.conj(), K, wh.conj()))

    return _evaluate(chunk, pts, workers)


def kirchhoff_values_svd(points, s: SpectralData, scenario) -> np.ndarray:
    """Same functional written as a sum over every singular triple."""
    pts = _check_points(points)
    wd = steering_rows(pts, s.omega, scenario.obs, scenario.c_d, scenario.medium)
    wh = steering_rows(pts, s.omega, scenario.inc, scenario.c_h, scenario.medium)
    left = np.einsum("pn,nm->pm", wd.conj(), s.U)
    right = np.einsum("pn,nm->pm", wh.conj(), s.V.conj())
    return np.abs(np.sum(s.sigma * left * right, axis=1))


def _data(scenario, data):
    return synthesize(scenario) if data is None else list(data)


def _provenance(scenario, used, **extra):
    first = used[0]
    prov = {
        "scenario": scenario.name,
        "seed": scenario.seed if first.noisy else None,
        "snr_db": first.snr_db,
        "omegas": [m.omega for m in used],
    }
    prov.update(extra)
    return prov


def filter_map(scenario, freq_count: int | None = None, grid: ImagingGrid | None = None,
               data=None, tau: float = DEFAULT_TAU, cap: int | None = None,
               workers: int = 1) -> ImagingMap:
    """Filter map from the first ``freq_count`` frequencies of ``data``.

    ``data`` defaults to :func:`synthesize` on the scenario.  The
    per-frequency rank trace is kept in ``provenance["ranks"]``.
    """
    data = _data(scenario, data)
    freq_count = len(data) if freq_count is None else freq_count
    if not 1 <= freq_count <= len(data):
        raise InvalidArgument(f"freq_count must lie in 1..{len(data)}, got {freq_count}")
    grid = scenario.grid if grid is None else grid
    used = data[:freq_count]
    spectra = [svd(m, tau) for m in used]
    values = filter_values(grid.points(), spectra, scenario, cap, workers)
    ranks = [s.m_hat for s in spectra]
    return ImagingMap(grid, values, "filter", {"F": freq_count},
                      _provenance(scenario, used, ranks=ranks, tau=tau))


def _single(data, freq_index):
    if not -len(data) <= freq_index < len(data):
        raise InvalidArgument(f"freq_index {freq_index} out of range for {len(data)} frequencies")
    return data[freq_index]


def music_map(scenario, freq_index: int = 0, grid: ImagingGrid | None = None, data=None,
              tau: float = DEFAULT_TAU, cap: float = MUSIC_CAP, workers: int = 1) -> ImagingMap:
    m = _single(_data(scenario, data), freq_index)
    grid = scenario.grid if grid is None else grid
    s = svd(m, tau)
    values = music_values(grid.points(), s, scenario, cap, workers)
    return ImagingMap(grid, values, "music", {"omega": m.omega, "M": s.m_hat},
                      _provenance(scenario, [m], ranks=[s.m_hat], tau=tau))


def kirchhoff_map(scenario, freq_index: int = 0, grid: ImagingGrid | None = None, data=None,
                  workers: int = 1) -> ImagingMap:
    m = _single(_data(scenario, data), freq_index)
    grid = scenario.grid if grid is None else grid
    values = kirchhoff_values(grid.points(), m, scenario, workers)
    return ImagingMap(grid, values, "kirchhoff", {"omega": m.omega}, _provenance(scenario, [m]))
