"""Peak extraction, localization error and seeded method comparison."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyNoiseSubspace, InvalidArgument
from .forward import synthesize
from .imaging import ImagingMap, filter_map, kirchhoff_map, music_map
from .medium import Inhomogeneity, make_frequency_set
from .spectral import DEFAULT_TAU


@dataclass(frozen=True)
class PeakSet:
    peaks: tuple[tuple[tuple[float, float], float], ...]
    k: int
    floor: float

    def __len__(self):
        return len(self.peaks)

    @property
    def points(self) -> list[tuple[float, float]]:
        return [p for p, _ in self.peaks]

    @property
    def values(self) -> list[float]:
        return [v for _, v in self.peaks]


@dataclass(frozen=True)
class ErrorReport:
    """Greedy one-to-one matching of peaks to true centers.

    ``distances[i]`` and ``matched[i]`` refer to ``truths[i]``; both are
    ``None`` when that truth got no peak.
    """

    truths: tuple[tuple[float, float], ...]
    matched: tuple[tuple[float, float] | None, ...]
    distances: tuple[float | None, ...]
    provenance: dict = field(default_factory=dict, compare=False)

    @property
    def unmatched(self) -> int:
        return sum(d is None for d in self.distances)

    @property
    def _found(self):
        return [d for d in self.distances if d is not None]

    @property
    def mean(self) -> float:
        found = self._found
        return float(np.mean(found)) if found else math.nan

    @property
    def max(self) -> float:
        found = self._found
        return float(np.max(found)) if found else math.nan

    @property
    def x2_errors(self) -> list[float | None]:
        return [None if p is None else abs(p[1] - t[1]) for p, t in zip(self.matched, self.truths)]

    @property
    def mean_x2(self) -> float:
        found = [e for e in self.x2_errors if e is not None]
        return float(np.mean(found)) if found else math.nan


def extract_peaks(image: ImagingMap, k: int, floor: float = 0.0) -> PeakSet:
    """Up to ``k`` strict 8-neighbourhood maxima with value >= ``floor``.

    Edge points compare against the neighbours they have.  Ties in value
    are broken by row-major lattice order.
    """
    if k < 1:
        raise InvalidArgument("k must be >= 1")
    a = image.values
    padded = np.pad(a, 1, constant_values=-np.inf)
    n2, n1 = a.shape
    strict = np.ones(a.shape, dtype=bool)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di or dj:
                strict &= a > padded[1 + di:1 + di + n2, 1 + dj:1 + dj + n1]
    strict &= a >= floor
    rows, cols = np.nonzero(strict)
    order = np.argsort(-a[rows, cols], kind="stable")[:k]
    x1, x2 = image.grid.x1, image.grid.x2
    peaks = tuple(((float(x1[cols[i]]), float(x2[rows[i]])), float(a[rows[i], cols[i]])) for i in order)
    return PeakSet(peaks, k, float(floor))


def localization_error(peaks, truth) -> ErrorReport:
    """Repeatedly pair the globally closest unmatched (peak, truth)."""
    points = peaks.points if isinstance(peaks, PeakSet) else [tuple(p) for p in peaks]
    truths = tuple(tuple(float(v) for v in t) for t in truth)
    pairs = sorted(
        (math.dist(p, t), i, j) for i, p in enumerate(points) for j, t in enumerate(truths))
    used_p, matched, dist = set(), [None] * len(truths), [None] * len(truths)
    for d, i, j in pairs:
        if i in used_p or dist[j] is not None:
            continue
        used_p.add(i)
        matched[j] = tuple(points[i])
        dist[j] = d
    return ErrorReport(truths, tuple(matched), tuple(dist))


@dataclass(frozen=True)
class MethodSpec:
    """One imaging method as run by :func:`compare_methods`."""

    name: str
    freq_count: int | None = None
    freq_index: int = 0
    tau: float = DEFAULT_TAU

    def __post_init__(self):
        if self.name not in ("filter", "music", "kirchhoff"):
            raise InvalidArgument(f"unknown method {self.name!r}")

    @property
    def label(self) -> str:
        if self.name == "filter":
            return f"filter(F={self.freq_count if self.freq_count is not None else 'all'})"
        return f"{self.name}(f={self.freq_index})"

    @classmethod
    def parse(cls, text: str, tau: float = DEFAULT_TAU) -> "MethodSpec":
        """``filter:10``, ``kirchhoff:0``, ``music:0`` or a bare name."""
        name, _, arg = text.strip().partition(":")
        try:
            value = int(arg) if arg else None
        except ValueError:
            raise InvalidArgument(f"bad method argument in {text!r}") from None
        if name == "filter":
            return cls(name, freq_count=value, tau=tau)
        return cls(name, freq_index=0 if value is None else value, tau=tau)

    def image(self, scenario, data, workers=1) -> ImagingMap:
        if self.name == "filter":
            return filter_map(scenario, self.freq_count, data=data, tau=self.tau, workers=workers)
        if self.name == "music":
            return music_map(scenario, self.freq_index, data=data, tau=self.tau, workers=workers)
        return kirchhoff_map(scenario, self.freq_index, data=data, workers=workers)


@dataclass(frozen=True)
class ComparisonRow:
    method: str
    seed: int
    report: ErrorReport


@dataclass(frozen=True)
class ComparisonTable:
    methods: tuple[str, ...]
    seeds: tuple[int, ...]
    rows: tuple[ComparisonRow, ...]

    def errors(self, method: str) -> np.ndarray:
        """Per-seed mean matched error of one method."""
        return np.array([r.report.mean for r in self.rows if r.method == method])

    def summary(self) -> dict[str, tuple[float, float]]:
        """``method -> (mean, std)`` of the per-seed mean matched error."""
        out = {}
        for m in self.methods:
            e = self.errors(m)
            out[m] = (float(np.mean(e)), float(np.std(e)))
        return out


def _seed_rows(scenario, specs, seed, k, floor):
    data = synthesize(scenario, seed=seed)
    rows = []
    for spec in specs:
        try:
            peaks = extract_peaks(spec.image(scenario, data), k, floor)
            report = localization_error(peaks, scenario.truths)
        except EmptyNoiseSubspace:
            report = localization_error([], scenario.truths)
        rows.append(ComparisonRow(spec.label, seed, report))
    return rows


def compare_methods(scenario, methods, seeds, k: int | None = None, floor: float = 0.0,
                    workers: int = 1) -> ComparisonTable:
    """Image every seed's noise realization with each method and score it.

    All methods for one seed share the same synthesized data.  Rows are
    ordered by seed index, then by method, regardless of ``workers``.
    """
    seeds = tuple(int(s) for s in seeds)
    if len(seeds) < 2:
        raise InvalidArgument("compare_methods needs at least two seeds")
    specs = [m if isinstance(m, MethodSpec) else MethodSpec.parse(m) for m in methods]
    k = len(scenario.scatterers) if k is None else k

    def run(seed):
        return _seed_rows(scenario, specs, seed, k, floor)

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_seed = list(pool.map(run, seeds))
    else:
        per_seed = [run(s) for s in seeds]
    rows = tuple(r for block in per_seed for r in block)
    return ComparisonTable(tuple(s.label for s in specs), seeds, rows)


@dataclass(frozen=True, eq=False)
class ResolutionResult:
    resolved: bool
    report: ErrorReport
    image: ImagingMap
    scenario: object


def resolution_test(separation: float, lambda_lo: float, lambda_hi: float, base_scenario,
                    center=None, freq_count: int | None = None) -> ResolutionResult:
    """Two identical inclusions ``separation`` apart imaged with the filter.

    Material and radius come from the first inclusion of ``base_scenario``;
    the pair is centred on ``center`` (default: centroid of the base
    inclusions).  Frequencies run from wavelength ``lambda_hi`` down to
    ``lambda_lo`` using the base spacing mode.  The pair counts as resolved
    when both centres are matched within ``separation / 4``.
    """
    if separation <= 0:
        raise InvalidArgument("separation must be positive")
    if not 0 < lambda_lo <= lambda_hi:
        raise InvalidArgument("need 0 < lambda_lo <= lambda_hi")
    template = base_scenario.scatterers[0]
    if center is None:
        center = np.mean([s.center for s in base_scenario.scatterers], axis=0)
    cx, cz = float(center[0]), float(center[1])
    half = separation / 2.0
    pair = tuple(Inhomogeneity((cx + dx, cz), template.radius, template.eps, template.mu, template.area)
                 for dx in (-half, half))
    count = len(base_scenario.frequencies)
    freqs = make_frequency_set(2 * math.pi / lambda_hi, 2 * math.pi / lambda_lo, count,
                               base_scenario.frequencies.mode)
    scenario = base_scenario.with_(scatterers=pair, frequencies=freqs)
    image = filter_map(scenario, freq_count)
    report = localization_error(extract_peaks(image, 2), scenario.truths)
    resolved = report.unmatched == 0 and all(d <= separation / 4 + 1e-12 for d in report.distances)
    return ResolutionResult(resolved, report, image, scenario)
