"""Multi-static response data from the small-inclusion asymptotic model.

Data are synthesized from the leading-order scattering amplitude, which
is also the model the imaging functionals assume; noise is the only
perturbation.  No full-wave or multiple-scattering solve is attempted.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CannotCalibrateSNR, InvalidArgument
from .medium import LOWER, contrasts, wavenumber, wavenumber_ratio
from .steering import phi_vectors, transmission_coeffs


@dataclass(frozen=True, eq=False)
class MSRMatrix:
    """Complex ``N_obs x N_inc`` matrix at one angular frequency."""

    data: np.ndarray
    omega: float
    seed: object = None
    snr_db: float | None = None

    @property
    def noisy(self) -> bool:
        return self.snr_db is not None

    @property
    def provenance(self) -> str:
        if not self.noisy:
            return "noiseless"
        return f"noisy(seed={self.seed}, snr_db={self.snr_db:g})"

    @property
    def shape(self):
        return self.data.shape


@dataclass(frozen=True, eq=False)
class Factorization:
    """``K = D @ E @ H.T`` with ``E`` real diagonal; 3 columns per inclusion."""

    D: np.ndarray
    E: np.ndarray
    H: np.ndarray

    def product(self) -> np.ndarray:
        return self.D @ self.E @ self.H.T


def _directions_state(directions, scenario):
    medium = scenario.medium
    xi = wavenumber_ratio(medium)
    phi = phi_vectors(directions, xi)
    big_phi = transmission_coeffs(directions, xi, medium.mu_plus, medium.mu_minus)
    return phi, big_phi


def _check_halfspaces(obs_dirs, inc_dirs):
    if np.any(obs_dirs[:, 1] <= 0):
        raise InvalidArgument("observation directions must lie in the upper half-circle")
    if np.any(inc_dirs[:, 1] >= 0):
        raise InvalidArgument("incidence directions must lie in the lower half-circle")


def _amplitudes(obs_dirs, inc_dirs, omega, scenario):
    obs_dirs = np.atleast_2d(np.asarray(obs_dirs, dtype=float))
    inc_dirs = np.atleast_2d(np.asarray(inc_dirs, dtype=float))
    _check_halfspaces(obs_dirs, inc_dirs)
    k_minus = wavenumber(scenario.medium, LOWER, omega)
    phi_o, big_o = _directions_state(obs_dirs, scenario)
    phi_i, big_i = _directions_state(inc_dirs, scenario)
    # unconjugated phi(obs) . phi(inc)
    bilinear = phi_o @ phi_i.T
    total = np.zeros((len(obs_dirs), len(inc_dirs)), dtype=complex)
    for s in scenario.scatterers:
        g_eps, g_mu, pol = contrasts(s, scenario.medium)
        z = np.asarray(s.center)
        out = np.exp(-1j * k_minus * (phi_o @ z))
        back = np.exp(1j * k_minus * (phi_i @ z))
        weight = g_eps * s.area + g_mu * pol * bilinear
        total += s.radius ** 2 * weight * np.outer(out, back)
    return big_o[:, None] * big_i[None, :] * total


def scattering_amplitude(obs_dir, inc_dir, omega: float, scenario) -> complex:
    """Leading-order scattering amplitude for one direction pair."""
    return complex(_amplitudes(obs_dir, inc_dir, omega, scenario)[0, 0])


def assemble_msr(scenario, omega: float) -> MSRMatrix:
    data = _amplitudes(scenario.obs.directions, scenario.inc.directions, omega, scenario)
    return MSRMatrix(data, float(omega))


def assemble_factorization(scenario, omega: float) -> Factorization:
    """Column blocks ``[eps_1..eps_M, mu_1x, mu_1y, .., mu_Mx, mu_My]``.

    The magnetic diagonal carries ``+r^2 gamma_mu pol`` so the product
    matches :func:`assemble_msr` exactly.
    """
    k_minus = wavenumber(scenario.medium, LOWER, omega)
    phi_o, big_o = _directions_state(scenario.obs.directions, scenario)
    phi_i, big_i = _directions_state(scenario.inc.directions, scenario)
    d_eps, d_mu, h_eps, h_mu, e_eps, e_mu = [], [], [], [], [], []
    for s in scenario.scatterers:
        g_eps, g_mu, pol = contrasts(s, scenario.medium)
        z = np.asarray(s.center)
        d_col = big_o * np.exp(-1j * k_minus * (phi_o @ z))
        h_col = big_i * np.exp(1j * k_minus * (phi_i @ z))
        d_eps.append(d_col)
        h_eps.append(h_col)
        e_eps.append(s.radius ** 2 * g_eps * s.area)
        for axis in (0, 1):
            d_mu.append(phi_o[:, axis] * d_col)
            h_mu.append(phi_i[:, axis] * h_col)
            e_mu.append(s.radius ** 2 * g_mu * pol)
    n_obs, n_inc = len(scenario.obs), len(scenario.inc)
    D = np.column_stack(d_eps + d_mu) if d_eps else np.zeros((n_obs, 0), complex)
    H = np.column_stack(h_eps + h_mu) if h_eps else np.zeros((n_inc, 0), complex)
    E = np.diag(np.array(e_eps + e_mu, dtype=float))
    return Factorization(D, E, H)


def add_noise(m: MSRMatrix, snr_db: float, seed) -> MSRMatrix:
    """Add circular complex white Gaussian noise at ``snr_db``.

    Signal power is the mean squared entry magnitude of ``m``; each entry
    receives noise of variance ``P_sig * 10**(-snr_db/10)`` split evenly
    between real and imaginary parts.  ``seed`` is anything accepted by
    :func:`numpy.random.default_rng`.
    """
    if m.noisy:
        raise InvalidArgument("noise is only added to noiseless data")
    if not np.isfinite(snr_db):
        raise InvalidArgument("snr_db must be finite")
    power = float(np.mean(np.abs(m.data) ** 2))
    if power == 0.0:
        raise CannotCalibrateSNR("signal matrix is identically zero; SNR is undefined")
    variance = power * 10.0 ** (-snr_db / 10.0)
    rng = np.random.default_rng(seed)
    noise = rng.standard_normal(m.data.shape) + 1j * rng.standard_normal(m.data.shape)
    noisy = m.data + np.sqrt(variance / 2.0) * noise
    return MSRMatrix(noisy, m.omega, seed=seed, snr_db=float(snr_db))


def frequency_seed(seed: int, index: int) -> list[int]:
    """Per-frequency RNG entropy so each frequency is reproducible on its own."""
    return [int(seed), int(index)]


def synthesize(scenario, seed: int | None = None, snr_db: float | None = None,
               noiseless: bool = False) -> list[MSRMatrix]:
    """MSR matrices at every scenario frequency.

    ``seed``/``snr_db`` override the scenario's noise settings; pass
    ``noiseless=True`` to skip noise altogether.
    """
    seed = scenario.seed if seed is None else seed
    snr_db = scenario.snr_db if snr_db is None else snr_db
    out = []
    for f, omega in enumerate(scenario.frequencies):
        clean = assemble_msr(scenario, omega)
        if noiseless or snr_db is None:
            out.append(clean)
        else:
            out.append(add_noise(clean, snr_db, frequency_seed(seed, f)))
    return out
