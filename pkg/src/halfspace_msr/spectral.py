"""Singular value decomposition of MSR matrices and signal-rank estimation."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgument
from .forward import MSRMatrix

DEFAULT_TAU = 0.1


@dataclass(frozen=True, eq=False)
class SpectralData:
    """Thin SVD ``K = U diag(sigma) V^H`` with an estimated signal rank.

    ``V`` holds right singular vectors as columns (not ``V^H``).
    """

    U: np.ndarray
    sigma: np.ndarray
    V: np.ndarray
    m_hat: int
    source: MSRMatrix | None = None

    @property
    def omega(self) -> float | None:
        return None if self.source is None else self.source.omega

    @property
    def p(self) -> int:
        return len(self.sigma)

    def reconstruct(self, rank: int | None = None) -> np.ndarray:
        rank = self.p if rank is None else rank
        return (self.U[:, :rank] * self.sigma[:rank]) @ self.V[:, :rank].conj().T


def estimate_signal_rank(sigma, tau: float = DEFAULT_TAU) -> int:
    """Number of singular values at or above ``tau * sigma[0]``."""
    sigma = np.asarray(sigma, dtype=float)
    if sigma.ndim != 1 or sigma.size == 0:
        raise InvalidArgument("sigma must be a non-empty 1-D sequence")
    if not 0.0 < tau < 1.0:
        raise InvalidArgument(f"tau must lie in (0, 1), got {tau}")
    if np.any(np.diff(sigma) > 0):
        raise InvalidArgument("singular values must be sorted in descending order")
    if sigma[0] <= 0.0:
        return 0
    return int(np.count_nonzero(sigma >= tau * sigma[0]))


def svd(m, tau: float = DEFAULT_TAU) -> SpectralData:
    source = m if isinstance(m, MSRMatrix) else None
    data = np.asarray(m.data if source is not None else m, dtype=complex)
    if data.ndim != 2:
        raise InvalidArgument("expected a 2-D matrix")
    if not np.all(np.isfinite(data)):
        raise InvalidArgument("matrix has non-finite entries")
    U, sigma, Vh = np.linalg.svd(data, full_matrices=False)
    return SpectralData(U, sigma, Vh.conj().T, estimate_signal_rank(sigma, tau), source)


def signal_subspace(s: SpectralData, m_hat: int):
    """First ``m_hat`` left/right singular vectors and values."""
    if not 0 < m_hat <= s.p:
        raise InvalidArgument(f"m_hat must lie in 1..{s.p}, got {m_hat}")
    return s.U[:, :m_hat], s.V[:, :m_hat], s.sigma[:m_hat]
