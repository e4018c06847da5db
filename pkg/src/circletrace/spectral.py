"""Singular values, Hermitian spectra, weak-Schatten quasinorms, decay fits."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, SpectralError
from .operators import TruncatedOperator

__all__ = [
    "SingularSpectrum",
    "singular_values",
    "weak_quasinorm",
    "decay_slope",
    "hermitian_eigenvalues",
]


@dataclass(frozen=True)
class SingularSpectrum:
    """Nonincreasing nonnegative singular values mu_k, k from 0."""

    mu: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.mu, dtype=float)
        if arr.ndim != 1:
            raise ParameterError("singular spectrum must be 1-d")
        if arr.size and (np.any(arr < 0) or not np.all(np.isfinite(arr))):
            raise ParameterError("singular values must be finite and nonnegative")
        if np.any(np.diff(arr) > 0):
            arr = np.sort(arr)[::-1].copy()
        arr.setflags(write=False)
        object.__setattr__(self, "mu", arr)

    def __len__(self) -> int:
        return self.mu.size


def singular_values(op: TruncatedOperator) -> SingularSpectrum:
    """Full SVD spectrum; decomposition failure raises, never returns zeros."""
    try:
        mu = np.linalg.svd(op.matrix, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise SpectralError(f"singular value decomposition failed: {exc}") from exc
    return SingularSpectrum(mu)


def weak_quasinorm(spectrum: SingularSpectrum, p: float) -> float:
    """sup_k (1+k)^(1/p) * mu_k over the truncated spectrum."""
    if p < 1:
        raise ParameterError(f"weak Schatten exponent must be >= 1, got {p}")
    if len(spectrum) == 0:
        return 0.0
    k = np.arange(len(spectrum), dtype=float)
    return float(np.max((1.0 + k) ** (1.0 / p) * spectrum.mu))


def decay_slope(
    spectrum: SingularSpectrum, k_lo: int, k_hi: int, samples: int = 64
) -> float:
    """Least-squares slope of log mu_k against log k for k in [k_lo, k_hi).

    The fit points are log-uniformly subsampled (up to ``samples`` indices)
    so that the plateaus of lacunary spectra enter with equal weight per
    octave instead of per index; ``samples=0`` fits every index densely.
    Exact power laws give the same slope either way.
    """
    if not (1 <= k_lo < k_hi <= len(spectrum)):
        raise ParameterError(
            f"window [{k_lo}, {k_hi}) out of range for spectrum of length {len(spectrum)}"
        )
    window = spectrum.mu[k_lo:k_hi]
    if np.any(window <= 0):
        raise ParameterError("zero singular values inside the fit window")
    if samples:
        ks = np.unique(
            np.round(
                np.exp(np.linspace(np.log(k_lo), np.log(k_hi - 1), samples))
            ).astype(int)
        )
        ks = ks[(ks >= k_lo) & (ks < k_hi)]
    else:
        ks = np.arange(k_lo, k_hi)
    slope, _ = np.polyfit(np.log(ks.astype(float)), np.log(spectrum.mu[ks]), 1)
    return float(slope)


def hermitian_eigenvalues(
    op: TruncatedOperator, use_hermitian_part: bool = False, tol: float = 1e-10
) -> np.ndarray:
    """Real eigenvalues sorted by decreasing modulus, positive first on ties.

    The input must be Hermitian to within ``tol`` entrywise unless
    ``use_hermitian_part`` asks for the eigenvalues of (G + G^H)/2.
    """
    if op.row_basis != op.col_basis:
        raise ParameterError("eigenvalues need identical row and column bases")
    mat = op.matrix
    defect = float(np.max(np.abs(mat - mat.conj().T), initial=0.0))
    if use_hermitian_part:
        mat = (mat + mat.conj().T) / 2.0
    elif defect > tol:
        raise ParameterError(
            f"matrix is not Hermitian (defect {defect:.3e}); "
            "pass use_hermitian_part=True for the symmetrized spectrum"
        )
    try:
        eigs = np.linalg.eigvalsh(mat)
    except np.linalg.LinAlgError as exc:
        raise SpectralError(f"eigenvalue decomposition failed: {exc}") from exc
    order = np.lexsort((-eigs, -np.abs(eigs)))
    return eigs[order]
