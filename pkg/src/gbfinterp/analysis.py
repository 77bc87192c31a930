"""Norming sets, interpolation error bounds and stability diagnostics.

A sampling set W is norming for the space of M-bandlimited signals when
sampling on W controls the whole signal; the quantitative handle is the
contraction factor rho of "project to the bandlimited space, erase the
samples, project again". From rho (or directly from the smallest singular
value of the eigenvector submatrix on W) come the norming constants that
enter the a priori interpolation error bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basis import GBF, kernel_columns
from .errors import (
    BandwidthOutOfRangeError,
    DimensionMismatchError,
    InvalidParamError,
    InvalidRateError,
    NotNormingError,
)
from .interpolation import SamplingSet, interpolate, native_norm
from .spectral import Spectrum

# Margin below 1 that rho must clear for the Neumann-series constant.
NORMING_MARGIN = 1e-10

# Singular values below this count as zero when inverting for the exact
# norming constant.
_SINGULAR_FLOOR = 1e-12


@dataclass(frozen=True)
class NormingReport:
    """Outcome of a norming-set check for bandwidth ``m`` on one sampling set.

    ``rho`` is the norm of the projected-erase-project operator;
    ``constant_bound`` is the Neumann-series constant ``1/(1-rho)`` and
    ``constant_exact`` the sharper ``1/sigma_min`` from the eigenvector
    submatrix. Both are ``inf`` when the set is not norming.
    """

    m: int
    sampling: SamplingSet
    rho: float
    constant_bound: float
    constant_exact: float
    is_norming: bool

    def to_dict(self) -> dict:
        return {
            "M": self.m,
            "N": self.sampling.size,
            "rho": self.rho,
            "constant_bound": _json_number(self.constant_bound),
            "constant_exact": _json_number(self.constant_exact),
            "is_norming": self.is_norming,
        }


def _json_number(x: float):
    return None if math.isinf(x) else float(x)


def sampling_projection(sampling: SamplingSet, x) -> np.ndarray:
    """Zero the signal off the sample nodes (the operator S_W)."""
    arr = np.asarray(x, dtype=float)
    if arr.shape != (sampling.n,):
        raise DimensionMismatchError(
            f"signal has shape {arr.shape}, expected ({sampling.n},)"
        )
    out = np.zeros_like(arr)
    idx = sampling.as_array()
    out[idx] = arr[idx]
    return out


def norming_check(spectrum: Spectrum, sampling: SamplingSet, m: int) -> NormingReport:
    """Decide whether the set is norming for the M-bandlimited space.

    rho is the largest eigenvalue of B (I - S) B with B the bandlimit
    projector and S the sampling mask. In the eigenbasis that operator is
    ``I_M - E^T E`` (padded by zeros) for the submatrix E of the first M
    eigenvectors on the sample rows, which is what gets diagonalized here;
    the exact constant is the reciprocal smallest singular value of E.
    """
    m = int(m)
    if not (1 <= m <= spectrum.n):
        raise BandwidthOutOfRangeError(f"bandwidth {m} outside 1..{spectrum.n}")
    if sampling.n != spectrum.n:
        raise DimensionMismatchError(
            f"sampling set is for n={sampling.n}, spectrum has n={spectrum.n}"
        )
    sub = spectrum.fourier_matrix[sampling.as_array(), :m]
    core = np.eye(m) - sub.T @ sub
    rho = float(np.max(np.linalg.eigvalsh(core)))
    rho = max(rho, 0.0)
    if sampling.size < m:
        smallest = 0.0
    else:
        smallest = float(np.min(np.linalg.svd(sub, compute_uv=False)))
    is_norming = rho < 1.0 - NORMING_MARGIN
    constant_exact = (
        1.0 / smallest if smallest > _SINGULAR_FLOOR else float("inf")
    )
    constant_bound = 1.0 / (1.0 - rho) if is_norming else float("inf")
    return NormingReport(
        m=m,
        sampling=sampling,
        rho=rho,
        constant_bound=constant_bound,
        constant_exact=constant_exact,
        is_norming=is_norming,
    )


def error_bound(
    spectrum: Spectrum,
    gbf: GBF,
    report: NormingReport,
    x,
    constant: str = "exact",
) -> float:
    """A priori uniform error bound for interpolating ``x``.

    ``(1 + kappa) * sqrt(tail) * ||x||_native`` where ``tail`` is the sum
    of the GBF coefficients above the report's bandwidth and ``kappa`` the
    norming constant. ``constant`` picks ``"exact"`` (sharper, default) or
    ``"bound"`` (the Neumann-series constant); run twice to report both.
    """
    if constant not in ("exact", "bound"):
        raise InvalidParamError(f"constant must be 'exact' or 'bound', got {constant!r}")
    if not report.is_norming:
        raise NotNormingError(
            f"sampling set is not norming for bandwidth {report.m} (rho={report.rho})"
        )
    kappa = report.constant_exact if constant == "exact" else report.constant_bound
    tail = float(np.sum(gbf.coeffs[report.m :]))
    return (1.0 + kappa) * math.sqrt(max(tail, 0.0)) * native_norm(spectrum, gbf, x)


def decay_error_bound(
    kind: str,
    c: float,
    rate: float,
    m: int,
    norming_constant: float,
    native_norm_value: float,
) -> float:
    """Closed-form bound for coefficient tails with a known decay law.

    ``kind="polynomial"`` covers coefficients below ``c * k^{-rate}`` with
    ``rate > 1`` (the tail sum is majorized by an integral) and gives
    ``sqrt(c / (rate - 1)) * (1 + kappa) * M^{-(rate-1)/2} * norm``.
    ``kind="exponential"`` covers ``c * exp(-rate * k)`` with ``rate > 0``
    (geometric tail) and gives
    ``sqrt(c / (1 - exp(-rate))) * (1 + kappa) * exp(-rate (M+1) / 2) * norm``.
    """
    m = int(m)
    if m < 1:
        raise InvalidParamError(f"bandwidth must be >= 1, got {m}")
    if not float(c) >= 0.0:
        raise InvalidParamError(f"decay constant must be >= 0, got {c}")
    c = float(c)
    rate = float(rate)
    kappa = float(norming_constant)
    norm = float(native_norm_value)
    if kind == "polynomial":
        if not rate > 1.0:
            raise InvalidRateError(f"polynomial decay needs rate > 1, got {rate}")
        return math.sqrt(c / (rate - 1.0)) * (1.0 + kappa) * m ** (-(rate - 1.0) / 2.0) * norm
    if kind == "exponential":
        if not rate > 0.0:
            raise InvalidRateError(f"exponential decay needs rate > 0, got {rate}")
        return (
            math.sqrt(c / (1.0 - math.exp(-rate)))
            * (1.0 + kappa)
            * math.exp(-rate * (m + 1) / 2.0)
            * norm
        )
    raise InvalidParamError(f"kind must be 'polynomial' or 'exponential', got {kind!r}")


@dataclass(frozen=True)
class ConditionReport:
    """Three-level stability estimate for interpolation on one sampling set.

    ``empirical`` is the largest interpolant norm over random unit-norm
    sample vectors; it never exceeds ``operator_bound`` (product of the
    inverse restricted kernel norm and the kernel norm), which never
    exceeds ``spectral_ratio`` (largest over smallest GBF coefficient).
    """

    operator_bound: float
    spectral_ratio: float
    empirical: float

    def to_dict(self) -> dict:
        return {
            "operator_bound": self.operator_bound,
            "spectral_ratio": self.spectral_ratio,
            "empirical": self.empirical,
        }


def condition_report(
    spectrum: Spectrum,
    gbf: GBF,
    sampling: SamplingSet,
    trials: int = 100,
    seed: int = 0,
) -> ConditionReport:
    """Measure interpolation stability and its two analytic ceilings.

    The operator bound uses exact extreme eigenvalues of the restricted
    kernel (not the Cholesky estimate). The empirical level interpolates
    ``trials`` random unit sample vectors drawn from a PCG64 stream.
    """
    idx = sampling.as_array()
    cols = kernel_columns(spectrum, gbf.coeffs, idx)
    sub = cols[idx, :]
    sub = 0.5 * (sub + sub.T)
    smallest = float(np.min(np.linalg.eigvalsh(sub)))
    if smallest <= 0.0:
        raise NotNormingError(
            "restricted kernel is numerically singular, no stability bound"
        )
    operator_bound = float(np.max(np.abs(gbf.coeffs))) / smallest
    spectral_ratio = float(np.max(gbf.coeffs) / np.min(gbf.coeffs))
    rng = np.random.Generator(np.random.PCG64(seed))
    worst = 0.0
    for _ in range(int(trials)):
        vec = rng.standard_normal(sampling.size)
        norm = np.linalg.norm(vec)
        if norm == 0.0:
            continue
        result = interpolate(spectrum, gbf, sampling, vec / norm)
        worst = max(worst, float(np.linalg.norm(result.signal)))
    return ConditionReport(
        operator_bound=operator_bound,
        spectral_ratio=spectral_ratio,
        empirical=worst,
    )
