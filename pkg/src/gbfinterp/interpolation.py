"""Kernel interpolation of graph signals from a sampling set.

Given a positive definite GBF, the interpolant of samples taken on a node
subset W is the combination of kernel translates at W that reproduces the
samples. The kernel system is solved by a Cholesky factorization; a system
that is numerically singular raises instead of being silently
regularized. The native space machinery (inner product weighted by the
inverse coefficients, Lagrange basis, power function) lives here too.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.linalg

from .basis import GBF, Definiteness, KernelMatrix, kernel_columns
from .errors import (
    DimensionMismatchError,
    IllConditionedError,
    IndexOutOfRangeError,
    InvalidParamError,
    NotPDError,
)
from .spectral import Spectrum, gft

# A Cholesky pivot below this fraction of the trace marks the system as
# numerically singular.
PIVOT_TOL = 1e-14

# Interpolation residual guarantee, relative to 1 + max|sample|.
RESIDUAL_TOL = 1e-8


@dataclass(frozen=True)
class SamplingSet:
    """Ordered distinct node indices ``0 <= j < n`` to sample on."""

    indices: tuple[int, ...]
    n: int

    def __post_init__(self):
        idx = tuple(int(j) for j in self.indices)
        if not (1 <= len(idx) <= self.n):
            raise InvalidParamError(
                f"need between 1 and {self.n} sample nodes, got {len(idx)}"
            )
        if any(not (0 <= j < self.n) for j in idx):
            raise IndexOutOfRangeError(f"sample nodes outside 0..{self.n - 1}: {idx}")
        if len(set(idx)) != len(idx):
            raise InvalidParamError(f"sample nodes must be distinct: {idx}")
        object.__setattr__(self, "indices", idx)

    @property
    def size(self) -> int:
        return len(self.indices)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.indices, dtype=int)


def sampling_set(spectrum_or_n, indices: Sequence[int]) -> SamplingSet:
    """Convenience constructor accepting a spectrum, a graph, or a plain n."""
    n = spectrum_or_n if isinstance(spectrum_or_n, int) else spectrum_or_n.n
    return SamplingSet(indices=tuple(indices), n=n)


@dataclass(frozen=True, eq=False)
class Interpolant:
    """Result of one kernel interpolation.

    ``signal`` is the interpolant on all nodes, ``coefficients`` the
    translate weights. ``condition_estimate`` is the squared ratio of the
    extreme Cholesky pivots (a cheap lower estimate of the true condition
    number), ``residual_max`` the largest defect at the sample nodes.
    """

    coefficients: np.ndarray
    signal: np.ndarray
    sampling: SamplingSet
    gbf_descriptor: str
    condition_estimate: float
    residual_max: float


def kernel_submatrix(kernel: KernelMatrix | np.ndarray, sampling: SamplingSet) -> np.ndarray:
    """Restriction of a kernel matrix to the sample nodes (both axes)."""
    mat = kernel.matrix if isinstance(kernel, KernelMatrix) else np.asarray(kernel)
    idx = sampling.as_array()
    return mat[np.ix_(idx, idx)]


def _require_pd(gbf: GBF, what: str):
    kind = gbf.classification.kind
    if kind is not Definiteness.PD:
        raise NotPDError(
            f"{what} needs a positive definite GBF, got {kind.value} "
            f"({gbf.descriptor}); augment it first if it is CPD/PSD"
        )


def spd_factor(matrix: np.ndarray) -> tuple[np.ndarray, float]:
    """Cholesky factor plus a pivot-based condition estimate.

    Raises :class:`IllConditionedError` when the factorization fails or the
    smallest pivot drops below ``PIVOT_TOL`` times the trace. No jitter is
    ever added; the caller decides how to reformulate the problem.
    """
    trace = float(np.trace(matrix))
    try:
        chol = scipy.linalg.cholesky(matrix, lower=True)
    except scipy.linalg.LinAlgError as exc:
        raise IllConditionedError(
            f"kernel system is not numerically positive definite: {exc}"
        ) from None
    diag = np.diag(chol)
    pivots = diag * diag
    cond_estimate = float((diag.max() / diag.min()) ** 2)
    if pivots.min() < PIVOT_TOL * trace:
        raise IllConditionedError(
            f"smallest Cholesky pivot {pivots.min():.3e} is below "
            f"{PIVOT_TOL:g} * trace = {PIVOT_TOL * trace:.3e}",
            condition_estimate=cond_estimate,
        )
    return chol, cond_estimate


def interpolate(
    spectrum: Spectrum, gbf: GBF, sampling: SamplingSet, samples
) -> Interpolant:
    """Interpolate sample values on W with translates of a PD GBF.

    Solves the restricted kernel system for the translate coefficients and
    evaluates the resulting combination on every node. The interpolant
    matches the samples up to ``RESIDUAL_TOL * (1 + max|sample|)`` whenever
    the system passed the conditioning check.
    """
    _require_pd(gbf, "interpolation")
    _check_sampling(spectrum, sampling)
    values = np.asarray(samples, dtype=float)
    if values.shape != (sampling.size,):
        raise DimensionMismatchError(
            f"samples have shape {values.shape}, expected ({sampling.size},)"
        )
    idx = sampling.as_array()
    cols = kernel_columns(spectrum, gbf.coeffs, idx)
    sub = cols[idx, :]
    sub = 0.5 * (sub + sub.T)
    chol, cond = spd_factor(sub)
    coeffs = scipy.linalg.cho_solve((chol, True), values)
    signal = cols @ coeffs
    residual = float(np.max(np.abs(signal[idx] - values)))
    return Interpolant(
        coefficients=coeffs,
        signal=signal,
        sampling=sampling,
        gbf_descriptor=gbf.descriptor,
        condition_estimate=cond,
        residual_max=residual,
    )


def _check_sampling(spectrum: Spectrum, sampling: SamplingSet):
    if sampling.n != spectrum.n:
        raise DimensionMismatchError(
            f"sampling set is for n={sampling.n}, spectrum has n={spectrum.n}"
        )


def native_inner(spectrum: Spectrum, gbf: GBF, x, y) -> float:
    """Inner product of the native space of a PD GBF.

    Fourier coefficients weighted by the reciprocal GBF coefficients. The
    kernel translates reproduce point evaluation in this inner product.
    """
    _require_pd(gbf, "the native inner product")
    xh = gft(spectrum, x)
    yh = gft(spectrum, y)
    return float(np.sum(xh * yh / gbf.coeffs))


def native_norm(spectrum: Spectrum, gbf: GBF, x) -> float:
    quad = native_inner(spectrum, gbf, x, x)
    return float(np.sqrt(max(quad, 0.0)))


def lagrange_basis(spectrum: Spectrum, gbf: GBF, sampling: SamplingSet) -> np.ndarray:
    """Cardinal interpolants as columns of an (n, N) matrix.

    Column k is the interpolant of the k-th coordinate indicator on W, so
    the matrix restricted to the sample rows is the identity and any
    interpolant is ``basis @ samples``.
    """
    _require_pd(gbf, "the Lagrange basis")
    _check_sampling(spectrum, sampling)
    idx = sampling.as_array()
    cols = kernel_columns(spectrum, gbf.coeffs, idx)
    sub = cols[idx, :]
    sub = 0.5 * (sub + sub.T)
    chol, _ = spd_factor(sub)
    weights = scipy.linalg.cho_solve((chol, True), np.eye(sampling.size))
    return cols @ weights


def power_function(spectrum: Spectrum, gbf: GBF, sampling: SamplingSet) -> np.ndarray:
    """Worst-case pointwise error functional of interpolation on W.

    At node v this is the native-space distance from the kernel translate
    at v to the span of the translates at the sample nodes; it vanishes on
    W and multiplies the native norm of the target in the pointwise error
    bound. Computed as ``sqrt(K(v,v) - sum_k basis_k(v) K(v, w_k))`` with
    tiny negative values from roundoff clipped to zero.
    """
    _require_pd(gbf, "the power function")
    _check_sampling(spectrum, sampling)
    idx = sampling.as_array()
    u = spectrum.fourier_matrix
    diag = (u * u) @ gbf.coeffs
    cols = kernel_columns(spectrum, gbf.coeffs, idx)
    basis = lagrange_basis(spectrum, gbf, sampling)
    squared = diag - np.sum(basis * cols, axis=1)
    return np.sqrt(np.clip(squared, 0.0, None))
