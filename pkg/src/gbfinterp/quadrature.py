"""Quadrature rules on sampling sets driven by a PD kernel.

The weights make the rule exact for every kernel translate at the sample
nodes, where "exact" means reproducing the mean value over all nodes.
For signals outside that span the quadrature error inherits the
interpolation error bound, because integrating the interpolant is the
same as applying the rule.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .analysis import NormingReport, error_bound
from .basis import GBF, Definiteness, kernel_columns
from .errors import DimensionMismatchError, NotPDError
from .interpolation import SamplingSet, spd_factor
from .spectral import Spectrum


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Weights attached to the nodes of one sampling set.

    ``exactness_residual`` is the largest defect of the rule on the kernel
    translates it was built from (how far Cholesky roundoff moved it from
    exact reproduction of their means).
    """

    weights: np.ndarray
    sampling: SamplingSet
    gbf_descriptor: str
    exactness_residual: float

    @property
    def n(self) -> int:
        return self.sampling.n


def quadrature_weights(
    spectrum: Spectrum, gbf: GBF, sampling: SamplingSet
) -> QuadratureRule:
    """Solve the restricted kernel system for mean-exact weights.

    The right-hand side is the exact mean of each kernel column over all
    nodes, so the rule applied to a translate at a sample node returns that
    translate's mean value. Requires a PD kernel; the system is factored by
    Cholesky with the same conditioning guard as interpolation.
    """
    if gbf.classification.kind is not Definiteness.PD:
        raise NotPDError(
            f"quadrature weights need a positive definite GBF, got "
            f"{gbf.classification.kind.value} ({gbf.descriptor})"
        )
    if sampling.n != spectrum.n:
        raise DimensionMismatchError(
            f"sampling set is for n={sampling.n}, spectrum has n={spectrum.n}"
        )
    idx = sampling.as_array()
    cols = kernel_columns(spectrum, gbf.coeffs, idx)
    sub = cols[idx, :]
    sub = 0.5 * (sub + sub.T)
    rhs = cols.mean(axis=0)
    chol, _ = spd_factor(sub)
    weights = scipy.linalg.cho_solve((chol, True), rhs)
    residual = float(np.max(np.abs(sub @ weights - rhs)))
    return QuadratureRule(
        weights=weights,
        sampling=sampling,
        gbf_descriptor=gbf.descriptor,
        exactness_residual=residual,
    )


def quadrature_apply(rule: QuadratureRule, x) -> float:
    """Weighted sum of the signal over the sample nodes."""
    arr = np.asarray(x, dtype=float)
    if arr.shape != (rule.n,):
        raise DimensionMismatchError(f"signal has shape {arr.shape}, expected ({rule.n},)")
    return float(np.dot(rule.weights, arr[rule.sampling.as_array()]))


def quadrature_error_bound(
    spectrum: Spectrum,
    gbf: GBF,
    report: NormingReport,
    x,
    constant: str = "exact",
) -> float:
    """Bound on |mean(x) - rule(x)|, identical to the interpolation bound.

    The quadrature defect is the mean of the interpolation defect, and the
    mean never exceeds the uniform norm.
    """
    return error_bound(spectrum, gbf, report, x, constant=constant)
