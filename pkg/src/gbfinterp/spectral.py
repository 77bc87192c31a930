"""Laplacian eigenbasis, graph Fourier transform and graph convolution.

The eigendecomposition fixes a deterministic orthonormal basis once per
graph; everything downstream (kernels, interpolation, quadrature, the
windowed transform) is expressed in that basis. For eigenvalues with
multiplicity above one the individual eigenvectors are basis dependent,
so callers should only rely on quantities that are invariant under a
change of basis inside a cluster unless their coefficients are constant
on clusters.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    BandwidthOutOfRangeError,
    DimensionMismatchError,
    IndexOutOfRangeError,
    NotSymmetricError,
)

# Absolute gap below which two consecutive eigenvalues count as equal.
CLUSTER_TOL = 1e-8

# Maximum deviation from a constant vector for the first-eigenvector flag.
CONSTANT_U1_TOL = 1e-8

_SYMMETRY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Orthonormal eigendecomposition of a normalized Laplacian.

    ``eigenvalues`` are ascending and ``fourier_matrix`` holds the matching
    eigenvectors as columns. ``clusters`` groups indices of numerically
    equal eigenvalues (consecutive gap below the cluster tolerance), so
    ``len(clusters)`` is the number of distinct eigenvalues. ``u1_constant``
    records whether the first eigenvector is a constant vector, which the
    windowed Fourier transform requires.
    """

    eigenvalues: np.ndarray
    fourier_matrix: np.ndarray
    clusters: tuple[tuple[int, ...], ...]
    u1_constant: bool

    def __post_init__(self):
        self.eigenvalues.setflags(write=False)
        self.fourier_matrix.setflags(write=False)

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[0]

    @property
    def distinct_count(self) -> int:
        return len(self.clusters)


def eigendecompose(laplacian: np.ndarray, cluster_tol: float = CLUSTER_TOL) -> Spectrum:
    """Full symmetric eigendecomposition with a fixed sign convention.

    The input must be symmetric within 1e-12 entrywise. Each eigenvector is
    flipped, if needed, so its entry of largest magnitude is positive, with
    ties resolved toward the lowest index. That makes repeated runs and
    LAPACK builds agree on simple eigenvalues; degenerate clusters remain
    basis dependent.
    """
    lap = np.asarray(laplacian, dtype=float)
    if lap.ndim != 2 or lap.shape[0] != lap.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {lap.shape}")
    asym = float(np.max(np.abs(lap - lap.T))) if lap.size else 0.0
    if asym > _SYMMETRY_TOL:
        raise NotSymmetricError(f"matrix is asymmetric by {asym:.3e} (tol {_SYMMETRY_TOL})")
    values, vectors = np.linalg.eigh(lap)
    order = np.argsort(values, kind="stable")
    values = values[order]
    vectors = vectors[:, order]
    for k in range(vectors.shape[1]):
        col = vectors[:, k]
        lead = int(np.argmax(np.abs(col)))
        if col[lead] < 0.0:
            vectors[:, k] = -col
    clusters = _cluster_indices(values, cluster_tol)
    u1 = vectors[:, 0]
    u1_constant = bool(np.ptp(u1) < CONSTANT_U1_TOL)
    return Spectrum(
        eigenvalues=values,
        fourier_matrix=vectors,
        clusters=clusters,
        u1_constant=u1_constant,
    )


def _cluster_indices(values: np.ndarray, tol: float) -> tuple[tuple[int, ...], ...]:
    groups: list[list[int]] = [[0]]
    for k in range(1, len(values)):
        if values[k] - values[k - 1] <= tol:
            groups[-1].append(k)
        else:
            groups.append([k])
    return tuple(tuple(g) for g in groups)


def _check_signal(spectrum: Spectrum, x, name: str = "signal") -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.shape != (spectrum.n,):
        raise DimensionMismatchError(
            f"{name} has shape {arr.shape}, expected ({spectrum.n},)"
        )
    return arr


def gft(spectrum: Spectrum, x) -> np.ndarray:
    """Graph Fourier transform, coordinates of ``x`` in the eigenbasis."""
    return spectrum.fourier_matrix.T @ _check_signal(spectrum, x)


def igft(spectrum: Spectrum, xhat) -> np.ndarray:
    """Inverse graph Fourier transform."""
    return spectrum.fourier_matrix @ _check_signal(spectrum, xhat, "coefficients")


def convolve(spectrum: Spectrum, x, y) -> np.ndarray:
    """Graph convolution: pointwise product of the Fourier transforms."""
    xh = gft(spectrum, x)
    yh = gft(spectrum, y)
    return spectrum.fourier_matrix @ (xh * yh)


def unity(spectrum: Spectrum) -> np.ndarray:
    """The unit element of the convolution algebra.

    Its Fourier coefficients are all one, i.e. it is the sum of the
    eigenvectors, and convolving with it changes nothing.
    """
    return spectrum.fourier_matrix @ np.ones(spectrum.n)


def translate(spectrum: Spectrum, f, node: int) -> np.ndarray:
    """Generalized translate of ``f`` to ``node``.

    Convolution of ``f`` with the indicator of ``node``; equivalently
    column ``node`` of the kernel matrix built from the coefficients of
    ``f``.
    """
    node = int(node)
    if not (0 <= node < spectrum.n):
        raise IndexOutOfRangeError(f"node {node} outside 0..{spectrum.n - 1}")
    fh = gft(spectrum, f)
    return spectrum.fourier_matrix @ (fh * spectrum.fourier_matrix[node, :])


def bandlimit_project(spectrum: Spectrum, m: int, x) -> np.ndarray:
    """Orthogonal projection onto the span of the ``m`` lowest eigenvectors."""
    m = _check_bandwidth(spectrum, m)
    basis = spectrum.fourier_matrix[:, :m]
    return basis @ (basis.T @ _check_signal(spectrum, x))


def _check_bandwidth(spectrum: Spectrum, m: int) -> int:
    m = int(m)
    if not (1 <= m <= spectrum.n):
        raise BandwidthOutOfRangeError(f"bandwidth {m} outside 1..{spectrum.n}")
    return m


def in_laplacian_subalgebra(spectrum: Spectrum, x, tol: float = 1e-8) -> bool:
    """Whether ``x`` lies in the subalgebra generated by the Laplacian.

    True when the Fourier coefficients of ``x`` agree within ``tol`` inside
    every cluster of equal eigenvalues. On a graph with all-simple
    eigenvalues this is every signal.
    """
    xh = gft(spectrum, x)
    for group in spectrum.clusters:
        if len(group) > 1:
            vals = xh[list(group)]
            if np.ptp(vals) > tol:
                return False
    return True


def algebra_norm(spectrum: Spectrum, x) -> float:
    """Operator norm of "convolve by x": the largest |Fourier coefficient|."""
    return float(np.max(np.abs(gft(spectrum, x))))


def algebra_dual_norm(spectrum: Spectrum, x) -> float:
    """Dual of :func:`algebra_norm`: the sum of |Fourier coefficients|."""
    return float(np.sum(np.abs(gft(spectrum, x))))
