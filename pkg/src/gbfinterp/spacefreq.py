"""Windowed graph Fourier transform and its frame bounds.

The atoms are modulated translates of a window GBF: the translate to node
i, multiplied pointwise by eigenvector k and scaled by sqrt(n). The
construction assumes the first eigenvector is constant (true on regular
connected graphs under the normalized Laplacian), because modulation by
u_1 must reduce to a harmless rescaling; graphs without that property are
rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .basis import GBF, Definiteness, kernel_matrix
from .errors import (
    DimensionMismatchError,
    FirstEigenvectorNotConstantError,
    IndexOutOfRangeError,
    InvalidParamError,
    NotPDError,
)
from .spectral import Spectrum

# Entries of an eigenvector below this magnitude count as zeros for the
# basis-per-frequency flag.
VANISH_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class SpaceFrequencyAtoms:
    """All atoms of the windowed transform for one frequency selection.

    ``matrices[j]`` is an (n, n) array whose column i is the atom at node i
    and frequency ``frequencies[j]``.
    """

    window_descriptor: str
    frequencies: tuple[int, ...]
    matrices: tuple[np.ndarray, ...]

    def atom(self, node: int, frequency: int) -> np.ndarray:
        if frequency not in self.frequencies:
            raise InvalidParamError(
                f"frequency {frequency} not among the selected {self.frequencies}"
            )
        j = self.frequencies.index(frequency)
        return self.matrices[j][:, node]


@dataclass(frozen=True)
class FrameBounds:
    """Empirical and theoretical frame bounds of the windowed transform.

    ``a_theory = (min coeff)^2`` and ``b_theory = sqrt(n) (max coeff)^2``
    are the catalog bounds; ``a_theory_full`` is the improved lower bound
    ``sqrt(n) (min coeff)^2`` available when every frequency is selected,
    else ``None``. ``is_basis_per_frequency[k]`` says whether the atoms of
    the single frequency k span everything, which happens exactly when
    eigenvector k vanishes nowhere.
    """

    a_theory: float
    b_theory: float
    a_empirical: float
    b_empirical: float
    a_theory_full: float | None
    is_basis_per_frequency: dict[int, bool]
    frequencies: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "A_theory": self.a_theory,
            "B_theory": self.b_theory,
            "A_empirical": self.a_empirical,
            "B_empirical": self.b_empirical,
            "A_theory_full": self.a_theory_full,
            "is_basis_per_frequency": {
                str(k): v for k, v in self.is_basis_per_frequency.items()
            },
            "frequencies": list(self.frequencies),
        }


def _check_frequencies(spectrum: Spectrum, frequencies: Sequence[int]) -> tuple[int, ...]:
    freqs = sorted({int(k) for k in frequencies})
    if not freqs:
        raise InvalidParamError("frequency selection must be nonempty")
    if any(not (0 <= k < spectrum.n) for k in freqs):
        raise IndexOutOfRangeError(f"frequencies outside 0..{spectrum.n - 1}: {freqs}")
    if 0 not in freqs:
        raise InvalidParamError("frequency selection must contain index 0")
    if not spectrum.u1_constant:
        raise FirstEigenvectorNotConstantError(
            "windowed transform needs a constant first eigenvector "
            "(use a regular connected graph)"
        )
    return tuple(freqs)


def space_frequency_atoms(
    spectrum: Spectrum, window: GBF, frequencies: Sequence[int]
) -> SpaceFrequencyAtoms:
    """Materialize the atom matrices ``sqrt(n) diag(u_k) K_window``."""
    freqs = _check_frequencies(spectrum, frequencies)
    kmat = kernel_matrix(spectrum, window).matrix
    root = np.sqrt(spectrum.n)
    mats = tuple(
        root * spectrum.fourier_matrix[:, k][:, None] * kmat for k in freqs
    )
    return SpaceFrequencyAtoms(
        window_descriptor=window.descriptor, frequencies=freqs, matrices=mats
    )


def windowed_fourier(
    spectrum: Spectrum, window: GBF, x, frequencies: Sequence[int]
) -> np.ndarray:
    """Coefficient matrix of the windowed transform.

    Entry (i, j) is the inner product of ``x`` with the atom at node i and
    frequency ``frequencies[j]``; rows run over nodes, columns over the
    sorted frequency selection.
    """
    freqs = _check_frequencies(spectrum, frequencies)
    arr = np.asarray(x, dtype=float)
    if arr.shape != (spectrum.n,):
        raise DimensionMismatchError(
            f"signal has shape {arr.shape}, expected ({spectrum.n},)"
        )
    kmat = kernel_matrix(spectrum, window).matrix
    root = np.sqrt(spectrum.n)
    columns = [root * (kmat @ (spectrum.fourier_matrix[:, k] * arr)) for k in freqs]
    return np.column_stack(columns)


def frame_bounds(
    spectrum: Spectrum, window: GBF, frequencies: Sequence[int]
) -> FrameBounds:
    """Extreme eigenvalues of the frame operator against the catalog bounds.

    The frame operator is the sum of outer products of all atoms,
    accumulated per frequency as ``n diag(u_k) K^2 diag(u_k)``. The window
    must be PD for the lower bound to be meaningful.
    """
    freqs = _check_frequencies(spectrum, frequencies)
    if window.classification.kind is not Definiteness.PD:
        raise NotPDError(
            f"frame bounds need a positive definite window, got "
            f"{window.classification.kind.value} ({window.descriptor})"
        )
    n = spectrum.n
    kmat = kernel_matrix(spectrum, window).matrix
    ksq = kmat @ kmat
    op = np.zeros((n, n))
    for k in freqs:
        uk = spectrum.fourier_matrix[:, k]
        op += n * (uk[:, None] * ksq * uk[None, :])
    op = 0.5 * (op + op.T)
    eigs = np.linalg.eigvalsh(op)
    cmin = float(np.min(window.coeffs))
    cmax = float(np.max(window.coeffs))
    root = float(np.sqrt(n))
    full = len(freqs) == n
    flags = {
        k: bool(np.min(np.abs(spectrum.fourier_matrix[:, k])) > VANISH_TOL)
        for k in freqs
    }
    return FrameBounds(
        a_theory=cmin**2,
        b_theory=root * cmax**2,
        a_empirical=float(eigs[0]),
        b_empirical=float(eigs[-1]),
        a_theory_full=root * cmin**2 if full else None,
        is_basis_per_frequency=flags,
        frequencies=freqs,
    )
