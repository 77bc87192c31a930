"""Graph basis functions: spectral coefficients, definiteness, kernels.

A graph basis function (GBF) is a signal described by its Fourier
coefficients in the Laplacian eigenbasis. Its kernel matrix is the matrix
of all generalized translates, and the sign pattern of the coefficients
decides whether that kernel is positive definite, positive semidefinite,
or conditionally positive definite on the span of the eigenvectors whose
coefficients are positive. This module carries the catalog of standard
GBFs, the classification logic, the Hankel moment test, and the
augmentation that repairs a conditionally definite function.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import (
    BandwidthOutOfRangeError,
    DeltaTooSmallError,
    DescriptorError,
    DimensionMismatchError,
    InvalidParamError,
    NotInSubalgebraError,
    NotPSDError,
)
from .spectral import Spectrum, gft, in_laplacian_subalgebra

# Relative scale for the classification tolerance.
_EPS_PD_SCALE = 1e-10


class Definiteness(enum.Enum):
    """Definiteness class of a GBF kernel."""

    PD = "pd"
    PSD = "psd"
    CPD = "cpd"
    INDEFINITE = "indefinite"


@dataclass(frozen=True)
class Classification:
    """Definiteness kind plus the indices with strictly positive coefficient."""

    kind: Definiteness
    support: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class GBF:
    """A graph basis function tied to one spectrum.

    ``coeffs`` are the Fourier coefficients (one per eigenvalue, in the
    spectrum's ascending order), ``descriptor`` is a provenance string; for
    catalog functions it is exactly the string the descriptor parser
    accepts.
    """

    coeffs: np.ndarray
    classification: Classification
    descriptor: str

    def __post_init__(self):
        self.coeffs.setflags(write=False)

    @property
    def n(self) -> int:
        return self.coeffs.shape[0]


def default_eps(coeffs: np.ndarray) -> float:
    """Classification tolerance: 1e-10 scaled by the largest |coefficient|."""
    scale = float(np.max(np.abs(coeffs))) if coeffs.size else 0.0
    return _EPS_PD_SCALE * max(1.0, scale)


def classify(spectrum: Spectrum, coeffs, eps: float | None = None) -> Classification:
    """Classify a coefficient vector by its sign pattern.

    All coefficients above ``eps`` gives PD. Nothing significantly below
    zero gives the semidefinite family: when the first (lowest frequency)
    coefficient vanishes the function is only definite on the span of its
    support, the situation the augmentation exists for, and is labeled CPD
    with that support; otherwise it is labeled PSD. Any coefficient below
    ``-eps`` gives INDEFINITE. The support is recorded in every case.
    """
    c = _check_coeffs(spectrum, coeffs)
    if eps is None:
        eps = default_eps(c)
    support = tuple(int(k) for k in np.flatnonzero(c > eps))
    lo = float(c.min())
    if lo > eps:
        return Classification(Definiteness.PD, support)
    if lo > -eps:
        if support and c[0] <= eps:
            return Classification(Definiteness.CPD, support)
        return Classification(Definiteness.PSD, support)
    return Classification(Definiteness.INDEFINITE, support)


def gbf_from_coeffs(
    spectrum: Spectrum,
    coeffs,
    descriptor: str = "custom",
    eps: float | None = None,
    support: tuple[int, ...] | None = None,
) -> GBF:
    """Wrap raw coefficients as a GBF.

    ``support`` overrides the inferred classification with an explicit CPD
    declaration: the caller asserts the function should be treated as
    definite on the span of those eigenvectors (the coefficients there must
    actually be positive). This is how a function with stray negative
    coefficients is handed to :func:`augment_cpd`.
    """
    c = _check_coeffs(spectrum, coeffs).copy()
    if eps is None:
        eps = default_eps(c)
    if support is not None:
        support = tuple(sorted(int(k) for k in support))
        if any(not (0 <= k < spectrum.n) for k in support):
            raise InvalidParamError(f"support indices outside 0..{spectrum.n - 1}")
        if any(c[k] <= eps for k in support):
            raise InvalidParamError(
                "declared support must have strictly positive coefficients"
            )
        inferred = classify(spectrum, c, eps)
        if inferred.kind is Definiteness.PD:
            cls = inferred
        else:
            cls = Classification(Definiteness.CPD, support)
    else:
        cls = classify(spectrum, c, eps)
    return GBF(coeffs=c, classification=cls, descriptor=descriptor)


def _check_coeffs(spectrum: Spectrum, coeffs) -> np.ndarray:
    c = np.asarray(coeffs, dtype=float)
    if c.shape != (spectrum.n,):
        raise DimensionMismatchError(
            f"coefficients have shape {c.shape}, expected ({spectrum.n},)"
        )
    return c


# ------------------------------------------------------------------ kernels


@dataclass(frozen=True, eq=False)
class KernelMatrix:
    """Dense kernel matrix together with the descriptor that produced it."""

    matrix: np.ndarray
    source: str

    def __post_init__(self):
        self.matrix.setflags(write=False)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


def kernel_matrix(spectrum: Spectrum, gbf: GBF) -> KernelMatrix:
    """Assemble the full kernel ``U diag(coeffs) U^T``, symmetrized.

    Column ``i`` equals the translate of the function to node ``i``; the
    eigenvalues of the kernel are exactly the coefficients.
    """
    u = spectrum.fourier_matrix
    k = (u * gbf.coeffs) @ u.T
    k = 0.5 * (k + k.T)
    return KernelMatrix(matrix=k, source=gbf.descriptor)


def kernel_columns(spectrum: Spectrum, coeffs: np.ndarray, indices) -> np.ndarray:
    """Columns of the kernel at the given nodes, without the full matrix."""
    idx = np.asarray(indices, dtype=int)
    u = spectrum.fourier_matrix
    return (u * coeffs) @ u[idx, :].T


# ----------------------------------------------------------- moment test


def hankel_moment_matrix(spectrum: Spectrum, f, r: int) -> np.ndarray:
    """r x r Hankel matrix of the power moments of ``f``.

    Entry (i, j) is the moment of order i+j (0-based), where the moment of
    order m is ``sum_k eigenvalue_k^m * fhat_k`` with the convention
    ``0^0 = 1``. Built from a single moment vector, so the result is
    Hankel-structured exactly.
    """
    r = int(r)
    if r < 1:
        raise InvalidParamError(f"Hankel order must be >= 1, got {r}")
    fh = gft(spectrum, f)
    powers = np.power(
        spectrum.eigenvalues[None, :], np.arange(2 * r - 1, dtype=float)[:, None]
    )
    moments = powers @ fh
    return moments[np.add.outer(np.arange(r), np.arange(r))]


def moment_pd_check(spectrum: Spectrum, f, tol: float = 1e-8) -> str:
    """Definiteness of ``f`` through its Hankel moment matrix.

    Only valid for signals in the Laplacian subalgebra (coefficients
    constant on eigenvalue clusters); anything else raises. Returns
    ``"pd"``, ``"psd"`` or ``"neither"``, judged from the eigenvalues of
    the Hankel matrix of order ``distinct_count`` against a tolerance
    relative to the matrix scale.
    """
    if not in_laplacian_subalgebra(spectrum, f, tol):
        raise NotInSubalgebraError(
            "signal coefficients vary inside an eigenvalue cluster"
        )
    h = hankel_moment_matrix(spectrum, f, spectrum.distinct_count)
    eigs = np.linalg.eigvalsh(h)
    eps = _EPS_PD_SCALE * max(1.0, float(np.max(np.abs(h))))
    if eigs.min() > eps:
        return "pd"
    if eigs.min() > -eps:
        return "psd"
    return "neither"


# ------------------------------------------------- repairs and square root


def augment_cpd(
    spectrum: Spectrum, gbf: GBF, delta: float, support: tuple[int, ...] | None = None
) -> GBF:
    """Shift the coefficients off the support by ``delta``.

    This is the standard repair for a conditionally definite function: the
    kernel changes only on the orthogonal complement of the span of the
    support, where the original kernel carried no positive mass. ``delta``
    must strictly exceed the magnitude of the most negative coefficient
    (in particular it must be positive), otherwise the result could not be
    definite. A function that is already PD has full support and comes back
    unchanged.
    """
    delta = float(delta)
    if support is None:
        support = gbf.classification.support
    threshold = abs(min(0.0, float(gbf.coeffs.min())))
    if not delta > threshold:
        raise DeltaTooSmallError(
            f"delta={delta} must exceed {threshold} (and be positive)"
        )
    if gbf.classification.kind is Definiteness.PD:
        return gbf
    mask = np.ones(spectrum.n, dtype=bool)
    mask[list(support)] = False
    coeffs = gbf.coeffs.copy()
    coeffs[mask] += delta
    return gbf_from_coeffs(
        spectrum, coeffs, descriptor=f"{gbf.descriptor}+aug:delta={delta!r}"
    )


def convolution_square_root(spectrum: Spectrum, gbf: GBF) -> np.ndarray:
    """Signal ``g`` with ``g * g = f`` (graph convolution product).

    Exists exactly for the semidefinite family; coefficients inside the
    classification tolerance below zero are clipped to zero before the
    square root.
    """
    eps = default_eps(gbf.coeffs)
    if float(gbf.coeffs.min()) < -eps:
        raise NotPSDError("square root needs nonnegative coefficients")
    ghat = np.sqrt(np.clip(gbf.coeffs, 0.0, None))
    return spectrum.fourier_matrix @ ghat


# ------------------------------------------------------------------ catalog


def unity_gbf(spectrum: Spectrum) -> GBF:
    """All coefficients one; its kernel is the identity matrix."""
    return gbf_from_coeffs(spectrum, np.ones(spectrum.n), descriptor="unity")


def augmented_laplacian_gbf(spectrum: Spectrum, delta: float) -> GBF:
    """Laplacian coefficients with the first one replaced by ``delta`` > 0.

    The plain Laplacian has coefficients equal to its eigenvalues and a
    vanishing first coefficient; on a connected graph replacing it with a
    positive ``delta`` makes the kernel positive definite.
    """
    delta = float(delta)
    if not delta > 0.0:
        raise InvalidParamError(f"delta must be > 0, got {delta}")
    coeffs = spectrum.eigenvalues.copy()
    coeffs[0] = delta
    return gbf_from_coeffs(spectrum, coeffs, descriptor=f"auglap:delta={delta!r}")


def laplacian_polynomial_gbf(spectrum: Spectrum, coefficients) -> GBF:
    """Coefficients ``p(eigenvalue_k)`` for a polynomial p.

    ``coefficients`` are ``(c0, c1, ...)`` with ``p(t) = c0 + c1 t + ...``.
    Definiteness simply follows the sign of p on the spectrum; a polynomial
    that dips below zero there yields an indefinite function, visible in
    the classification.
    """
    cs = [float(c) for c in coefficients]
    if not cs:
        raise InvalidParamError("need at least one polynomial coefficient")
    vals = np.zeros(spectrum.n)
    for c in reversed(cs):
        vals = vals * spectrum.eigenvalues + c
    desc = "poly:" + ",".join(repr(c) for c in cs)
    return gbf_from_coeffs(spectrum, vals, descriptor=desc)


def variational_spline_gbf(spectrum: Spectrum, epsilon: float, s: float) -> GBF:
    """Coefficients ``1 / (epsilon + eigenvalue_k)^s``, always PD."""
    epsilon, s = float(epsilon), float(s)
    if not epsilon > 0.0:
        raise InvalidParamError(f"eps must be > 0, got {epsilon}")
    if not s > 0.0:
        raise InvalidParamError(f"s must be > 0, got {s}")
    coeffs = (epsilon + spectrum.eigenvalues) ** (-s)
    return gbf_from_coeffs(
        spectrum, coeffs, descriptor=f"spline:eps={epsilon!r},s={s!r}"
    )


def pseudoinverse_spline_gbf(spectrum: Spectrum, s: float) -> GBF:
    """Zero first coefficient, then ``eigenvalue_k^{-s}``.

    Needs a connected graph (a simple zero eigenvalue); the result is CPD
    on the span of all higher eigenvectors and is meant to be augmented
    before interpolation.
    """
    s = float(s)
    if not s > 0.0:
        raise InvalidParamError(f"s must be > 0, got {s}")
    if len(spectrum.clusters[0]) != 1:
        raise InvalidParamError(
            "pseudoinverse spline needs a connected graph "
            "(zero eigenvalue with multiplicity one)"
        )
    coeffs = np.zeros(spectrum.n)
    coeffs[1:] = spectrum.eigenvalues[1:] ** (-s)
    return gbf_from_coeffs(spectrum, coeffs, descriptor=f"pspline:s={s!r}")


def diffusion_gbf(spectrum: Spectrum, t: float) -> GBF:
    """Heat kernel coefficients ``exp(-t * eigenvalue_k)``, PD for every t."""
    t = float(t)
    coeffs = np.exp(-t * spectrum.eigenvalues)
    return gbf_from_coeffs(spectrum, coeffs, descriptor=f"diffusion:t={t!r}")


def polydecay_gbf(spectrum: Spectrum, s: float) -> GBF:
    """Coefficients ``(k+1)^{-s}`` by frequency rank, not by eigenvalue.

    Rank indexing means the kernel depends on the basis choice inside a
    degenerate eigenvalue cluster; that is inherent to the definition.
    """
    s = float(s)
    if not s > 0.0:
        raise InvalidParamError(f"s must be > 0, got {s}")
    coeffs = (np.arange(spectrum.n, dtype=float) + 1.0) ** (-s)
    return gbf_from_coeffs(spectrum, coeffs, descriptor=f"polydecay:s={s!r}")


def bandlimited_gbf(spectrum: Spectrum, m: int) -> GBF:
    """First ``m`` coefficients one, the rest zero.

    The kernel is the orthogonal projector onto the first ``m``
    eigenvectors; it is PSD and only PD when ``m == n``.
    """
    m = int(m)
    if not (1 <= m <= spectrum.n):
        raise BandwidthOutOfRangeError(f"bandwidth {m} outside 1..{spectrum.n}")
    coeffs = np.zeros(spectrum.n)
    coeffs[:m] = 1.0
    return gbf_from_coeffs(spectrum, coeffs, descriptor=f"bandlimited:M={m}")


# -------------------------------------------------------------- descriptors

# kind -> parameter table: None marks the bare-list form (poly), otherwise
# ordered (key, converter) pairs.
_GRAMMAR: dict[str, tuple[tuple[str, type], ...] | None] = {
    "unity": (),
    "auglap": (("delta", float),),
    "poly": None,
    "spline": (("eps", float), ("s", float)),
    "pspline": (("s", float),),
    "diffusion": (("t", float),),
    "polydecay": (("s", float),),
    "bandlimited": (("M", int),),
}

DESCRIPTOR_KINDS = tuple(sorted(_GRAMMAR))


def parse_descriptor(text: str) -> tuple[str, dict]:
    """Parse a basis function descriptor string.

    Grammar (one line per kind)::

        unity
        auglap:delta=<float>
        poly:<float>,<float>,...
        spline:eps=<float>,s=<float>
        pspline:s=<float>
        diffusion:t=<float>
        polydecay:s=<float>
        bandlimited:M=<int>

    Returns ``(kind, params)`` where ``params`` maps parameter names to
    converted values (``poly`` gets ``{"coefficients": [...]}``). Failures
    raise :class:`DescriptorError` carrying the character position and the
    expected token.
    """
    if not isinstance(text, str) or not text.strip():
        raise DescriptorError(str(text), 0, f"one of {', '.join(DESCRIPTOR_KINDS)}")
    text = text.strip()
    head, sep, rest = text.partition(":")
    if head not in _GRAMMAR:
        raise DescriptorError(text, 0, f"one of {', '.join(DESCRIPTOR_KINDS)}")
    table = _GRAMMAR[head]
    if table == ():
        if sep:
            raise DescriptorError(text, len(head), "end of descriptor (unity takes no parameters)")
        return head, {}
    if not sep or not rest:
        raise DescriptorError(text, len(text), f"':' followed by parameters for {head!r}")
    offset = len(head) + 1
    if table is None:
        coeffs = []
        for chunk, pos in _split_args(rest, offset):
            coeffs.append(_convert(text, chunk, pos, float, "a float coefficient"))
        return head, {"coefficients": coeffs}
    params: dict = {}
    expected_keys = [key for key, _ in table]
    for chunk, pos in _split_args(rest, offset):
        key, eq, value = chunk.partition("=")
        if not eq:
            raise DescriptorError(text, pos, f"'<key>=<value>' with key in {expected_keys}")
        key = key.strip()
        converter = dict(table).get(key)
        if converter is None:
            raise DescriptorError(text, pos, f"one of the keys {expected_keys}")
        if key in params:
            raise DescriptorError(text, pos, f"each key at most once ({key} repeated)")
        what = "an integer" if converter is int else "a float"
        params[key] = _convert(text, value, pos + len(key) + 1, converter, what)
    missing = [k for k in expected_keys if k not in params]
    if missing:
        raise DescriptorError(text, len(text), f"missing parameter(s) {missing}")
    return head, params


def _split_args(rest: str, offset: int):
    pairs = []
    pos = offset
    for chunk in rest.split(","):
        pairs.append((chunk, pos))
        pos += len(chunk) + 1
    return pairs


def _convert(text: str, token: str, pos: int, converter, what: str):
    token = token.strip()
    try:
        if converter is int:
            if not token or any(ch not in "+-0123456789" for ch in token):
                raise ValueError
        return converter(token)
    except ValueError:
        raise DescriptorError(text, pos, f"{what}, got {token!r}") from None


def make_gbf(spectrum: Spectrum, descriptor: str) -> GBF:
    """Build a catalog GBF from its descriptor string."""
    kind, params = parse_descriptor(descriptor)
    if kind == "unity":
        return unity_gbf(spectrum)
    if kind == "auglap":
        return augmented_laplacian_gbf(spectrum, params["delta"])
    if kind == "poly":
        return laplacian_polynomial_gbf(spectrum, params["coefficients"])
    if kind == "spline":
        return variational_spline_gbf(spectrum, params["eps"], params["s"])
    if kind == "pspline":
        return pseudoinverse_spline_gbf(spectrum, params["s"])
    if kind == "diffusion":
        return diffusion_gbf(spectrum, params["t"])
    if kind == "polydecay":
        return polydecay_gbf(spectrum, params["s"])
    return bandlimited_gbf(spectrum, params["M"])
