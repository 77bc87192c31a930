"""Positive definite graph basis functions.

Spectral kernels on weighted graphs, interpolation of sampled signals,
norming-set error analysis, windowed Fourier frames, and kernel
quadrature, with a command line driver (``gbf``) that turns each piece
into a reproducible report.
"""

from .analysis import (
    ConditionReport,
    NormingReport,
    condition_report,
    decay_error_bound,
    error_bound,
    norming_check,
    sampling_projection,
)
from .basis import (
    GBF,
    Classification,
    Definiteness,
    KernelMatrix,
    augment_cpd,
    augmented_laplacian_gbf,
    bandlimited_gbf,
    classify,
    convolution_square_root,
    diffusion_gbf,
    gbf_from_coeffs,
    hankel_moment_matrix,
    kernel_matrix,
    laplacian_polynomial_gbf,
    make_gbf,
    moment_pd_check,
    parse_descriptor,
    polydecay_gbf,
    pseudoinverse_spline_gbf,
    unity_gbf,
    variational_spline_gbf,
)
from .errors import GBFError
from .graphs import (
    Graph,
    build_graph,
    connected_random_geometric,
    generate_graph,
    is_connected,
    normalized_laplacian,
)
from .interpolation import (
    Interpolant,
    SamplingSet,
    interpolate,
    kernel_submatrix,
    lagrange_basis,
    native_inner,
    native_norm,
    power_function,
    sampling_set,
)
from .quadrature import (
    QuadratureRule,
    quadrature_apply,
    quadrature_error_bound,
    quadrature_weights,
)
from .spacefreq import (
    FrameBounds,
    SpaceFrequencyAtoms,
    frame_bounds,
    space_frequency_atoms,
    windowed_fourier,
)
from .spectral import (
    Spectrum,
    algebra_dual_norm,
    algebra_norm,
    bandlimit_project,
    convolve,
    eigendecompose,
    gft,
    igft,
    in_laplacian_subalgebra,
    translate,
    unity,
)

__version__ = "0.1.0"

__all__ = [
    "GBF",
    "GBFError",
    "Classification",
    "ConditionReport",
    "Definiteness",
    "FrameBounds",
    "Graph",
    "Interpolant",
    "KernelMatrix",
    "NormingReport",
    "QuadratureRule",
    "SamplingSet",
    "SpaceFrequencyAtoms",
    "Spectrum",
    "algebra_dual_norm",
    "algebra_norm",
    "augment_cpd",
    "augmented_laplacian_gbf",
    "bandlimit_project",
    "bandlimited_gbf",
    "build_graph",
    "classify",
    "condition_report",
    "connected_random_geometric",
    "convolution_square_root",
    "convolve",
    "decay_error_bound",
    "diffusion_gbf",
    "eigendecompose",
    "error_bound",
    "frame_bounds",
    "gbf_from_coeffs",
    "generate_graph",
    "gft",
    "hankel_moment_matrix",
    "igft",
    "in_laplacian_subalgebra",
    "interpolate",
    "is_connected",
    "kernel_matrix",
    "kernel_submatrix",
    "lagrange_basis",
    "laplacian_polynomial_gbf",
    "make_gbf",
    "moment_pd_check",
    "native_inner",
    "native_norm",
    "norming_check",
    "normalized_laplacian",
    "parse_descriptor",
    "polydecay_gbf",
    "power_function",
    "pseudoinverse_spline_gbf",
    "quadrature_apply",
    "quadrature_error_bound",
    "quadrature_weights",
    "sampling_projection",
    "sampling_set",
    "space_frequency_atoms",
    "translate",
    "unity",
    "unity_gbf",
    "variational_spline_gbf",
    "windowed_fourier",
]
