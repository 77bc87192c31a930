import numpy as np
import pytest
from numpy.testing import assert_allclose

from gbfinterp.analysis import norming_check
from gbfinterp.basis import (
    bandlimited_gbf,
    diffusion_gbf,
    kernel_matrix,
    make_gbf,
)
from gbfinterp.errors import DimensionMismatchError, NotPDError
from gbfinterp.interpolation import interpolate, sampling_set
from gbfinterp.quadrature import (
    quadrature_apply,
    quadrature_error_bound,
    quadrature_weights,
)


def test_two_node_weight_closed_form(path2):
    # rhs is the column mean 1/2, diagonal entry (1+e^-1)/2, so the single
    # weight is the logistic value 1/(1+e^-1).
    f = diffusion_gbf(path2, 0.5)
    rule = quadrature_weights(path2, f, sampling_set(2, [0]))
    assert_allclose(rule.weights, [1.0 / (1.0 + np.exp(-1.0))], atol=1e-12)
    assert rule.exactness_residual <= 1e-12
    assert rule.gbf_descriptor == "diffusion:t=0.5"


def test_full_sampling_gives_uniform_weights(rand12):
    f = diffusion_gbf(rand12, 1.0)
    rule = quadrature_weights(rand12, f, sampling_set(12, range(12)))
    assert_allclose(rule.weights, np.full(12, 1.0 / 12.0), atol=1e-10)


def test_rule_is_exact_on_the_interpolation_space(rand12, rng):
    f = make_gbf(rand12, "spline:eps=1.0,s=2.0")
    k = kernel_matrix(rand12, f).matrix
    for _ in range(20):
        size = int(rng.integers(1, 12))
        w = sampling_set(12, rng.permutation(12)[:size])
        rule = quadrature_weights(rand12, f, w)
        x = k[:, w.as_array()] @ rng.standard_normal(size)
        got = quadrature_apply(rule, x)
        assert got == pytest.approx(float(x.mean()), abs=1e-9 * (1 + np.abs(x).max()))


def test_quadrature_integrates_the_interpolant(rand12, rng):
    # applying the rule to any signal equals the mean of its interpolant
    f = diffusion_gbf(rand12, 1.0)
    w = sampling_set(12, [0, 3, 7, 9])
    rule = quadrature_weights(rand12, f, w)
    x = rng.standard_normal(12)
    s = interpolate(rand12, f, w, x[w.as_array()]).signal
    assert quadrature_apply(rule, x) == pytest.approx(float(s.mean()), abs=1e-10)


def test_semidefinite_kernel_refused(cycle4):
    with pytest.raises(NotPDError):
        quadrature_weights(cycle4, bandlimited_gbf(cycle4, 2), sampling_set(4, [0, 1]))


def test_apply_checks_signal_length(path2):
    f = diffusion_gbf(path2, 0.5)
    rule = quadrature_weights(path2, f, sampling_set(2, [0]))
    with pytest.raises(DimensionMismatchError):
        quadrature_apply(rule, np.ones(3))


def test_error_bound_covers_the_quadrature_defect(rand12, rng):
    f = diffusion_gbf(rand12, 1.0)
    for _ in range(15):
        size = int(rng.integers(5, 12))
        w = sampling_set(12, rng.permutation(12)[:size])
        report = norming_check(rand12, w, 3)
        if not report.is_norming:
            continue
        rule = quadrature_weights(rand12, f, w)
        x = rng.standard_normal(12)
        defect = abs(quadrature_apply(rule, x) - float(x.mean()))
        assert defect <= quadrature_error_bound(rand12, f, report, x) + 1e-12
