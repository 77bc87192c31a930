import numpy as np
import pytest
from numpy.testing import assert_allclose

from gbfinterp.basis import bandlimited_gbf, diffusion_gbf, make_gbf, unity_gbf
from gbfinterp.errors import (
    DimensionMismatchError,
    FirstEigenvectorNotConstantError,
    IndexOutOfRangeError,
    InvalidParamError,
    NotPDError,
)
from gbfinterp.spacefreq import (
    frame_bounds,
    space_frequency_atoms,
    windowed_fourier,
)


class TestAtoms:
    def test_atom_formula(self, cycle8):
        window = diffusion_gbf(cycle8, 1.0)
        atoms = space_frequency_atoms(cycle8, window, [0, 2])
        u = cycle8.fourier_matrix
        kernel = (u * window.coeffs) @ u.T
        want = np.sqrt(8.0) * u[:, 2] * kernel[:, 5]
        assert_allclose(atoms.atom(5, 2), want, atol=1e-12)

    def test_number_of_matrices_matches_frequencies(self, cycle8):
        window = diffusion_gbf(cycle8, 1.0)
        atoms = space_frequency_atoms(cycle8, window, [0, 1, 3])
        assert atoms.frequencies == (0, 1, 3)
        assert len(atoms.matrices) == 3

    def test_unknown_frequency_rejected_in_atom(self, cycle8):
        atoms = space_frequency_atoms(cycle8, diffusion_gbf(cycle8, 1.0), [0, 1])
        with pytest.raises(InvalidParamError):
            atoms.atom(0, 5)


class TestWindowedFourier:
    def test_coefficients_are_atom_inner_products(self, cycle8, rng):
        window = diffusion_gbf(cycle8, 0.5)
        freqs = [0, 1, 2]
        atoms = space_frequency_atoms(cycle8, window, freqs)
        x = rng.standard_normal(8)
        coeffs = windowed_fourier(cycle8, window, x, freqs)
        assert coeffs.shape == (8, 3)
        for j in range(8):
            for col, k in enumerate(freqs):
                assert coeffs[j, col] == pytest.approx(atoms.atom(j, k) @ x, abs=1e-12)

    def test_rejects_wrong_signal_length(self, cycle8):
        with pytest.raises(DimensionMismatchError):
            windowed_fourier(cycle8, unity_gbf(cycle8), np.ones(5), [0])

    def test_needs_constant_first_eigenvector(self, path3):
        with pytest.raises(FirstEigenvectorNotConstantError):
            windowed_fourier(path3, diffusion_gbf(path3, 1.0), np.ones(3), [0])

    def test_frequency_zero_is_required(self, cycle8):
        with pytest.raises(InvalidParamError):
            windowed_fourier(cycle8, unity_gbf(cycle8), np.ones(8), [1, 2])

    def test_frequencies_must_be_in_range(self, cycle8):
        with pytest.raises(IndexOutOfRangeError):
            windowed_fourier(cycle8, unity_gbf(cycle8), np.ones(8), [0, 8])


class TestFrameBounds:
    def test_unity_full_set_gives_tight_frame(self, cycle8, rng):
        # all atoms together act as n times the identity
        bounds = frame_bounds(cycle8, unity_gbf(cycle8), range(8))
        assert bounds.a_empirical == pytest.approx(8.0, abs=1e-9)
        assert bounds.b_empirical == pytest.approx(8.0, abs=1e-9)
        # full-set lower estimate sqrt(n) * (min coeff)^2 holds with room
        assert bounds.a_theory_full == pytest.approx(np.sqrt(8.0), abs=1e-12)
        assert bounds.a_theory_full <= bounds.a_empirical + 1e-9
        # energy check against a direct sum over atoms
        x = rng.standard_normal(8)
        coeffs = windowed_fourier(cycle8, unity_gbf(cycle8), x, range(8))
        assert np.sum(coeffs**2) == pytest.approx(8.0 * float(x @ x), rel=1e-10)

    def test_single_frequency_bounds_are_exact(self, cycle8):
        window = diffusion_gbf(cycle8, 1.0)
        bounds = frame_bounds(cycle8, window, [0])
        assert bounds.a_empirical == pytest.approx(float(window.coeffs.min()) ** 2, abs=1e-10)
        assert bounds.b_empirical == pytest.approx(float(window.coeffs.max()) ** 2, abs=1e-10)
        assert bounds.a_theory_full is None

    def test_small_sets_satisfy_the_stated_sandwich(self, rng):
        from gbfinterp.graphs import generate_graph, normalized_laplacian
        from gbfinterp.spectral import eigendecompose

        spectrum = eigendecompose(normalized_laplacian(generate_graph("cycle", n=36)))
        for desc, m in (("diffusion:t=2.0", 2), ("spline:eps=0.5,s=1.0", 3), ("polydecay:s=2.0", 2)):
            window = make_gbf(spectrum, desc)
            bounds = frame_bounds(spectrum, window, range(m))
            assert bounds.a_theory <= bounds.a_empirical + 1e-9
            assert bounds.b_empirical <= bounds.b_theory + 1e-9
            for _ in range(20):
                x = rng.standard_normal(36)
                energy = float(np.sum(windowed_fourier(spectrum, window, x, range(m)) ** 2))
                nrm2 = float(x @ x)
                assert bounds.a_theory * nrm2 - 1e-8 <= energy <= bounds.b_theory * nrm2 + 1e-8

    def test_window_must_be_pd(self, cycle8):
        with pytest.raises(NotPDError):
            frame_bounds(cycle8, bandlimited_gbf(cycle8, 3), [0, 1])

    def test_to_dict_shape(self, cycle8):
        d = frame_bounds(cycle8, unity_gbf(cycle8), [0, 1]).to_dict()
        assert set(d) == {
            "A_theory",
            "B_theory",
            "A_empirical",
            "B_empirical",
            "A_theory_full",
            "is_basis_per_frequency",
            "frequencies",
        }
        assert d["frequencies"] == [0, 1]
