import numpy as np
import pytest
from numpy.testing import assert_allclose

from gbfinterp import is_connected
from gbfinterp.errors import FileFormatError, InvalidParamError
from gbfinterp.experiments import (
    bandlimited_lstsq,
    growth_sequence,
    make_graph_from_spec,
    make_signal_from_spec,
    parse_samples_spec,
    prefix_sampling_set,
    reconstruction_errors,
    reference_graph,
)
from gbfinterp.fileio import write_signal
from gbfinterp.interpolation import sampling_set
from gbfinterp.spectral import gft


class TestGrowthSequence:
    def test_is_a_permutation(self):
        order = growth_sequence(15, seed=3)
        assert sorted(order) == list(range(15))

    def test_deterministic(self):
        assert np.array_equal(growth_sequence(20, seed=5), growth_sequence(20, seed=5))
        assert not np.array_equal(growth_sequence(20, seed=5), growth_sequence(20, seed=6))

    def test_prefix_sampling_nests(self):
        small = prefix_sampling_set(10, 3, seed=7)
        large = prefix_sampling_set(10, 6, seed=7)
        assert large.indices[:3] == small.indices
        assert small.indices == tuple(growth_sequence(10, seed=7)[:3])


class TestReferenceGraph:
    def test_shape_and_connectivity(self):
        g = reference_graph()
        assert g.n == 300
        assert is_connected(g)
        assert g.isolated_nodes() == []
        assert g.coords.shape == (300, 2)

    def test_deterministic(self):
        assert np.array_equal(reference_graph().adjacency, reference_graph().adjacency)


class TestGraphSpec:
    @pytest.mark.parametrize(
        "text,n",
        [
            ("path:n=5", 5),
            ("cycle:n=6", 6),
            ("complete:n=4", 4),
            ("grid:rows=2,cols=3", 6),
            ("random_geometric:n=20,radius=0.4,seed=3", 20),
        ],
    )
    def test_kinds(self, text, n):
        assert make_graph_from_spec(text).n == n

    def test_seed_fallback(self):
        a = make_graph_from_spec("random_geometric:n=20,radius=0.4", default_seed=3)
        b = make_graph_from_spec("random_geometric:n=20,radius=0.4,seed=3")
        assert np.array_equal(a.adjacency, b.adjacency)

    def test_seed_required_somewhere(self):
        with pytest.raises(InvalidParamError):
            make_graph_from_spec("random_geometric:n=20,radius=0.4")

    @pytest.mark.parametrize("text", ["torus:n=5", "path:m=5", "path:n=5,extra=1", "path"])
    def test_bad_specs(self, text):
        with pytest.raises(InvalidParamError):
            make_graph_from_spec(text)


class TestSamplesSpec:
    def test_explicit_list(self):
        spec = parse_samples_spec("0,3,5")
        assert spec.kind == "list"
        w = spec.realize(8)
        assert w.indices == (0, 3, 5)

    def test_random_spec(self):
        spec = parse_samples_spec("random:N=4,seed=2")
        w = spec.realize(10)
        assert w.size == 4
        assert len(set(w.indices)) == 4
        again = parse_samples_spec("random:N=4,seed=2").realize(10)
        assert w.indices == again.indices

    def test_random_spec_matches_growth_sequence(self):
        w = parse_samples_spec("random:N=5,seed=9").realize(12)
        assert w.indices == tuple(growth_sequence(12, seed=9)[:5])

    def test_seed_fallback(self):
        spec = parse_samples_spec("random:N=4", default_seed=2)
        assert spec.seed == 2
        with pytest.raises(InvalidParamError):
            parse_samples_spec("random:N=4")

    @pytest.mark.parametrize("text", ["random:N=0,seed=1", "random:seed=1", "0,0,1", ""])
    def test_bad_specs(self, text):
        with pytest.raises(InvalidParamError):
            parse_samples_spec(text)


class TestSignalSpec:
    def test_eigenvector_signal(self, rand12):
        x = make_signal_from_spec(rand12, "eig:k=3")
        assert_allclose(x, rand12.fourier_matrix[:, 3], atol=1e-12)

    def test_heat_signal_decays_in_frequency(self, rand12):
        x = make_signal_from_spec(rand12, "heat:t=4.0,src=2")
        xh = np.abs(gft(rand12, x))
        envelope = np.exp(-4.0 * rand12.eigenvalues)
        assert np.all(xh <= envelope + 1e-12)

    def test_file_signal(self, rand12, tmp_path, rng):
        p = tmp_path / "sig.txt"
        values = rng.standard_normal(12)
        write_signal(p, values)
        assert_allclose(make_signal_from_spec(rand12, f"file:{p}"), values)

    def test_file_signal_length_checked(self, rand12, tmp_path):
        p = tmp_path / "sig.txt"
        write_signal(p, [1.0, 2.0])
        with pytest.raises(FileFormatError):
            make_signal_from_spec(rand12, f"file:{p}")

    @pytest.mark.parametrize("text", ["eig:k=99", "heat:t=1.0", "wave:t=1.0", "eig:k=-1"])
    def test_bad_specs(self, rand12, text):
        with pytest.raises(InvalidParamError):
            make_signal_from_spec(rand12, text)


class TestBandlimitedLstsq:
    def test_recovers_bandlimited_signals(self, rand12, rng):
        m = 4
        truth = rand12.fourier_matrix[:, :m] @ rng.standard_normal(m)
        w = sampling_set(12, range(8))
        got = bandlimited_lstsq(rand12, w, truth[w.as_array()], m)
        assert_allclose(got, truth, atol=1e-9)

    def test_underdetermined_case_still_answers(self, rand12, rng):
        w = sampling_set(12, [0, 5])
        got = bandlimited_lstsq(rand12, w, rng.standard_normal(2), 6)
        assert got.shape == (12,)
        assert np.all(np.isfinite(got))


class TestReconstructionErrors:
    def test_table_shape_and_bandlimited_literal(self, rand12, rng):
        signal = rng.standard_normal(12)
        descs = ["diffusion:t=1.0", "bandlimited:M=N", "bandlimited:M=3"]
        counts = [4, 8, 12]
        table = reconstruction_errors(rand12, descs, signal, counts, seed=5)
        assert set(table) == set(descs)
        assert all(len(v) == 3 for v in table.values())

    def test_full_sampling_drives_exact_methods_to_zero(self, rand12, rng):
        signal = rng.standard_normal(12)
        table = reconstruction_errors(
            rand12, ["diffusion:t=1.0", "bandlimited:M=N"], signal, [12], seed=1
        )
        assert table["diffusion:t=1.0"][0] <= 1e-8
        assert table["bandlimited:M=N"][0] <= 1e-8

    def test_errors_match_direct_interpolation(self, rand12, rng):
        from gbfinterp.basis import make_gbf
        from gbfinterp.interpolation import interpolate

        signal = rng.standard_normal(12)
        counts = [5, 9]
        table = reconstruction_errors(rand12, ["diffusion:t=1.0"], signal, counts, seed=3)
        f = make_gbf(rand12, "diffusion:t=1.0")
        for count, got in zip(counts, table["diffusion:t=1.0"]):
            w = prefix_sampling_set(12, count, seed=3)
            direct = interpolate(rand12, f, w, signal[w.as_array()]).signal
            assert got == pytest.approx(float(np.max(np.abs(direct - signal))), rel=1e-12)
