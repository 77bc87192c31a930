"""Experiment plumbing shared by the command line driver and the tests.

Covers the little spec languages for generated graphs, sampling sets and
test signals, the nested random sampling sequence, the least-squares
bandlimited reconstruction used as a comparison method, and the error
versus sample count sweep.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import GBF, diffusion_gbf, make_gbf, parse_descriptor
from .errors import IllConditionedError, InvalidParamError
from .fileio import read_signal
from .graphs import Graph, connected_random_geometric, generate_graph
from .interpolation import SamplingSet, interpolate
from .spectral import Spectrum, translate

# Seed of the reference random geometric graph used by the benchmark
# examples and the acceptance experiments.
REFERENCE_SEED = 11


def reference_graph(seed: int = REFERENCE_SEED) -> Graph:
    """The 300-node connected random geometric benchmark graph."""
    return connected_random_geometric(300, 0.15, seed)


def growth_sequence(n: int, seed: int) -> np.ndarray:
    """Nested random node ordering: prefixes form a growing family of sets.

    A PCG64-seeded uniform shuffle; taking the first N entries is the same
    as adding one uniformly random new node at a time, so results for
    different N are comparable.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    return rng.permutation(n)


def prefix_sampling_set(n: int, count: int, seed: int) -> SamplingSet:
    """First ``count`` nodes of the growth sequence as a sampling set."""
    if not (1 <= count <= n):
        raise InvalidParamError(f"sample count {count} outside 1..{n}")
    order = growth_sequence(n, seed)
    return SamplingSet(indices=tuple(int(j) for j in order[:count]), n=n)


# ----------------------------------------------------------- spec parsing


def _parse_kv(body: str, what: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for chunk in body.split(","):
        key, eq, value = chunk.partition("=")
        if not eq or not key.strip():
            raise InvalidParamError(f"bad {what} parameter {chunk!r}, expected key=value")
        out[key.strip()] = value.strip()
    return out


def _take(params: dict[str, str], key: str, converter, what: str):
    if key not in params:
        raise InvalidParamError(f"{what} needs {key}=")
    try:
        return converter(params.pop(key))
    except ValueError:
        raise InvalidParamError(f"bad value for {key} in {what}") from None


def make_graph_from_spec(text: str, default_seed: int | None = None) -> Graph:
    """Build a graph from a generator spec string.

    Forms: ``path:n=<int>``, ``cycle:n=<int>``, ``complete:n=<int>``,
    ``grid:rows=<int>,cols=<int>``,
    ``random_geometric:n=<int>,radius=<float>[,seed=<int>]``. The seed may
    be omitted only when a default seed is supplied (the driver's --seed).
    """
    kind, sep, body = text.strip().partition(":")
    if kind in ("path", "cycle", "complete"):
        params = _parse_kv(body, kind) if sep else {}
        n = _take(params, "n", int, kind)
        _reject_extra(params, kind)
        return generate_graph(kind, n=n)
    if kind == "grid":
        params = _parse_kv(body, kind) if sep else {}
        rows = _take(params, "rows", int, kind)
        cols = _take(params, "cols", int, kind)
        _reject_extra(params, kind)
        return generate_graph(kind, rows=rows, cols=cols)
    if kind == "random_geometric":
        params = _parse_kv(body, kind) if sep else {}
        n = _take(params, "n", int, kind)
        radius = _take(params, "radius", float, kind)
        seed = (
            _take(params, "seed", int, kind)
            if "seed" in params
            else default_seed
        )
        _reject_extra(params, kind)
        if seed is None:
            raise InvalidParamError(
                "random_geometric needs seed= (or the driver's --seed)"
            )
        return generate_graph(kind, n=n, radius=radius, seed=seed)
    raise InvalidParamError(
        f"unknown graph spec {text!r}; kinds: path, cycle, complete, grid, random_geometric"
    )


def _reject_extra(params: dict[str, str], what: str):
    if params:
        raise InvalidParamError(f"unexpected {what} parameter(s): {sorted(params)}")


@dataclass(frozen=True)
class SamplesSpec:
    """Parsed sampling spec: an explicit list or a seeded random prefix."""

    kind: str  # "list" | "random"
    indices: tuple[int, ...] = ()
    count: int = 0
    seed: int = 0

    def realize(self, n: int) -> SamplingSet:
        if self.kind == "list":
            return SamplingSet(indices=self.indices, n=n)
        return prefix_sampling_set(n, self.count, self.seed)


def parse_samples_spec(text: str, default_seed: int | None = None) -> SamplesSpec:
    """Parse a sampling spec.

    Either ``random:N=<int>,seed=<int>`` (prefix of the nested growth
    sequence; seed may fall back to the driver's --seed) or a bare
    comma-separated list of node indices like ``0,5,9``.
    """
    text = text.strip()
    if text.startswith("random:"):
        params = _parse_kv(text[len("random:") :], "random samples")
        count = _take(params, "N", int, "random samples")
        seed = (
            _take(params, "seed", int, "random samples")
            if "seed" in params
            else default_seed
        )
        _reject_extra(params, "random samples")
        if count < 1:
            raise InvalidParamError(f"random sample count must be >= 1, got {count}")
        if seed is None:
            raise InvalidParamError("random samples need seed= (or the driver's --seed)")
        return SamplesSpec(kind="random", count=count, seed=seed)
    try:
        indices = tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise InvalidParamError(
            f"bad samples spec {text!r}: expected 'random:N=..,seed=..' or 'i,j,k,...'"
        ) from None
    if len(set(indices)) != len(indices):
        raise InvalidParamError(f"sample list {text!r} repeats an index")
    return SamplesSpec(kind="list", indices=indices)


def make_signal_from_spec(spectrum: Spectrum, text: str) -> np.ndarray:
    """Build a test signal from a signal spec string.

    Forms: ``eig:k=<int>`` (eigenvector k, 0-based ascending),
    ``heat:t=<float>,src=<int>`` (heat kernel translate, a smooth but not
    bandlimited signal), or ``file:<path>`` (one value per line).
    """
    text = text.strip()
    kind, sep, body = text.partition(":")
    if kind == "eig":
        params = _parse_kv(body, "eig signal") if sep else {}
        k = _take(params, "k", int, "eig signal")
        _reject_extra(params, "eig signal")
        if not (0 <= k < spectrum.n):
            raise InvalidParamError(f"eigenvector index {k} outside 0..{spectrum.n - 1}")
        return spectrum.fourier_matrix[:, k].copy()
    if kind == "heat":
        params = _parse_kv(body, "heat signal") if sep else {}
        t = _take(params, "t", float, "heat signal")
        src = _take(params, "src", int, "heat signal")
        _reject_extra(params, "heat signal")
        gbf = diffusion_gbf(spectrum, t)
        return translate(spectrum, spectrum.fourier_matrix @ gbf.coeffs, src)
    if kind == "file":
        if not body:
            raise InvalidParamError("file signal needs a path: file:<path>")
        return read_signal(body, n=spectrum.n)
    raise InvalidParamError(
        f"unknown signal spec {text!r}; kinds: eig:k=, heat:t=,src=, file:<path>"
    )


# ------------------------------------------------ bandlimited comparison


def bandlimited_lstsq(
    spectrum: Spectrum, sampling: SamplingSet, samples, m: int
) -> np.ndarray:
    """Least-squares reconstruction in the span of the first m eigenvectors.

    The classical comparison method: fit bandlimited coefficients to the
    samples (exact interpolation when the eigenvector submatrix is square
    and invertible, least squares otherwise) and evaluate everywhere.
    """
    m = int(m)
    if not (1 <= m <= spectrum.n):
        raise InvalidParamError(f"bandwidth {m} outside 1..{spectrum.n}")
    values = np.asarray(samples, dtype=float)
    sub = spectrum.fourier_matrix[sampling.as_array(), :m]
    coeffs, *_ = np.linalg.lstsq(sub, values, rcond=None)
    return spectrum.fourier_matrix[:, :m] @ coeffs


# --------------------------------------------------------- error sweeps


def _is_bandlimited_descriptor(text: str) -> tuple[bool, int | None]:
    """Detect bandlimited descriptors, including the per-N form M=N."""
    stripped = text.strip()
    if stripped.replace(" ", "") == "bandlimited:M=N":
        return True, None
    kind, _, _ = stripped.partition(":")
    if kind != "bandlimited":
        return False, 0
    _, params = parse_descriptor(stripped)
    return True, int(params["M"])


def reconstruction_errors(
    spectrum: Spectrum,
    descriptors: list[str],
    signal: np.ndarray,
    counts: list[int],
    seed: int,
) -> dict[str, list[float]]:
    """Max reconstruction error per method over a grid of sample counts.

    Sampling sets are prefixes of one growth sequence, so rows are nested.
    GBF descriptors are interpolated; bandlimited descriptors use the
    least-squares reconstruction (with ``M=N`` meaning bandwidth equal to
    the current sample count). A sample count where the kernel system is
    numerically singular records ``nan`` for that method.
    """
    n = spectrum.n
    order = growth_sequence(n, seed)
    table: dict[str, list[float]] = {d: [] for d in descriptors}
    cache: dict[str, GBF] = {}
    for count in counts:
        sampling = SamplingSet(indices=tuple(int(j) for j in order[:count]), n=n)
        values = signal[sampling.as_array()]
        for desc in descriptors:
            is_bl, m_fixed = _is_bandlimited_descriptor(desc)
            try:
                if is_bl:
                    m = count if m_fixed is None else m_fixed
                    rec = bandlimited_lstsq(spectrum, sampling, values, m)
                else:
                    if desc not in cache:
                        cache[desc] = make_gbf(spectrum, desc)
                    rec = interpolate(spectrum, cache[desc], sampling, values).signal
                err = float(np.max(np.abs(rec - signal)))
            except IllConditionedError:
                err = float("nan")
            table[desc].append(err)
    return table
