"""Command line driver.

Subcommands: ``spectrum``, ``interpolate``, ``norming``, ``quadrature``,
``frame``, ``bench``. Every command reads a graph (from an edge list file
or a generator spec), writes CSV tables and JSON diagnostics into the
output directory, and renders matplotlib figures next to them unless
``--no-figures`` is given. Identical configuration and seeds produce byte
identical CSV and JSON outputs.

Exit codes: 0 on success, 2 for configuration or file format problems,
3 for numerical failures (non definite kernel, singular system, set not
norming). Failures print a one-line JSON object to stderr with the error
class, the message and, where it helps, a remediation hint.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from . import plotting
from .analysis import error_bound, norming_check
from .basis import augment_cpd, make_gbf
from .errors import (
    BandwidthOutOfRangeError,
    DeltaTooSmallError,
    DescriptorError,
    DimensionMismatchError,
    DuplicateEdgeError,
    FileFormatError,
    FirstEigenvectorNotConstantError,
    GBFError,
    IllConditionedError,
    IndexOutOfRangeError,
    InvalidParamError,
    InvalidRateError,
    IsolatedNodeError,
    NonPositiveWeightError,
    NotInSubalgebraError,
    NotNormingError,
    NotPDError,
    NotPSDError,
    NotSymmetricError,
    SelfLoopError,
)
from .experiments import (
    growth_sequence,
    make_graph_from_spec,
    make_signal_from_spec,
    parse_samples_spec,
    reconstruction_errors,
)
from .fileio import read_coords, read_edge_list, write_csv, write_json
from .graphs import Graph, normalized_laplacian
from .interpolation import SamplingSet, interpolate
from .quadrature import quadrature_apply, quadrature_weights
from .spacefreq import frame_bounds, windowed_fourier
from .spectral import eigendecompose

_CONFIG_ERRORS = (
    InvalidParamError,
    DescriptorError,
    FileFormatError,
    NonPositiveWeightError,
    SelfLoopError,
    DuplicateEdgeError,
    IndexOutOfRangeError,
    DimensionMismatchError,
    BandwidthOutOfRangeError,
    InvalidRateError,
)

_NUMERIC_ERRORS = (
    NotPDError,
    NotPSDError,
    IllConditionedError,
    NotNormingError,
    DeltaTooSmallError,
    FirstEigenvectorNotConstantError,
    IsolatedNodeError,
    NotSymmetricError,
    NotInSubalgebraError,
)


@dataclass
class ExperimentConfig:
    """One fully resolved run: where the graph comes from and what to do."""

    command: str
    out: str
    graph: str | None = None
    gen: str | None = None
    coords: str | None = None
    gbf: list[str] | None = None
    samples: str | None = None
    signal: str | None = None
    bandwidth: int | None = None
    seed: int | None = None
    augment: float | None = None
    figures: bool = True
    dump_fourier: bool = False
    n_step: int | None = None


_CONFIG_KEYS = {f.name for f in fields(ExperimentConfig)} - {"command"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gbf",
        description="Positive definite graph basis functions: spectra, "
        "interpolation, norming sets, quadrature, windowed frames.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("spectrum", "eigendecompose the normalized Laplacian"),
        ("interpolate", "kernel interpolation of a sampled signal"),
        ("norming", "norming-set check for a bandlimited space"),
        ("quadrature", "kernel quadrature weights and errors"),
        ("frame", "windowed Fourier transform and frame bounds"),
        ("bench", "error versus sample count for several methods"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--graph", help="edge list file (header n=<count>, lines 'i j w')")
        p.add_argument("--gen", help="generator spec, e.g. path:n=10 or random_geometric:n=300,radius=0.15,seed=7")
        p.add_argument("--coords", help="optional coordinate file (one 'x y [z]' line per node)")
        p.add_argument(
            "--gbf",
            action="append",
            help="basis function descriptor, e.g. diffusion:t=10 (bench: repeatable)",
        )
        p.add_argument("--samples", help="sampling spec: 'random:N=<int>,seed=<int>' or 'i,j,k,...'")
        p.add_argument("--signal", help="signal spec: eig:k=<int> | heat:t=<f>,src=<int> | file:<path>")
        p.add_argument("--bandwidth", type=int, help="bandlimited space dimension M")
        p.add_argument("--seed", type=int, help="fallback seed for random specs that omit seed=")
        p.add_argument("--out", help="output directory (created if missing)")
        p.add_argument("--config", help="JSON file with the same keys as the flags")
        p.add_argument("--augment", type=float, help="augmentation shift applied to the GBF")
        p.add_argument("--no-figures", action="store_true", help="skip figure rendering")
        p.add_argument("--dump-fourier", action="store_true", help="spectrum: also dump the eigenvector matrix")
        p.add_argument("--n-step", type=int, help="stride of the sample count grid")
    return parser


def load_config(args: argparse.Namespace) -> ExperimentConfig:
    values: dict = {}
    if args.config:
        path = Path(args.config)
        if not path.exists():
            raise InvalidParamError(f"config file not found: {path}")
        try:
            loaded = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise InvalidParamError(f"config file {path} is not valid JSON: {exc}") from None
        if not isinstance(loaded, dict):
            raise InvalidParamError("config file must hold a JSON object")
        unknown = set(loaded) - _CONFIG_KEYS
        if unknown:
            raise InvalidParamError(f"unknown config keys: {sorted(unknown)}")
        values.update(loaded)
    flag_map = {
        "graph": args.graph,
        "gen": args.gen,
        "coords": args.coords,
        "gbf": args.gbf,
        "samples": args.samples,
        "signal": args.signal,
        "bandwidth": args.bandwidth,
        "seed": args.seed,
        "out": args.out,
        "augment": args.augment,
        "dump_fourier": args.dump_fourier or None,
        "n_step": args.n_step,
    }
    for key, val in flag_map.items():
        if val is not None:
            values[key] = val
    if args.no_figures:
        values["figures"] = False
    if isinstance(values.get("gbf"), str):
        values["gbf"] = [values["gbf"]]
    if values.get("out") is None:
        raise InvalidParamError("--out is required")
    if bool(values.get("graph")) == bool(values.get("gen")):
        raise InvalidParamError("exactly one of --graph or --gen is required")
    values.setdefault("dump_fourier", False)
    values.setdefault("figures", True)
    return ExperimentConfig(command=args.command, **values)


def _load_graph(cfg: ExperimentConfig) -> Graph:
    if cfg.graph:
        g = read_edge_list(cfg.graph)
        if cfg.coords:
            pts = read_coords(cfg.coords, n=g.n)
            return Graph(n=g.n, adjacency=np.array(g.adjacency), coords=pts)
        return g
    return make_graph_from_spec(cfg.gen, default_seed=cfg.seed)


def _single_gbf_descriptor(cfg: ExperimentConfig) -> str:
    if not cfg.gbf or len(cfg.gbf) != 1:
        raise InvalidParamError(f"{cfg.command} needs exactly one --gbf descriptor")
    return cfg.gbf[0]


def _resolve_gbf(spectrum, cfg: ExperimentConfig):
    gbf = make_gbf(spectrum, _single_gbf_descriptor(cfg))
    if cfg.augment is not None:
        gbf = augment_cpd(spectrum, gbf, cfg.augment)
    return gbf


def _out_dir(cfg: ExperimentConfig) -> Path:
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _require(cfg: ExperimentConfig, *keys: str):
    for key in keys:
        if getattr(cfg, key) is None:
            raise InvalidParamError(f"{cfg.command} needs --{key.replace('_', '-')}")


def cmd_spectrum(cfg: ExperimentConfig):
    graph = _load_graph(cfg)
    spectrum = eigendecompose(normalized_laplacian(graph))
    out = _out_dir(cfg)
    write_csv(
        out / "eigenvalues.csv",
        ["index", "eigenvalue"],
        [(k, float(v)) for k, v in enumerate(spectrum.eigenvalues)],
    )
    write_json(
        out / "spectrum.json",
        {
            "n": spectrum.n,
            "distinct_count": spectrum.distinct_count,
            "u1_constant": spectrum.u1_constant,
            "eigenvalue_min": float(spectrum.eigenvalues[0]),
            "eigenvalue_max": float(spectrum.eigenvalues[-1]),
        },
    )
    if cfg.dump_fourier:
        write_csv(
            out / "fourier_matrix.csv",
            ["node"] + [f"u{k}" for k in range(spectrum.n)],
            [
                [i] + [float(v) for v in spectrum.fourier_matrix[i]]
                for i in range(spectrum.n)
            ],
        )
    if cfg.figures:
        plotting.save_spectrum_plot(spectrum.eigenvalues, out / "spectrum.png")


def cmd_interpolate(cfg: ExperimentConfig):
    _require(cfg, "samples", "signal")
    graph = _load_graph(cfg)
    spectrum = eigendecompose(normalized_laplacian(graph))
    gbf = _resolve_gbf(spectrum, cfg)
    spec = parse_samples_spec(cfg.samples, default_seed=cfg.seed)
    sampling = spec.realize(spectrum.n)
    signal = make_signal_from_spec(spectrum, cfg.signal)
    idx = sampling.as_array()
    try:
        result = interpolate(spectrum, gbf, sampling, signal[idx])
    except NotPDError as exc:
        exc.hint = "rerun with --augment <delta> to shift the kernel onto the definite cone"
        raise
    out = _out_dir(cfg)
    is_sample = np.zeros(spectrum.n, dtype=int)
    is_sample[idx] = 1
    write_csv(
        out / "interpolant.csv",
        ["node_index", "value", "is_sample"],
        [(i, float(result.signal[i]), int(is_sample[i])) for i in range(spectrum.n)],
    )
    errors = np.abs(result.signal - signal)
    write_csv(
        out / "error.csv",
        ["node_index", "abs_error"],
        [(i, float(errors[i])) for i in range(spectrum.n)],
    )
    write_json(
        out / "diagnostics.json",
        {
            "gbf_descriptor": result.gbf_descriptor,
            "N": sampling.size,
            "condition_estimate": result.condition_estimate,
            "residual_max": result.residual_max,
            "max_error": float(errors.max()),
            "mean_error": float(errors.mean()),
        },
    )
    if spec.kind == "random":
        counts = _count_grid(sampling.size, cfg.n_step, dense_default=True)
        sweep: list[tuple[int, float, float]] = []
        order = growth_sequence(spectrum.n, spec.seed)
        for count in counts:
            sub = SamplingSet(indices=tuple(int(j) for j in order[:count]), n=spectrum.n)
            try:
                rec = interpolate(spectrum, gbf, sub, signal[sub.as_array()]).signal
                diff = np.abs(rec - signal)
                sweep.append((count, float(diff.max()), float(diff.mean())))
            except IllConditionedError:
                sweep.append((count, float("nan"), float("nan")))
        write_csv(out / "error_vs_n.csv", ["N", "max_error", "mean_error"], sweep)
        if cfg.figures:
            plotting.save_error_vs_n_plot(
                [row[0] for row in sweep],
                {gbf.descriptor: [row[1] for row in sweep]},
                out / "error_vs_n.png",
            )
    if cfg.figures:
        plotting.save_interpolant_plot(
            signal, result.signal, idx, out / "interpolant.png", coords=graph.coords
        )


def cmd_norming(cfg: ExperimentConfig):
    _require(cfg, "samples", "bandwidth")
    graph = _load_graph(cfg)
    spectrum = eigendecompose(normalized_laplacian(graph))
    sampling = parse_samples_spec(cfg.samples, default_seed=cfg.seed).realize(spectrum.n)
    report = norming_check(spectrum, sampling, cfg.bandwidth)
    out = _out_dir(cfg)
    write_json(out / "norming.json", report.to_dict())


def cmd_quadrature(cfg: ExperimentConfig):
    _require(cfg, "samples")
    graph = _load_graph(cfg)
    spectrum = eigendecompose(normalized_laplacian(graph))
    gbf = _resolve_gbf(spectrum, cfg)
    sampling = parse_samples_spec(cfg.samples, default_seed=cfg.seed).realize(spectrum.n)
    rule = quadrature_weights(spectrum, gbf, sampling)
    out = _out_dir(cfg)
    write_csv(
        out / "weights.csv",
        ["node_index", "weight"],
        [
            (int(j), float(w))
            for j, w in zip(sampling.as_array(), rule.weights)
        ],
    )
    payload: dict = {
        "gbf_descriptor": rule.gbf_descriptor,
        "n": spectrum.n,
        "N": sampling.size,
        "exactness_residual": rule.exactness_residual,
    }
    if cfg.signal is not None:
        signal = make_signal_from_spec(spectrum, cfg.signal)
        value = quadrature_apply(rule, signal)
        mean = float(np.mean(signal))
        payload.update(
            quadrature_value=value,
            mean_value=mean,
            abs_error=abs(value - mean),
        )
        if cfg.bandwidth is not None:
            report = norming_check(spectrum, sampling, cfg.bandwidth)
            if report.is_norming:
                payload["error_bound_exact"] = error_bound(
                    spectrum, gbf, report, signal, constant="exact"
                )
                payload["error_bound_neumann"] = error_bound(
                    spectrum, gbf, report, signal, constant="bound"
                )
            else:
                payload["error_bound_exact"] = None
                payload["error_bound_neumann"] = None
    write_json(out / "quadrature.json", payload)
    if cfg.figures:
        plotting.save_weights_plot(
            sampling.as_array(), rule.weights, spectrum.n, out / "weights.png"
        )


def cmd_frame(cfg: ExperimentConfig):
    _require(cfg, "bandwidth")
    graph = _load_graph(cfg)
    spectrum = eigendecompose(normalized_laplacian(graph))
    gbf = _resolve_gbf(spectrum, cfg)
    frequencies = list(range(int(cfg.bandwidth)))
    bounds = frame_bounds(spectrum, gbf, frequencies)
    out = _out_dir(cfg)
    payload = bounds.to_dict()
    payload["window"] = gbf.descriptor
    payload["n"] = spectrum.n
    write_json(out / "frame.json", payload)
    if cfg.signal is not None:
        signal = make_signal_from_spec(spectrum, cfg.signal)
        coeffs = windowed_fourier(spectrum, gbf, signal, frequencies)
        write_csv(
            out / "coefficients.csv",
            ["node_index"] + [f"freq_{k}" for k in bounds.frequencies],
            [
                [i] + [float(v) for v in coeffs[i]]
                for i in range(spectrum.n)
            ],
        )
        if cfg.figures:
            plotting.save_coefficients_plot(
                coeffs, bounds.frequencies, out / "coefficients.png"
            )


def cmd_bench(cfg: ExperimentConfig):
    _require(cfg, "samples", "signal")
    if not cfg.gbf:
        raise InvalidParamError("bench needs at least one --gbf descriptor")
    graph = _load_graph(cfg)
    spectrum = eigendecompose(normalized_laplacian(graph))
    spec = parse_samples_spec(cfg.samples, default_seed=cfg.seed)
    if spec.kind != "random":
        raise InvalidParamError("bench needs a 'random:N=..,seed=..' sampling spec")
    signal = make_signal_from_spec(spectrum, cfg.signal)
    counts = _count_grid(spec.count, cfg.n_step, dense_default=False)
    table = reconstruction_errors(spectrum, list(cfg.gbf), signal, counts, spec.seed)
    out = _out_dir(cfg)
    rows = [
        [count] + [float(table[d][i]) for d in cfg.gbf]
        for i, count in enumerate(counts)
    ]
    write_csv(out / "bench.csv", ["N"] + list(cfg.gbf), rows)
    if cfg.figures:
        plotting.save_error_vs_n_plot(counts, table, out / "bench.png")


def _count_grid(n_max: int, step: int | None, dense_default: bool) -> list[int]:
    if step is None:
        step = 1 if dense_default else max(1, n_max // 25)
    step = max(1, int(step))
    counts = list(range(step, n_max + 1, step))
    if not counts or counts[-1] != n_max:
        counts.append(n_max)
    return counts


_HANDLERS = {
    "spectrum": cmd_spectrum,
    "interpolate": cmd_interpolate,
    "norming": cmd_norming,
    "quadrature": cmd_quadrature,
    "frame": cmd_frame,
    "bench": cmd_bench,
}


def _emit_error(exc: Exception) -> None:
    payload = {"error": type(exc).__name__, "message": str(exc)}
    hint = getattr(exc, "hint", None)
    if hint:
        payload["hint"] = hint
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _HANDLERS[args.command](load_config(args))
    except _NUMERIC_ERRORS as exc:
        _emit_error(exc)
        return 3
    except _CONFIG_ERRORS as exc:
        _emit_error(exc)
        return 2
    except FileNotFoundError as exc:
        _emit_error(exc)
        return 2
    except GBFError as exc:
        _emit_error(exc)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
