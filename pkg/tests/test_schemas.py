"""Every JSON document the CLI emits validates against its published schema."""

import json
import subprocess
import sys
from pathlib import Path

import pytest
from jsonschema import Draft202012Validator

SCHEMA_DIR = Path(__file__).resolve().parent.parent / "docs" / "schemas"


def load_schema(name):
    schema = json.loads((SCHEMA_DIR / name).read_text())
    Draft202012Validator.check_schema(schema)
    return schema


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "gbfinterp.cli", *[str(a) for a in args]],
        capture_output=True,
        text=True,
    )


@pytest.fixture(scope="module")
def artifacts(tmp_path_factory):
    """One run per command, shared by the validation tests below."""
    base = tmp_path_factory.mktemp("cli_json")
    runs = {
        "spectrum": ("spectrum", "--gen", "cycle:n=8"),
        "interpolate": (
            "interpolate", "--gen", "random_geometric:n=20,radius=0.45,seed=2",
            "--gbf", "diffusion:t=1.5", "--samples", "random:N=8,seed=3",
            "--signal", "heat:t=2.0,src=0",
        ),
        "norming": ("norming", "--gen", "cycle:n=8", "--samples", "0,2,4,6",
                    "--bandwidth", "3"),
        "quadrature": ("quadrature", "--gen", "cycle:n=8", "--gbf", "diffusion:t=1.0",
                       "--samples", "random:N=6,seed=3", "--signal", "heat:t=2.0,src=1",
                       "--bandwidth", "2"),
        "frame": ("frame", "--gen", "cycle:n=8", "--gbf", "diffusion:t=1.0",
                  "--bandwidth", "3"),
    }
    out = {}
    for name, args in runs.items():
        directory = base / name
        proc = run_cli(*args, "--out", directory, "--no-figures")
        assert proc.returncode == 0, proc.stderr
        out[name] = directory
    return out


@pytest.mark.parametrize(
    "command,filename,schema_name",
    [
        ("spectrum", "spectrum.json", "spectrum.schema.json"),
        ("interpolate", "diagnostics.json", "diagnostics.schema.json"),
        ("norming", "norming.json", "norming.schema.json"),
        ("quadrature", "quadrature.json", "quadrature.schema.json"),
        ("frame", "frame.json", "frame.schema.json"),
    ],
)
def test_document_validates(artifacts, command, filename, schema_name):
    document = json.loads((artifacts[command] / filename).read_text())
    Draft202012Validator(load_schema(schema_name)).validate(document)


def test_quadrature_without_signal_also_validates(tmp_path):
    out = tmp_path / "run"
    proc = run_cli("quadrature", "--gen", "path:n=2", "--gbf", "diffusion:t=0.5",
                   "--samples", "0", "--out", out, "--no-figures")
    assert proc.returncode == 0, proc.stderr
    document = json.loads((out / "quadrature.json").read_text())
    Draft202012Validator(load_schema("quadrature.schema.json")).validate(document)


def test_error_channel_validates(tmp_path):
    proc = run_cli("interpolate", "--gen", "cycle:n=8", "--gbf", "bandlimited:M=3",
                   "--samples", "0,2,4", "--signal", "eig:k=1",
                   "--out", tmp_path / "run", "--no-figures")
    assert proc.returncode == 3
    payload = json.loads(proc.stderr.strip())
    Draft202012Validator(load_schema("error.schema.json")).validate(payload)
