import io
import json

import pandas as pd
import pytest

from src.cli import EXIT_INTERNAL, EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, execute

SMALL_GRID = ["--t-min", "-12", "--t-max", "12", "--n", "256"]


def run(argv):
    out = io.StringIO()
    code = execute(argv, stdout=out)
    return code, out.getvalue()


def test_region_command():
    code, text = run(["region", "--alpha", "-3+4i"])
    assert code == EXIT_OK
    assert json.loads(text)["classification"]["region"] == "boundary"


def test_output_is_deterministic():
    assert run(["region", "--alpha", "0.25"]) == run(["region", "--alpha", "0.25"])


@pytest.mark.parametrize("argv", [[], ["transmogrify"], ["--alpha", "1"]])
def test_unknown_or_missing_command(argv):
    assert run(argv)[0] == EXIT_USAGE


def test_malformed_complex_argument():
    assert run(["region", "--alpha", "1+"])[0] == EXIT_VALIDATION


def test_parameter_outside_region():
    code, text = run(["norm", "--alpha", "4", *SMALL_GRID])
    assert code == EXIT_VALIDATION
    assert text == ""


def test_invalid_grid_flags():
    assert run(["region", "--alpha", "0.25", "--n", "4"])[0] == EXIT_VALIDATION
    assert run(["region", "--alpha", "0.25", "--t-min", "3", "--t-max", "1"])[0] == EXIT_VALIDATION


def test_yaml_config_file(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text(
        "app:\n  name: lab\n  version: '0'\n"
        "grid:\n  t_min: -10\n  t_max: 10\n  n: 256\n"
        "run:\n  seed: 5\n  output_format: json\n"
    )
    code, text = run(["green-check", "--alpha", "4", "--config", str(path)])
    assert code == EXIT_OK
    assert json.loads(text)["grid"] == {"n": 256, "t_min": -10.0, "t_max": 10.0}


def test_missing_config_file_is_an_internal_error(tmp_path):
    code, _ = run(["region", "--alpha", "0.25", "--config", str(tmp_path / "missing.yaml")])
    assert code == EXIT_INTERNAL


def test_hardy_check_command():
    code, text = run(["check", "--kind", "hardy"])
    assert code == EXIT_OK
    assert json.loads(text)["holds"] is True


def test_pathology_csv():
    code, text = run(["pathology", "--tau", "0.75", "--m", "1", "--out", "csv", *SMALL_GRID])
    assert code == EXIT_OK
    lines = text.splitlines()
    assert lines[0] == "x,|I|,bound,residual"
    assert len(lines) == 4


def test_factorize_minus_needs_positive_m():
    assert run(["factorize", "--m", "-0.5", "--sign", "minus", *SMALL_GRID])[0] == EXIT_VALIDATION


def test_flat_csv_for_scalar_reports():
    code, text = run(["region", "--alpha", "0.25", "--out", "csv"])
    assert code == EXIT_OK
    header = text.splitlines()[0].split(",")
    assert "classification.region" in header


def test_green_check_writes_matrix_csv(tmp_path):
    path = tmp_path / "kernel.csv"
    grid = ["--t-min", "-4", "--t-max", "4", "--n", "32"]
    code, text = run(["green-check", "--alpha", "4", "--matrix-out", str(path), *grid])
    assert code == EXIT_OK
    assert json.loads(text)["matrix_path"] == str(path)
    frame = pd.read_csv(path)
    assert frame.shape == (32, 64)
    assert list(frame.columns[:4]) == ["re_0", "im_0", "re_1", "im_1"]
    # real m, real kernel
    assert (frame["im_0"] == 0).all()
    assert frame["re_0"][0] > 0


@pytest.mark.slow
def test_report_is_byte_identical_across_runs():
    first = run(["report", *SMALL_GRID, "--seed", "7"])
    second = run(["report", *SMALL_GRID, "--seed", "7"])
    assert first[1] != ""
    assert first == second
