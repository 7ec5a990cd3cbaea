"""
Tests for the orbispec command line.
"""

import json
import math

import pytest

from orbispec.errors import BudgetExceeded
from orbispec.services.geodesics import LengthSpectrum
from orbispec.services.psi import cone_sum_samples
from orbispec.utils.io import sampled_csv


def invoke(runner, cli, args):
    return runner.invoke(cli, args, catch_exceptions=False)


class TestSignature:
    def test_237(self, runner, cli):
        result = invoke(runner, cli, ["signature", "-g", "0", "-m", "2,3,7"])
        assert result.exit_code == 0
        report = json.loads(result.output)
        assert report["chi"] == "-1/42"
        assert report["hyperbolic"] is True
        assert report["area"] == pytest.approx(math.pi / 21)
        assert report["cone_orders"] == [2, 3, 7]

    def test_not_hyperbolic_is_reported(self, runner, cli):
        """Non-hyperbolic signatures are a valid answer, not an error."""
        result = invoke(runner, cli, ["signature", "-g", "0", "-m", "2,2"])
        assert result.exit_code == 0
        report = json.loads(result.output)
        assert report["hyperbolic"] is False
        assert report["area"] is None

    def test_input_file(self, runner, cli, tmp_path):
        path = tmp_path / "sig.json"
        path.write_text(json.dumps({"genus": 2, "cone_orders": []}))
        result = invoke(runner, cli, ["signature", "--input", str(path)])
        assert json.loads(result.output)["area"] == pytest.approx(4 * math.pi)

    def test_requires_a_signature(self, runner, cli):
        result = runner.invoke(cli, ["signature"])
        assert result.exit_code == 2

    def test_unknown_flag(self, runner, cli):
        result = runner.invoke(cli, ["signature", "--bogus-flag"])
        assert result.exit_code == 2


class TestTriangle:
    def test_structure_json(self, runner, cli):
        result = invoke(runner, cli, ["triangle", "2", "3", "7"])
        structure = json.loads(result.output)
        assert structure["genus"] == 0
        assert len(structure["generators"]) == 3

    def test_euclidean_triangle_exits_one(self, runner, cli):
        """Domain errors become one JSON line on stderr and exit status 1."""
        result = runner.invoke(cli, ["triangle", "2", "3", "6"])
        assert result.exit_code == 1
        payload = json.loads(result.stderr.strip().splitlines()[-1])
        assert payload["error"] == "not_hyperbolic"
        assert result.stdout == ""

    def test_output_file(self, runner, cli, tmp_path):
        path = tmp_path / "237.json"
        result = invoke(runner, cli, ["--output", str(path), "triangle", "2", "3", "7"])
        assert result.exit_code == 0
        assert json.loads(path.read_text())["cone_orders"] == [2, 3, 7]


class TestLengths:
    def test_deterministic(self, runner, cli):
        """Two runs print byte-identical spectra."""
        args = ["lengths", "--preset", "2,3,7", "--max-length", "2.5", "--depth", "6"]
        first = invoke(runner, cli, args)
        second = invoke(runner, cli, args)
        assert first.exit_code == 0
        assert first.output == second.output
        rows = [json.loads(line) for line in first.output.splitlines()]
        assert rows
        assert all(row["primitive"] for row in rows)
        assert [row["length"] for row in rows] == sorted(row["length"] for row in rows)

    def test_csv_format(self, runner, cli, mocker):
        spectrum = LengthSpectrum.from_pairs([(1.5, 2), (2.25, 4)])
        compute = mocker.patch(
            "orbispec.commands.lengths.length_spectrum", return_value=spectrum
        )
        result = invoke(
            runner,
            cli,
            ["lengths", "--preset", "2,3,7", "--max-length", "3", "--format", "csv", "--no-certify"],
        )
        assert result.output.splitlines() == [
            "length,multiplicity,word,primitive",
            "1.5,2,,true",
            "2.25,4,,true",
        ]
        assert compute.call_args.kwargs["certify"] is False

    def test_needs_one_group(self, runner, cli, bolza_generators_path):
        result = runner.invoke(
            cli,
            [
                "lengths",
                "--preset",
                "2,3,7",
                "--generators",
                str(bolza_generators_path),
                "--max-length",
                "2",
            ],
        )
        assert result.exit_code == 2

    def test_budget_exceeded(self, runner, cli, mocker):
        mocker.patch(
            "orbispec.commands.lengths.length_spectrum",
            side_effect=BudgetExceeded("Element count passed the enumeration cap", cap=10),
        )
        result = runner.invoke(cli, ["lengths", "--preset", "2,3,7", "--max-length", "2"])
        assert result.exit_code == 1
        assert json.loads(result.stderr.strip().splitlines()[-1])["details"] == {"cap": 10}

    def test_bolza_generators_file(self, runner, cli, bolza_generators_path):
        result = invoke(
            runner,
            cli,
            [
                "lengths",
                "--generators",
                str(bolza_generators_path),
                "--max-length",
                "3.1",
                "--depth",
                "3",
            ],
        )
        first = json.loads(result.output.splitlines()[0])
        assert first["length"] == pytest.approx(2 * math.acosh(1 + math.sqrt(2)), abs=1e-9)


class TestCones:
    def test_points(self, runner, cli):
        result = invoke(runner, cli, ["cones", "points", "--preset", "2,3,7"])
        assert json.loads(result.output) == {"cone_orders": [2, 3, 7]}

    @pytest.mark.parametrize("exhaustive", [False, True])
    def test_decompose(self, runner, cli, tmp_path, exhaustive):
        path = tmp_path / "samples.csv"
        path.write_text(sampled_csv(cone_sum_samples([2, 2, 7])))
        args = ["cones", "decompose", str(path), "--max-order", "8"]
        if exhaustive:
            args.append("--exhaustive")
        report = json.loads(invoke(runner, cli, args).output)
        assert report["cone_orders"] == [2, 2, 7]
        assert report["residual"] < 1e-10


class TestTraceEval:
    def test_gaussian_report(self, runner, cli, tmp_path):
        eigenvalues = tmp_path / "eigenvalues.json"
        eigenvalues.write_text("[0.0]")
        result = invoke(
            runner,
            cli,
            [
                "trace-eval",
                "--preset",
                "2,3,7",
                "--t",
                "1.0",
                "--max-length",
                "3",
                "--depth",
                "8",
                "--eigenvalues",
                str(eigenvalues),
            ],
        )
        report = json.loads(result.output)
        assert report["total"] == pytest.approx(
            report["identity"] + report["hyperbolic"] + report["elliptic"]
        )
        assert report["spectral"] == pytest.approx(math.exp(0.25))
        assert report["weyl_area_estimate"] == pytest.approx(4 * math.pi * math.exp(0.25))
        assert report["convention"] == "h(r)=∫g(u)e^{iru}du"

    def test_eigenvalue_file_must_be_a_list(self, runner, cli, tmp_path):
        eigenvalues = tmp_path / "eigenvalues.json"
        eigenvalues.write_text('{"lambda": 0}')
        result = runner.invoke(
            cli,
            [
                "trace-eval",
                "--preset",
                "2,3,7",
                "--max-length",
                "2",
                "--depth",
                "6",
                "--eigenvalues",
                str(eigenvalues),
            ],
        )
        assert result.exit_code == 1


class TestWave:
    def test_synth_needs_output(self, runner, cli):
        result = runner.invoke(
            cli, ["wave", "synth", "--preset", "2,3,7", "--max-length", "2"]
        )
        assert result.exit_code == 2

    def test_synth_and_invert(self, runner, cli, tmp_path):
        """A trace synthesized from a spectrum file inverts to the same data."""
        spectrum = tmp_path / "spectrum.csv"
        spectrum.write_text("length,multiplicity,word,primitive\n1.0,2,,true\n1.7,1,,true\n")
        trace = tmp_path / "trace.csv"
        result = invoke(
            runner,
            cli,
            [
                "--output",
                str(trace),
                "wave",
                "synth",
                "--spectrum",
                str(spectrum),
                "--area",
                repr(math.pi / 21),
                "--cone-orders",
                "2,3,7",
                "--max-length",
                "4",
                "--grid-max",
                "24",
            ],
        )
        assert result.exit_code == 0
        sidecar = json.loads(trace.with_suffix(".json").read_text())
        assert sidecar["sigma"] == pytest.approx(0.05)
        assert sidecar["max_length"] == 4.0

        residual = tmp_path / "residual.csv"
        result = invoke(runner, cli, ["wave", "invert", str(trace), "--residual", str(residual)])
        report = json.loads(result.output)
        assert [row["length"] for row in report["lengths"]] == pytest.approx([1.0, 1.7], abs=1e-4)
        assert [row["multiplicity"] for row in report["lengths"]] == [2, 1]
        assert report["cone_orders"] == [2, 3, 7]
        assert report["genus"] == 0
        assert residual.exists()
        assert json.loads(residual.with_suffix(".json").read_text())["parts"] == ["smooth"]

    def test_invert_grid_coverage(self, runner, cli, tmp_path):
        spectrum = tmp_path / "spectrum.csv"
        spectrum.write_text("length,multiplicity,word,primitive\n1.0,1,,true\n")
        trace = tmp_path / "trace.csv"
        invoke(
            runner,
            cli,
            [
                "-o",
                str(trace),
                "wave",
                "synth",
                "--spectrum",
                str(spectrum),
                "--area",
                "3.0",
                "--max-length",
                "2",
                "--grid-max",
                "3",
            ],
        )
        result = runner.invoke(cli, ["wave", "invert", str(trace), "--max-length", "2.9"])
        assert result.exit_code == 1
        assert json.loads(result.stderr.strip().splitlines()[-1])["error"] == "grid_coverage"


def test_version(runner, cli):
    result = invoke(runner, cli, ["--version"])
    assert "orbispec" in result.output


def test_progress_goes_to_stderr(runner, cli):
    """--progress reports steps on stderr and leaves stdout parseable."""
    result = invoke(
        runner,
        cli,
        ["--progress", "lengths", "--preset", "2,3,7", "--max-length", "2", "--depth", "6"],
    )
    assert "Length spectrum" in result.stderr
    assert "complete in" in result.stderr
    for line in result.stdout.splitlines():
        json.loads(line)
