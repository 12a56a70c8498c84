import json
import os

import numpy as np
import pytest

from zetaconv.cli import build_parser, dispatch
from zetaconv.fourier import SampledFunction
from zetaconv.kernels import KernelInstance, KernelKind, kernel_eval, symbol_eval
from zetaconv.solver import forward_apply


def run(capsys, *argv):
    code = dispatch(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


@pytest.fixture()
def phi_file(tmp_path):
    phi = SampledFunction.from_function(lambda x: np.exp(-x ** 2), 24.0, 1024)
    path = tmp_path / "phi.json"
    path.write_text(json.dumps(phi.to_json_obj()))
    return str(path), phi


class TestExitCodes:
    def test_usage_error_missing_flags(self, capsys):
        assert dispatch(["symbol"]) == 2

    def test_usage_error_unknown_command(self, capsys):
        assert dispatch(["frobnicate"]) == 2

    def test_sigma_validation_message(self, capsys):
        code = dispatch(["verify-example", "--sigma", "1.5", "--limit", "1000"])
        err = capsys.readouterr().err
        assert code == 2
        assert "sigma must lie in (0,1)" in err

    def test_numerical_error_exit_3(self, capsys, tmp_path):
        # phi needs the sieve past the configured limit
        code = dispatch(["mertens", "--limit", "100", "--x", "1000"])
        assert code == 3

    def test_missing_file_exit_2(self, capsys):
        code = dispatch(["apply", "--kernel", "salem", "--sigma", "0.75",
                         "--phi", "/nonexistent.json"])
        assert code == 2

    def test_help_for_every_subcommand(self, capsys):
        parser = build_parser()
        commands = ["kernel-eval", "symbol", "symbol-check", "ft", "apply", "solve",
                    "residual", "fit-translates", "mertens", "verify-example",
                    "ei-mellin-check", "scan", "calibrate"]
        for cmd in commands:
            assert dispatch([cmd, "--help"]) == 0
            out = capsys.readouterr().out
            assert "--out" in out

    def test_defaults_listed_in_help(self, capsys):
        dispatch(["solve", "--help"])
        out = capsys.readouterr().out
        assert "1e-08" in out          # cutoff tau default
        dispatch(["verify-example", "--help"])
        out = capsys.readouterr().out
        assert "1000000" in out and "0.0001" in out


class TestPassthroughCommands:
    def test_symbol_matches_library(self, capsys):
        code, obj = run_json(capsys, "symbol", "--kernel", "salem",
                             "--sigma", "0.75", "--y", "0")
        assert code == 0
        expected = symbol_eval(KernelInstance(KernelKind.SALEM, 0.75), 0.0)
        assert obj["re"] == pytest.approx(expected.real, rel=1e-15)

    def test_kernel_eval(self, capsys):
        code, obj = run_json(capsys, "kernel-eval", "--kernel", "digamma",
                             "--sigma", "0.6", "--no-strict", "--u", "1.5")
        assert code == 0
        expected = kernel_eval(KernelInstance(KernelKind.DIGAMMA, 0.6, strict=False), 1.5)
        assert obj["value"] == pytest.approx(expected, rel=1e-15)

    def test_mertens_value(self, capsys):
        code, obj = run_json(capsys, "mertens", "--limit", "1000", "--x", "100")
        assert code == 0 and obj["M"] == 1

    def test_ei_mellin(self, capsys):
        code, obj = run_json(capsys, "ei-mellin-check", "--beta", "1",
                             "--s-re", "0.75", "--tol", "1e-8")
        assert code == 0 and obj["pass"]

    def test_scan(self, capsys):
        code, obj = run_json(capsys, "scan", "--kernel", "salem", "--sigma-lo", "0.75",
                             "--sigma-hi", "0.75", "--t-lo", "0", "--t-hi", "5",
                             "--dt", "0.05", "--delta", "1e-4")
        assert code == 0 and obj["classification"] == "NONVANISHING"


class TestFileFlows:
    def test_apply_then_solve_roundtrip(self, capsys, tmp_path, phi_file):
        phi_path, phi = phi_file
        code, h_obj = run_json(capsys, "apply", "--kernel", "salem", "--sigma", "0.75",
                               "--phi", phi_path)
        assert code == 0
        h_path = tmp_path / "h.json"
        h_path.write_text(json.dumps(h_obj))
        outdir = tmp_path / "solved"
        code, rep = run_json(capsys, "solve", "--kernel", "salem", "--sigma", "0.75",
                             "--h", str(h_path), "--out", str(outdir))
        assert code == 0
        assert rep["residual_sup"] <= 1e-4
        assert (outdir / "manifest.json").exists()
        phi_back = json.loads((outdir / "phi.json").read_text())
        vals = np.array([complex(re, im) for re, im in phi_back["data"]])
        err = np.sqrt(np.sum(np.abs(vals - phi.samples) ** 2)
                      / np.sum(np.abs(phi.samples) ** 2))
        assert err <= 1e-3

    def test_ft_forward(self, capsys, tmp_path, phi_file):
        phi_path, _ = phi_file
        code, obj = run_json(capsys, "ft", "--input", phi_path, "--direction", "forward")
        assert code == 0
        assert obj["n"] == 1024 and "dy" in obj

    def test_residual_command(self, capsys, tmp_path, phi_file):
        phi_path, phi = phi_file
        h = forward_apply(KernelInstance(KernelKind.SALEM, 0.75), phi)
        h_path = tmp_path / "h.json"
        h_path.write_text(json.dumps(h.to_json_obj()))
        code, obj = run_json(capsys, "residual", "--kernel", "salem", "--sigma", "0.75",
                             "--phi", phi_path, "--h", str(h_path))
        assert code == 0
        assert obj["residual_sup"] <= 1e-10

    def test_fit_translates_command(self, capsys, tmp_path, phi_file):
        phi_path, _ = phi_file
        code, obj = run_json(capsys, "fit-translates", "--kernel", "salem",
                             "--sigma", "0.75", "--g", phi_path,
                             "--nodes=-2,0,2", "--p", "2")
        assert code == 0
        assert len(obj["coeffs"]) == 3

    def test_verify_example_stdout_and_exit(self, capsys):
        code, obj = run_json(capsys, "verify-example", "--sigma", "0.75",
                             "--limit", "10000", "--tol", "1e-4")
        assert code == 0 and obj["pass"]

    def test_verify_example_failure_exit_1(self, capsys):
        code, obj = run_json(capsys, "verify-example", "--sigma", "0.75",
                             "--limit", "10000", "--tol", "1e-30")
        assert code == 1 and not obj["pass"]

    def test_calibrate_with_manifest(self, capsys, tmp_path):
        outdir = tmp_path / "cal"
        code, obj = run_json(capsys, "calibrate", "--out", str(outdir))
        assert code == 0
        manifest = json.loads((outdir / "manifest.json").read_text())
        assert manifest["parameters"]["fracpart_constant"] == 1.0
        assert manifest["parameters"]["digamma_sine"] == "pi_s"

    def test_manifest_contents(self, capsys, tmp_path, phi_file):
        phi_path, _ = phi_file
        outdir = tmp_path / "apl"
        code, _ = run_json(capsys, "apply", "--kernel", "salem", "--sigma", "0.75",
                           "--phi", phi_path, "--out", str(outdir))
        assert code == 0
        manifest = json.loads((outdir / "manifest.json").read_text())
        assert manifest["command"] == "apply"
        assert manifest["parameters"]["sigma"] == 0.75
        assert "phi" in manifest["input_digests"]
        assert len(manifest["input_digests"]["phi"]) == 64
        assert manifest["seed"] == 0

    def test_rerun_reproduces_bytes(self, capsys, tmp_path):
        out_a = tmp_path / "a"
        out_b = tmp_path / "b"
        for out in (out_a, out_b):
            code, _ = run(capsys, "scan", "--kernel", "salem", "--sigma-lo", "0.6",
                          "--sigma-hi", "0.6", "--t-lo", "0", "--t-hi", "2",
                          "--dt", "0.1", "--out", str(out))
            assert code == 0
        for name in sorted(os.listdir(out_a)):
            assert (out_a / name).read_bytes() == (out_b / name).read_bytes()


class TestMoreFlows:
    def test_ft_inverse_direction(self, capsys, tmp_path, phi_file):
        phi_path, phi = phi_file
        from zetaconv.fourier import forward_ft
        spec = forward_ft(phi)
        spec_path = tmp_path / "spec.json"
        spec_path.write_text(json.dumps(spec.to_json_obj()))
        code, obj = run_json(capsys, "ft", "--input", str(spec_path),
                             "--direction", "inverse")
        assert code == 0
        back = np.array([complex(re, im) for re, im in obj["data"]])
        assert np.max(np.abs(back - phi.samples)) < 1e-10

    def test_solve_tikhonov_route(self, capsys, tmp_path, phi_file):
        phi_path, phi = phi_file
        from zetaconv.kernels import KernelInstance, KernelKind
        h = forward_apply(KernelInstance(KernelKind.SALEM, 0.75), phi)
        h_path = tmp_path / "h.json"
        h_path.write_text(json.dumps(h.to_json_obj()))
        code, rep = run_json(capsys, "solve", "--kernel", "salem", "--sigma", "0.75",
                             "--h", str(h_path), "--reg", "tikhonov", "--alpha", "1e-8")
        assert code == 0
        assert rep["residual_sup"] <= 1e-4
