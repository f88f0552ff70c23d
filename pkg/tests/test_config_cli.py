import math
from pathlib import Path

import numpy as np
import pytest

import covkit as ck
from covkit.cli import main
from covkit.config import ConfigErrors, serialize_model_spec, validate_config
from covkit.errors import ParseError

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


class TestValidateConfig:
    @pytest.mark.parametrize(
        "name",
        ["intrinsic", "kernel_conv", "multi_matern", "mardia", "cressie", "experiment_1d"],
    )
    def test_shipped_configs_validate(self, name):
        grid, spec, _ = validate_config(CONFIGS / f"{name}.toml")
        assert grid.n >= 1 and spec is not None

    def test_negative_kappa_names_field(self):
        with pytest.raises(ConfigErrors) as excinfo:
            validate_config(CONFIGS / "multi_matern.toml", ["multi_matern.kappa=-1"])
        assert any("kappa" in m for m in excinfo.value.messages)

    def test_nonzero_shift_diagonal_cites_invariant(self, tmp_path):
        text = (CONFIGS / "kernel_conv.toml").read_text()
        text = text.replace("shift = 0.5", "shifts = [[0.1, 0.5], [-0.5, 0.0]]")
        path = tmp_path / "bad.toml"
        path.write_text(text)
        with pytest.raises(ConfigErrors) as excinfo:
            validate_config(path)
        assert any("diagonal" in m for m in excinfo.value.messages)

    def test_multiple_violations_all_reported(self, tmp_path):
        path = tmp_path / "bad.toml"
        path.write_text('[model]\nfamily = "intrinsic"\n')
        with pytest.raises(ConfigErrors) as excinfo:
            validate_config(path)
        assert len(excinfo.value.messages) >= 2  # grid missing and section missing

    def test_malformed_toml_parse_error(self, tmp_path):
        path = tmp_path / "broken.toml"
        path.write_text("[grid\nstart = 0")
        with pytest.raises(ParseError) as excinfo:
            validate_config(path)
        assert "line" in str(excinfo.value)

    def test_overrides_applied_before_validation(self):
        grid, _, _ = validate_config(
            CONFIGS / "intrinsic.toml", ["grid.step=1.0"]
        )
        assert grid.n == 10


class TestSerializationRoundtrip:
    def roundtrip(self, spec, tmp_path):
        grid = ck.LocationGrid([0.0, 0.5, 1.0])
        path = tmp_path / "spec.toml"
        path.write_text(serialize_model_spec(spec, grid))
        got_grid, got_spec, _ = validate_config(path)
        assert np.array_equal(got_grid.coords, grid.coords)
        return got_spec

    def test_intrinsic(self, tmp_path):
        spec = ck.IntrinsicSpec(ck.MaternParams(1.5, 0.31), np.array([[1.0, 0.21], [0.21, 2.7]]))
        got = self.roundtrip(spec, tmp_path)
        assert got.rho_params == spec.rho_params
        assert np.array_equal(got.V, spec.V)

    def test_kernel_conv(self, tmp_path):
        spec = ck.KernelConvSpec(
            (ck.GaussKernelParams(1.1, 0.9), ck.GaussKernelParams(2.3, 1.7)),
            ck.MaternParams(math.inf, 0.77),
            ck.shift_matrix(2, 0.125),
        )
        got = self.roundtrip(spec, tmp_path)
        assert got.kernels == spec.kernels
        assert got.rho_params == spec.rho_params
        assert np.array_equal(got.shifts, spec.shifts)

    def test_multi_matern(self, tmp_path):
        spec = ck.MultiMaternSpec(
            (0.5, 2.5),
            1.37,
            np.array([[1.0, 0.44], [0.44, 1.0]]),
            (1.0, 2.25),
            ck.shift_matrix(2, 0.625),
        )
        got = self.roundtrip(spec, tmp_path)
        assert got.nus == spec.nus and got.kappa == spec.kappa
        assert np.array_equal(got.betas, spec.betas)
        assert got.marginal_sds == spec.marginal_sds
        assert np.array_equal(got.shifts, spec.shifts)

    def test_mardia(self, tmp_path):
        gam = np.array([[1.0, 0.2], [0.2, 1.0]])
        b = np.array([[0.3, 0.1], [0.1, 0.3]])
        spec = ck.MardiaSpec(
            (gam, gam, gam),
            {(1, 2): b, (2, 1): b.T, (2, 3): b, (3, 2): b.T},
            {1: frozenset({2}), 2: frozenset({1, 3}), 3: frozenset({2})},
        )
        got = self.roundtrip(spec, tmp_path)
        assert got.neighborhoods == spec.neighborhoods
        for key in spec.betas:
            assert np.array_equal(got.betas[key], spec.betas[key])
        for a, b_ in zip(got.Gammas, spec.Gammas):
            assert np.array_equal(a, b_)

    def test_cressie(self, tmp_path):
        spec = ck.CressieSpec(
            ck.MaternCov(ck.MaternParams(1.5, 1.0), 1.0),
            {2: ck.MaternCov(ck.MaternParams(0.5, 2.0), 0.25),
             3: ck.MaternCov(ck.MaternParams(2.5, 2.0), 0.5)},
            {(2, 1): ck.BFunc(1.0, 1.0, ck.Shift(1.0)),
             (3, 1): ck.BFunc(0.8, 1.25, ck.Shift(-0.5))},
            p=3,
        )
        got = self.roundtrip(spec, tmp_path)
        assert got == spec  # no array fields; dataclass equality applies


class TestCli:
    def test_unknown_command_exit_1(self, capsys):
        assert main(["frobnicate", "--config", "x", "--out", "y"]) == 1

    def test_missing_args_exit_1(self, capsys):
        assert main(["build-cov"]) == 1

    def test_build_cov_writes_artifacts(self, tmp_path):
        out = tmp_path / "run"
        code = main(["build-cov", "--config", str(CONFIGS / "intrinsic.toml"), "--out", str(out)])
        assert code == 0
        assert (out / "covariance.csv").exists()
        assert (out / "covariance.csv.meta").exists()
        manifest = (out / "manifest.txt").read_text().splitlines()
        assert set(manifest) == {"covariance.csv", "covariance.csv.meta", "manifest.txt"}
        sigma = ck.load_covariance(out / "covariance.csv")
        assert sigma.n == 20 and sigma.p == 2

    def test_mardia_violation_exit_2_with_reason(self, tmp_path, capsys):
        text = (CONFIGS / "mardia.toml").read_text()
        text = text.replace("matrix = [[0.3, 0.0], [0.0, 0.3]]",
                            "matrix = [[0.303, 0.0], [0.0, 0.3]]", 1)
        cfg = tmp_path / "bad_mardia.toml"
        cfg.write_text(text)
        code = main(["build-cov", "--config", str(cfg), "--out", str(tmp_path / "o")])
        assert code == 2
        err = capsys.readouterr().err
        assert "symmetry-condition-violated" in err and "pair=(" in err

    def test_invalid_config_exit_2(self, tmp_path, capsys):
        code = main([
            "build-cov",
            "--config", str(CONFIGS / "multi_matern.toml"),
            "--out", str(tmp_path / "o"),
            "--set", "multi_matern.kappa=-1",
        ])
        assert code == 2
        assert "invalid-spec" in capsys.readouterr().err

    def test_simulate_and_empirical_corr(self, tmp_path):
        out = tmp_path / "sim"
        code = main([
            "simulate", "--config", str(CONFIGS / "intrinsic.toml"),
            "--out", str(out), "--seed", "3",
            "--set", "simulate.replicates=2",
        ])
        assert code == 0
        assert (out / "sample_0001.csv").exists() and (out / "sample_0002.csv").exists()

        out2 = tmp_path / "emp"
        code = main([
            "empirical-corr", "--config", str(CONFIGS / "intrinsic.toml"),
            "--out", str(out2),
            "--set", "empirical.replicates=50",
            "--set", "empirical.strips=[[1,10],[11,20]]",
            "--set", "empirical.pair=[1,2]",
        ])
        assert code == 0
        assert (out2 / "empirical_corr.csv").exists()
        assert (out2 / "1-2_1.csv").exists() and (out2 / "1-2_2.csv").exists()

    def test_diagnose_reports(self, tmp_path):
        out = tmp_path / "diag"
        code = main(["diagnose", "--config", str(CONFIGS / "multi_matern.toml"), "--out", str(out)])
        assert code == 0
        report = (out / "report.csv").read_text()
        assert "auto-blocks-symmetric,true" in report
        asym = (out / "asymmetry.csv").read_text().splitlines()
        assert asym[0] == "l,k,asymmetry_index"
        assert len(asym) == 3  # both cross pairs of p=2

    def test_predict_writes_predictions(self, tmp_path):
        out = tmp_path / "pred"
        code = main([
            "predict", "--config", str(CONFIGS / "cressie.toml"),
            "--out", str(out), "--seed", "1",
            "--set", "predict.target_sites_range=[1,10]",
        ])
        assert code == 0
        lines = (out / "predictions.csv").read_text().splitlines()
        assert lines[0] == "component,site,coordinate,truth,mean,sd"
        assert len(lines) == 11

    def test_rerun_byte_identical(self, tmp_path):
        args = [
            "experiment", "--config", str(CONFIGS / "experiment_1d.toml"),
            "--set", "experiment.n_seeds=2",
        ]
        outs = []
        for tag in ("a", "b"):
            out = tmp_path / tag
            assert main(args + ["--out", str(out)]) == 0
            outs.append(out)
        for path in sorted(outs[0].iterdir()):
            assert path.read_bytes() == (outs[1] / path.name).read_bytes()
