"""
Unit tests for the command-line surface and the configuration loader
"""

from unittest.mock import Mock, patch

import pytest

from src.cli import load_config, main, parse_config_text
from src.core.exceptions import AbortedRunError, ConfigError
from src.models.base import BasisName
from src.models.experiment import CheckResult, Manifest, VerificationReport


class TestConfigParsing:
    """Test cases for the key = value format"""

    def test_lists_and_comments(self):
        # Arrange
        text = "# header\nN = 6\nmu_values = 0, 0.05  # two points\nbases = krylov\n\nseed=3\n"

        # Act
        config = parse_config_text(text)

        # Assert
        assert config.N == 6
        assert config.mu_values == [0.0, 0.05]
        assert config.bases == [BasisName.KRYLOV]
        assert config.seed == 3
        assert config.n_realizations == 200

    def test_bracketed_list(self):
        assert parse_config_text("lemma_m_values = [1, 2, 3]").lemma_m_values == [1, 2, 3]

    def test_unknown_key(self):
        with pytest.raises(ConfigError) as exc_info:
            parse_config_text("N = 8\nbeta = 2\n", path="run.conf")
        assert exc_info.value.key == "beta"
        assert "run.conf" in str(exc_info.value)

    def test_invalid_value(self):
        with pytest.raises(ConfigError) as exc_info:
            parse_config_text("N = 7")
        assert exc_info.value.key == "N"

    def test_unsorted_mu(self):
        with pytest.raises(ConfigError):
            parse_config_text("mu_values = 0.1, 0.0")

    def test_missing_separator(self):
        with pytest.raises(ConfigError):
            parse_config_text("N 8")

    def test_duplicate_key(self):
        with pytest.raises(ConfigError):
            parse_config_text("N = 8\nN = 6")

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(str(tmp_path / "absent.conf"))

    def test_shipped_configs_load(self):
        assert load_config("config/default.conf").n_realizations == 200
        assert load_config("config/reduced.conf").n_realizations == 20
        assert load_config("config/smoke.conf").t_max == 0


class TestCommands:
    """Test cases for exit codes"""

    def setup_method(self):
        """Setup for each test method"""
        self.manifest = Manifest(version="1.0.0", seed=1, config={}, trends={"mk_decreasing": True})

    def test_run(self, tmp_path):
        # Arrange
        config_path = tmp_path / "run.conf"
        config_path.write_text("mu_values = 0\nn_realizations = 1\n")
        service = Mock()
        service.run_and_emit.return_value = self.manifest

        # Act
        with patch("src.services.experiment_service.experiment_service", service):
            code = main(["run", "--config", str(config_path), "--seed", "5", "--workers", "2"])

        # Assert
        assert code == 0
        config = service.run_and_emit.call_args.args[0]
        assert config.seed == 5
        assert service.run_and_emit.call_args.kwargs["workers"] == 2

    def test_run_aborted(self, tmp_path):
        config_path = tmp_path / "run.conf"
        config_path.write_text("mu_values = 0\n")
        service = Mock()
        service.run_and_emit.side_effect = AbortedRunError("too many failures")
        with patch("src.services.experiment_service.experiment_service", service):
            assert main(["run", "--config", str(config_path)]) == 1

    def test_bad_config_exit_code(self, tmp_path):
        config_path = tmp_path / "bad.conf"
        config_path.write_text("unknown = 1\n")
        assert main(["run", "--config", str(config_path)]) == 1

    @pytest.mark.parametrize("passed,code", [(True, 0), (False, 1)])
    def test_verify(self, passed, code):
        service = Mock()
        service.run.return_value = VerificationReport(
            checks=[CheckResult(name="zeno_limit", passed=passed, max_error=0.0)]
        )
        with patch("src.services.verification_service.verification_service", service):
            assert main(["verify"]) == code

    def test_usage_error(self):
        with pytest.raises(SystemExit) as exc_info:
            main(["run"])
        assert exc_info.value.code == 2
