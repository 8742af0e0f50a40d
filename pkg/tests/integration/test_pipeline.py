"""
End-to-end runs through the service, repository and CLI
"""

import numpy as np
import pytest

from src.cli import load_config, main
from src.core.config import Settings
from src.database.repository import ResultsRepository
from src.models.experiment import ExperimentConfig
from src.services.experiment_service import ExperimentService
from src.services.lemma_service import LemmaService
from src.services.verification_service import VerificationService


class TestSmallRuns:
    """Quick end-to-end runs"""

    def setup_method(self):
        """Setup for each test method"""
        self.service = ExperimentService(config=Settings())

    def test_bit_identical_outputs(self, tmp_path):
        """Same config and seed give byte-identical files"""
        # Arrange
        config = ExperimentConfig(
            mu_values=[0.0, 0.05], t_max=5.0, n_times=11, n_realizations=2, seed=11
        )

        # Act
        self.service.run_and_emit(config, outputs=str(tmp_path / "a"))
        self.service.run_and_emit(config, outputs=str(tmp_path / "b"))

        # Assert
        files_a = sorted(p.relative_to(tmp_path / "a") for p in (tmp_path / "a").rglob("*.*"))
        files_b = sorted(p.relative_to(tmp_path / "b") for p in (tmp_path / "b").rglob("*.*"))
        assert files_a == files_b
        assert len(files_a) == 2 * 2 + 1 + 4 + 1
        for name in files_a:
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_worker_count_does_not_change_results(self, tmp_path):
        config = ExperimentConfig(mu_values=[0.05], t_max=2.0, n_times=5, n_realizations=2, seed=3)
        serial = self.service.run(config, workers=1)
        parallel = self.service.run(config, workers=2)
        assert np.array_equal(serial.tables[0].means["K"], parallel.tables[0].means["K"])

    def test_smoke_config_via_cli(self, tmp_path):
        code = main(["run", "--config", "config/smoke.conf", "--out", str(tmp_path)])
        assert code == 0
        summary = ResultsRepository(str(tmp_path)).load_summary(0.0)
        assert summary["k_mean"][0] == pytest.approx(0.0, abs=1e-12)
        assert summary["c_krylov_mean"][0] == pytest.approx(1.0, abs=1e-10)
        assert summary["c_string_mean"][0] == pytest.approx(1.0, abs=1e-10)

    def test_lemma_smoke(self, tmp_path):
        reports = LemmaService().run_and_save(load_config("config/smoke.conf"), outputs=str(tmp_path))
        assert all(r.slopes_ok for r in reports)
        assert (tmp_path / "lemma.json").exists()


    def test_sector_trial_only_when_it_starts_at_x0(self):
        # Arrange
        config = ExperimentConfig(
            lemma_mu_values=[0.0], lemma_m_values=[1], lemma_realizations=1, lemma_trial_bases=2
        )
        shifted = config.model_copy(update={"initial_operator": "sqrt2*psi3"})

        # Act
        aligned = LemmaService().run(config)
        misaligned = LemmaService().run(shifted)

        # Assert
        assert "string-odd" in [t.label for t in aligned[0].trials]
        for report in misaligned:
            assert [t.label for t in report.trials] == ["random-0", "random-1"]
            assert report.slopes_ok

    def test_trends_on_few_realizations(self):
        """Three realizations already show M_K falling with μ"""
        # Arrange
        config = ExperimentConfig(
            mu_values=[0.0, 0.05, 0.1], t_max=20.0, n_times=21, n_realizations=3
        )

        # Act
        bundle = self.service.run(config, workers=1)

        # Assert
        assert bundle.manifest.trends["mk_decreasing"]
        mk = [t.mk_mean for t in bundle.tables]
        assert mk[0] > mk[-1]
        for table in bundle.tables:
            assert table.means["K"].min() >= -1e-9
            assert table.means["K"].max() <= table.mk_mean - 1 + 1e-9

@pytest.mark.slow
class TestAcceptanceGates:
    """Full-scale gates; run with ``pytest -m slow``"""

    def test_oracle_suite(self):
        report = VerificationService().run()
        assert report.passed, [c for c in report.checks if not c.passed]

    def test_reduced_trends(self):
        """20 realizations: mean K(Jt=120) and mean M_K strictly decrease in μ"""
        config = load_config("config/reduced.conf")
        bundle = ExperimentService().run(config, workers=4)
        assert bundle.manifest.trends["k_final_decreasing"]
        assert bundle.manifest.trends["mk_decreasing"]

    def test_spread_hierarchy(self):
        """Late-time spread complexity decreases with μ in both bases"""
        config = load_config("config/reduced.conf")
        bundle = ExperimentService().run(config, workers=4)
        times = bundle.tables[0].times
        late = times >= 60
        for key in ("C_krylov", "C_string"):
            averages = [t.means[key][late].mean() for t in bundle.tables]
            assert all(b < a for a, b in zip(averages, averages[1:]))
            for table in bundle.tables:
                assert table.means[key][0] == pytest.approx(1.0, abs=1e-10)
        first = bundle.tables[0]
        assert first.means["C_string"][1] > first.means["C_krylov"][1]

    def test_full_trends(self):
        bundle = ExperimentService().run(load_config("config/default.conf"), workers=8)
        assert bundle.manifest.trends["k_final_decreasing"]
        assert bundle.manifest.trends["mk_decreasing"]

    def test_lemma_suite(self):
        config = ExperimentConfig()
        reports = LemmaService().run(config)
        assert all(r.slopes_ok for r in reports)
        assert all(r.minimal for r in reports if r.weighting.value == "orthonormalized")
