"""
Unit tests for the experiment service
"""

from unittest.mock import Mock

import numpy as np
import pytest

from src.core.config import Settings
from src.core.exceptions import AbortedRunError, InvalidArgumentError, ResourceLimitError
from src.models.experiment import ExperimentConfig, RealizationResult
from src.models.observables import ComplexitySeries
from src.services.experiment_service import (
    ExperimentService,
    aggregate,
    k_saturation,
    run_realization,
    strictly_decreasing,
)


def make_result(mu, realization, k_values, dim=3, error=None, flagged=False) -> RealizationResult:
    if error is not None:
        return RealizationResult(mu=mu, realization=realization, error=error)
    k_values = np.asarray(k_values, dtype=float)
    ones = np.ones_like(k_values)
    series = ComplexitySeries(
        times=np.arange(k_values.shape[0], dtype=float),
        K=k_values,
        C_krylov=ones + k_values,
        C_string=ones + 2 * k_values,
        F_krylov=np.log(ones + k_values),
        F_string=np.log(ones + 2 * k_values),
        norm=ones,
        mean_size=ones,
        dim=dim,
        flagged=flagged,
    )
    return RealizationResult(
        mu=mu,
        realization=realization,
        series=series,
        coefficients=np.zeros((dim, 5)),
        krylov_dim=dim,
        growth_alpha=0.5,
        termination_reason="breakdown",
    )


class TestAggregate:
    """Test cases for ensemble means and variances"""

    def test_two_points(self):
        """(0, 2) → mean 1, unbiased variance 2"""
        table = aggregate([make_result(0.0, 0, [0.0]), make_result(0.0, 1, [2.0])], 0.0)
        assert table.means["K"][0] == pytest.approx(1.0)
        assert table.variances["K"][0] == pytest.approx(2.0)

    def test_duplicates_have_zero_variance(self):
        results = [make_result(0.0, r, [0.0, 1.5, 3.0]) for r in range(4)]
        table = aggregate(results, 0.0)
        assert np.all(table.variances["K"] == 0)
        assert table.mk_var == 0

    def test_order_independent(self):
        # Arrange
        results = [make_result(0.1, r, np.random.default_rng(r).random(5), dim=r + 2) for r in range(6)]
        shuffled = [results[i] for i in (3, 0, 5, 1, 4, 2)]

        # Act
        first, second = aggregate(results, 0.1), aggregate(shuffled, 0.1)

        # Assert
        for field in first.means:
            assert np.array_equal(first.means[field], second.means[field])
            assert np.array_equal(first.variances[field], second.variances[field])
        assert first.mk_mean == second.mk_mean

    def test_single_success_has_zero_variance(self):
        table = aggregate([make_result(0.0, 0, [1.0, 2.0])], 0.0)
        assert np.array_equal(table.variances["K"], [0.0, 0.0])

    def test_failures_are_excluded_and_counted(self):
        results = [make_result(0.0, 0, [1.0]), make_result(0.0, 1, [], error="breakdown (step 4)")]
        table = aggregate(results, 0.0)
        assert table.n_success == 1
        assert table.n_excluded == 1
        assert table.means["K"][0] == 1.0

    def test_flagged_series_counted(self):
        results = [make_result(0.0, 0, [1.0]), make_result(0.0, 1, [1.0], flagged=True)]
        assert aggregate(results, 0.0).n_flagged == 1

    def test_no_success(self):
        with pytest.raises(AbortedRunError):
            aggregate([make_result(0.0, 0, [], error="breakdown")], 0.0)

    def test_only_matching_mu(self):
        results = [make_result(0.0, 0, [1.0]), make_result(0.1, 0, [5.0])]
        assert aggregate(results, 0.1).means["K"][0] == 5.0


class TestHelpers:
    def test_strictly_decreasing(self):
        assert strictly_decreasing([3.0, 2.0, 1.0])
        assert not strictly_decreasing([3.0, 3.0, 1.0])
        assert strictly_decreasing([1.0])

    def test_saturation_uses_tail(self):
        table = aggregate([make_result(0.0, 0, np.arange(10.0))], 0.0)
        assert k_saturation(table) == pytest.approx(8.5)


class TestExperimentService:
    """Test cases for ExperimentService"""

    def setup_method(self):
        """Setup for each test method"""
        self.mock_repository = Mock()
        self.mock_factory = Mock(return_value=self.mock_repository)
        self.service = ExperimentService(repository_factory=self.mock_factory, config=Settings())
        self.config = ExperimentConfig(
            mu_values=[0.0, 0.05], t_max=0.0, n_times=1, n_realizations=2, seed=7, outputs="out"
        )

    def test_single_point_run(self):
        """t_max = 0 gives K = 0 and C = 1"""
        # Act
        bundle = self.service.run(self.config)

        # Assert
        assert len(bundle.tables) == 2
        for table in bundle.tables:
            assert table.means["K"][0] == pytest.approx(0.0, abs=1e-12)
            assert table.means["C_krylov"][0] == pytest.approx(1.0)
            assert table.means["C_string"][0] == pytest.approx(1.0)
            assert table.n_success == 2
        assert sorted(bundle.coefficients) == [
            "mu0.0000_r0000", "mu0.0000_r0001", "mu0.0500_r0000", "mu0.0500_r0001",
        ]
        assert bundle.manifest.seed == 7
        assert bundle.manifest.exclusions == {"0.0000": 0, "0.0500": 0}
        assert bundle.manifest.flagged == {"0.0000": 0, "0.0500": 0}

    def test_deterministic(self):
        first = self.service.run(self.config)
        second = self.service.run(self.config)
        for a, b in zip(first.tables, second.tables):
            assert a.mk_mean == b.mk_mean
        for key in first.coefficients:
            assert np.array_equal(first.coefficients[key], second.coefficients[key])

    def test_run_and_emit(self):
        # Arrange
        self.mock_repository.emit.return_value = ["out/manifest.json"]

        # Act
        manifest = self.service.run_and_emit(self.config)

        # Assert
        self.mock_factory.assert_called_once_with("out")
        self.mock_repository.emit.assert_called_once()
        assert manifest.config["N"] == 8

    def test_outputs_override(self):
        self.mock_repository.emit.return_value = ["elsewhere/manifest.json"]
        self.service.run_and_emit(self.config, outputs="elsewhere")
        self.mock_factory.assert_called_once_with("elsewhere")

    def test_failure_policy(self):
        """More than 1 % failures aborts"""
        config = self.config.model_copy(update={"n_realizations": 10})
        results = [make_result(0.0, r, [0.0]) for r in range(9)]
        results.append(make_result(0.0, 9, [], error="breakdown"))
        results += [make_result(0.05, r, [0.0]) for r in range(10)]
        with pytest.raises(AbortedRunError):
            self.service.assemble(config, results)

    def test_failures_within_limit(self):
        service = ExperimentService(self.mock_factory, Settings(failure_fraction_limit=0.2))
        config = self.config.model_copy(update={"n_realizations": 10})
        results = [make_result(mu, r, [0.0]) for mu in (0.0, 0.05) for r in range(9)]
        results.append(make_result(0.05, 9, [], error="breakdown"))
        bundle = service.assemble(config, results)
        assert bundle.manifest.exclusions == {"0.0000": 0, "0.0500": 1}

    def test_unnormalized_operator(self):
        config = self.config.model_copy(update={"initial_operator": "2*psi1"})
        with pytest.raises(InvalidArgumentError):
            self.service.run(config)

    def test_memory_guard(self):
        service = ExperimentService(self.mock_factory, Settings(max_fermions=6))
        with pytest.raises(ResourceLimitError):
            service.run(self.config)

    def test_common_couplings_across_mu(self):
        """μ = 0 results do not depend on which other μ are swept"""
        alone = run_realization(self.config.model_copy(update={"mu_values": [0.0]}), 1)
        swept = run_realization(self.config, 1)
        assert np.array_equal(alone[0].coefficients, swept[0].coefficients)

    def test_get_manifest_missing(self):
        self.mock_repository.load_manifest.return_value = None
        assert self.service.get_manifest("nowhere") is None
