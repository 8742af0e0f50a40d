"""
Integration tests for the HTTP routes, calling the handlers directly
"""

from unittest.mock import Mock, patch

import pytest
from fastapi import HTTPException, status

from src.api.main import read_root
from src.api.routes.experiments import get_dimensions, get_manifest, get_summary, run_experiment
from src.api.routes.health import health_check
from src.api.routes.verification import run_verification
from src.core.exceptions import AbortedRunError, InvalidArgumentError
from src.models.experiment import CheckResult, ExperimentConfig, Manifest, VerificationReport


class TestRoutes:
    """Test cases for the route handlers"""

    def setup_method(self):
        """Setup for each test method"""
        self.service = Mock()
        self.patcher = patch("src.api.routes.experiments.experiment_service", self.service)
        self.patcher.start()

    def teardown_method(self):
        self.patcher.stop()

    async def test_root_and_health(self):
        assert "message" in await read_root()
        assert await health_check() == {"message": "ok"}

    async def test_run_experiment(self):
        manifest = Manifest(version="1.0.0", seed=1, config={})
        self.service.run_and_emit.return_value = manifest
        assert await run_experiment(ExperimentConfig(mu_values=[0.0]), workers=None) == manifest

    async def test_run_aborted_maps_to_422(self):
        self.service.run_and_emit.side_effect = AbortedRunError("no success")
        with pytest.raises(HTTPException) as exc_info:
            await run_experiment(ExperimentConfig(), workers=None)
        assert exc_info.value.status_code == status.HTTP_422_UNPROCESSABLE_ENTITY

    async def test_invalid_argument_maps_to_400(self):
        self.service.run_and_emit.side_effect = InvalidArgumentError("bad operator")
        with pytest.raises(HTTPException) as exc_info:
            await run_experiment(ExperimentConfig(), workers=None)
        assert exc_info.value.status_code == status.HTTP_400_BAD_REQUEST

    async def test_manifest_not_found(self):
        self.service.get_manifest.return_value = None
        with pytest.raises(HTTPException) as exc_info:
            await get_manifest("missing")
        assert exc_info.value.status_code == status.HTTP_404_NOT_FOUND

    async def test_summary(self):
        rows = [{"jt": 0.0, "k_mean": 0.0}]
        self.service.get_summary.return_value = rows
        assert await get_summary(0.05, "results") == rows
        self.service.get_summary.assert_called_once_with("results", 0.05)

    async def test_dimensions_not_found(self):
        self.service.get_dimensions.return_value = None
        with pytest.raises(HTTPException):
            await get_dimensions("results")

    async def test_verification(self):
        report = VerificationReport(checks=[CheckResult(name="anticommutation", passed=True)])
        service = Mock()
        service.run.return_value = report
        with patch("src.api.routes.verification.verification_service", service):
            assert await run_verification() == report
