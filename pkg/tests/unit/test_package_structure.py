"""
Checks that the layered package imports cleanly and wires its routes
"""

import importlib
from types import ModuleType
from unittest.mock import Mock, patch

from src.api.main import app
from src.api.routes import experiments_router, health_router, verification_router
from src.database import CSVStorage, JSONStorage, ResultsRepository, StorageInterface
from src.services import ExperimentService, LemmaService, VerificationService
from src.services.experiment_service import experiment_service
from src.services.lemma_service import lemma_service
from src.services.verification_service import verification_service


class TestPackageStructure:
    """Test cases for module wiring"""

    def test_default_instances(self):
        assert isinstance(experiment_service, ExperimentService)
        assert isinstance(lemma_service, LemmaService)
        assert isinstance(verification_service, VerificationService)
        assert experiment_service.repository_factory is ResultsRepository
        assert lemma_service.repository_factory is ResultsRepository
        assert verification_service.N == 8

    def test_service_modules_not_shadowed(self):
        """Submodule attributes of the package stay modules, so they can be patched"""
        package = importlib.import_module("src.services")
        for name in ("experiment_service", "lemma_service", "verification_service"):
            assert isinstance(getattr(package, name), ModuleType)

        with patch("src.services.experiment_service.experiment_service", Mock()) as replaced:
            module = importlib.import_module("src.services.experiment_service")
            assert module.experiment_service is replaced

    def test_public_kernels_documented(self):
        from src.services.bilanczos import bi_lanczos
        from src.services.lindbladian import build_full
        from src.services.operator_algebra import devectorize, parse_operator, vectorize
        from src.services.syk_model import sample_couplings

        for function in (vectorize, devectorize, parse_operator, sample_couplings, build_full, bi_lanczos):
            assert function.__doc__ and function.__doc__.strip(), function.__name__

    def test_storage_hierarchy(self):
        assert issubclass(JSONStorage, StorageInterface)
        assert issubclass(CSVStorage, StorageInterface)

    def test_routes_mounted(self):
        paths = {route.path for route in app.routes}
        assert {"/", "/health/", "/verify/", "/experiments/"} <= paths
        assert "/experiments/summary" in paths
        assert experiments_router.routes and health_router.routes and verification_router.routes
