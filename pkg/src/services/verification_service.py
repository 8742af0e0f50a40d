"""
Oracle and invariant suite run by the ``verify`` command
"""

from typing import Callable, List, Tuple

import numpy as np

from src.core.config import Settings, settings
from src.core.exceptions import KrylovError
from src.core.logging import get_logger
from src.models.base import Parity
from src.models.experiment import CheckResult, ExperimentConfig, VerificationReport
from src.models.operators import MajoranaString
from src.models.syk import DisorderSpec
from src.services.bilanczos import bi_lanczos, check_krylov, hermitian_lanczos
from src.services.lindbladian import build_dissipative_part, build_full, string_eigenvalue
from src.services.observables import (
    evolve_full,
    evolve_krylov,
    krylov_complexity,
    project_krylov,
)
from src.services.operator_algebra import (
    build_majoranas,
    enumerate_strings,
    multiply_strings,
    parse_operator,
    string_matrix,
)
from src.services.syk_model import build_hamiltonian, sample_couplings

log = get_logger("verify")

Check = Tuple[float, float, str]


class VerificationService:
    """Runs exact oracles at N=8 on one seeded realization"""

    def __init__(self, config: Settings = settings, seed: int = ExperimentConfig().seed, N: int = 8):
        self.settings = config
        self.seed = seed
        self.N = N

    def _setup(self):
        majoranas = build_majoranas(self.N, self.settings)
        x0 = parse_operator("sqrt2*psi1", majoranas)
        spec = DisorderSpec(N=self.N, q=4, J=1.0, seed=self.seed, n_realizations=1)
        hamiltonian = build_hamiltonian(sample_couplings(spec, 0), majoranas)
        return majoranas, x0, hamiltonian

    def anticommutation(self) -> Check:
        majoranas, _, _ = self._setup()
        dim = majoranas.hilbert_dim
        error = 0.0
        for i in range(1, self.N + 1):
            for j in range(i, self.N + 1):
                a, b = majoranas.psi(i), majoranas.psi(j)
                target = np.eye(dim) if i == j else np.zeros((dim, dim))
                error = max(error, float(np.max(np.abs(a @ b + b @ a - target))))
        return error, 1e-12, "{psi_i, psi_j} = delta_ij"

    def string_products(self) -> Check:
        majoranas, _, _ = self._setup()
        rng = np.random.default_rng(self.seed)
        strings = enumerate_strings(self.N, Parity.ALL)
        error = 0.0
        for _ in range(200):
            left, right = (strings[k] for k in rng.integers(len(strings), size=2))
            coefficient, indices = multiply_strings(left.indices, right.indices)
            product = (
                string_matrix(left, majoranas) / left.normalization
                @ string_matrix(right, majoranas) / right.normalization
            )
            result = MajoranaString(indices=indices)
            expected = coefficient * string_matrix(result, majoranas) / result.normalization
            error = max(error, float(np.max(np.abs(product - expected))))
        return error, 1e-12, "symbolic string products match matrix products"

    def dissipator_eigenvalues(self, mu: float = 0.3) -> Check:
        majoranas, _, _ = self._setup()
        dissipator = build_dissipative_part(majoranas, mu)
        error = 0.0
        for string in enumerate_strings(self.N, Parity.ALL):
            vector = string_matrix(string, majoranas).reshape(-1)
            expected = string_eigenvalue(string.length, self.N, mu) * vector
            error = max(error, float(np.max(np.abs(dissipator @ vector - expected))))
        return error, 1e-12, "strings are eigenoperators of the dissipator"

    def exact_decay(self, mu: float = 0.3) -> Check:
        majoranas, x0, _ = self._setup()
        dim = majoranas.hilbert_dim
        superoperator = build_full(np.zeros((dim, dim)), majoranas, mu, config=self.settings)
        times = np.linspace(0.0, 10.0, 21)
        error = 0.0
        for evolved in evolve_full(superoperator, x0, times, config=self.settings):
            diff = evolved.vector.data - np.exp(-mu * evolved.time) * x0.data
            error = max(error, float(np.sqrt(np.vdot(diff, diff).real / dim)))
        return error, 1e-10, "H = 0 gives pure exponential decay of sqrt2*psi1"

    def closed_limit(self) -> Check:
        majoranas, x0, hamiltonian = self._setup()
        superoperator = build_full(hamiltonian, majoranas, 0.0, config=self.settings)
        krylov = bi_lanczos(superoperator, x0, config=self.settings)
        _, beta, _ = hermitian_lanczos(superoperator.matrix, x0, tol=self.settings.lanczos_tol)
        common = min(beta.shape[0], krylov.dim)
        error = max(
            float(np.max(np.abs(krylov.a))),
            float(np.max(np.abs(krylov.b - krylov.c))),
            float(np.max(np.abs(krylov.b[:common] - beta[:common]))),
        )
        return error, 1e-8, "mu = 0 reduces bi-Lanczos to Hermitian Lanczos"

    def closed_limit_bases(self) -> Check:
        majoranas, x0, hamiltonian = self._setup()
        superoperator = build_full(hamiltonian, majoranas, 0.0, config=self.settings)
        krylov = bi_lanczos(superoperator, x0, config=self.settings)
        error = float(np.max(np.abs(krylov.left_basis - krylov.right_basis)))
        return error, 1e-7, "mu = 0 gives identical left and right bases"

    def biorthogonality(self) -> Check:
        majoranas, x0, hamiltonian = self._setup()
        error = 0.0
        for mu in (0.025, 0.05, 0.1):
            superoperator = build_full(hamiltonian, majoranas, mu, config=self.settings)
            diagnostics = check_krylov(superoperator, bi_lanczos(superoperator, x0, config=self.settings))
            error = max(error, diagnostics.biorthonormality_error)
        return error, 1e-8, "left and right bases are biorthonormal"

    def tridiagonality(self) -> Check:
        majoranas, x0, hamiltonian = self._setup()
        error = 0.0
        for mu in (0.025, 0.05, 0.1):
            superoperator = build_full(hamiltonian, majoranas, mu, config=self.settings)
            diagnostics = check_krylov(superoperator, bi_lanczos(superoperator, x0, config=self.settings))
            error = max(error, diagnostics.projection_error)
        return error, 1e-7, "projected superoperator is tridiagonal"

    def evolution_cross_check(self) -> Check:
        majoranas, x0, hamiltonian = self._setup()
        times = np.linspace(0.0, 20.0, 41)
        error = 0.0
        for mu in (0.0, 0.05):
            superoperator = build_full(hamiltonian, majoranas, mu, config=self.settings)
            krylov = bi_lanczos(superoperator, x0, config=self.settings)
            chain = evolve_krylov(krylov, times, self.settings)
            full = project_krylov(krylov, evolve_full(superoperator, x0, times, config=self.settings))
            for i in range(times.shape[0]):
                k_chain = krylov_complexity(chain.p[i], chain.q[i], self.settings)
                k_full = krylov_complexity(full.p[i], full.q[i], self.settings)
                error = max(error, abs(k_chain - k_full) / max(abs(k_full), 1.0))
        return error, 1e-6, "K(t) agrees between full and chain propagation"

    def zeno_limit(self) -> Check:
        majoranas, x0, hamiltonian = self._setup()
        superoperator = build_full(hamiltonian, majoranas, 1e4, config=self.settings)
        krylov = bi_lanczos(superoperator, x0, config=self.settings)
        return float(krylov.dim - 1), 0.0, "mu/J = 1e4 terminates at M_K = 1"

    def checks(self) -> List[Tuple[str, Callable[[], Check]]]:
        return [
            ("anticommutation", self.anticommutation),
            ("string_products", self.string_products),
            ("dissipator_eigenvalues", self.dissipator_eigenvalues),
            ("exact_decay", self.exact_decay),
            ("closed_limit", self.closed_limit),
            ("closed_limit_bases", self.closed_limit_bases),
            ("biorthogonality", self.biorthogonality),
            ("tridiagonality", self.tridiagonality),
            ("evolution_cross_check", self.evolution_cross_check),
            ("zeno_limit", self.zeno_limit),
        ]

    def run(self) -> VerificationReport:
        results = []
        for name, check in self.checks():
            try:
                error, limit, detail = check()
                passed = error <= limit
                results.append(CheckResult(name=name, passed=passed, max_error=error, detail=detail))
            except KrylovError as exc:
                passed = False
                results.append(CheckResult(name=name, passed=False, detail=str(exc)))
            log.info("{:<24} {}", name, "ok" if passed else "FAILED")
        return VerificationReport(checks=results)


# Default service instance
verification_service = VerificationService()
