"""
Unit tests for SYK couplings and Hamiltonian
"""

import numpy as np
import pytest
from pydantic import ValidationError

from src.core.exceptions import InvalidArgumentError
from src.models.syk import CouplingTensor, DisorderSpec
from src.services.operator_algebra import build_majoranas, commutator_strings
from src.services.syk_model import (
    build_hamiltonian,
    coupling_variance,
    sample_couplings,
)


class TestCouplings:
    """Test cases for coupling sampling"""

    def setup_method(self):
        """Setup for each test method"""
        self.spec = DisorderSpec(N=8, q=4, J=1.0, seed=42, n_realizations=3)

    def test_variance(self):
        """σ² = J²(q−1)!/N^{q−1}"""
        assert coupling_variance(1.0, 4, 8) == pytest.approx(6 / 512)
        assert coupling_variance(2.0, 2, 4) == pytest.approx(4 / 4)

    def test_one_entry_per_tuple(self):
        couplings = sample_couplings(self.spec, 0)
        assert len(couplings.entries) == 70
        assert all(list(t) == sorted(t) and len(set(t)) == 4 for t in couplings.entries)

    def test_deterministic(self):
        first = sample_couplings(self.spec, 1)
        second = sample_couplings(self.spec, 1)
        assert first.entries == second.entries

    def test_realizations_differ(self):
        assert sample_couplings(self.spec, 0).entries != sample_couplings(self.spec, 1).entries

    def test_realization_stream_independent_of_count(self):
        """The same index gives the same couplings whatever the ensemble size"""
        larger = self.spec.model_copy(update={"n_realizations": 50})
        assert sample_couplings(larger, 2).entries == sample_couplings(self.spec, 2).entries

    def test_index_out_of_range(self):
        with pytest.raises(InvalidArgumentError):
            sample_couplings(self.spec, 3)

    def test_sample_variance(self):
        """Pooled couplings over many realizations have the target variance"""
        spec = self.spec.model_copy(update={"n_realizations": 200})
        values = np.concatenate(
            [list(sample_couplings(spec, r).entries.values()) for r in range(200)]
        )
        assert np.var(values) == pytest.approx(6 / 512, rel=0.05)

    def test_invalid_spec(self):
        with pytest.raises(ValidationError):
            DisorderSpec(N=4, q=6)
        with pytest.raises(ValidationError):
            DisorderSpec(N=7, q=4)


class TestHamiltonian:
    """Test cases for the SYK Hamiltonian"""

    def setup_method(self):
        """Setup for each test method"""
        self.majoranas = build_majoranas(8)

    def test_hermitian(self, hamiltonian):
        assert np.max(np.abs(hamiltonian - hamiltonian.conj().T)) < 1e-12

    def test_single_vertex_commutator(self):
        """[H, ψ₁] for H = i²·ψ₁ψ₂ψ₃ψ₄ matches the symbolic commutator"""
        # Arrange
        couplings = CouplingTensor(q=4, N=8, entries={(1, 2, 3, 4): 1.0})
        coefficient, indices = commutator_strings((1, 2, 3, 4), (1,))
        psi = self.majoranas.psi

        # Act
        hamiltonian = build_hamiltonian(couplings, self.majoranas)
        commutator = hamiltonian @ psi(1) - psi(1) @ hamiltonian

        # Assert
        expected = -coefficient * psi(indices[0]) @ psi(indices[1]) @ psi(indices[2])
        assert np.allclose(commutator, expected, atol=1e-13)

    def test_size_mismatch(self):
        couplings = CouplingTensor(q=4, N=6, entries={(1, 2, 3, 4): 1.0})
        with pytest.raises(InvalidArgumentError):
            build_hamiltonian(couplings, self.majoranas)
