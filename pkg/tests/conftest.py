"""
Shared fixtures: one seeded N=8 realization and its building blocks
"""

import numpy as np
import pytest

from src.models.base import Parity
from src.models.syk import DisorderSpec
from src.services.lindbladian import build_full
from src.services.operator_algebra import build_majoranas, build_string_basis, parse_operator
from src.services.syk_model import build_hamiltonian, sample_couplings

SEED = 20240601


@pytest.fixture(scope="session")
def majoranas():
    return build_majoranas(8)


@pytest.fixture(scope="session")
def x0(majoranas):
    return parse_operator("sqrt2*psi1", majoranas)


@pytest.fixture(scope="session")
def odd_basis(majoranas):
    return build_string_basis(majoranas, Parity.ODD)


@pytest.fixture(scope="session")
def hamiltonian(majoranas):
    spec = DisorderSpec(N=8, q=4, J=1.0, seed=SEED, n_realizations=5)
    return build_hamiltonian(sample_couplings(spec, 0), majoranas)


@pytest.fixture(scope="session")
def closed_superoperator(hamiltonian, majoranas):
    return build_full(hamiltonian, majoranas, 0.0)


@pytest.fixture(scope="session")
def open_superoperator(hamiltonian, majoranas):
    return build_full(hamiltonian, majoranas, 0.05)


@pytest.fixture(scope="session")
def free_superoperator(majoranas):
    """H = 0 with μ = 0.3"""
    dim = majoranas.hilbert_dim
    return build_full(np.zeros((dim, dim)), majoranas, 0.3)
