import pytest

from casimir_ase import QuadratureConfig, resolve_material


@pytest.fixture(scope="session")
def gold():
    return resolve_material("gold")


@pytest.fixture(scope="session")
def cfg():
    return QuadratureConfig(abs_tol=1e-6)


@pytest.fixture(scope="session")
def tight_cfg():
    return QuadratureConfig(abs_tol=1e-8)
