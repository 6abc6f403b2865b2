import pytest

from fkdv.reproduce import derive_pre_system, derive_tanh_system


@pytest.fixture(scope="session")
def tanh_system():
    _, system = derive_tanh_system()
    return system


@pytest.fixture(scope="session")
def pre_system():
    return derive_pre_system(1)
