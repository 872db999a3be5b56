from __future__ import annotations

import pytest

from implicitize import gen_cusp, gen_grassmannian, gen_sunlet_k3p


@pytest.fixture(scope="session")
def cusp():
    return gen_cusp()


@pytest.fixture(scope="session")
def gr24():
    return gen_grassmannian(4)


@pytest.fixture(scope="session")
def gr25():
    return gen_grassmannian(5)


@pytest.fixture(scope="session")
def sunlet():
    return gen_sunlet_k3p()
