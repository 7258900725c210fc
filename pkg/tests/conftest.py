import pytest

from jigsaw.tiling import fan_jigsaw_group, weierstrass_group


@pytest.fixture(scope="session")
def w4():
    return weierstrass_group(4)


@pytest.fixture(scope="session")
def g11():
    return fan_jigsaw_group(1, 1)


@pytest.fixture(scope="session")
def g21():
    return fan_jigsaw_group(2, 1)


@pytest.fixture(scope="session")
def g12():
    return fan_jigsaw_group(1, 2)
