import pytest

from cokahler.modelfile import load_corpus


@pytest.fixture
def torus3():
    return load_corpus("torus3").to_lie_model()


@pytest.fixture
def torus5():
    return load_corpus("torus5").to_lie_model()


@pytest.fixture
def heisenberg():
    return load_corpus("heisenberg").to_lie_model()


@pytest.fixture
def contact_models(torus3, torus5, heisenberg):
    return [torus3, torus5, heisenberg]


@pytest.fixture
def cokahler_models(torus3, torus5):
    return [torus3, torus5]
