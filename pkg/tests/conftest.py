import pytest

from supersylow.families import construct, parse_family


def alg(text):
    return construct(parse_family(text))


def basis_vec(a, name, coeff=1):
    v = [0] * a.dim
    v[a.names.index(name)] = coeff
    return v


@pytest.fixture
def build():
    return alg
