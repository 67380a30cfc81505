import pytest

from toric_exc.catalog import load_catalog
from toric_exc.picard import build_pic_context


@pytest.fixture(scope="session")
def records():
    return {r.name: r for r in load_catalog()}


@pytest.fixture(scope="session")
def contexts(records):
    return {name: build_pic_context(r.fan, r.pic_basis) for name, r in records.items()}


@pytest.fixture(scope="session")
def d1(records):
    return records["D1"]


@pytest.fixture(scope="session")
def d1_ctx(contexts):
    return contexts["D1"]


@pytest.fixture(scope="session")
def e1(records):
    return records["E1"]


@pytest.fixture(scope="session")
def e1_ctx(contexts):
    return contexts["E1"]


def zvec(m, **coeffs):
    """Divisor vector helper mirroring the Z_i notation (1-based)."""
    a = [0] * m
    for key, c in coeffs.items():
        a[int(key[1:]) - 1] = c
    return tuple(a)
