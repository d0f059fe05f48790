import pytest

from itohopf import AlgebraDef, HSeries, LegTensor, build_context


@pytest.fixture(scope="session")
def sec6():
    """The bundled two-dimensional example algebra: L*K = L, K*K = K, rest zero."""
    return AlgebraDef.from_structure(
        ("L", "K"), {("L", "K"): {"L": 1}, ("K", "K"): {"K": 1}}
    )


@pytest.fixture(scope="session")
def r1(sec6):
    return LegTensor.pure(sec6, ("L", "K")) - LegTensor.pure(sec6, ("K", "L"))


@pytest.fixture(scope="session")
def r_series3(sec6, r1):
    return HSeries.from_terms(3, {1: r1})


@pytest.fixture(scope="session")
def ctx3(r_series3):
    return build_context(r_series3)
