import pytest

from hnp_knot.groups.matrices import parse_matrices, translation
from hnp_knot.groups.permgroup import close, set_order_cap
from hnp_knot.groups.zoo import SL2_F3_CLASSES, build_semidirect_std
from hnp_knot.orchestrator.decision import KnotDecider


@pytest.fixture(autouse=True)
def default_order_cap():
    yield
    set_order_cap(1_000_000)


@pytest.fixture(scope="session")
def star_groups():
    """``(C_3)^2 x| G-dagger`` with its stabilizer, keyed by ``|G-dagger|``."""
    return {order: build_semidirect_std(3, parse_matrices(mats, 3)) for order, mats in SL2_F3_CLASSES.items()}


@pytest.fixture(scope="session")
def diag_group():
    """``(C_3)^2 x| <diag(-1, 1)>``: determinant -1, order 18."""
    return build_semidirect_std(3, parse_matrices([[[2, 0], [0, 1]]], 3))


@pytest.fixture(scope="session")
def translations3():
    return close([translation(3, 1, 0), translation(3, 0, 1)], 9)


@pytest.fixture
def decider():
    return KnotDecider()
