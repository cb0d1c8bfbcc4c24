import pytest
from hypothesis import HealthCheck, settings

from freealg.groups import FactorTable, FreeGroupSpec, FreeProductSpec

settings.register_profile(
    "suite",
    max_examples=60,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


def make_spec(label: str):
    """Desk specs by shorthand: fp:MxP (cyclic factors) or free:N."""
    if label.startswith("fp:"):
        m, p = label[3:].split("x")
        return FreeProductSpec([FactorTable.cyclic(int(p)) for _ in range(int(m))], label=label)
    if label.startswith("free:"):
        return FreeGroupSpec(int(label[5:]), label=label)
    raise ValueError(label)


DESK_LABELS = ["fp:3x2", "fp:3x3", "fp:4x2", "fp:4x3", "free:2", "free:3"]


@pytest.fixture(scope="session")
def desk_specs():
    return {label: make_spec(label) for label in DESK_LABELS}


@pytest.fixture(scope="session")
def fp32(desk_specs):
    return desk_specs["fp:3x2"]


@pytest.fixture(scope="session")
def fp33(desk_specs):
    return desk_specs["fp:3x3"]


@pytest.fixture(scope="session")
def free2(desk_specs):
    return desk_specs["free:2"]


@pytest.fixture(scope="session")
def free3(desk_specs):
    return desk_specs["free:3"]
