import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

import pytest

from macvertex.scalar import Field


@pytest.fixture(scope="session")
def f_qt() -> Field:
    """Base coefficient field Q(p, s)."""
    return Field(["p", "s"])


@pytest.fixture(scope="session")
def f_u1() -> Field:
    return Field(["p", "s", "u1"])


@pytest.fixture(scope="session")
def f_u2() -> Field:
    return Field(["p", "s", "u1", "u2"])


@pytest.fixture(scope="session")
def f_std1() -> Field:
    return Field.standard(1)


@pytest.fixture(scope="session")
def f_std2() -> Field:
    return Field.standard(2)
