import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from jacpair.parser import parse_poly  # noqa: E402

EX1 = ("x+y+x^2+y^15+2xy^15+y^30", "y+x^2+2xy^15+y^30")
EX2 = ("x+(x-y)^15", "y+(x-y)^15")
EX3 = ("x+(x-y)^30", "y+(x-y)^30")


@pytest.fixture(scope="session")
def ex1():
    return tuple(map(parse_poly, EX1))


@pytest.fixture(scope="session")
def ex2():
    return tuple(map(parse_poly, EX2))


@pytest.fixture(scope="session")
def ex3():
    return tuple(map(parse_poly, EX3))
