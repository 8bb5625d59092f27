import functools
import sys
from pathlib import Path

import pytest

HERE = Path(__file__).resolve().parent
DATA = HERE / "data"
sys.path.insert(0, str(HERE))


@pytest.fixture
def data_dir():
    return DATA


@functools.lru_cache(maxsize=None)
def implicit_result(name: str, count_points: bool = True):
    from tropelim.implicit import implicitize
    from tropelim.poly_io import read_system
    return implicitize(read_system(DATA / name), count_points=count_points)


@functools.lru_cache(maxsize=None)
def tci_text(text: str):
    from tropelim.poly_io import parse_system
    from tropelim.tropical import tropical_complete_intersection
    return tropical_complete_intersection(parse_system(text))


from hypothesis import HealthCheck, settings  # noqa: E402

settings.register_profile("default", deadline=None, derandomize=True,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS):
            terminalreporter.write_line(line)
