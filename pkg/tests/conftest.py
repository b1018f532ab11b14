import json
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

FROZEN_PATH = Path(__file__).parent / "oracles" / "frozen.json"


@pytest.fixture(scope="session")
def frozen() -> dict:
    return json.loads(FROZEN_PATH.read_text())


def frac(s: str) -> float:
    return float(Fraction(s))


def point(frozen: dict, name: str) -> np.ndarray:
    return np.array([frac(x) for x in frozen["points"][name]]).reshape(2, 2)


# acceptance verdicts, printed again in the terminal summary
ACCEPTANCE: dict[int, bool] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"Criterion {k}: {'PASS' if ACCEPTANCE[k] else 'FAIL'}")
