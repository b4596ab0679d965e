"""Acceptance gate: each criterion runs at its fixed sample size and prints one line."""
import pytest

from streamlogic import acceptance

from conftest import record_acceptance


@pytest.mark.parametrize("criterion", acceptance.CRITERIA, ids=lambda fn: fn.__name__)
def test_criterion(criterion):
    result = acceptance.run_criterion(criterion)
    line = result.line()
    print(line)
    record_acceptance(line)
    assert result.passed, line


if __name__ == "__main__":
    for fn in acceptance.CRITERIA:
        print(acceptance.run_criterion(fn).line())
