"""Acceptance gate: each criterion prints one pass/fail line and must pass."""

import pytest

from prodquot import acceptance


@pytest.fixture(scope="module")
def results():
    res = acceptance.run_all(quiet=True)
    print()
    for r in res:
        print(acceptance.format_line(r))
    return {r.number: r for r in res}


@pytest.mark.parametrize("number", range(1, len(acceptance.ALL_CRITERIA) + 1))
def test_criterion(results, number):
    result = results[number]
    print(acceptance.format_line(result))
    assert result.passed, acceptance.format_line(result)


def test_all_seven_criteria_are_covered(results):
    assert sorted(results) == list(range(1, 8))
