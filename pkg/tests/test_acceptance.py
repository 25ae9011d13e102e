"""One test per acceptance criterion; each prints a PASS/FAIL line with its timing."""

import pytest

from sector_atlas.acceptance import CRITERIA, run_criterion, run_suite, select, summary


@pytest.mark.parametrize("number", [c.number for c in CRITERIA], ids=[f"criterion_{c.number:02d}_{c.key}" for c in CRITERIA])
def test_criterion(number, capsys):
    result = run_criterion(number)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.seconds <= result.budget
    assert result.passed, result.detail


def test_registry_covers_all_eleven():
    assert [c.number for c in CRITERIA] == list(range(1, 12))
    assert [c.number for c in select("figures")] == [5, 6, 11]
    assert [c.number for c in select("frobenius")] == [3, 4]
    assert [c.number for c in select("8")] == [8]


def test_parallel_run_is_ordered():
    results = run_suite("figures", jobs=2)
    assert [r.number for r in results] == [5, 6, 11]
    data = summary(results, timings=False)
    assert data["total"] == 3 and "seconds" not in data["criteria"][0]
