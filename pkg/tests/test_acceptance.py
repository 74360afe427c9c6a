"""One test per acceptance criterion; each prints a single pass/fail line."""

import pytest

from hyperramsey.acceptance import CHECKS, PASS, SuiteOptions


@pytest.mark.parametrize("check", CHECKS, ids=[f"criterion_{i}" for i in range(1, len(CHECKS) + 1)])
def test_criterion(check, capsys):
    res = check(SuiteOptions())
    with capsys.disabled():
        print()
        print(res.line())
        if res.status != PASS:
            for d in res.details:
                print(f"    {d}")
    assert res.status == PASS, "\n".join(res.details)
