"""Full-count property sweeps from the module invariants, one per check."""

import pytest

from uvlab import suites


@pytest.mark.parametrize("check", suites.LEMMA_CHECKS,
                         ids=lambda fn: fn.__name__)
def test_lemma_check(check):
    result = check()
    print()
    print(result.line())
    assert result.passed, result.detail
