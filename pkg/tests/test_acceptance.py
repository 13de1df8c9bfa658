"""Every acceptance criterion at its stated tolerance; one result line each.

The lines are printed in the terminal summary (see ``conftest.py``) and,
with ``-s``, as each criterion finishes.
"""

import pytest

from lovecap import acceptance

RESULT_LINES: list[str] = []


@pytest.mark.parametrize(
    "number", sorted(acceptance.CRITERIA), ids=[acceptance.CRITERIA[n][0] for n in sorted(acceptance.CRITERIA)]
)
def test_criterion(number):
    result = acceptance.run_criterion(number)
    RESULT_LINES.append(result.line())
    print(result.line())
    assert result.passed, result.line()
