"""Acceptance suite: the eight release criteria, one test each.

Each test runs the corresponding criterion from coprimality.acceptance
against the shared session environment (full-size suites, seed 42), prints
a single PASS/FAIL line, and enforces the stated runtime budget where one
exists.  `coprimality reproduce` runs the identical checks from the CLI.
"""

import pytest

from coprimality import acceptance

RUNTIME_BUDGETS = {1: 5.0, 2: 60.0, 4: 30.0, 6: 10.0, 8: 20.0}

_RESULTS = {}


def _run(env, criterion):
    if criterion.__name__ not in _RESULTS:
        _RESULTS[criterion.__name__] = criterion(env)
    return _RESULTS[criterion.__name__]


def _report(result):
    status = "PASS" if result.passed else "FAIL"
    print(f"criterion {result.number} ({result.name}): {status} "
          f"[{result.runtime_seconds:.2f}s]")
    failing = [
        f"  {c.label}: observed {c.observed}, expected {c.expected}"
        for c in result.checks if not c.ok
    ]
    assert result.passed, (
        f"criterion {result.number} ({result.name}) failed:\n"
        + "\n".join(failing)
    )
    budget = RUNTIME_BUDGETS.get(result.number)
    if budget is not None:
        assert result.runtime_seconds < budget, (
            f"criterion {result.number} took {result.runtime_seconds:.2f}s, "
            f"budget {budget:.0f}s"
        )


@pytest.mark.parametrize(
    "criterion",
    acceptance.CRITERIA,
    ids=[f"criterion_{k}" for k in range(1, len(acceptance.CRITERIA) + 1)],
)
def test_criterion(acceptance_env, criterion):
    _report(_run(acceptance_env, criterion))


def test_suite_is_complete(acceptance_env):
    numbers = [
        _run(acceptance_env, criterion).number
        for criterion in acceptance.CRITERIA
    ]
    assert numbers == list(range(1, 9))
