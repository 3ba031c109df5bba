"""Acceptance gate: every reference or derived number, at its stated
tolerance, one criterion per test.  Each row prints a PASS/FAIL line
(run with ``pytest -s`` to see them inline; the same rows back the
``schroder-lab verify`` command).

Stated orders: residual oracles run at order 40, the radius criterion at 400,
the s=1 growth criterion at 300; everything else at the working order 200.
"""

import pytest

from schroder_lab import verify

CRITERIA = [
    ("1-seeds", "seeds"),
    ("2-residual-oracles", "residuals"),
    ("3-numerator-polynomials", "numerator-polynomials"),
    ("4-radius-of-convergence", "radius"),
    ("5-closed-form-agreement", "closed-forms"),
    ("6-transit-times-s52", "transit-5/2"),
    ("7-transit-decomposition-s103", "transit-10/3"),
    ("8-orbit-exactness", "orbit"),
    ("9-duality", "duality"),
    ("10-trajectory", "trajectory"),
    ("11-s1-asymptotics", "s1-series"),
    ("12-branch-suite", "branches"),
]


@pytest.mark.parametrize("criterion,check", CRITERIA, ids=[c for c, _ in CRITERIA])
def test_acceptance_criterion(criterion, check):
    report = verify.run_all(only=check)
    for line in report.lines():
        print(f"{criterion}: {line}")
    failed = [row for row in report.checks if not row.passed]
    assert not failed, f"{criterion}: {len(failed)} of {report.total} rows failed: " + "; ".join(
        f"{row.check} (expected {row.expected}, computed {row.computed}, tol {row.tolerance})"
        for row in failed
    )
