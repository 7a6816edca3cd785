# SPDX-FileCopyrightText: 2025 Yannick Kees
# SPDX-FileCopyrightText: 2026 Yannick Kees
#
# SPDX-License-Identifier: MIT
"""Tests for the acceptance-check harness."""

import pytest

from src import validation
from src.validation import (
    CHECKS,
    CheckResult,
    check_closed_form_constants,
    check_uniform_limit,
    render_table,
    run_validation,
)


def test_registry_order():
    """Checks run in a fixed order."""
    assert list(CHECKS) == [
        "closed-form-constants",
        "oned-additivity",
        "entangled-extremes",
        "uniform-limit",
        "simulator-cross-check",
        "nonlocal-invariances",
        "property-suites",
    ]


def test_closed_form_constants_pass():
    """The localized |LL⟩ density matches the constants on a small grid."""
    result = check_closed_form_constants(64, 1)
    assert result.passed, result.detail


def test_closed_form_constants_detect_perturbation(monkeypatch):
    """Changing one constant fails the check."""
    monkeypatch.setitem(validation.REFERENCE_VALUES, "C4", validation.REFERENCE_VALUES["C4"] + 1e-3)
    assert not check_closed_form_constants(64, 1).passed


def test_uniform_limit_pass():
    """Uniform-limit values need no quadrature."""
    result = check_uniform_limit(64, 1)
    assert result.passed, result.detail
    assert result.name == "uniform-limit"


def test_raising_check_is_reported(monkeypatch):
    """An exception inside a check becomes a failing row."""

    def broken(grid, workers):
        raise RuntimeError("boom")

    monkeypatch.setitem(CHECKS, "uniform-limit", broken)
    [result] = run_validation(["uniform-limit"], 64)
    assert not result.passed
    assert "boom" in result.detail


def test_render_table():
    """The table lists each check and the pass count."""
    table = render_table(
        [CheckResult("first", True, "ok"), CheckResult("second-check", False, "off by 1e-3")],
    )
    lines = table.splitlines()
    assert "first" in lines[3] and "PASS" in lines[3]
    assert "second-check" in lines[4] and "FAIL" in lines[4]
    assert lines[-1] == "1/2 checks passed"


@pytest.mark.slow
@pytest.mark.parametrize("name", list(CHECKS))
def test_every_check_passes(name):
    """Full acceptance suite at the default validation grid."""
    [result] = run_validation([name], None)
    assert result.passed, result.detail
