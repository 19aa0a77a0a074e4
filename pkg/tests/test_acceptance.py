"""One test per acceptance criterion, each within its time budget.

Every test prints a PASS/FAIL line; the lines are repeated in the terminal
summary.
"""

from __future__ import annotations

from conftest import ACCEPTANCE_LINES
from wreathcalc import suite


def _report(number: int, res: suite.CheckResult, limit: float | None):
    within = limit is None or res.seconds < limit
    ok = res.passed and within
    budget = f", limit {limit:.0f}s" if limit is not None else ""
    line = f"criterion {number:2d} [{'PASS' if ok else 'FAIL'}] {res.name}: {res.detail} ({res.seconds:.1f}s{budget})"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert res.passed, res.detail
    assert within, f"took {res.seconds:.1f}s, limit {limit}s"


def test_01_catalan_counts():
    res = suite.check_catalan(8)
    assert res.data["counts"][4] == 14 and res.data["counts"][6] == 132 and res.data["counts"][8] == 1430
    _report(1, res, 10)


def test_02_loop_rule():
    _report(2, suite.check_loop_rule(pairs=200, seed=0), 30)


def test_03_linear_independence():
    _report(3, suite.check_linear_independence(N=4, max_points=8), 120)


def test_04_topological_generation():
    _report(4, suite.check_topological_generation(bound=6), 300)


def test_05_normal_closure_quotient():
    _report(5, suite.check_normal_closure_quotient(bound=6), 300)


def test_06_one_dimensional_sector():
    _report(6, suite.check_onedim_sector(), 120)


def test_07_onedim_fusion_rule():
    res = suite.check_onedim_fusion(bound=8, max_word_len=3)
    _report(7, res, None)


def test_08_glued_product():
    _report(8, suite.check_glued(bound=8, max_word_len=3), 600)


def test_09_classical_model():
    _report(9, suite.check_classical(), 60)


def test_10_exact_sequence_suite():
    _report(10, suite.check_extension_suite(), 60)


def test_11_word_monoid():
    _report(11, suite.check_word_monoid(3), 60)
