import numpy as np
import pytest

from gmclab import verify as vf


def test_check_semantics():
    assert vf.Check("x", 1.0, 1.0, 0.0, 1e-12).passed
    assert not vf.Check("x", 1.0, 2.0, 1.0, 1e-12).passed
    assert not vf.Check("x", np.nan, 1.0, np.nan, 1e-12).passed


def test_result_fails_on_any_check_or_timeout():
    r = vf.CriterionResult(99, "demo", [vf.Check("a", 0, 0, 0.0, 1.0)], runtime=0.1, runtime_limit=1.0)
    assert r.passed and r.line().startswith("[PASS] criterion 99")
    r.checks.append(vf.Check("b", 0, 0, 2.0, 1.0))
    assert not r.passed and len(r.failures()) == 1
    slow = vf.CriterionResult(98, "slow", [vf.Check("a", 0, 0, 0.0, 1.0)], runtime=2.0, runtime_limit=1.0)
    assert not slow.passed
    assert not vf.CriterionResult(97, "empty").passed


def test_standard_error_checks_are_not_residuals():
    r = vf.CriterionResult(1, "t", [vf.Check("se", 0, 0, 3.0, 4.0, "se"), vf.Check("a", 0, 0, 1e-9, 1e-6)])
    assert r.max_residual == 1e-9


def test_every_criterion_registered():
    assert sorted(vf.CRITERIA) == list(range(1, 13))


@pytest.mark.parametrize("suite", ["multigamma", "complex", "critical", "involution", "morris"])
def test_fast_suites_pass(suite):
    for r in vf.run_suite(suite):
        assert r.passed, [c.as_dict() for c in r.failures()]


def test_unknown_suite():
    with pytest.raises(ValueError):
        vf.run_suite("nope")


def test_criterion_serializes():
    d = vf.CRITERIA[1]().as_dict()
    assert d["criterion"] == 1 and d["passed"] and d["checks"]
