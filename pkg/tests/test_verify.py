import numpy as np
import pytest

from cyclic_oscillator import Check, Report, make_params, random_params, run_suite
from cyclic_oscillator.verify import SUITES


def test_check_semantics():
    assert Check("a", 1e-12, 1e-9).passed
    assert not Check("a", 1e-6, 1e-9).passed
    assert Check("b", 0.5, 1e-9, "min").passed
    assert not Check("b", 0.0, 1e-9, "min").passed
    assert not Check("c", float("nan"), 1.0).passed


def test_report_merging():
    a = Report("a")
    a.add("x", 1e-3, 1e-2)
    b = Report("b")
    b.add("y", 0.5, 1e-2, "min")
    a.extend(b, "b: ")
    assert [c.name for c in a.checks] == ["x", "b: y"]
    assert a.max_residual == 1e-3
    assert a.passed
    d = a.as_dict()
    assert set(d) == {"suite", "checks", "max_residual", "pass"}


@pytest.mark.parametrize("suite", SUITES)
def test_each_suite_passes(suite):
    rep = run_suite(make_params(2, [0.5, -0.5]), suite, 16)
    assert rep.passed, rep.failures()


@pytest.mark.parametrize("lam, seed", [(3, 0), (4, 1), (5, 2)])
def test_all_suites_random_parameters(lam, seed):
    rep = run_suite(random_params(lam, np.random.default_rng(seed)), "all", 18)
    assert rep.passed, rep.failures()


def test_non_positive_parameters_skip_inner_product_suites():
    rep = run_suite(make_params(3, [0.3, 0.1, -0.4]), "all", 14)
    assert rep.passed, rep.failures()
    assert "skipped" in rep.notes["blocks"]
    assert "skipped" in rep.notes["algebra"]


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite(make_params(2, [0, 0]), "nope")
