import pytest
from hypothesis import given

from probimmunity.prob_core import (
    ExperimentalMarginals,
    Interval,
    ObservationalJoint,
    ProbabilityError,
    ResponseTarget,
    derive_marginals,
)
from probimmunity.oracle import ConfoundedModel, evaluate_confounded

from .conftest import joints


def test_example2_table_marginals():
    mg = derive_marginals(ObservationalJoint(0.08, 0.2, 0.25, 0.47))
    assert mg.p_y == pytest.approx(0.33, abs=1e-12)
    assert mg.p_x == pytest.approx(0.28, abs=1e-12)


def test_uniform_marginals():
    mg = derive_marginals(ObservationalJoint(0.25, 0.25, 0.25, 0.25))
    assert mg.p_y == 0.5
    assert mg.p_y_given_x == 0.5


def test_sensitivity_model_conditionals():
    model = ConfoundedModel((0.2, 0.8), (0.4, 0.2), (0.9, 0.8), (0.2, 0.7))
    mg = derive_marginals(evaluate_confounded(model).joint)
    assert mg.p_y_given_x == pytest.approx(0.2 / 0.24, abs=1e-12)
    assert mg.p_y__given_x_ == pytest.approx(0.288 / 0.76, abs=1e-12)
    assert round(mg.p_y_given_x, 4) == 0.8333
    assert round(mg.p_y__given_x_, 4) == 0.3789


def test_zero_arm_conditionals_are_undefined():
    mg = derive_marginals(ObservationalJoint(0.0, 0.0, 0.4, 0.6))
    assert mg.p_y_given_x is None and mg.p_y__given_x is None
    assert mg.p_y_given_x_ == pytest.approx(0.4)


def test_renormalizes_within_tolerance():
    joint = ObservationalJoint(0.25, 0.25, 0.25, 0.25 + 5e-10)
    assert sum(joint.cells) == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize(
    "cells",
    [(0.3, 0.3, 0.3, 0.3), (0.5, 0.5, 0.1, -0.1), (1.1, 0.0, 0.0, -0.1), (float("nan"), 0.5, 0.5, 0.0)],
)
def test_rejects_invalid_joint(cells):
    with pytest.raises(ProbabilityError):
        ObservationalJoint(*cells)


def test_rejects_invalid_marginals():
    with pytest.raises(ProbabilityError):
        ExperimentalMarginals(1.2, 0.3)


@given(joints(positive_arms=False))
def test_marginals_sum_to_one(joint):
    mg = derive_marginals(joint)
    assert abs(mg.p_y + mg.p_y_ - 1.0) <= 1e-12
    assert abs(mg.p_x + mg.p_x_ - 1.0) <= 1e-12
    for v in (mg.p_y_given_x, mg.p_y_given_x_, mg.p_y__given_x, mg.p_y__given_x_):
        assert v is None or 0.0 <= v <= 1.0


def test_round_trip_exact_cells():
    cells = (0.5, 0.25, 0.125, 0.125)
    assert ObservationalJoint(*cells).cells == cells
    assert ObservationalJoint.from_json(ObservationalJoint(*cells).to_json()).cells == cells


def test_json_keys_are_exact():
    ObservationalJoint.from_json({"xy": 0.5, "xy_": 0.2, "x_y": 0.2, "x_y_": 0.1})
    ExperimentalMarginals.from_json({"y_do_x": 0.76, "y_do_x_": 0.31})
    with pytest.raises(ProbabilityError, match="unexpected key 'extra'"):
        ObservationalJoint.from_json({"xy": 0.5, "xy_": 0.2, "x_y": 0.2, "x_y_": 0.1, "extra": 0})
    with pytest.raises(ProbabilityError, match="missing key 'y_do_x_'"):
        ExperimentalMarginals.from_json({"y_do_x": 0.76})
    with pytest.raises(ProbabilityError):
        ExperimentalMarginals.from_json({"y_do_x": "0.7", "y_do_x_": 0.1})


def test_swaps():
    joint = ObservationalJoint(0.1, 0.2, 0.3, 0.4)
    assert joint.swap_x().cells == (0.3, 0.4, 0.1, 0.2)
    assert joint.swap_y().cells == (0.2, 0.1, 0.4, 0.3)
    assert ExperimentalMarginals(0.7, 0.2).swap_y().p_y_do_x == pytest.approx(0.3)


def test_response_target_values():
    assert {t.value for t in ResponseTarget} == {"benefit", "harm", "immunity", "doom"}
    with pytest.raises(ValueError):
        ResponseTarget("cure")


def test_interval_contains():
    iv = Interval(0.2, 0.5)
    assert iv.contains(0.2) and iv.contains(0.5) and not iv.contains(0.51)
    assert iv.contains(0.5 + 1e-10, tol=1e-9)
