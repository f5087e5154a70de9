import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from probimmunity.bounds import ate
from probimmunity.mediation import front_door_marginals
from probimmunity.oracle import (
    CanonicalModel,
    ConfoundedModel,
    MediationMechanism,
    evaluate_canonical,
    evaluate_confounded,
    evaluate_mediation_mechanism,
    refine_confounded,
    sample_canonical,
    sample_mechanism,
)
from probimmunity.prob_core import ProbabilityError, UndefinedConditionalError

from .conftest import canonical_models


def test_example1_interventional(ex1):
    ev = evaluate_confounded(ex1.confounded)
    assert ev.exp.p_y_do_x == 0.76
    assert ev.exp.p_y_do_x_ == 0.31


def test_example2_joint_matches_table(ex2):
    joint = evaluate_confounded(ex2.confounded).joint
    assert joint.cells == pytest.approx((0.084, 0.196, 0.252, 0.468), abs=1e-12)
    assert joint.cells == pytest.approx((0.08, 0.2, 0.25, 0.47), abs=0.01)


def test_sensitivity_model(ex_sens):
    # 0.2*0.9 + 0.8*0.8 = 0.82; 0.2*0.4*0.9 + 0.8*0.2*0.8 = 0.2
    ev = evaluate_confounded(ex_sens.confounded)
    assert (ev.exp.p_y_do_x, ev.exp.p_y_do_x_) == pytest.approx((0.82, 0.60), abs=1e-12)
    assert ev.joint.cells == pytest.approx((0.2, 0.04, 0.472, 0.288), abs=1e-12)
    assert ev.true_params.as_tuple() == (0.8, 0.9, 0.2, 0.7)


def test_uniform_response_types():
    ev = evaluate_canonical(CanonicalModel((0.5, 0.5), (0.3, 0.6), ((0.25,) * 4,) * 2))
    assert ev.exact.to_json() == pytest.approx({"immunity": 0.25, "doom": 0.25, "benefit": 0.25, "harm": 0.25})
    assert (ev.exp.p_y_do_x, ev.exp.p_y_do_x_) == pytest.approx((0.5, 0.5))


def test_all_immune():
    ev = evaluate_canonical(CanonicalModel((1.0,), (0.4,), ((1, 0, 0, 0),)))
    assert (ev.exp.p_y_do_x, ev.exp.p_y_do_x_) == (1.0, 1.0)
    assert ev.exact.immunity == 1.0


def test_perfect_drug():
    ev = evaluate_canonical(CanonicalModel((1.0,), (0.4,), ((0, 0, 1, 0),)))
    assert (ev.exp.p_y_do_x, ev.exp.p_y_do_x_) == (1.0, 0.0)
    assert ate(ev.exp) == 1.0
    assert ev.exact.benefit == 1.0


def test_sampling_structure_and_determinism():
    assert sample_canonical(1, 123).levels == 1
    assert sample_canonical(3, 42) == sample_canonical(3, 42)
    assert sample_canonical(3, 42) != sample_canonical(3, 43)
    with pytest.raises(ProbabilityError):
        sample_canonical(0, 1)


@given(st.integers(0, 2**32 - 1))
def test_two_level_sample_ate_identity(seed):
    ev = evaluate_canonical(sample_canonical(2, seed))
    assert abs(ev.exact.benefit - ev.exact.harm - ate(ev.exp)) <= 1e-12


@settings(max_examples=300)
@given(canonical_models())
def test_induced_model_reproduces_joint(model):
    ev = evaluate_canonical(model)
    again = evaluate_confounded(ev.induced)
    assert again.joint == ev.joint
    assert again.exp == ev.exp


@settings(max_examples=100)
@given(canonical_models(), st.integers(0, 2**32 - 1))
def test_refinement_induces_same_model(model, seed):
    confounded = evaluate_canonical(model).induced
    refined = refine_confounded(confounded, np.random.default_rng(seed))
    induced = evaluate_canonical(refined).induced
    assert induced.p_y_given_xu == pytest.approx(confounded.p_y_given_xu, abs=1e-12)
    assert induced.p_y_given_x_u == pytest.approx(confounded.p_y_given_x_u, abs=1e-12)


def test_model_validation():
    with pytest.raises(ProbabilityError, match="p_u sums"):
        ConfoundedModel((0.3, 0.3), (0.2, 0.9), (0.9, 0.7), (0.8, 0.1))
    with pytest.raises(ProbabilityError, match="expected 2 entries"):
        ConfoundedModel((0.3, 0.7), (0.2,), (0.9, 0.7), (0.8, 0.1))
    with pytest.raises(ProbabilityError):
        CanonicalModel((1.0,), (0.5,), ((0.5, 0.5, 0.5, 0.0),))
    with pytest.raises(ProbabilityError, match="unexpected key"):
        ConfoundedModel.from_json({"p_u": [1], "x_given_u": [1], "y_given_xu": [1], "y_given_x_u": [1], "z": 1})


def test_model_json_round_trip(ex1):
    assert ConfoundedModel.from_json(ex1.confounded.to_json()) == ex1.confounded
    model = sample_canonical(3, 9)
    assert CanonicalModel.from_json(model.to_json()) == model
    mech = sample_mechanism(2, 9)
    assert MediationMechanism.from_json(mech.to_json()) == mech


def test_single_level_mechanism_matches_front_door():
    # x' never switches Z on, so q(immunity) = 0 and q(benefit) = q(y_x)
    mech = MediationMechanism((1.0,), (0.4,), 0.7, 0.0, ((0.0, 0.5, 0.5, 0.0),))
    with pytest.raises(UndefinedConditionalError):
        evaluate_mediation_mechanism(mech)  # p(x', z) = 0 leaves p(y|x',z) undefined
    mech = MediationMechanism((1.0,), (0.4,), 0.7, 1e-300, ((0.0, 0.5, 0.5, 0.0),))
    ev = evaluate_mediation_mechanism(mech)
    q = front_door_marginals(ev.mediation)
    assert ev.exact_q.immunity == pytest.approx(0.0, abs=1e-12)
    assert abs(ev.exact_q.benefit - q.q_y_do_x) <= 1e-9
    assert ev.exact_q.benefit == pytest.approx(0.35, abs=1e-12)


@pytest.mark.parametrize("coupling", ["comonotone", "independent"])
def test_single_level_immunity_identity(coupling):
    mech = MediationMechanism((1.0,), (0.4,), 0.7, 0.1, ((0.1, 0.3, 0.4, 0.2),), coupling)
    ev = evaluate_mediation_mechanism(mech)
    q = front_door_marginals(ev.mediation)
    assert abs(ev.exact_q.benefit - (q.q_y_do_x - ev.exact_q.immunity)) <= 1e-9


def test_comonotone_coupling_immunity():
    # both arms switch Z on with prob 0.1; Y follows z for half the population
    mech = MediationMechanism((1.0,), (0.4,), 0.7, 0.1, ((0.0, 0.5, 0.5, 0.0),))
    assert evaluate_mediation_mechanism(mech).exact_q.immunity == pytest.approx(0.05, abs=1e-12)


def test_outcome_ignoring_mediator_has_no_indirect_benefit():
    mech = MediationMechanism((0.3, 0.7), (0.2, 0.8), 0.9, 0.1, ((0.6, 0.4, 0, 0), (0.1, 0.9, 0, 0)))
    assert evaluate_mediation_mechanism(mech).exact_q.benefit == 0.0


def test_mechanism_identities_seed7():
    ev = evaluate_mediation_mechanism(sample_mechanism(2, 7))
    q = front_door_marginals(ev.mediation)
    assert abs(q.q_y_do_x - (ev.exact_q.immunity + ev.exact_q.benefit)) <= 1e-9
    assert abs(q.q_y_do_x_ - (ev.exact_q.immunity + ev.exact_q.harm)) <= 1e-9


def test_mechanism_undefined_conditional():
    mech = MediationMechanism((1.0,), (0.4,), 1.0, 0.1, ((0.25,) * 4,))
    with pytest.raises(UndefinedConditionalError):
        evaluate_mediation_mechanism(mech)
