"""Indirect effects through a binary mediator Z in the graph X -> Z -> Y, X -> Y.

Counterfactual q-probabilities refer to the mechanism in which the direct
X -> Y edge is replaced by a confounder U -> X, U -> Y; they are identified
by the front-door formula
``q(y_x) = sum_z p(z|x) sum_x* p(y|x*,z) p(x*)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .bounds import EpsilonBound, epsilon_response_bounds
from .conditions import ConditionReport, immunity_conditions
from .prob_core import (
    ExperimentalMarginals,
    Interval,
    ObservationalJoint,
    ProbabilityError,
    ResponseTarget,
    _exact_keys,
    check_probability,
)

_Y_KEYS = ("xz", "xz_", "x_z", "x_z_")


@dataclass(frozen=True)
class MediationModel:
    """Observable mediation model; ``y_given`` fields are p(y | X, Z)."""

    p_x: float
    p_z_given_x: float
    p_z_given_x_: float
    p_y_given_xz: float
    p_y_given_xz_: float
    p_y_given_x_z: float
    p_y_given_x_z_: float

    def __post_init__(self) -> None:
        for name in self.__dataclass_fields__:
            object.__setattr__(self, name, check_probability(name, getattr(self, name)))

    def p_z(self, x: bool) -> tuple[float, float]:
        """(p(z|x), p(z'|x)) for x = True, or the x' arm for False."""
        pz = self.p_z_given_x if x else self.p_z_given_x_
        return pz, 1.0 - pz

    def p_y(self, x: bool) -> tuple[float, float]:
        """(p(y|x,z), p(y|x,z')) for the chosen arm."""
        if x:
            return self.p_y_given_xz, self.p_y_given_xz_
        return self.p_y_given_x_z, self.p_y_given_x_z_

    @classmethod
    def from_json(cls, obj: Mapping) -> "MediationModel":
        if not isinstance(obj, Mapping):
            raise ProbabilityError("med: expected an object")
        if "y_given" not in obj:
            raise ProbabilityError("med: missing key 'y_given'")
        _exact_keys("med", {k: v for k, v in obj.items() if k != "y_given"}, ("p_x", "z_given_x", "z_given_x_"))
        y = obj["y_given"]
        _exact_keys("med.y_given", y, _Y_KEYS)
        return cls(obj["p_x"], obj["z_given_x"], obj["z_given_x_"], *(y[k] for k in _Y_KEYS))

    def to_json(self) -> dict:
        return {
            "p_x": self.p_x,
            "z_given_x": self.p_z_given_x,
            "z_given_x_": self.p_z_given_x_,
            "y_given": dict(zip(_Y_KEYS, (self.p_y_given_xz, self.p_y_given_xz_,
                                          self.p_y_given_x_z, self.p_y_given_x_z_))),
        }


@dataclass(frozen=True)
class IndirectMarginals:
    q_y_do_x: float
    q_y_do_x_: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "q_y_do_x", check_probability("q_y_do_x", self.q_y_do_x))
        object.__setattr__(self, "q_y_do_x_", check_probability("q_y_do_x_", self.q_y_do_x_))

    def as_experimental(self) -> ExperimentalMarginals:
        return ExperimentalMarginals(self.q_y_do_x, self.q_y_do_x_)


@dataclass(frozen=True)
class IndirectEffects:
    nie: float
    iie: float
    piie: float
    te_frontdoor: float

    def to_json(self) -> dict:
        return {"NIE": self.nie, "IIE": self.iie, "PIIE": self.piie, "TE_frontdoor": self.te_frontdoor}


def p_y_given(model: MediationModel, x: bool) -> float:
    """p(y | x) with Z summed out."""
    (pz, pz_), (py_z, py_z_) = model.p_z(x), model.p_y(x)
    return pz * py_z + pz_ * py_z_


def observational_joint(model: MediationModel) -> ObservationalJoint:
    p_x, p_x_ = model.p_x, 1.0 - model.p_x
    py_x, py_x_ = p_y_given(model, True), p_y_given(model, False)
    return ObservationalJoint(p_x * py_x, p_x * (1.0 - py_x), p_x_ * py_x_, p_x_ * (1.0 - py_x_))


def no_confounding_marginals(model: MediationModel) -> ExperimentalMarginals:
    """p(y_x) = p(y|x): the mediation graph has no X-Y confounding."""
    return ExperimentalMarginals(p_y_given(model, True), p_y_given(model, False))


def _adjusted_outcome(model: MediationModel) -> tuple[float, float]:
    """sum_x* p(y|x*,z) p(x*) for z and z'."""
    p_x, p_x_ = model.p_x, 1.0 - model.p_x
    return (
        model.p_y_given_xz * p_x + model.p_y_given_x_z * p_x_,
        model.p_y_given_xz_ * p_x + model.p_y_given_x_z_ * p_x_,
    )


def front_door_marginals(model: MediationModel) -> IndirectMarginals:
    ey_z, ey_z_ = _adjusted_outcome(model)
    (pz_x, pz__x), (pz_x_, pz__x_) = model.p_z(True), model.p_z(False)
    return IndirectMarginals(pz_x * ey_z + pz__x * ey_z_, pz_x_ * ey_z + pz__x_ * ey_z_)


def indirect_effect_measures(model: MediationModel) -> IndirectEffects:
    (pz_x, pz__x), (pz_x_, pz__x_) = model.p_z(True), model.p_z(False)
    y_xz_, y_xz__ = model.p_y(False)
    nie = (pz_x - pz_x_) * y_xz_ + (pz__x - pz__x_) * y_xz__
    # IIE coincides with NIE when no mediator-outcome confounding is present
    iie = nie
    p_y = model.p_x * p_y_given(model, True) + (1.0 - model.p_x) * p_y_given(model, False)
    q = front_door_marginals(model)
    piie = p_y - q.q_y_do_x_
    return IndirectEffects(nie, iie, piie, q.q_y_do_x - q.q_y_do_x_)


def indirect_immunity_conditions(model: MediationModel, eps: EpsilonBound | float = 0.0) -> ConditionReport:
    q = front_door_marginals(model)
    return immunity_conditions(observational_joint(model), q.as_experimental(), eps)


def indirect_response_bounds(
    model: MediationModel,
    target: ResponseTarget | str,
    eps: EpsilonBound | float = 1.0,
) -> Interval:
    """eps-tightened bounds on indirect benefit or harm."""
    q = front_door_marginals(model)
    return epsilon_response_bounds(target, observational_joint(model), q.as_experimental(), eps)
