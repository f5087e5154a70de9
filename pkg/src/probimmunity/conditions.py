"""Sufficient and necessary conditions for p(immunity) <= eps.

With eps = 0 these are the non-immunity conditions. Every inequality is
checked as ``left <= right + COMPARE_TOL``, including the equalities of the
eps = 0 sufficient condition.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bounds import EpsilonBound
from .prob_core import COMPARE_TOL, ExperimentalMarginals, ObservationalJoint


@dataclass(frozen=True)
class Clause:
    name: str
    left: float
    right: float
    satisfied: bool

    def to_json(self) -> dict:
        return {"clause": self.name, "left": self.left, "right": self.right, "satisfied": self.satisfied}


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of both conditions with the numeric witness for each clause.

    The sufficient condition is a disjunction of its clauses, the necessary
    condition a conjunction.
    """

    epsilon: float
    sufficient: tuple[Clause, ...] = field(default=())
    necessary: tuple[Clause, ...] = field(default=())

    @property
    def sufficient_holds(self) -> bool:
        return any(c.satisfied for c in self.sufficient)

    @property
    def necessary_holds(self) -> bool:
        return all(c.satisfied for c in self.necessary)

    def failing(self) -> list[Clause]:
        return [c for c in self.necessary if not c.satisfied]

    def to_json(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "sufficient_holds": self.sufficient_holds,
            "necessary_holds": self.necessary_holds,
            "sufficient": [c.to_json() for c in self.sufficient],
            "necessary": [c.to_json() for c in self.necessary],
        }


def _clause(name: str, left: float, right: float) -> Clause:
    return Clause(name, left, right, left <= right + COMPARE_TOL)


def immunity_conditions(
    joint: ObservationalJoint,
    exp: ExperimentalMarginals,
    eps: EpsilonBound | float = 0.0,
) -> ConditionReport:
    if not isinstance(eps, EpsilonBound):
        eps = EpsilonBound(eps)
    e = eps.epsilon
    a, b = exp.p_y_do_x, exp.p_y_do_x_
    p_y = joint.p_xy + joint.p_x_y
    sufficient = (
        _clause("p(y_x) <= eps", a, e),
        _clause("p(y_x') <= eps", b, e),
        _clause("p(y_x)+p(y_x') <= p(y)+eps", a + b, p_y + e),
        _clause("p(y) <= eps", p_y, e),
    )
    necessary = (
        _clause("p(y_x)+p(y_x') <= 1+eps", a + b, 1.0 + e),
        _clause("p(y_x) <= p(x,y)+p(x',y')+eps", a, joint.p_xy + joint.p_x_y_ + e),
        _clause("p(y_x') <= p(x,y')+p(x',y)+eps", b, joint.p_xy_ + joint.p_x_y + e),
    )
    return ConditionReport(e, sufficient, necessary)


def epsilon_feasible_min(joint: ObservationalJoint, exp: ExperimentalMarginals) -> float:
    """Smallest eps for which the necessary condition holds."""
    a, b = exp.p_y_do_x, exp.p_y_do_x_
    return max(
        0.0,
        a + b - 1.0,
        a - joint.p_xy - joint.p_x_y_,
        b - joint.p_xy_ - joint.p_x_y,
    )
