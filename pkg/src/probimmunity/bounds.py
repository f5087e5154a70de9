"""Closed-form bounds on the four response types.

Benefit follows Tian and Pearl (2000); immunity is obtained from it through
p(y_x) = p(immunity) + p(benefit). Harm and doom are the x<->x' and y<->y'
mirror images of benefit and immunity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .prob_core import (
    COMPARE_TOL,
    ExperimentalMarginals,
    IncompatibleDataError,
    Interval,
    ObservationalJoint,
    ProbabilityError,
    ResponseTarget,
    check_probability,
)

# Names for the bound arguments; placeholders are rewritten under swaps.
_PLAIN = {"x": "x", "xp": "x'", "y": "y", "yp": "y'"}
_SWAP_X = {"x": "x'", "xp": "x", "y": "y", "yp": "y'"}
_SWAP_Y = {"x": "x", "xp": "x'", "y": "y'", "yp": "y"}


class InfeasibleEpsilonError(IncompatibleDataError):
    """The supplied immunity bound contradicts the data."""


@dataclass(frozen=True)
class EpsilonBound:
    """Expert-supplied upper bound on p(immunity)."""

    epsilon: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "epsilon", check_probability("epsilon", self.epsilon))


def _first_max(args: Iterable[tuple[str, float]]) -> tuple[str, float]:
    best_name, best = None, None
    for name, value in args:
        if best is None or value > best:
            best_name, best = name, value
    return best_name, best


def _first_min(args: Iterable[tuple[str, float]]) -> tuple[str, float]:
    best_name, best = None, None
    for name, value in args:
        if best is None or value < best:
            best_name, best = name, value
    return best_name, best


def _interval(lower_args, upper_args, names: dict, error=IncompatibleDataError) -> Interval:
    lo_name, lo = _first_max(lower_args)
    hi_name, hi = _first_min(upper_args)
    lo_name, hi_name = lo_name.format(**names), hi_name.format(**names)
    if lo > hi + COMPARE_TOL:
        raise error(f"lower bound {lo_name} = {lo:.6g} exceeds upper bound {hi_name} = {hi:.6g}")
    return Interval(lo, hi, lo_name, hi_name)


def _benefit_args(joint: ObservationalJoint, exp: ExperimentalMarginals):
    a, b = exp.p_y_do_x, exp.p_y_do_x_
    p_y = joint.p_xy + joint.p_x_y
    lower = [
        ("0", 0.0),
        ("p({y}_{x})-p({y}_{xp})", a - b),
        ("p({y})-p({y}_{xp})", p_y - b),
        ("p({y}_{x})-p({y})", a - p_y),
    ]
    upper = [
        ("p({y}_{x})", a),
        ("p({yp}_{xp})", 1.0 - b),
        ("p({x},{y})+p({xp},{yp})", joint.p_xy + joint.p_x_y_),
        ("p({y}_{x})-p({y}_{xp})+p({x},{yp})+p({xp},{y})", a - b + joint.p_xy_ + joint.p_x_y),
    ]
    return lower, upper


def _immunity_args(joint: ObservationalJoint, exp: ExperimentalMarginals):
    a, b = exp.p_y_do_x, exp.p_y_do_x_
    p_y = joint.p_xy + joint.p_x_y
    lower = [
        ("0", 0.0),
        ("p({y}_{x})-p({yp}_{xp})", a - (1.0 - b)),
        ("p({y}_{x})-p({x},{y})-p({xp},{yp})", a - joint.p_xy - joint.p_x_y_),
        ("p({y}_{xp})-p({x},{yp})-p({xp},{y})", b - joint.p_xy_ - joint.p_x_y),
    ]
    upper = [
        ("p({y}_{x})", a),
        ("p({y}_{xp})", b),
        ("p({y}_{x})-p({y})+p({y}_{xp})", a - p_y + b),
        ("p({y})", p_y),
    ]
    return lower, upper


def response_bounds(
    target: ResponseTarget | str,
    joint: ObservationalJoint,
    exp: ExperimentalMarginals,
) -> Interval:
    """Bounds on p(target) from observational and experimental data.

    Raises ``IncompatibleDataError`` when the lower bound exceeds the upper
    one by more than ``COMPARE_TOL``: no SCM produces both inputs.
    """
    target = ResponseTarget(target)
    if target is ResponseTarget.BENEFIT:
        return _interval(*_benefit_args(joint, exp), _PLAIN)
    if target is ResponseTarget.HARM:
        return _interval(*_benefit_args(joint.swap_x(), exp.swap_x()), _SWAP_X)
    if target is ResponseTarget.IMMUNITY:
        return _interval(*_immunity_args(joint, exp), _PLAIN)
    return _interval(*_immunity_args(joint.swap_y(), exp.swap_y()), _SWAP_Y)


def epsilon_response_bounds(
    target: ResponseTarget | str,
    joint: ObservationalJoint,
    exp: ExperimentalMarginals,
    eps: EpsilonBound | float,
) -> Interval:
    """Benefit or harm bounds tightened by the assumption p(immunity) <= eps."""
    target = ResponseTarget(target)
    if not isinstance(eps, EpsilonBound):
        eps = EpsilonBound(eps)
    if target is ResponseTarget.BENEFIT:
        names = _PLAIN
    elif target is ResponseTarget.HARM:
        joint, exp, names = joint.swap_x(), exp.swap_x(), _SWAP_X
    else:
        raise ProbabilityError(f"epsilon bounds apply to benefit or harm, not {target.value}")
    lower, upper = _benefit_args(joint, exp)
    lower.append(("p({y}_{x})-eps", exp.p_y_do_x - eps.epsilon))
    return _interval(lower, upper, names, error=InfeasibleEpsilonError)


def ate(exp: ExperimentalMarginals) -> float:
    return exp.p_y_do_x - exp.p_y_do_x_

