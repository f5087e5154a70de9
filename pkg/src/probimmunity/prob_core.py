"""Probability containers for a binary exposure X and binary outcome Y.

Primed levels are spelled with a trailing underscore throughout: ``p_x_y_``
is p(x', y'), ``p_y_do_x_`` is p(y_{x'}).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Mapping, Optional

SIMPLEX_TOL = 1e-9
COMPARE_TOL = 1e-9


class ProbabilityError(ValueError):
    """Invalid probability input (validation failure)."""


class UndefinedConditionalError(ProbabilityError):
    """A conditional was requested on a zero-probability event."""


class IncompatibleDataError(ValueError):
    """Observational and experimental inputs cannot come from one SCM."""


def check_probability(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value < 0.0 or value > 1.0:
        raise ProbabilityError(f"{name} must be a probability in [0, 1], got {value!r}")
    return value


class ResponseTarget(str, enum.Enum):
    BENEFIT = "benefit"
    HARM = "harm"
    IMMUNITY = "immunity"
    DOOM = "doom"


@dataclass(frozen=True)
class ObservationalJoint:
    """Joint distribution p(X, Y) over the four cells.

    Cells that sum to 1 within ``SIMPLEX_TOL`` are renormalized; anything
    further off is rejected.
    """

    p_xy: float
    p_xy_: float
    p_x_y: float
    p_x_y_: float

    def __post_init__(self) -> None:
        cells = [
            check_probability(name, getattr(self, name))
            for name in ("p_xy", "p_xy_", "p_x_y", "p_x_y_")
        ]
        total = math.fsum(cells)
        if abs(total - 1.0) > SIMPLEX_TOL:
            raise ProbabilityError(f"joint cells sum to {total!r}, expected 1")
        if total != 1.0:
            cells = [c / total for c in cells]
        for name, c in zip(("p_xy", "p_xy_", "p_x_y", "p_x_y_"), cells):
            object.__setattr__(self, name, c)

    @property
    def cells(self) -> tuple[float, float, float, float]:
        return (self.p_xy, self.p_xy_, self.p_x_y, self.p_x_y_)

    def swap_x(self) -> "ObservationalJoint":
        return ObservationalJoint(self.p_x_y, self.p_x_y_, self.p_xy, self.p_xy_)

    def swap_y(self) -> "ObservationalJoint":
        return ObservationalJoint(self.p_xy_, self.p_xy, self.p_x_y_, self.p_x_y)

    @classmethod
    def from_json(cls, obj: Mapping[str, float]) -> "ObservationalJoint":
        _exact_keys("obs", obj, ("xy", "xy_", "x_y", "x_y_"))
        return cls(obj["xy"], obj["xy_"], obj["x_y"], obj["x_y_"])

    def to_json(self) -> dict:
        return {"xy": self.p_xy, "xy_": self.p_xy_, "x_y": self.p_x_y, "x_y_": self.p_x_y_}


@dataclass(frozen=True)
class ExperimentalMarginals:
    """Interventional probabilities p(y_x) and p(y_{x'})."""

    p_y_do_x: float
    p_y_do_x_: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "p_y_do_x", check_probability("p_y_do_x", self.p_y_do_x))
        object.__setattr__(self, "p_y_do_x_", check_probability("p_y_do_x_", self.p_y_do_x_))

    def swap_x(self) -> "ExperimentalMarginals":
        return ExperimentalMarginals(self.p_y_do_x_, self.p_y_do_x)

    def swap_y(self) -> "ExperimentalMarginals":
        return ExperimentalMarginals(1.0 - self.p_y_do_x, 1.0 - self.p_y_do_x_)

    @classmethod
    def from_json(cls, obj: Mapping[str, float]) -> "ExperimentalMarginals":
        _exact_keys("exp", obj, ("y_do_x", "y_do_x_"))
        return cls(obj["y_do_x"], obj["y_do_x_"])

    def to_json(self) -> dict:
        return {"y_do_x": self.p_y_do_x, "y_do_x_": self.p_y_do_x_}


@dataclass(frozen=True)
class Interval:
    """Bounds on a probability plus the max/min arguments that attain them."""

    lower: float
    upper: float
    active_lower: str = ""
    active_upper: str = ""

    def contains(self, value: float, tol: float = 0.0) -> bool:
        return self.lower - tol <= value <= self.upper + tol

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def to_json(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "active_lower": self.active_lower,
            "active_upper": self.active_upper,
        }


@dataclass(frozen=True)
class Marginals:
    """Marginal and conditional probabilities derived from a joint.

    Conditionals on a zero-probability exposure arm are ``None``.
    """

    p_x: float
    p_x_: float
    p_y: float
    p_y_: float
    p_y_given_x: Optional[float] = field(default=None)
    p_y_given_x_: Optional[float] = field(default=None)
    p_y__given_x: Optional[float] = field(default=None)
    p_y__given_x_: Optional[float] = field(default=None)


def derive_marginals(joint: ObservationalJoint) -> Marginals:
    p_x = joint.p_xy + joint.p_xy_
    p_x_ = joint.p_x_y + joint.p_x_y_
    p_y = joint.p_xy + joint.p_x_y
    p_y_ = joint.p_xy_ + joint.p_x_y_

    def ratio(num: float, den: float) -> Optional[float]:
        if den <= 0.0:
            return None
        return min(1.0, num / den)

    return Marginals(
        p_x=p_x,
        p_x_=p_x_,
        p_y=p_y,
        p_y_=p_y_,
        p_y_given_x=ratio(joint.p_xy, p_x),
        p_y_given_x_=ratio(joint.p_x_y, p_x_),
        p_y__given_x=ratio(joint.p_xy_, p_x),
        p_y__given_x_=ratio(joint.p_x_y_, p_x_),
    )


def _exact_keys(where: str, obj: Mapping, keys: tuple[str, ...]) -> None:
    if not isinstance(obj, Mapping):
        raise ProbabilityError(f"{where}: expected an object")
    missing = [k for k in keys if k not in obj]
    extra = [k for k in obj if k not in keys]
    if missing:
        raise ProbabilityError(f"{where}: missing key {missing[0]!r}")
    if extra:
        raise ProbabilityError(f"{where}: unexpected key {extra[0]!r}")
    for k in keys:
        if isinstance(obj[k], bool) or not isinstance(obj[k], (int, float)):
            raise ProbabilityError(f"{where}.{k}: expected a number")
