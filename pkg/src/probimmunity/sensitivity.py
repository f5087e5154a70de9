"""Sensitivity analysis of p(immunity) under unmeasured X-Y confounding.

The four parameters bound p(y | x, u) over confounder levels u:
``m_x = min_u p(y|x,u)``, ``M_x = max_u p(y|x,u)`` and likewise for x'.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .prob_core import (
    COMPARE_TOL,
    Interval,
    ObservationalJoint,
    ProbabilityError,
    check_probability,
    derive_marginals,
)

PARAM_NAMES = ("m_x", "M_x", "m_x_", "M_x_")
DEFAULT_STEPS = 101


class RegionViolationError(ProbabilityError):
    """A sensitivity parameter lies outside its possible region."""


class UndefinedRegionError(ProbabilityError):
    """Regions need p(y|x) and p(y|x'), but an exposure arm has probability 0."""


@dataclass(frozen=True)
class SensitivityParams:
    m_x: float
    M_x: float
    m_x_: float
    M_x_: float

    def __post_init__(self) -> None:
        for name in PARAM_NAMES:
            object.__setattr__(self, name, check_probability(name, getattr(self, name)))
        if self.m_x > self.M_x:
            raise ProbabilityError(f"m_x = {self.m_x} exceeds M_x = {self.M_x}")
        if self.m_x_ > self.M_x_:
            raise ProbabilityError(f"m_x_ = {self.m_x_} exceeds M_x_ = {self.M_x_}")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.m_x, self.M_x, self.m_x_, self.M_x_)

    @classmethod
    def parse(cls, text: str) -> "SensitivityParams":
        """Parse ``mx=A,Mx=B,mx_=C,Mx_=D``."""
        keys = {"mx": "m_x", "Mx": "M_x", "mx_": "m_x_", "Mx_": "M_x_"}
        values = {}
        for part in text.split(","):
            key, sep, raw = part.strip().partition("=")
            if not sep or key not in keys:
                raise ProbabilityError(f"params: unknown or malformed entry {part.strip()!r}")
            try:
                values[keys[key]] = float(raw)
            except ValueError:
                raise ProbabilityError(f"params: {key} is not a number: {raw!r}") from None
        missing = [k for k, v in keys.items() if v not in values]
        if missing:
            raise ProbabilityError(f"params: missing {missing[0]}")
        return cls(**values)


@dataclass(frozen=True)
class Region:
    low: float
    high: float
    low_closed: bool = True
    high_closed: bool = True

    def contains(self, value: float, tol: float = 0.0) -> bool:
        above = value >= self.low - tol if self.low_closed else value > self.low - tol
        below = value <= self.high + tol if self.high_closed else value < self.high + tol
        return above and below

    @property
    def empty(self) -> bool:
        if self.low_closed and self.high_closed:
            return self.low > self.high
        return self.low >= self.high

    def to_json(self) -> dict:
        return {
            "low": self.low,
            "high": self.high,
            "low_closed": self.low_closed,
            "high_closed": self.high_closed,
        }


@dataclass(frozen=True)
class ParameterRegions:
    possible: dict[str, Region]
    informative: dict[str, Region]

    def to_json(self) -> dict:
        return {
            "possible": {k: r.to_json() for k, r in self.possible.items()},
            "informative": {k: r.to_json() for k, r in self.informative.items()},
        }


def parameter_regions(joint: ObservationalJoint) -> ParameterRegions:
    """Possible and informative regions of the four parameters.

    The informative-region endpoints for ``m_x`` and ``m_x_`` carry the
    open/closed pattern ``p(y'|x') < m_x <= p(y|x)`` and
    ``p(y'|x) <= m_x' < p(y|x')``.
    """
    mg = derive_marginals(joint)
    if mg.p_y_given_x is None or mg.p_y_given_x_ is None:
        raise UndefinedRegionError("parameter regions need both exposure arms to have positive probability")
    possible = {
        "m_x": Region(0.0, mg.p_y_given_x),
        "M_x": Region(mg.p_y_given_x, 1.0),
        "m_x_": Region(0.0, mg.p_y_given_x_),
        "M_x_": Region(mg.p_y_given_x_, 1.0),
    }
    informative = {
        "m_x": Region(mg.p_y__given_x_, mg.p_y_given_x, low_closed=False),
        "M_x": possible["M_x"],
        "m_x_": Region(mg.p_y__given_x, mg.p_y_given_x_, high_closed=False),
        "M_x_": possible["M_x_"],
    }
    return ParameterRegions(possible, informative)


def check_regions(joint: ObservationalJoint, params: SensitivityParams) -> None:
    regions = parameter_regions(joint).possible
    for name in PARAM_NAMES:
        value = getattr(params, name)
        region = regions[name]
        if not region.contains(value, tol=COMPARE_TOL):
            raise RegionViolationError(
                f"{name} = {value:.6g} outside its possible region [{region.low:.6g}, {region.high:.6g}]"
            )


def _lower_args(joint: ObservationalJoint, m_x, m_x_):
    p_x = joint.p_xy + joint.p_xy_
    p_x_ = joint.p_x_y + joint.p_x_y_
    p_y_ = joint.p_xy_ + joint.p_x_y_
    return [
        ("0", 0.0 * m_x),
        ("p(x')m_x+p(x)m_x'-p(y')", p_x_ * m_x + p_x * m_x_ - p_y_),
        ("p(x')m_x-p(x',y')", p_x_ * m_x - joint.p_x_y_),
        ("p(x)m_x'-p(x,y')", p_x * m_x_ - joint.p_xy_),
    ]


def _upper_args(joint: ObservationalJoint, M_x, M_x_):
    p_x = joint.p_xy + joint.p_xy_
    p_x_ = joint.p_x_y + joint.p_x_y_
    p_y = joint.p_xy + joint.p_x_y
    return [
        ("p(x,y)+p(x')M_x", joint.p_xy + p_x_ * M_x),
        ("p(x',y)+p(x)M_x'", joint.p_x_y + p_x * M_x_),
        ("p(x')M_x+p(x)M_x'", p_x_ * M_x + p_x * M_x_),
        ("p(y)", p_y + 0.0 * M_x),
    ]


def _pick(args, better) -> tuple[str, float]:
    name, best = args[0]
    for n, v in args[1:]:
        if better(v, best):
            name, best = n, v
    return name, best


def sensitivity_bounds(
    joint: ObservationalJoint,
    params: SensitivityParams,
    *,
    check_region: bool = True,
) -> Interval:
    """Bounds on p(immunity) given the sensitivity parameters.

    Parameters outside their possible regions raise ``RegionViolationError``
    unless ``check_region`` is off.
    """
    if check_region:
        check_regions(joint, params)
    lo_name, lo = _pick(_lower_args(joint, params.m_x, params.m_x_), lambda v, b: v > b)
    hi_name, hi = _pick(_upper_args(joint, params.M_x, params.M_x_), lambda v, b: v < b)
    return Interval(lo, hi, lo_name, hi_name)


@dataclass(frozen=True)
class Axis:
    name: str
    start: float
    stop: float
    steps: int

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)


@dataclass(frozen=True)
class SweepGrid:
    """Bound values on a uniform grid; ``values[i, j]`` sits at ``(axis1[i], axis2[j])``."""

    which: str
    axis1: Axis
    axis2: Axis
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.values.shape != (self.axis1.steps, self.axis2.steps):
            raise ValueError("grid shape does not match the axis step counts")

    def rows(self):
        for i, a in enumerate(self.axis1.values):
            for j, b in enumerate(self.axis2.values):
                yield float(a), float(b), float(self.values[i, j])

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["param1", "param2", "value"])
        for a, b, v in self.rows():
            writer.writerow([f"{a:.6f}", f"{b:.6f}", f"{v:.6f}"])
        return buf.getvalue()


def sweep(
    joint: ObservationalJoint,
    which: str,
    steps: int = DEFAULT_STEPS,
    ranges: Optional[tuple[tuple[float, float], tuple[float, float]]] = None,
) -> SweepGrid:
    """Lower bound over (m_x, m_x') or upper bound over (M_x, M_x').

    Axes span the possible regions, endpoints included, unless ``ranges``
    overrides them.
    """
    if which not in ("lower", "upper"):
        raise ProbabilityError(f"which must be 'lower' or 'upper', got {which!r}")
    if int(steps) != steps or steps < 2:
        raise ProbabilityError(f"steps must be an integer >= 2, got {steps!r}")
    steps = int(steps)
    if ranges is None:
        possible = parameter_regions(joint).possible
        keys = ("m_x", "m_x_") if which == "lower" else ("M_x", "M_x_")
        ranges = tuple((possible[k].low, possible[k].high) for k in keys)
    names = ("m_x", "m_x_") if which == "lower" else ("M_x", "M_x_")
    axis1 = Axis(names[0], *ranges[0], steps)
    axis2 = Axis(names[1], *ranges[1], steps)
    a, b = np.meshgrid(axis1.values, axis2.values, indexing="ij")
    if which == "lower":
        values = np.maximum.reduce([v for _, v in _lower_args(joint, a, b)])
    else:
        values = np.minimum.reduce([v for _, v in _upper_args(joint, a, b)])
    return SweepGrid(which, axis1, axis2, values)
