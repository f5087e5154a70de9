"""Fully specified data-generating models with exactly computable quantities.

Three model families, all with a categorical confounder U:

* ``ConfoundedModel``: U -> X, U -> Y, X -> Y given by p(y | x, u). Fixes the
  observational and interventional distributions but not the joint
  counterfactuals.
* ``CanonicalModel``: the same graph with Y given by a distribution over the
  four response types per level of U, so every counterfactual probability
  is exact.
* ``MediationMechanism``: U -> X, U -> Y, X -> Z -> Y, with Y's response to Z
  given per level of U.

Random models come from ``numpy.random.default_rng`` (PCG64); simplex
points are normalized i.i.d. standard exponentials, which is uniform on the
simplex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .mediation import MediationModel
from .prob_core import (
    SIMPLEX_TOL,
    ExperimentalMarginals,
    ObservationalJoint,
    ProbabilityError,
    UndefinedConditionalError,
    check_probability,
)
from .sensitivity import SensitivityParams

# order of the response-type simplex in every model
RESPONSE_TYPES = ("immune", "doomed", "benefit", "harm")


def _simplex(name: str, values: Sequence[float]) -> tuple[float, ...]:
    values = [check_probability(name, v) for v in values]
    if not values:
        raise ProbabilityError(f"{name}: empty distribution")
    total = math.fsum(values)
    if abs(total - 1.0) > SIMPLEX_TOL:
        raise ProbabilityError(f"{name} sums to {total!r}, expected 1")
    if total != 1.0:
        values = [v / total for v in values]
    return tuple(values)


def _per_level(name: str, values: Sequence[float], levels: int) -> tuple[float, ...]:
    if len(values) != levels:
        raise ProbabilityError(f"{name}: expected {levels} entries, got {len(values)}")
    return tuple(check_probability(f"{name}[{i}]", v) for i, v in enumerate(values))


def _response_table(name: str, rows: Sequence[Sequence[float]], levels: int) -> tuple[tuple[float, ...], ...]:
    if len(rows) != levels:
        raise ProbabilityError(f"{name}: expected {levels} rows, got {len(rows)}")
    out = []
    for i, row in enumerate(rows):
        if len(row) != 4:
            raise ProbabilityError(f"{name}[{i}]: expected 4 response-type probabilities")
        out.append(_simplex(f"{name}[{i}]", row))
    return tuple(out)


def _keys(where: str, obj: Mapping, required: Sequence[str], optional: Sequence[str] = ()) -> None:
    if not isinstance(obj, Mapping):
        raise ProbabilityError(f"{where}: expected an object")
    for k in required:
        if k not in obj:
            raise ProbabilityError(f"{where}: missing key {k!r}")
    for k in obj:
        if k not in required and k not in optional:
            raise ProbabilityError(f"{where}: unexpected key {k!r}")


@dataclass(frozen=True)
class ConfoundedModel:
    p_u: tuple[float, ...]
    p_x_given_u: tuple[float, ...]
    p_y_given_xu: tuple[float, ...]
    p_y_given_x_u: tuple[float, ...]

    def __post_init__(self) -> None:
        p_u = _simplex("p_u", self.p_u)
        n = len(p_u)
        object.__setattr__(self, "p_u", p_u)
        for name in ("p_x_given_u", "p_y_given_xu", "p_y_given_x_u"):
            object.__setattr__(self, name, _per_level(name, getattr(self, name), n))

    @property
    def levels(self) -> int:
        return len(self.p_u)

    @classmethod
    def from_json(cls, obj: Mapping) -> "ConfoundedModel":
        _keys("confounded", obj, ("p_u", "x_given_u", "y_given_xu", "y_given_x_u"))
        return cls(tuple(obj["p_u"]), tuple(obj["x_given_u"]), tuple(obj["y_given_xu"]), tuple(obj["y_given_x_u"]))

    def to_json(self) -> dict:
        return {
            "p_u": list(self.p_u),
            "x_given_u": list(self.p_x_given_u),
            "y_given_xu": list(self.p_y_given_xu),
            "y_given_x_u": list(self.p_y_given_x_u),
        }


@dataclass(frozen=True)
class ConfoundedEvaluation:
    joint: ObservationalJoint
    exp: ExperimentalMarginals
    true_params: SensitivityParams


def evaluate_confounded(model: ConfoundedModel) -> ConfoundedEvaluation:
    xy = xy_ = x_y = x_y_ = 0.0
    for pu, px, py_x, py_x_ in zip(model.p_u, model.p_x_given_u, model.p_y_given_xu, model.p_y_given_x_u):
        xy += pu * px * py_x
        xy_ += pu * px * (1.0 - py_x)
        x_y += pu * (1.0 - px) * py_x_
        x_y_ += pu * (1.0 - px) * (1.0 - py_x_)
    exp = ExperimentalMarginals(
        math.fsum(pu * py for pu, py in zip(model.p_u, model.p_y_given_xu)),
        math.fsum(pu * py for pu, py in zip(model.p_u, model.p_y_given_x_u)),
    )
    params = SensitivityParams(
        min(model.p_y_given_xu), max(model.p_y_given_xu),
        min(model.p_y_given_x_u), max(model.p_y_given_x_u),
    )
    return ConfoundedEvaluation(ObservationalJoint(xy, xy_, x_y, x_y_), exp, params)


@dataclass(frozen=True)
class ResponseProbabilities:
    immunity: float
    doom: float
    benefit: float
    harm: float

    def __getitem__(self, target: str) -> float:
        return getattr(self, str(getattr(target, "value", target)))

    def to_json(self) -> dict:
        return {"immunity": self.immunity, "doom": self.doom, "benefit": self.benefit, "harm": self.harm}


@dataclass(frozen=True)
class CanonicalModel:
    """Confounded model whose outcome mechanism is a response-type mixture.

    ``p_r_given_u[i]`` is (immune, doomed, benefit, harm) at level i.
    """

    p_u: tuple[float, ...]
    p_x_given_u: tuple[float, ...]
    p_r_given_u: tuple[tuple[float, float, float, float], ...]

    def __post_init__(self) -> None:
        p_u = _simplex("p_u", self.p_u)
        object.__setattr__(self, "p_u", p_u)
        object.__setattr__(self, "p_x_given_u", _per_level("p_x_given_u", self.p_x_given_u, len(p_u)))
        object.__setattr__(self, "p_r_given_u", _response_table("p_r_given_u", self.p_r_given_u, len(p_u)))

    @property
    def levels(self) -> int:
        return len(self.p_u)

    @classmethod
    def from_json(cls, obj: Mapping) -> "CanonicalModel":
        _keys("canonical", obj, ("p_u", "x_given_u", "r_given_u"))
        return cls(tuple(obj["p_u"]), tuple(obj["x_given_u"]), tuple(tuple(r) for r in obj["r_given_u"]))

    def to_json(self) -> dict:
        return {
            "p_u": list(self.p_u),
            "x_given_u": list(self.p_x_given_u),
            "r_given_u": [list(r) for r in self.p_r_given_u],
        }


@dataclass(frozen=True)
class CanonicalEvaluation:
    joint: ObservationalJoint
    exp: ExperimentalMarginals
    exact: ResponseProbabilities
    induced: ConfoundedModel


def evaluate_canonical(model: CanonicalModel) -> CanonicalEvaluation:
    imm, doom, ben, harm = (
        math.fsum(pu * r[k] for pu, r in zip(model.p_u, model.p_r_given_u)) for k in range(4)
    )
    induced = ConfoundedModel(
        model.p_u,
        model.p_x_given_u,
        tuple(min(1.0, r[0] + r[2]) for r in model.p_r_given_u),
        tuple(min(1.0, r[0] + r[3]) for r in model.p_r_given_u),
    )
    ev = evaluate_confounded(induced)
    return CanonicalEvaluation(ev.joint, ev.exp, ResponseProbabilities(imm, doom, ben, harm), induced)


def _rng_simplex(rng: np.random.Generator, size) -> np.ndarray:
    draws = rng.standard_exponential(size)
    return draws / draws.sum(axis=-1, keepdims=True)


def sample_canonical(levels: int, seed: int) -> CanonicalModel:
    """Deterministic random canonical model for a given (levels, seed)."""
    if levels < 1:
        raise ProbabilityError("levels must be >= 1")
    rng = np.random.default_rng(seed)
    p_u = _rng_simplex(rng, levels)
    p_x = rng.random(levels)
    p_r = _rng_simplex(rng, (levels, 4))
    return CanonicalModel(
        tuple(p_u.tolist()),
        tuple(p_x.tolist()),
        tuple(tuple(row) for row in p_r.tolist()),
    )


def refine_confounded(model: ConfoundedModel, rng: np.random.Generator) -> CanonicalModel:
    """Random canonical model that induces exactly ``model``.

    At each level the immune mass t is drawn uniformly from its feasible
    range; benefit, harm and doom then follow from p(y|x,u) and p(y|x',u).
    """
    rows = []
    for a, b in zip(model.p_y_given_xu, model.p_y_given_x_u):
        lo, hi = max(0.0, a + b - 1.0), min(a, b)
        t = lo + (hi - lo) * rng.random()
        rows.append((t, max(0.0, 1.0 - a - b + t), max(0.0, a - t), max(0.0, b - t)))
    return CanonicalModel(model.p_u, model.p_x_given_u, tuple(rows))


@dataclass(frozen=True)
class MediationMechanism:
    """Mechanism for U -> X, U -> Y, X -> Z -> Y.

    ``p_r_given_u`` gives Y's response to Z per level of U, in the order
    (always y, never y, y iff z, y iff z'). Z's exogenous noise is
    independent of U; ``z_coupling`` fixes the joint law of (Z_x, Z_x'):
    ``"comonotone"`` uses one uniform threshold for both arms,
    ``"independent"`` draws them independently.
    """

    p_u: tuple[float, ...]
    p_x_given_u: tuple[float, ...]
    p_z_given_x: float
    p_z_given_x_: float
    p_r_given_u: tuple[tuple[float, float, float, float], ...]
    z_coupling: str = "comonotone"

    def __post_init__(self) -> None:
        p_u = _simplex("p_u", self.p_u)
        object.__setattr__(self, "p_u", p_u)
        object.__setattr__(self, "p_x_given_u", _per_level("p_x_given_u", self.p_x_given_u, len(p_u)))
        object.__setattr__(self, "p_z_given_x", check_probability("p_z_given_x", self.p_z_given_x))
        object.__setattr__(self, "p_z_given_x_", check_probability("p_z_given_x_", self.p_z_given_x_))
        object.__setattr__(self, "p_r_given_u", _response_table("p_r_given_u", self.p_r_given_u, len(p_u)))
        if self.z_coupling not in ("comonotone", "independent"):
            raise ProbabilityError(f"z_coupling must be 'comonotone' or 'independent', got {self.z_coupling!r}")

    def z_joint(self) -> dict[tuple[int, int], float]:
        """Law of (Z_x, Z_x') with 1 for z and 0 for z'."""
        a, b = self.p_z_given_x, self.p_z_given_x_
        if self.z_coupling == "independent":
            return {(1, 1): a * b, (1, 0): a * (1 - b), (0, 1): (1 - a) * b, (0, 0): (1 - a) * (1 - b)}
        both = min(a, b)
        return {(1, 1): both, (1, 0): a - both, (0, 1): b - both, (0, 0): 1.0 - max(a, b)}

    @classmethod
    def from_json(cls, obj: Mapping) -> "MediationMechanism":
        _keys("mechanism", obj, ("p_u", "x_given_u", "z_given_x", "z_given_x_", "r_given_u"), ("z_coupling",))
        return cls(
            tuple(obj["p_u"]),
            tuple(obj["x_given_u"]),
            obj["z_given_x"],
            obj["z_given_x_"],
            tuple(tuple(r) for r in obj["r_given_u"]),
            obj.get("z_coupling", "comonotone"),
        )

    def to_json(self) -> dict:
        return {
            "p_u": list(self.p_u),
            "x_given_u": list(self.p_x_given_u),
            "z_given_x": self.p_z_given_x,
            "z_given_x_": self.p_z_given_x_,
            "r_given_u": [list(r) for r in self.p_r_given_u],
            "z_coupling": self.z_coupling,
        }


@dataclass(frozen=True)
class MediationEvaluation:
    mediation: MediationModel
    exact_q: ResponseProbabilities


def _y_of_z(response: int, z: int) -> int:
    return (1, 0, z, 1 - z)[response]


def evaluate_mediation_mechanism(model: MediationMechanism) -> MediationEvaluation:
    p_x = math.fsum(pu * px for pu, px in zip(model.p_u, model.p_x_given_u))
    p_x_ = math.fsum(pu * (1.0 - px) for pu, px in zip(model.p_u, model.p_x_given_u))
    for arm, p_arm, pz in (("x", p_x, model.p_z_given_x), ("x'", p_x_, model.p_z_given_x_)):
        if p_arm * pz <= 0.0 or p_arm * (1.0 - pz) <= 0.0:
            raise UndefinedConditionalError(f"p(y|{arm},z) undefined: p({arm},z) or p({arm},z') is zero")

    # Z is independent of U given X, so p(y|x,z) = sum_u p(u|x) p(y|z,u)
    def p_y_given(x_weights, p_arm, z: int) -> float:
        return math.fsum(
            pu * w * sum(r[k] for k in range(4) if _y_of_z(k, z))
            for pu, w, r in zip(model.p_u, x_weights, model.p_r_given_u)
        ) / p_arm

    wx = model.p_x_given_u
    wx_ = tuple(1.0 - px for px in wx)
    observable = MediationModel(
        p_x,
        model.p_z_given_x,
        model.p_z_given_x_,
        min(1.0, p_y_given(wx, p_x, 1)),
        min(1.0, p_y_given(wx, p_x, 0)),
        min(1.0, p_y_given(wx_, p_x_, 1)),
        min(1.0, p_y_given(wx_, p_x_, 0)),
    )

    mass = {(1, 1): 0.0, (0, 0): 0.0, (1, 0): 0.0, (0, 1): 0.0}
    z_law = model.z_joint()
    for pu, r in zip(model.p_u, model.p_r_given_u):
        for k in range(4):
            for (z1, z2), pz in z_law.items():
                mass[(_y_of_z(k, z1), _y_of_z(k, z2))] += pu * r[k] * pz
    exact = ResponseProbabilities(mass[(1, 1)], mass[(0, 0)], mass[(1, 0)], mass[(0, 1)])
    return MediationEvaluation(observable, exact)


def sample_mechanism(levels: int, seed: int, z_coupling: str = "comonotone") -> MediationMechanism:
    if levels < 1:
        raise ProbabilityError("levels must be >= 1")
    rng = np.random.default_rng(seed)
    p_u = _rng_simplex(rng, levels)
    p_x = rng.random(levels)
    p_z = rng.random(2)
    p_r = _rng_simplex(rng, (levels, 4))
    return MediationMechanism(
        tuple(p_u.tolist()),
        tuple(p_x.tolist()),
        float(p_z[0]),
        float(p_z[1]),
        tuple(tuple(row) for row in p_r.tolist()),
        z_coupling,
    )
