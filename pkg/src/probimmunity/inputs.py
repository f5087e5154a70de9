"""JSON input documents and the bundled example fixtures.

A document is a JSON object with any of the top-level keys

* ``obs``: observational joint, ``{"xy", "xy_", "x_y", "x_y_"}``
* ``exp``: interventional marginals, ``{"y_do_x", "y_do_x_"}``
* ``med``: observable mediation model
* ``confounded`` / ``canonical`` / ``mechanism``: oracle models

Missing ``obs``/``exp`` are filled in from whichever model is present.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any, Mapping, Optional

from .mediation import MediationModel, front_door_marginals, no_confounding_marginals, observational_joint
from .oracle import (
    CanonicalModel,
    ConfoundedModel,
    MediationMechanism,
    evaluate_canonical,
    evaluate_confounded,
    evaluate_mediation_mechanism,
)
from .prob_core import ExperimentalMarginals, ObservationalJoint, ProbabilityError

TOP_LEVEL_KEYS = ("obs", "exp", "med", "confounded", "canonical", "mechanism")
FIXTURES = ("example1", "example2", "mediation", "sensitivity")


@dataclass(frozen=True)
class Inputs:
    joint: Optional[ObservationalJoint] = None
    exp: Optional[ExperimentalMarginals] = None
    med: Optional[MediationModel] = None
    confounded: Optional[ConfoundedModel] = None
    canonical: Optional[CanonicalModel] = None
    mechanism: Optional[MediationMechanism] = None

    def require_joint(self) -> ObservationalJoint:
        if self.joint is None:
            raise ProbabilityError("input provides no observational data ('obs' or a model)")
        return self.joint

    def require_exp(self) -> ExperimentalMarginals:
        if self.exp is None:
            raise ProbabilityError("input provides no experimental data ('exp' or a model)")
        return self.exp

    def require_med(self) -> MediationModel:
        if self.med is None:
            raise ProbabilityError("input provides no mediation model ('med' or 'mechanism')")
        return self.med


def parse_document(doc: Any) -> Inputs:
    if not isinstance(doc, Mapping):
        raise ProbabilityError("input: expected a JSON object")
    for key in doc:
        if key not in TOP_LEVEL_KEYS:
            raise ProbabilityError(f"input: unexpected key {key!r}")
    if not doc:
        raise ProbabilityError("input: empty document")

    joint = ObservationalJoint.from_json(doc["obs"]) if "obs" in doc else None
    exp = ExperimentalMarginals.from_json(doc["exp"]) if "exp" in doc else None
    med = MediationModel.from_json(doc["med"]) if "med" in doc else None
    confounded = ConfoundedModel.from_json(doc["confounded"]) if "confounded" in doc else None
    canonical = CanonicalModel.from_json(doc["canonical"]) if "canonical" in doc else None
    mechanism = MediationMechanism.from_json(doc["mechanism"]) if "mechanism" in doc else None

    derived_joint = derived_exp = None
    if confounded is not None:
        ev = evaluate_confounded(confounded)
        derived_joint, derived_exp = ev.joint, ev.exp
    elif canonical is not None:
        ev = evaluate_canonical(canonical)
        derived_joint, derived_exp = ev.joint, ev.exp
    elif mechanism is not None:
        if med is None:
            med = evaluate_mediation_mechanism(mechanism).mediation
        derived_joint = observational_joint(med)
        derived_exp = front_door_marginals(med).as_experimental()
    elif med is not None:
        derived_joint, derived_exp = observational_joint(med), no_confounding_marginals(med)

    return Inputs(
        joint=joint or derived_joint,
        exp=exp or derived_exp,
        med=med,
        confounded=confounded,
        canonical=canonical,
        mechanism=mechanism,
    )


def load_document(path: str | Path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as err:
        raise ProbabilityError(f"{path}: malformed JSON ({err.msg} at line {err.lineno})") from None
    except OSError as err:
        raise ProbabilityError(f"{path}: {err.strerror}") from None


def load_inputs(path: str | Path) -> Inputs:
    return parse_document(load_document(path))


def fixture_path(name: str) -> Path:
    if name not in FIXTURES:
        raise KeyError(name)
    return Path(str(resources.files("probimmunity") / "fixtures" / f"{name}.json"))


def load_fixture(name: str) -> Inputs:
    return load_inputs(fixture_path(name))
