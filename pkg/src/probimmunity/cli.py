"""Command-line front end.

Usage::

    probimmunity bounds --target benefit --input data.json [--epsilon 0.25]
    probimmunity conditions --input data.json [--epsilon E] [--indirect]
    probimmunity mediation --input med.json [--measures | --bounds --target benefit --epsilon 1]
    probimmunity sensitivity --input data.json --params mx=0.8,Mx=0.9,mx_=0.2,Mx_=0.7
    probimmunity sweep --input data.json --which lower [--steps 101] [--out grid.csv]
    probimmunity oracle --model model.json [--canonical | --mediation]

Exit status is 0 on success, 1 on invalid input and 2 when the inputs are
mutually incompatible or epsilon is infeasible.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Optional, Sequence

from . import bounds as bnd
from . import conditions as cond
from . import mediation as med
from . import oracle
from . import sensitivity as sens
from .inputs import load_document, load_inputs
from .prob_core import IncompatibleDataError, ProbabilityError, ResponseTarget, derive_marginals

EXIT_OK, EXIT_INVALID, EXIT_INCOMPATIBLE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2
        raise UsageError(f"{self.prog}: {message}")


def dumps_fixed(obj: Any, indent: int = 2, _level: int = 0) -> str:
    """JSON with floats at exactly 6 decimals; key order as given."""
    pad, inner = " " * (indent * _level), " " * (indent * (_level + 1))
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        text = f"{obj:.6f}"
        return "0.000000" if text == "-0.000000" else text
    if isinstance(obj, (int, str)):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {dumps_fixed(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{inner}{dumps_fixed(v, indent, _level + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    raise TypeError(f"cannot render {type(obj).__name__}")


def _fmt(value: Any) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.2f}"
    return str(value)


def _table(rows: Sequence[Sequence[Any]], header: Optional[Sequence[str]] = None) -> str:
    cells = [[_fmt(c) for c in row] for row in rows]
    if header:
        cells.insert(0, list(header))
    widths = [max(len(r[i]) for r in cells) for i in range(len(cells[0]))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    if header:
        lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _interval_table(title: str, iv) -> str:
    return _table(
        [["lower", iv.lower, iv.active_lower], ["upper", iv.upper, iv.active_upper]],
        header=[title, "value", "attained by"],
    )


def _report_table(report: cond.ConditionReport) -> str:
    rows = [["sufficient", c.name, c.left, c.right, c.satisfied] for c in report.sufficient]
    rows += [["necessary", c.name, c.left, c.right, c.satisfied] for c in report.necessary]
    summary = (
        f"epsilon = {report.epsilon:.2f}: sufficient {_fmt(report.sufficient_holds)}, "
        f"necessary {_fmt(report.necessary_holds)}\n"
    )
    return summary + _table(rows, header=["condition", "clause", "left", "right", "holds"])


def _epsilon(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"epsilon must lie in [0, 1], got {value}")
    return value


def _steps(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 2:
        raise argparse.ArgumentTypeError(f"steps must be >= 2, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="probimmunity", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, help: str, formats=("table", "json"), input_required=True):
        p = sub.add_parser(name, help=help)
        if input_required:
            p.add_argument("--input", required=True, metavar="F", help="JSON input file")
        p.add_argument("--format", choices=formats, default=formats[0])
        return p

    p = add("bounds", "bounds on a response-type probability")
    p.add_argument("--target", required=True, choices=[t.value for t in ResponseTarget])
    p.add_argument("--epsilon", type=_epsilon, help="assume p(immunity) <= epsilon (benefit/harm only)")

    p = add("conditions", "non-immunity / epsilon-bounded immunity conditions")
    p.add_argument("--epsilon", type=_epsilon, default=0.0)
    p.add_argument("--indirect", action="store_true", help="conditions on indirect immunity (needs 'med')")
    p.add_argument("--min-epsilon", action="store_true", help="also report the smallest feasible epsilon")

    p = add("mediation", "indirect effect measures and indirect benefit/harm bounds")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--measures", action="store_true", help="NIE, IIE, PIIE and front-door TE (default)")
    mode.add_argument("--bounds", action="store_true", help="epsilon bounds on indirect benefit/harm")
    p.add_argument("--target", choices=["benefit", "harm"], default="benefit")
    p.add_argument("--epsilon", type=_epsilon, default=1.0)

    p = add("sensitivity", "p(immunity) bounds under unmeasured confounding")
    p.add_argument("--params", required=True, metavar="mx=A,Mx=B,mx_=C,Mx_=D")
    p.add_argument("--allow-out-of-region", action="store_true")

    p = add("sweep", "grid of sensitivity bounds as CSV", formats=("csv", "json"))
    p.add_argument("--which", required=True, choices=["lower", "upper"])
    p.add_argument("--steps", type=_steps, default=sens.DEFAULT_STEPS)
    p.add_argument("--out", metavar="PATH", help="write to PATH instead of stdout")

    p = add("oracle", "evaluate or sample a ground-truth model", input_required=False)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--model", metavar="F", help="model JSON file")
    src.add_argument("--sample-levels", type=int, metavar="N", help="sample a random model with N confounder levels")
    p.add_argument("--seed", type=int, default=0, help="sampling seed (overridden by $CAUSAL_SEED)")
    kind = p.add_mutually_exclusive_group()
    kind.add_argument("--canonical", action="store_true", help="canonical response-type model")
    kind.add_argument("--mediation", action="store_true", help="mediation mechanism")
    return parser


def _cmd_bounds(args) -> tuple[dict, str]:
    inputs = load_inputs(args.input)
    joint, exp = inputs.require_joint(), inputs.require_exp()
    if args.epsilon is None:
        iv = bnd.response_bounds(args.target, joint, exp)
    else:
        iv = bnd.epsilon_response_bounds(args.target, joint, exp, args.epsilon)
    data = {"target": args.target, "epsilon": args.epsilon, **iv.to_json(), "ate": bnd.ate(exp)}
    return data, _interval_table(f"p({args.target})", iv)


def _cmd_conditions(args) -> tuple[dict, str]:
    inputs = load_inputs(args.input)
    if args.indirect:
        model = inputs.require_med()
        joint = med.observational_joint(model)
        exp = med.front_door_marginals(model).as_experimental()
    else:
        joint, exp = inputs.require_joint(), inputs.require_exp()
    report = cond.immunity_conditions(joint, exp, args.epsilon)
    data = {"indirect": args.indirect, **report.to_json()}
    text = _report_table(report)
    if args.min_epsilon:
        data["epsilon_feasible_min"] = cond.epsilon_feasible_min(joint, exp)
        text += f"smallest feasible epsilon: {data['epsilon_feasible_min']:.2f}\n"
    return data, text


def _cmd_mediation(args) -> tuple[dict, str]:
    model = load_inputs(args.input).require_med()
    q = med.front_door_marginals(model)
    if args.bounds:
        iv = med.indirect_response_bounds(model, args.target, args.epsilon)
        data = {"target": args.target, "epsilon": args.epsilon, **iv.to_json()}
        return data, _interval_table(f"q({args.target})", iv)
    effects = med.indirect_effect_measures(model)
    data = {"q_y_do_x": q.q_y_do_x, "q_y_do_x_": q.q_y_do_x_, **effects.to_json()}
    return data, _table([[k, v] for k, v in data.items()], header=["measure", "value"])


def _cmd_sensitivity(args) -> tuple[dict, str]:
    joint = load_inputs(args.input).require_joint()
    params = sens.SensitivityParams.parse(args.params)
    iv = sens.sensitivity_bounds(joint, params, check_region=not args.allow_out_of_region)
    data = {
        "params": dict(zip(sens.PARAM_NAMES, params.as_tuple())),
        **iv.to_json(),
        "regions": sens.parameter_regions(joint).to_json(),
    }
    return data, _interval_table("p(immunity)", iv)


def _cmd_sweep(args) -> tuple[dict, str]:
    joint = load_inputs(args.input).require_joint()
    grid = sens.sweep(joint, args.which, args.steps)
    data = {
        "which": grid.which,
        "param1": {"name": grid.axis1.name, "start": grid.axis1.start, "stop": grid.axis1.stop, "steps": grid.axis1.steps},
        "param2": {"name": grid.axis2.name, "start": grid.axis2.start, "stop": grid.axis2.stop, "steps": grid.axis2.steps},
        "values": [[float(v) for v in row] for row in grid.values],
    }
    return data, grid.to_csv()


def _model_object(doc: Any, key: str) -> Any:
    if isinstance(doc, dict) and key in doc:
        if len(doc) != 1:
            raise ProbabilityError(f"model file: expected only the {key!r} key")
        return doc[key]
    return doc


def _cmd_oracle(args) -> tuple[dict, str]:
    if args.model is not None:
        doc = load_document(args.model)
        if args.mediation:
            model = oracle.MediationMechanism.from_json(_model_object(doc, "mechanism"))
        elif args.canonical:
            model = oracle.CanonicalModel.from_json(_model_object(doc, "canonical"))
        else:
            model = oracle.ConfoundedModel.from_json(_model_object(doc, "confounded"))
    else:
        if args.sample_levels < 1:
            raise ProbabilityError("--sample-levels must be >= 1")
        seed = int(os.environ.get("CAUSAL_SEED", args.seed))
        if args.mediation:
            model = oracle.sample_mechanism(args.sample_levels, seed)
        else:
            model = oracle.sample_canonical(args.sample_levels, seed)

    if isinstance(model, oracle.MediationMechanism):
        ev = oracle.evaluate_mediation_mechanism(model)
        q = med.front_door_marginals(ev.mediation)
        data = {
            "mechanism": model.to_json(),
            "med": ev.mediation.to_json(),
            "q": {"y_do_x": q.q_y_do_x, "y_do_x_": q.q_y_do_x_},
            "exact_q": ev.exact_q.to_json(),
        }
        rows = [[f"q({k})", v] for k, v in ev.exact_q.to_json().items()]
        rows += [["q(y_x)", q.q_y_do_x], ["q(y_x')", q.q_y_do_x_]]
        return data, _table(rows, header=["quantity", "value"])

    if isinstance(model, oracle.CanonicalModel):
        ev = oracle.evaluate_canonical(model)
        joint, exp, exact = ev.joint, ev.exp, ev.exact
        params = oracle.evaluate_confounded(ev.induced).true_params
        data = {"canonical": model.to_json(), "exact": exact.to_json()}
    else:
        ev = oracle.evaluate_confounded(model)
        joint, exp, params, exact = ev.joint, ev.exp, ev.true_params, None
        data = {"confounded": model.to_json()}
    data.update({
        "obs": joint.to_json(),
        "exp": exp.to_json(),
        "true_params": dict(zip(sens.PARAM_NAMES, params.as_tuple())),
    })
    mg = derive_marginals(joint)
    rows = [[f"p({k})", v] for k, v in (("x,y", joint.p_xy), ("x,y'", joint.p_xy_),
                                        ("x',y", joint.p_x_y), ("x',y'", joint.p_x_y_), ("y", mg.p_y))]
    rows += [["p(y_x)", exp.p_y_do_x], ["p(y_x')", exp.p_y_do_x_]]
    rows += [[name, v] for name, v in zip(sens.PARAM_NAMES, params.as_tuple())]
    if exact is not None:
        rows += [[f"p({k})", v] for k, v in exact.to_json().items()]
    return data, _table(rows, header=["quantity", "value"])


COMMANDS = {
    "bounds": _cmd_bounds,
    "conditions": _cmd_conditions,
    "mediation": _cmd_mediation,
    "sensitivity": _cmd_sensitivity,
    "sweep": _cmd_sweep,
    "oracle": _cmd_oracle,
}


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        data, text = COMMANDS[args.command](args)
    except UsageError as err:
        print(err, file=stderr)
        return EXIT_INVALID
    except IncompatibleDataError as err:
        print(f"incompatible: {err}", file=stderr)
        return EXIT_INCOMPATIBLE
    except (ProbabilityError, ValueError) as err:
        print(f"invalid input: {err}", file=stderr)
        return EXIT_INVALID

    out = dumps_fixed(data) + "\n" if args.format == "json" else text
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        stdout.write(out)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
