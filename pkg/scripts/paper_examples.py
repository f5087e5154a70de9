"""Replay the four bundled scenarios and print the headline numbers."""

from probimmunity.bounds import epsilon_response_bounds, response_bounds
from probimmunity.conditions import epsilon_feasible_min, immunity_conditions
from probimmunity.inputs import load_fixture
from probimmunity.mediation import (
    front_door_marginals,
    indirect_effect_measures,
    indirect_immunity_conditions,
    indirect_response_bounds,
    no_confounding_marginals,
    observational_joint,
)
from probimmunity.oracle import evaluate_confounded
from probimmunity.sensitivity import sensitivity_bounds


def show(label, iv):
    print(f"  {label:<34} [{iv.lower:.3f}, {iv.upper:.3f}]")


def main():
    ex1 = load_fixture("example1")
    print("Example 1: drug marketed as leaving no one immune")
    print(f"  p(y_x) = {ex1.exp.p_y_do_x:.2f}, p(y_x') = {ex1.exp.p_y_do_x_:.2f}")
    print(f"  non-immunity necessary condition: {immunity_conditions(ex1.joint, ex1.exp).necessary_holds}")
    show("p(benefit)", response_bounds("benefit", ex1.joint, ex1.exp))
    print(f"  eps = 0.25 compatible: {immunity_conditions(ex1.joint, ex1.exp, 0.25).necessary_holds}"
          f" (smallest feasible eps {epsilon_feasible_min(ex1.joint, ex1.exp):.3f})")
    show("p(benefit) with eps = 0.25", epsilon_response_bounds("benefit", ex1.joint, ex1.exp, 0.25))

    ex2 = load_fixture("example2")
    print("\nExample 2: poor sales")
    show("p(immunity)", response_bounds("immunity", ex2.joint, ex2.exp))
    show("p(benefit)", response_bounds("benefit", ex2.joint, ex2.exp))

    med = load_fixture("mediation").med
    q = front_door_marginals(med)
    eff = indirect_effect_measures(med)
    print("\nMediation: enzyme-stimulating drug")
    print(f"  q(y_x) = {q.q_y_do_x:.3f}, q(y_x') = {q.q_y_do_x_:.3f}")
    print(f"  NIE = IIE = {eff.nie:.3f}, PIIE = {eff.piie:.3f}, TE = {eff.te_frontdoor:.3f}")
    existing = immunity_conditions(observational_joint(med), no_confounding_marginals(med))
    planned = indirect_immunity_conditions(med)
    print(f"  existing drug necessary condition: {existing.necessary_holds}")
    print(f"  planned drug necessary condition: {planned.necessary_holds}"
          f" ({', '.join(f'{c.name}: {c.left:.3f} > {c.right:.3f}' for c in planned.failing())})")
    show("indirect benefit, eps = 1", indirect_response_bounds(med, "benefit", 1.0))

    ev = evaluate_confounded(load_fixture("sensitivity").confounded)
    print("\nSensitivity: unmeasured group membership")
    show("p(immunity) with U observed", response_bounds("immunity", ev.joint, ev.exp))
    show("sensitivity bounds, true params", sensitivity_bounds(ev.joint, ev.true_params))


if __name__ == "__main__":
    main()
