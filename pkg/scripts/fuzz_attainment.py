"""Fuzz canonical models: containment violations and how often bounds are attained.

A bound counts as attained when a linear program over (X, response type)
cells consistent with the same data reaches it. Needs scipy.
"""

import argparse
import os
from collections import Counter

import numpy as np
from scipy.optimize import linprog

from probimmunity.bounds import response_bounds
from probimmunity.oracle import evaluate_canonical, sample_canonical

TARGETS = {"immunity": 0, "doom": 1, "benefit": 2, "harm": 3}


def lp_range(target, joint, exp):
    a_eq = np.zeros((6, 8))
    # columns: 4*x_index + type, types ordered immune, doomed, benefit, harm
    for col in (0, 2):
        a_eq[0, col] = 1
    for col in (1, 3):
        a_eq[1, col] = 1
    for col in (4, 7):
        a_eq[2, col] = 1
    for col in (5, 6):
        a_eq[3, col] = 1
    for col in (0, 2, 4, 6):
        a_eq[4, col] = 1
    for col in (0, 3, 4, 7):
        a_eq[5, col] = 1
    b_eq = [joint.p_xy, joint.p_xy_, joint.p_x_y, joint.p_x_y_, exp.p_y_do_x, exp.p_y_do_x_]
    c = np.zeros(8)
    c[[TARGETS[target], 4 + TARGETS[target]]] = 1
    lo = linprog(c, A_eq=a_eq, b_eq=b_eq, bounds=[(0, 1)] * 8, method="highs").fun
    hi = -linprog(-c, A_eq=a_eq, b_eq=b_eq, bounds=[(0, 1)] * 8, method="highs").fun
    return lo, hi


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--models", type=int, default=2000)
    parser.add_argument("--max-levels", type=int, default=4)
    parser.add_argument("--seed", type=int, default=int(os.environ.get("CAUSAL_SEED", 0)))
    args = parser.parse_args()

    violations, attained = Counter(), Counter()
    for i in range(args.models):
        seed = args.seed + i
        ev = evaluate_canonical(sample_canonical(1 + i % args.max_levels, seed))
        for target in TARGETS:
            iv = response_bounds(target, ev.joint, ev.exp)
            if not iv.contains(ev.exact[target], tol=1e-9):
                violations[target] += 1
            lo, hi = lp_range(target, ev.joint, ev.exp)
            attained[target, "lower"] += abs(lo - iv.lower) <= 1e-9
            attained[target, "upper"] += abs(hi - iv.upper) <= 1e-9
    print(f"{args.models} models, seeds {args.seed}..{args.seed + args.models - 1}")
    for target in TARGETS:
        print(f"  {target:<9} violations {violations[target]:>5}   attained lower "
              f"{attained[target, 'lower'] / args.models:6.1%}   upper {attained[target, 'upper'] / args.models:6.1%}")


if __name__ == "__main__":
    main()
