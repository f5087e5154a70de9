import numpy as np
import pytest
from hypothesis import strategies as st
from scipy.optimize import linprog

from probimmunity.inputs import load_fixture
from probimmunity.oracle import evaluate_canonical, sample_canonical
from probimmunity.prob_core import ObservationalJoint


@pytest.fixture(scope="session")
def ex1():
    return load_fixture("example1")


@pytest.fixture(scope="session")
def ex2():
    return load_fixture("example2")


@pytest.fixture(scope="session")
def ex_med():
    return load_fixture("mediation")


@pytest.fixture(scope="session")
def ex_sens():
    return load_fixture("sensitivity")


unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


@st.composite
def joints(draw, positive_arms=True):
    lo = 1e-3 if positive_arms else 0.0
    cells = [draw(st.floats(min_value=lo, max_value=1.0)) for _ in range(4)]
    total = sum(cells)
    if total == 0:
        cells, total = [1.0, 0.0, 0.0, 0.0], 1.0
    return ObservationalJoint(*(c / total for c in cells))


@st.composite
def canonical_models(draw, max_levels=4):
    levels = draw(st.integers(min_value=1, max_value=max_levels))
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    return sample_canonical(levels, seed)


def canonical_corpus(n, max_levels=4, start=0):
    """Deterministic (seed, levels, evaluation) triples for fuzz suites."""
    for seed in range(start, start + n):
        levels = 1 + seed % max_levels
        model = sample_canonical(levels, seed)
        yield seed, model, evaluate_canonical(model)


# Response-type LP: variables q[x, r] for x in (x, x') and r in
# (immune, doomed, benefit, harm); constraints pin the joint and the
# interventional marginals. Independent of the closed-form bounds.
_TYPES = {"immunity": 0, "doom": 1, "benefit": 2, "harm": 3}


def lp_bounds(target, joint, exp):
    def var(xi, r):
        return 4 * xi + r

    rows, rhs = [], []

    def eq(coeffs, value):
        row = np.zeros(8)
        for idx in coeffs:
            row[idx] += 1.0
        rows.append(row)
        rhs.append(value)

    # Y = y at X = x iff type is immune or benefit; at x' iff immune or harm
    eq([var(0, 0), var(0, 2)], joint.p_xy)
    eq([var(0, 1), var(0, 3)], joint.p_xy_)
    eq([var(1, 0), var(1, 3)], joint.p_x_y)
    eq([var(1, 1), var(1, 2)], joint.p_x_y_)
    eq([var(x, r) for x in (0, 1) for r in (0, 2)], exp.p_y_do_x)
    eq([var(x, r) for x in (0, 1) for r in (0, 3)], exp.p_y_do_x_)
    c = np.zeros(8)
    c[[var(0, _TYPES[target]), var(1, _TYPES[target])]] = 1.0
    out = []
    for sign in (1.0, -1.0):
        res = linprog(sign * c, A_eq=np.array(rows), b_eq=np.array(rhs), bounds=[(0, 1)] * 8, method="highs")
        if res.status != 0:
            return None
        out.append(sign * res.fun)
    return tuple(out)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
