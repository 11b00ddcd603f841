from fractions import Fraction

from dnvflops.core.simplex import feasible_point


def _satisfies(x, inequalities=(), equalities=()):
    if any(v < 0 for v in x):
        return False
    for coeffs, bound in inequalities:
        if sum(Fraction(a) * v for a, v in zip(coeffs, x)) < bound:
            return False
    for coeffs, bound in equalities:
        if sum(Fraction(a) * v for a, v in zip(coeffs, x)) != bound:
            return False
    return True


def test_feasible_inequalities():
    inequalities = [([1, 1], 2), ([-1, 0], -1)]
    x = feasible_point(inequalities)
    assert x is not None
    assert _satisfies(x, inequalities)


def test_infeasible_system():
    assert feasible_point([([1], 1), ([-1], 0)]) is None


def test_unique_solution_of_equalities():
    x = feasible_point([], [([1, 1], 3), ([1, -1], 1)])
    assert x == [Fraction(2), Fraction(1)]


def test_results_are_exact():
    equalities = [([3, 0], 1), ([0, 7], 2)]
    x = feasible_point([], equalities)
    assert x == [Fraction(1, 3), Fraction(2, 7)]
    assert all(isinstance(v, Fraction) for v in x)


def test_negative_right_hand_sides():
    inequalities = [([-1, -1], -4), ([1, 0], 1), ([0, 1], 1)]
    x = feasible_point(inequalities)
    assert x is not None
    assert _satisfies(x, inequalities)


def test_empty_system():
    assert feasible_point([], [], n=3) == [0, 0, 0]
    assert feasible_point([]) == []
