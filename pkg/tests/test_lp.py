from fractions import Fraction
from random import Random

import pytest

from chainlab.linalg import Matrix, vec
from chainlab.lp import (BLAND, DANTZIG, EQ, GE, LE, INFEASIBLE, OPTIMAL,
                         UNBOUNDED, linear_program, min_weighted_l1,
                         min_weighted_linf, solve, verify)

from oracles import min_l1_oracle, min_linf_oracle


def test_bounded_optimum():
    # min x + 2y  s.t.  x + y >= 2,  x - y <= 0,  x, y >= 0
    lp = linear_program((1, 2), Matrix.from_rows([[1, 1], [1, -1]]),
                        (2, 0), (GE, LE), bounds=((0, None), (0, None)))
    sol = solve(lp)
    assert sol.status == OPTIMAL
    assert sol.objective_value == 3
    assert sol.primal == (Fraction(1), Fraction(1))
    assert verify(lp, sol) == []


def test_infeasible():
    lp = linear_program((0,), Matrix.from_rows([[1], [1]]),
                        (1, 0), (GE, LE))
    assert solve(lp).status == INFEASIBLE


def test_unbounded():
    lp = linear_program((-1,), Matrix.from_rows([[1]]), (0,), (GE,))
    assert solve(lp).status == UNBOUNDED


def test_equality_with_negative_rhs():
    lp = linear_program((1,), Matrix.from_rows([[2]]), (-3,), (EQ,))
    sol = solve(lp)
    assert sol.status == OPTIMAL
    assert sol.primal == (Fraction(-3, 2),)
    assert verify(lp, sol) == []


def test_fixed_variable_bounds():
    lp = linear_program((1, 1), Matrix.from_rows([[1, 1]]), (5,), (EQ,),
                        bounds=((2, 2), (None, None)))
    sol = solve(lp)
    assert sol.status == OPTIMAL
    assert sol.primal == (Fraction(2), Fraction(3))


def test_unknown_pivot_rule_rejected():
    lp = linear_program((1,), Matrix.from_rows([[1]]), (1,), (EQ,))
    with pytest.raises(ValueError):
        solve(lp, pivot_rule="steepest")


def test_invalid_program_rejected():
    with pytest.raises(ValueError):
        linear_program((1, 2), Matrix.from_rows([[1]]), (1,), (EQ,))


def _random_lp(rng: Random):
    m = rng.randint(1, 4)
    n = rng.randint(1, 4)
    lhs = Matrix.from_rows([[Fraction(rng.randint(-3, 3)) for _ in range(n)]
                            for _ in range(m)], ncols=n)
    rhs = [Fraction(rng.randint(-4, 4)) for _ in range(m)]
    senses = [rng.choice((LE, GE, EQ)) for _ in range(m)]
    objective = [Fraction(rng.randint(-3, 3)) for _ in range(n)]
    bounds = [rng.choice(((None, None), (Fraction(0), None),
                          (Fraction(-2), Fraction(2)))) for _ in range(n)]
    return linear_program(objective, lhs, rhs, senses, bounds)


def test_pivot_rules_agree_and_certify():
    rng = Random(5)
    statuses = set()
    for _ in range(150):
        lp = _random_lp(rng)
        a = solve(lp, pivot_rule=BLAND)
        b = solve(lp, pivot_rule=DANTZIG)
        assert a.status == b.status
        statuses.add(a.status)
        if a.status == OPTIMAL:
            assert a.objective_value == b.objective_value
            assert verify(lp, a) == []
            assert verify(lp, b) == []
    # the sweep must exercise every outcome to mean anything
    assert statuses == {OPTIMAL, INFEASIBLE, UNBOUNDED}


def test_verify_flags_tampering():
    lp = linear_program((1, 2), Matrix.from_rows([[1, 1], [1, -1]]),
                        (2, 0), (GE, LE), bounds=((0, None), (0, None)))
    sol = solve(lp)
    forged = type(sol)(sol.status, (Fraction(0), Fraction(2)), sol.dual,
                       sol.objective_value, sol.dual_objective)
    assert any("objective" in p or "violated" in p for p in verify(lp, forged))


def test_min_l1_small_instances():
    # no span: the norm of the target itself
    res = min_weighted_l1(vec([3, -4]), Matrix.zeros(2, 0), (1, 1))
    assert res.value == 7
    assert res.certificate == (Fraction(1), Fraction(-1))
    # spanning everything: zero
    res = min_weighted_l1(vec([3, -4]), Matrix.identity(2), (1, 1))
    assert res.value == 0


def test_min_norm_result_invariants():
    rng = Random(23)
    for _ in range(60):
        m = rng.randint(1, 5)
        k = rng.randint(0, 3)
        target = [Fraction(rng.randint(-5, 5)) for _ in range(m)]
        rows = [[Fraction(rng.randint(-2, 2)) for _ in range(k)]
                for _ in range(m)]
        w = [Fraction(rng.randint(1, 3), rng.randint(1, 2)) for _ in range(m)]
        span = Matrix.from_rows(rows, ncols=k)

        res = min_weighted_l1(vec(target), span, tuple(w))
        assert res.value == min_l1_oracle(target, rows, w)
        assert res.witness == tuple(t + s for t, s in
                                    zip(target, span.apply(res.coefficients)))
        assert sum(wi * abs(v) for wi, v in zip(w, res.witness)) == res.value
        y = res.certificate
        assert all(v == 0 for v in span.transpose().apply(y))
        assert all(abs(yi) <= wi for yi, wi in zip(y, w))
        assert sum(yi * t for yi, t in zip(y, target)) == res.value

        res = min_weighted_linf(vec(target), span, tuple(w))
        assert res.value == min_linf_oracle(target, rows, w)
        assert max(wi * abs(v) for wi, v in zip(w, res.witness)) == res.value


def test_weights_must_be_positive():
    with pytest.raises(ValueError):
        min_weighted_l1(vec([1]), Matrix.zeros(1, 0), (0,))
    with pytest.raises(ValueError):
        min_weighted_linf(vec([1]), Matrix.zeros(1, 0), (Fraction(-1),))
