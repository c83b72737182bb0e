import json
import math
import random
from fractions import Fraction

import pytest

from sunhom.cyclo import CycloPoly
from sunhom.errors import BudgetExceededError, DegenerateEstimateError
from sunhom.kmatrix import (
    amplitude_by_ksum,
    count_weak_compositions,
    enumerate_k,
    enumerate_k_bruteforce,
    group_analysis,
    jkn_estimate,
    k_coefficient,
    k_exponent,
    ksum_as_perm,
    ksum_to_perm_factor,
)
from sunhom.lambda_matrix import Transition
from sunhom.permanent import amplitude_unnormalized

from oracles import jkn_float, k_matrices


def T(n_in, m_out):
    return Transition(len(n_in), tuple(n_in), tuple(m_out))


def test_count_weak_compositions():
    assert count_weak_compositions(3, 4) == 20
    assert count_weak_compositions(10, 12) == 352716
    assert count_weak_compositions(0, 5) == 1
    with pytest.raises(ValueError):
        count_weak_compositions(-1, 3)


def test_enumerate_small_examples():
    seen = []
    assert enumerate_k(T((0, 1, 2), (1, 1, 1)), seen.append) == 3
    expected = {
        ((0, 0, 0), (1, 0, 0), (0, 1, 1)),
        ((0, 0, 0), (0, 1, 0), (1, 0, 1)),
        ((0, 0, 0), (0, 0, 1), (1, 1, 0)),
    }
    assert set(seen) == expected


def test_enumerate_counts():
    assert enumerate_k(T((3,) * 4, (3,) * 4)) == 2008
    assert enumerate_k(T((0, 0, 14, 14), (7,) * 4)) == 344


@pytest.mark.parametrize("N", range(1, 6))
def test_permutation_matrices(N):
    assert enumerate_k(T((1,) * N, (1,) * N)) == math.factorial(N)


def test_enumerate_matches_bruteforce():
    rng = random.Random(21)
    for _ in range(40):
        N = rng.randint(1, 4)
        n = rng.randint(0, 6)
        n_in = [0] * N
        m_out = [0] * N
        for _ in range(n):
            n_in[rng.randrange(N)] += 1
            m_out[rng.randrange(N)] += 1
        got = []
        enumerate_k(Transition(N, n_in, m_out), got.append)
        ref = k_matrices(N, n_in, m_out)
        assert sorted(got) == sorted(ref)
        assert len(set(got)) == len(got)
        assert sorted(enumerate_k_bruteforce(Transition(N, n_in, m_out))) == sorted(ref)


def test_budgets():
    with pytest.raises(BudgetExceededError):
        enumerate_k(T((3,) * 4, (3,) * 4), max_visits=100)
    with pytest.raises(BudgetExceededError):
        enumerate_k(T((3,) * 4, (3,) * 4), max_nodes=50)


def test_k_exponent_examples():
    I4 = [[int(i == j) for j in range(4)] for i in range(4)]
    assert k_exponent(I4) == 2
    A4 = [[int(i + j == 3) for j in range(4)] for i in range(4)]
    assert k_exponent(A4) == 0
    assert k_exponent([[0] * 3] * 3) == 0


def test_k_coefficient_examples():
    assert k_coefficient([[0, 1], [1, 0]]) == 1
    K = [[3, 0, 0, 0], [0, 0, 3, 0], [0, 3, 0, 0], [0, 0, 0, 3]]
    assert k_coefficient(K) == Fraction(1, 1296)
    assert k_coefficient([[2, 2], [1, 1]]) == Fraction(1, 4)


def test_ksum_examples():
    a = amplitude_by_ksum(T((0, 1, 2), (1, 1, 1)))
    assert a == CycloPoly(3, [1, 1, 1]) and a.is_zero()
    a = amplitude_by_ksum(T((1,) * 4, (1,) * 4))
    assert a == CycloPoly(4, [4, 8, 4, 8]) and a.is_zero()
    a = amplitude_by_ksum(T((1, 1), (1, 1)))
    assert a == CycloPoly(2, [1, 1]) and a.is_zero()


def test_rho_relation_random():
    rng = random.Random(22)
    for _ in range(50):
        N = rng.randint(1, 4)
        n = rng.randint(1, 8)
        n_in = [0] * N
        m_out = [0] * N
        for _ in range(n):
            n_in[rng.randrange(N)] += 1
            m_out[rng.randrange(N)] += 1
        t = Transition(N, n_in, m_out)
        k = amplitude_by_ksum(t)
        p = amplitude_unnormalized(t)
        assert ksum_as_perm(t, k) == p
        assert k.is_zero() == p.is_zero()


def test_rho_factor_small_cases():
    t = T((1, 1), (2, 0))
    assert ksum_to_perm_factor(t) == (2, (2 - 3 - 2) % 2)


def test_group_report_3333():
    rep = group_analysis(T((3,) * 4, (3,) * 4))
    assert rep.valid_count == 2008
    g = rep.group(Fraction(1, 1296))
    assert g.counts == [4, 8, 4, 8]
    assert sum(g.size for g in rep.groups) == 2008
    assert rep.total == amplitude_by_ksum(T((3,) * 4, (3,) * 4))
    assert rep.all_groups_zero


def test_group_report_serialisation():
    rep = group_analysis(T((0, 1, 2), (1, 1, 1)))
    obj = json.loads(rep.dumps())
    assert obj["valid_count"] == 3
    assert obj["groups"] == [{"coeff": "1", "counts": [1, 1, 1], "sum": "1 + w + w^2", "is_zero": True}]
    assert obj["transition"] == {"N": 3, "in": [0, 1, 2], "out": [1, 1, 1]}
    assert rep.to_csv().splitlines() == ["coefficient,p,count", "1,0,1", "1,1,1", "1,2,1"]


def test_jkn_example_0014():
    assert jkn_estimate(T((0, 0, 14, 14), (7,) * 4)).as_tuple() == (213, 345, 279)


def test_jkn_regression_7777():
    # frozen from the implementation; the acceptance suite holds the reference figure
    est = jkn_estimate(T((7,) * 4, (7,) * 4))
    assert est.as_tuple() == (376668, 376668, 376668)


def test_jkn_against_float_oracle():
    for n_in, m_out in [((7,) * 4, (7,) * 4), ((0, 0, 14, 14), (7,) * 4), ((1, 2, 3), (2, 2, 2)),
                        ((3, 3, 3, 3), (3, 3, 3, 3)), ((2, 0, 4), (3, 1, 2))]:
        est = jkn_estimate(T(n_in, m_out))
        assert est.raw_nm == pytest.approx(jkn_float(n_in, m_out), rel=1e-9)
        assert est.raw_mn == pytest.approx(jkn_float(m_out, n_in), rel=1e-9)


def test_jkn_tracks_exact_counts():
    for n_in, m_out in [((3,) * 4, (3,) * 4), ((2, 3, 4), (3, 3, 3)), ((3, 4, 5), (4, 4, 4))]:
        est = jkn_estimate(T(n_in, m_out)).omega_sym
        exact = enumerate_k(T(n_in, m_out))
        assert abs(est - exact) / exact < 0.1


def test_jkn_degenerate():
    with pytest.raises(DegenerateEstimateError):
        jkn_estimate(T((1, 1), (1, 1)))
