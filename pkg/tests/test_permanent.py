import cmath
import math
import random

import pytest

from sunhom.bs_core import ExponentMatrix, build_sn
from sunhom.cyclo import CycloPoly
from sunhom.errors import ResourceGuardError
from sunhom.lambda_matrix import Transition, build_lambda
from sunhom.permanent import (
    amplitude_normalized,
    amplitude_unnormalized,
    permanent_naive,
    permanent_ryser,
    ryser_steps,
)

from oracles import complex_permanent, exponent_to_complex, fock_amplitude


def test_naive_examples():
    assert permanent_naive(ExponentMatrix.from_rows(5, [[0] * 3] * 3)).as_rational() == 6
    p = permanent_naive(build_sn(2))
    assert p == CycloPoly(2, [1, 1]) and p.is_zero()
    p = permanent_naive(build_sn(3))
    assert p == CycloPoly(3, [0, 3, 3]) and p.as_rational() == -3


def test_naive_guard():
    with pytest.raises(ResourceGuardError):
        permanent_naive(build_sn(10))


def test_ryser_examples():
    for N in (4, 6, 8, 10, 12, 14):
        assert permanent_ryser(build_sn(N)).is_zero()
    assert permanent_ryser(build_sn(9)).as_rational() == 81
    assert permanent_ryser(build_sn(13)).as_rational() == 175747


def test_ryser_guard():
    rng = random.Random(0)
    M = ExponentMatrix.from_rows(7, [[rng.randrange(7) for _ in range(12)] for _ in range(12)])
    with pytest.raises(ResourceGuardError):
        permanent_ryser(M, limit=10)
    # replicated columns shrink the work below the side-based count
    t = Transition(3, (6, 6, 6), (6, 6, 6))
    assert ryser_steps(build_lambda(t)) == 7 ** 3
    permanent_ryser(build_lambda(t), limit=10)


def test_non_square_rejected():
    M = ExponentMatrix.from_rows(3, [[0, 1, 2]])
    with pytest.raises(ValueError):
        permanent_ryser(M)
    with pytest.raises(ValueError):
        permanent_naive(M)


def test_empty_matrix():
    assert permanent_ryser(ExponentMatrix(3, ())).as_rational() == 1


def _random_matrix(rng, n, N):
    rows = [[rng.randrange(N) for _ in range(n)] for _ in range(n)]
    if n > 1 and rng.random() < 0.4:
        rows[-1] = list(rows[0])
    if n > 1 and rng.random() < 0.4:
        for r in rows:
            r[1] = r[0]
    return ExponentMatrix.from_rows(N, rows)


def test_naive_equals_ryser_random():
    rng = random.Random(11)
    for _ in range(200):
        M = _random_matrix(rng, rng.randint(1, 7), rng.randint(1, 6))
        assert permanent_naive(M) == permanent_ryser(M)


def test_ryser_against_float_permanent():
    rng = random.Random(12)
    for _ in range(30):
        n, N = rng.randint(1, 6), rng.randint(2, 7)
        M = _random_matrix(rng, n, N)
        ref = complex_permanent(exponent_to_complex(N, M.entries))
        assert abs(permanent_ryser(M).eval_numeric() - ref) < 1e-8


def test_permutation_invariance():
    rng = random.Random(13)
    for _ in range(30):
        n, N = rng.randint(1, 7), rng.randint(2, 6)
        M = _random_matrix(rng, n, N)
        pr = list(range(n))
        pc = list(range(n))
        rng.shuffle(pr)
        rng.shuffle(pc)
        P = ExponentMatrix.from_rows(N, [[M[pr[i], pc[j]] for j in range(n)] for i in range(n)])
        assert permanent_ryser(P) == permanent_ryser(M)


def test_row_scaling():
    rng = random.Random(14)
    for _ in range(30):
        n, N = rng.randint(1, 7), rng.randint(2, 6)
        M = _random_matrix(rng, n, N)
        d = [rng.randrange(N) for _ in range(n)]
        assert permanent_ryser(M.shift_rows(d)) == permanent_ryser(M).rotate(sum(d))


def test_amplitude_unnormalized_examples():
    assert amplitude_unnormalized(Transition(3, (0, 1, 2), (1, 1, 1))).is_zero()
    a = amplitude_unnormalized(Transition(4, (3,) * 4, (3,) * 4))
    lam = a[0] / 113
    assert lam > 0
    assert a == CycloPoly(4, [113 * lam, 118 * lam, 113 * lam, 118 * lam])
    assert lam == 1036800
    assert a.is_zero()
    assert not amplitude_unnormalized(Transition(4, (2,) * 4, (2,) * 4)).is_zero()


def test_amplitude_normalized_examples():
    assert amplitude_normalized(Transition(2, (1, 1), (1, 1))) == 0
    assert abs(amplitude_normalized(Transition(2, (1, 1), (2, 0)))) ** 2 == pytest.approx(0.5, abs=1e-12)
    assert abs(amplitude_normalized(Transition(3, (1, 1, 1), (1, 1, 1)))) ** 2 == pytest.approx(1 / 3, abs=1e-12)


def test_amplitude_matches_float_oracle():
    rng = random.Random(15)
    for _ in range(40):
        N = rng.randint(2, 4)
        n = rng.randint(1, 5)
        n_in = [0] * N
        m_out = [0] * N
        for _ in range(n):
            n_in[rng.randrange(N)] += 1
            m_out[rng.randrange(N)] += 1
        t = Transition(N, n_in, m_out)
        assert abs(amplitude_normalized(t) - fock_amplitude(N, n_in, m_out)) < 1e-9


def _compositions(n, N):
    if N == 1:
        yield (n,)
        return
    for a in range(n + 1):
        for rest in _compositions(n - a, N - 1):
            yield (a,) + rest


@pytest.mark.parametrize("N, n_max", [(2, 4), (3, 4), (4, 3)])
def test_unitarity_sums(N, n_max):
    for n in range(1, n_max + 1):
        for n_in in _compositions(n, N):
            total = sum(abs(amplitude_normalized(Transition(N, n_in, m))) ** 2
                        for m in _compositions(n, N))
            assert abs(total - 1) < 1e-9
