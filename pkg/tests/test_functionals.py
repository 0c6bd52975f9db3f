from fractions import Fraction
from math import factorial

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclic_oscillator import (
    DensePoly,
    MomentFunctional,
    ParameterError,
    VerificationError,
    hermite_by_recurrence,
    make_params,
    moment,
    moments,
    pair,
    random_params,
    vector_orthogonality_delta,
    verify_d_orthogonality,
)


def test_moment_examples(p3):
    assert moment(p3, 0, 3) == 2
    assert moment(p3, 1, 4) == 8
    assert moment(p3, 0, 1) == 0
    assert MomentFunctional(p3, 0).moment(6) == 40


def test_moments_match_exact_formula():
    # lambda = 3, nu_hat = 0: (u_k)_{3n+k} = (3n+k)! / (n! 3^n)
    p = make_params(3, [0, 0, 0])
    for k in range(2):
        got = moments(p, k, 20)
        for m in range(21):
            if m % 3 == k:
                n = m // 3
                ref = Fraction(factorial(m), factorial(n) * 3**n)
                assert got[m] == pytest.approx(float(ref), rel=1e-14)
            else:
                assert got[m] == 0


def test_functional_index_checked(p3):
    with pytest.raises(ParameterError):
        moments(p3, 2, 5)
    with pytest.raises(ParameterError):
        MomentFunctional(p3, -1)


def test_pairing_example(p3):
    fam = hermite_by_recurrence(p3, 4)
    assert pair(p3, 0, fam[3]) == 0
    assert MomentFunctional(p3, 0)(fam[3]) == 0


@pytest.mark.parametrize(
    "lam, nu, N",
    [(3, [0, 0, 0], 18), (2, [0.5, -0.5], 16), (4, [0, 0, 0, 0], 18)],
)
def test_d_orthogonality_examples(lam, nu, N):
    rep = verify_d_orthogonality(make_params(lam, nu), N)
    assert rep.passed, rep.failures()
    assert rep.notes["zero_checks"] > 0


def test_delta_examples(p3):
    d0 = vector_orthogonality_delta(p3, 0)
    assert d0[1, 0] == 0
    assert np.all(np.abs(np.diag(d0)) > 0)
    for n in range(5):
        delta = vector_orthogonality_delta(p3, n)
        assert np.all(np.diag(delta).real > 0)
        assert np.allclose(np.tril(delta, -1), 0, atol=1e-9 * np.max(np.abs(delta)))


def test_delta_requires_positive():
    with pytest.raises(ParameterError):
        vector_orthogonality_delta(make_params(3, [0.3, 0.1, -0.4]), 1)


def test_broken_family_is_reported(p3):
    # feed a family whose H_3 is wrong; the zero window must fail
    fam = hermite_by_recurrence(p3, 9)
    bad = list(fam.monic)
    bad[3] = bad[3] + 1
    from cyclic_oscillator.hermite import HermiteFamily, _normalize

    broken = HermiteFamily(p3, tuple(bad), "recurrence", _normalize(p3, bad))
    assert not verify_d_orthogonality(p3, 9, broken).passed
    with pytest.raises(VerificationError):
        vector_orthogonality_delta(p3, 1, broken)


@settings(max_examples=15, deadline=None)
@given(st.integers(2, 4), st.integers(0, 2**32 - 1))
def test_d_orthogonality_property(lam, seed):
    p = random_params(lam, np.random.default_rng(seed))
    assert verify_d_orthogonality(p, 18).passed


def test_trivial_pairings(p3):
    fam = hermite_by_recurrence(p3, 2)
    assert pair(p3, 0, fam[0]) == 1
    assert pair(p3, 0, DensePoly.monomial(1) * fam[1]) == 0
    p = random_params(4, np.random.default_rng(8))
    assert pair(p, 0, DensePoly([1])) == 1
