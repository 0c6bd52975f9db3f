from fractions import Fraction
from math import factorial

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclic_oscillator import (
    DensePoly,
    ParameterError,
    build_family,
    coeff_residual,
    diff_eq_residual,
    dunkl,
    generating_function_residual,
    hermite_by_recurrence,
    hermite_explicit,
    hermite_operational,
    inversion_expand,
    inversion_residual,
    is_d_symmetric,
    lowering_raising_residual,
    make_params,
    random_params,
)
from cyclic_oscillator.verify import szego_hermite, szego_residual


def z(n):
    return DensePoly.monomial(n)


def exact_operational(lam, nu_hat, n):
    """``exp(-Y^lam / lam) z^n`` in rational arithmetic for rational nu_hat."""

    def bracket(m):
        return m + nu_hat[m % lam]

    coeffs = {n: Fraction(1)}
    term = {n: Fraction(1)}
    k = 0
    while True:
        k += 1
        new = {}
        for deg, c in term.items():
            if deg < lam:
                continue
            v = c
            for j in range(lam):
                v *= bracket(deg - j)
            new[deg - lam] = v * Fraction(-1, lam * k)
        if not new:
            return coeffs
        for deg, c in new.items():
            coeffs[deg] = coeffs.get(deg, 0) + c
        term = new


def gould_hopper(lam, n):
    """Undeformed family: ``n! sum_k (-1/lam)^k x^(n - lam k) / (k! (n - lam k)!)``."""
    c = np.zeros(n + 1)
    for k in range(n // lam + 1):
        c[n - lam * k] = factorial(n) * (-1 / lam) ** k / (factorial(k) * factorial(n - lam * k))
    return DensePoly(c)


def test_worked_examples(p2, p3):
    assert hermite_operational(p2, 3) == z(3) - 4 * z(1)
    assert hermite_operational(p2, 0) == DensePoly([1])
    assert hermite_operational(p3, 3) == z(3) - 2
    assert hermite_explicit(p2, 2) == z(2) - 2
    assert hermite_explicit(p3, 4) == z(4) - 8 * z(1)
    fam = hermite_by_recurrence(p2, 4)
    assert fam[3] == z(3) - 4 * z(1)
    assert hermite_by_recurrence(p3, 4)[3] == z(3) - 2
    p4 = random_params(4, np.random.default_rng(3))
    assert hermite_explicit(p4, 3) == z(3)


def test_lowering_examples(p2, p3):
    Y = dunkl(p3)
    assert Y(z(3) - 2) == 3 * z(2)
    assert dunkl(p2)(z(1)) == DensePoly([2])


def test_eigenvalues_example(p2):
    fam = hermite_by_recurrence(p2, 4)
    assert diff_eq_residual(fam, 2) == 0.0


@pytest.mark.parametrize("lam, nu_hat", [(2, (0, 1)), (3, (0, Fraction(1, 2), Fraction(-1, 4)))])
def test_routes_match_exact_oracle(lam, nu_hat):
    # nu chosen so that nu_hat is the given real vector
    eps = np.exp(2j * np.pi / lam)
    nu = [sum(complex(nu_hat[s]) * eps ** (-s * l) for s in range(lam)) / lam for l in range(lam)]
    p = make_params(lam, nu)
    assert np.allclose(p.nu_hat, [float(v) for v in nu_hat], atol=1e-14)
    fam = hermite_by_recurrence(p, 16)
    for n in range(17):
        exact = exact_operational(lam, nu_hat, n)
        ref = DensePoly([complex(exact.get(k, 0)) for k in range(n + 1)])
        for h in (fam[n], hermite_operational(p, n), hermite_explicit(p, n)):
            assert coeff_residual(h, ref) <= 1e-12


@pytest.mark.parametrize("lam", [2, 3, 4, 5])
def test_undeformed_family_is_gould_hopper(lam):
    p = make_params(lam, [0] * lam)
    fam = hermite_by_recurrence(p, 20)
    for n in range(21):
        assert coeff_residual(fam[n], gould_hopper(lam, n)) <= 1e-12


def test_build_family_routes(p2):
    for route in ("operational", "explicit", "recurrence"):
        assert build_family(p2, 5, route).route == route
    with pytest.raises(ParameterError):
        build_family(p2, 5, "magic")


def test_normalized_requires_positive():
    p = make_params(3, [0.3, 0.1, -0.4])
    fam = hermite_by_recurrence(p, 5)
    with pytest.raises(ParameterError):
        fam.tilde(2)


def test_normalized_family(p3):
    fam = hermite_by_recurrence(p3, 6)
    assert coeff_residual(fam.tilde(3), (z(3) - 2) / np.sqrt(6)) <= 1e-15
    assert fam.tilde(-1).is_zero()


def test_residual_domain_checks(p2):
    fam = hermite_by_recurrence(p2, 5)
    with pytest.raises(ParameterError):
        lowering_raising_residual(fam, 5)
    with pytest.raises(ParameterError):
        diff_eq_residual(fam, 6)


def test_generating_function_examples(p2, p3):
    assert generating_function_residual(p2, 1.0, 12) <= 1e-10
    assert generating_function_residual(p3, -2 + 1j, 15) <= 1e-9


def test_inversion_examples(p2, p3):
    assert np.allclose(inversion_expand(p3, 4), [1, 8])
    assert np.allclose(inversion_expand(p2, 2), [1, 2])
    fam = hermite_by_recurrence(p3, 4)
    assert fam[4] + 8 * fam[1] == z(4)


@pytest.mark.parametrize("mu", [0.25, 0.5, 1.3])
def test_szego_reduction(mu):
    for n in range(13):
        assert szego_residual(mu, n) <= 1e-9


def chihara_generalized_hermite(mu, n):
    """Monic ``h_n`` from ``h_{k+1} = x h_k - (k + 2 mu [k odd]) / 2 h_{k-1}``."""
    x = z(1)
    prev, cur = DensePoly(), DensePoly([1])
    for k in range(n):
        prev, cur = cur, x * cur - ((k + 2 * mu * (k % 2)) / 2) * prev
    return cur


@pytest.mark.parametrize("mu", [0.25, 1.3])
def test_szego_oracle_matches_chihara(mu):
    for n in range(13):
        assert coeff_residual(szego_hermite(mu, n), chihara_generalized_hermite(mu, n)) <= 1e-10


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 5), st.integers(0, 2**32 - 1), st.integers(0, 24))
def test_routes_agree_and_are_d_symmetric(lam, seed, n):
    p = random_params(lam, np.random.default_rng(seed))
    fam = hermite_by_recurrence(p, n)
    for h in (hermite_operational(p, n), hermite_explicit(p, n)):
        assert coeff_residual(h, fam[n]) <= 1e-9
        assert is_d_symmetric(h, n, lam)
    assert fam[n].degree == n and fam[n].coeff(n) == 1


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 5), st.integers(0, 2**32 - 1))
def test_ladder_and_eigen_equations(lam, seed):
    p = random_params(lam, np.random.default_rng(seed))
    fam = hermite_by_recurrence(p, 24)
    assert max(lowering_raising_residual(fam, n) for n in range(1, 24)) <= 1e-9
    assert max(diff_eq_residual(fam, n) for n in range(25)) <= 1e-9
    assert max(inversion_residual(fam, m) for m in range(25)) <= 1e-9


def test_is_d_symmetric_detects_stray_term():
    assert is_d_symmetric(z(4) - 8 * z(1), 4, 3)
    assert not is_d_symmetric(z(4) + z(2), 4, 3)
