import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclic_oscillator import (
    ParameterError,
    assemble,
    block_coefficients,
    commutator_spectrum,
    flatten,
    hermite_by_recurrence,
    make_params,
    random_params,
    rotation_residual,
    verify_vector_recurrences,
)


def test_block_example_lambda3(p3):
    A, B, C, R = block_coefficients(p3, 0)
    assert np.allclose(A, [[0, 0], [np.sqrt(2), 0]])
    assert np.allclose(B, [[0, 1], [0, 0]])
    assert np.allclose(C, 0)
    C1 = block_coefficients(p3, 1).C
    assert np.allclose(C1, np.diag([np.sqrt(2), np.sqrt(6)]))
    eps = np.exp(2j * np.pi / 3)
    assert np.allclose(block_coefficients(p3, 1).R, np.diag([eps**2, 1]))


def test_lambda2_collapses_to_jacobi_matrix(p2):
    bs = assemble(p2, 4)
    off = np.sqrt([2, 2, 4])
    expected = np.diag(off, 1) + np.diag(off, -1)
    assert np.allclose(bs.X, expected)
    assert np.allclose(bs.X, bs.X.T)


def test_assembly_by_hand(p3):
    bs = assemble(p3, 2)
    b0, b1 = bs.blocks[0], bs.blocks[1]
    hand = np.block([[b0.B, b1.C], [b0.A, b1.B]])
    assert np.allclose(bs.X, hand)
    assert np.allclose(bs.Y, np.block([[b0.B.T, b0.A.T], [np.zeros((2, 2)), b1.B.T]]))


def test_flatten_is_an_involution():
    M = np.arange(36.0).reshape(6, 6)
    assert np.array_equal(flatten(flatten(M, 3), 3), M)
    assert np.array_equal(flatten(M, 3)[:3, :3], M[:3, :3].T)


def test_worked_vector_identity(p3):
    # x * (x^2 / sqrt 2) = sqrt 3 * Ht_3 + sqrt 2 * Ht_0, Ht_3 = (x^3 - 2)/sqrt 6
    fam = hermite_by_recurrence(p3, 4)
    for x in (0.3, -1.1, 2.7 + 0.5j):
        lhs = x * fam.tilde(2)(x)
        rhs = np.sqrt(3) * fam.tilde(3)(x) + np.sqrt(2) * fam.tilde(0)(x)
        assert abs(lhs - rhs) <= 1e-12 * max(1, abs(lhs))


def test_vector_recurrences_example(p3):
    rep = verify_vector_recurrences(assemble(p3, 6), [0.3, -1.1, 2.7 + 0.5j])
    assert rep.passed, rep.failures()


def test_commutator_diagonal_example(p2):
    rep = commutator_spectrum(assemble(p2, 8))
    assert rep.passed, rep.failures()
    diag = [v[0] for v in rep.notes["diagonal"]]
    assert np.allclose(diag, [2, 0] * 3 + [2])


def test_rotation_invariance_undeformed():
    p = make_params(3, [0, 0, 0])
    assert rotation_residual(assemble(p, 12)) <= 1e-6


def test_requires_positive():
    with pytest.raises(ParameterError):
        assemble(make_params(3, [0.3, 0.1, -0.4]), 3)
    with pytest.raises(ParameterError):
        assemble(make_params(3, [0, 0, 0]), 0)


@settings(max_examples=12, deadline=None)
@given(st.integers(2, 4), st.integers(0, 2**32 - 1))
def test_block_recurrences_property(lam, seed):
    p = random_params(lam, np.random.default_rng(seed))
    bs = assemble(p, 6)
    assert verify_vector_recurrences(bs, [0.3, -1.1, 2.7 + 0.5j]).passed
    assert commutator_spectrum(bs).passed
