"""Moment functionals for the d-orthogonality of the Hermite family.

Functionals ``u_0..u_{d-1}`` (``d = lam - 1``) are given by their moments
``(u_k)_{n lam + s} = delta_{ks} [n lam + s]! / (n! lam^n)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np

from .hermite import HermiteFamily, hermite_by_recurrence
from .params import AlgebraParams, ParameterError, factorial_table
from .poly import DensePoly
from .report import Report

__all__ = [
    "MomentFunctional",
    "moment",
    "moments",
    "pair",
    "verify_d_orthogonality",
    "vector_orthogonality_delta",
    "VerificationError",
]


class VerificationError(ArithmeticError):
    """An identity that must hold exactly failed beyond tolerance."""


def _check_k(p: AlgebraParams, k: int) -> None:
    if not 0 <= k <= p.d - 1:
        raise ParameterError(f"functional index must lie in 0..{p.d - 1}, got {k}")


def moments(p: AlgebraParams, k: int, M: int) -> np.ndarray:
    """``(u_k)_0 .. (u_k)_M``."""
    _check_k(p, k)
    facts = factorial_table(p, M)
    out = np.zeros(M + 1, dtype=complex)
    for n in range((M - k) // p.lam + 1 if M >= k else 0):
        m = n * p.lam + k
        out[m] = facts[m] / (factorial(n) * p.lam**n)
    return out


def moment(p: AlgebraParams, k: int, m: int) -> complex:
    if m < 0:
        raise ParameterError(f"m must be >= 0, got {m}")
    return complex(moments(p, k, m)[m])


@dataclass(frozen=True)
class MomentFunctional:
    params: AlgebraParams
    k: int

    def __post_init__(self):
        _check_k(self.params, self.k)

    def moment(self, m: int) -> complex:
        return moment(self.params, self.k, m)

    def __call__(self, f: DensePoly) -> complex:
        return pair(self.params, self.k, f)


def _pair_terms(p: AlgebraParams, k: int, f: DensePoly) -> np.ndarray:
    if f.is_zero():
        return np.zeros(0, dtype=complex)
    return f.coeffs * moments(p, k, f.degree)


def pair(p: AlgebraParams, k: int, f: DensePoly) -> complex:
    """``<u_k, f> = sum_m f_m (u_k)_m``."""
    _check_k(p, k)
    return complex(np.sum(_pair_terms(p, k, f)))


def _pair_rel(p: AlgebraParams, k: int, f: DensePoly) -> tuple:
    """Pairing together with its scale ``sum |f_m (u_k)_m|``."""
    t = _pair_terms(p, k, f)
    return complex(np.sum(t)), float(np.sum(np.abs(t)))


def verify_d_orthogonality(
    p: AlgebraParams, N: int, fam: HermiteFamily | None = None, tol: float | None = None
) -> Report:
    """Zero windows and nondegeneracy of ``<u_j, x^k H_n>``.

    (i) ``<u_j, x^k H_n> = 0`` for ``0 <= k <= (n - j - 1) // d`` (``n > j``),
    measured relative to ``sum_m |coeff_m moment_m|``;
    (ii) ``|<u_j, x^n H_{nd+j}>|`` relative to the same scale stays above ``tol``.
    """
    tol = p.tol if tol is None else tol
    d = p.d
    if N < d:
        raise ParameterError(f"N must be >= d={d}, got {N}")
    fam = fam if fam is not None else hermite_by_recurrence(p, N)
    zero_worst, zero_count = 0.0, 0
    nondeg_worst, nondeg_count = np.inf, 0
    for j in range(d):
        for n in range(N + 1):
            for k in range((n - j - 1) // d + 1 if n > j else 0):
                val, scale = _pair_rel(p, j, DensePoly.monomial(k) * fam[n])
                zero_worst = max(zero_worst, abs(val) / max(1.0, scale))
                zero_count += 1
        n = 0
        while n * d + j <= N:
            val, scale = _pair_rel(p, j, DensePoly.monomial(n) * fam[n * d + j])
            nondeg_worst = min(nondeg_worst, abs(val) / max(1.0, scale))
            nondeg_count += 1
            n += 1
    rep = Report("orthogonality")
    rep.add("zero window <u_j, x^k H_n>", zero_worst, tol)
    rep.add("nondegenerate <u_j, x^n H_{nd+j}>", nondeg_worst if nondeg_count else 0.0, tol, "min")
    rep.notes = {"zero_checks": zero_count, "nondegeneracy_checks": nondeg_count, "N": N}
    return rep


def vector_orthogonality_delta(
    p: AlgebraParams, n: int, fam: HermiteFamily | None = None, tol: float | None = None
) -> np.ndarray:
    """``Delta_n[i, j] = <u_j, x^n Htilde_{nd+i}>`` (``d x d``, upper triangular).

    Also confirms that the blocks ``<u_j, x^k Htilde_{nd+i}>`` vanish for every
    ``k < n``; raises :class:`VerificationError` otherwise.
    """
    if not p.flags.positive:
        raise ParameterError("normalized family needs real positive deformed numbers")
    tol = p.tol if tol is None else tol
    d = p.d
    top = (n + 1) * d
    fam = fam if fam is not None and fam.N >= top else hermite_by_recurrence(p, top)
    delta = np.zeros((d, d), dtype=complex)
    for i in range(d):
        h = fam.tilde(n * d + i)
        for j in range(d):
            for k in range(n):
                val, scale = _pair_rel(p, j, DensePoly.monomial(k) * h)
                if abs(val) > tol * max(1.0, scale):
                    raise VerificationError(
                        f"(x^{k} U)(H_{n})[{i},{j}] = {val} does not vanish"
                    )
            delta[i, j] = pair(p, j, DensePoly.monomial(n) * h)
    return delta
