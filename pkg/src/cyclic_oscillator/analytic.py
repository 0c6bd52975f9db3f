"""One-variable analytic model: generalized exponential, inner product, kernel.

The inner product on analytic functions is used through its coefficient form
``<f, g> = sum_n a_n conj(b_n) [n]!``, which makes the monomials orthogonal.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .params import (
    AlgebraParams,
    ParameterError,
    deformed_number,
    factorial_table,
)
from .poly import DensePoly, GradedOperator, differentiation, multiplication, reflection

__all__ = [
    "ConvergenceError",
    "SeriesFunction",
    "SeriesValue",
    "gen_exp_series",
    "gen_exp_evaluate",
    "kernel_evaluate",
    "gen_exp_hypergeom",
    "hyp0f",
    "bergmann_inner",
    "orthonormal_monomial",
    "kernel_section",
    "kernel_eval",
    "hamiltonian_operator",
    "hamiltonian_eigenvalue",
]

#: Relative size of the first dropped term when the truncation is automatic.
AUTO_TAIL = 1e-17
MAX_TERMS = 2000


class ConvergenceError(ArithmeticError):
    """A truncated series was asked for at a truncation it has not reached."""


@dataclass(frozen=True)
class SeriesFunction:
    """Truncated power series ``sum_{n<=T} coeffs[n] z**n``.

    ``kind`` is ``"gen-exp"`` (coefficients ``1/[n]!``) or
    ``"kernel-section"`` (coefficients ``conj(w)^n/[n]!`` for a fixed ``w``).
    """

    params: AlgebraParams
    kind: str
    truncation: int
    coeffs: np.ndarray

    @classmethod
    def gen_exp(cls, p: AlgebraParams, T: int) -> "SeriesFunction":
        return cls(p, "gen-exp", T, 1.0 / factorial_table(p, T))

    @classmethod
    def kernel(cls, p: AlgebraParams, w: complex, T: int) -> "SeriesFunction":
        n = np.arange(T + 1)
        return cls(p, "kernel-section", T, np.conj(complex(w)) ** n / factorial_table(p, T))

    def __call__(self, z):
        return self.as_poly()(z)

    def as_poly(self) -> DensePoly:
        return DensePoly(self.coeffs)

    def tail_bound(self, z: complex) -> float:
        """Magnitude of the last retained term, ``|c_T z**T|``."""
        return float(abs(self.coeffs[-1] * complex(z) ** self.truncation))


def _auto_truncation(p: AlgebraParams, r: float) -> int:
    term_prev = term = 1.0
    partial = 1.0
    for n in range(1, MAX_TERMS):
        term = term * r / abs(deformed_number(p, n))
        partial += term
        if term <= AUTO_TAIL * partial and term < p.tol and term <= term_prev:
            return n
        term_prev = term
    raise ConvergenceError(f"series at |z|={r} needs more than {MAX_TERMS} terms")


def gen_exp_series(p: AlgebraParams, z: complex, T: int | None = None) -> complex:
    """Partial sum ``sum_{n<=T} z**n / [n]!`` of the generalized exponential.

    With ``T=None`` the truncation is chosen so the dropped terms are below
    double precision.  An explicit ``T`` must satisfy
    ``|z|**T / |[T]!| < p.tol``, otherwise :class:`ConvergenceError` is raised.
    """
    return _gen_exp(p, z, T)[0]


class SeriesValue(NamedTuple):
    value: complex
    truncation: int
    tail_bound: float


def gen_exp_evaluate(p: AlgebraParams, z: complex, T: int | None = None) -> SeriesValue:
    """Like :func:`gen_exp_series` but also returns the truncation and tail bound."""
    return SeriesValue(*_gen_exp(p, z, T))


def kernel_evaluate(
    p: AlgebraParams, z: complex, w: complex, T: int | None = None
) -> SeriesValue:
    return gen_exp_evaluate(p, complex(z) * np.conj(complex(w)), T)


def _gen_exp(p: AlgebraParams, z: complex, T: int | None):
    z = complex(z)
    if T is None:
        T = _auto_truncation(p, abs(z))
    series = SeriesFunction.gen_exp(p, T)
    bound = series.tail_bound(z)
    if bound >= p.tol:
        raise ConvergenceError(
            f"truncation T={T} too small at z={z}: tail bound {bound:.3e} >= {p.tol:g}"
        )
    return complex(series(z)), T, bound


def hyp0f(b, w: complex, *, rtol: float = 1e-18, max_terms: int = 500) -> complex:
    """``0F_q(; b_1..b_q; w)`` by direct summation.

    Stops once a term falls below ``rtol`` times the partial sum (checked
    after the terms have started to decrease), or after ``max_terms`` terms.
    """
    b = [complex(x) for x in b]
    for x in b:
        if x.imag == 0 and x.real <= 0 and x.real == int(x.real):
            raise ParameterError(f"lower parameter {x} is a nonpositive integer")
    w = complex(w)
    term, total = 1 + 0j, 1 + 0j
    for n in range(max_terms):
        denom = (n + 1) * np.prod([x + n for x in b]) if b else (n + 1)
        new = term * w / denom
        total += new
        if abs(new) <= rtol * abs(total) and abs(new) <= abs(term):
            break
        term = new
    return complex(total)


def gen_exp_hypergeom(p: AlgebraParams, z: complex) -> complex:
    """``E(z) = sum_s z**s/[s]! * 0F_{lam-1}(; Delta'(s); (z/lam)**lam)``.

    ``Delta'(s) = (alpha_1+1, ..., alpha_s+1, alpha_{s+1}, ..., alpha_{lam-1})``.
    """
    lam = p.lam
    z = complex(z)
    for a in p.alpha:
        if a.imag == 0 and a.real <= 0 and a.real == int(a.real):
            raise ParameterError(f"alpha={a} is a nonpositive integer")
    w = (z / lam) ** lam
    facts = factorial_table(p, lam - 1)
    total = 0j
    for s in range(lam):
        lower = [a + 1 if k <= s else a for k, a in enumerate(p.alpha, start=1)]
        total += z**s / facts[s] * hyp0f(lower, w)
    return complex(total)


def _require_positive(p: AlgebraParams):
    if not p.flags.positive:
        raise ParameterError("inner product needs real positive deformed numbers")


def bergmann_inner(p: AlgebraParams, f: DensePoly, g: DensePoly) -> complex:
    """``<f, g> = sum_n f_n conj(g_n) [n]!`` (conjugate-linear in ``g``)."""
    _require_positive(p)
    n = min(len(f.coeffs), len(g.coeffs))
    if n == 0:
        return 0j
    facts = factorial_table(p, n - 1)
    return complex(np.sum(f.coeffs[:n] * np.conj(g.coeffs[:n]) * facts))


def orthonormal_monomial(p: AlgebraParams, n: int) -> DensePoly:
    """``e_n = z**n / sqrt([n]!)``."""
    _require_positive(p)
    return DensePoly.monomial(n, 1.0 / np.sqrt(factorial_table(p, n)[-1].real))


def kernel_section(p: AlgebraParams, w: complex, T: int) -> DensePoly:
    """``z -> K(w, z)`` truncated at degree ``T``."""
    return SeriesFunction.kernel(p, w, T).as_poly()


def kernel_eval(p: AlgebraParams, z: complex, w: complex, T: int | None = None) -> complex:
    """``K(w, z) = E(z conj(w))``."""
    return gen_exp_series(p, complex(z) * np.conj(complex(w)), T)


def hamiltonian_operator(p: AlgebraParams) -> GradedOperator:
    """``z d/dz + 1/2 + 1/2 sum_j nu_j (eps^j + 1) S^j`` (``j = 0..lam-1``)."""
    op = GradedOperator((multiplication() @ differentiation(), 0.5 * reflection(p, 0)))
    for j, v in enumerate(p.nu):
        op = op + (0.5 * v * (p.root(j) + 1)) * reflection(p, j)
    return op


def hamiltonian_eigenvalue(p: AlgebraParams, n: int) -> complex:
    """``([n] + [n+1]) / 2``, cross-checked against the operator acting on ``z**n``."""
    if n < 0:
        raise ParameterError(f"n must be >= 0, got {n}")
    value = (deformed_number(p, n) + deformed_number(p, n + 1)) / 2
    image = hamiltonian_operator(p)(DensePoly.monomial(n))
    from_op = image.coeff(n)
    stray = np.abs(np.delete(image.padded(n + 1), n))
    if abs(from_op - value) > p.tol * max(1.0, abs(value)) or np.any(stray > 0):
        raise ArithmeticError(
            f"operator form gives {from_op} on z^{n}, expected {value}"
        )
    return value
