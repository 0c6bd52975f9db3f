"""Generalized Hermite polynomials attached to the cyclic Dunkl operator.

Three constructions are provided and are expected to agree:

* operational: ``H_n = exp(-Y**lam / lam) z**n``;
* explicit: ``H_n = sum_k (-1)^k [n]! / (lam^k k! [n - k lam]!) z**(n - k lam)``;
* recurrence: ``z H_n = H_{n+1} + gamma_n H_{n-lam+1}`` with
  ``gamma_n = [n][n-1]...[n-lam+2]`` and seeds ``H_n = z**n`` for ``n < lam``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .params import (
    AlgebraParams,
    ParameterError,
    deformed_number,
    factorial_table,
    falling_product,
)
from .poly import (
    DensePoly,
    dunkl,
    dunkl_power,
    exp_neg_dunkl_power,
    multiplication,
)

__all__ = [
    "HermiteFamily",
    "hermite_operational",
    "hermite_explicit",
    "hermite_by_recurrence",
    "build_family",
    "recurrence_gamma",
    "is_d_symmetric",
    "lowering_raising_residual",
    "diff_eq_residual",
    "generating_function_residual",
    "inversion_expand",
    "inversion_reconstruct",
    "inversion_residual",
]

ROUTES = ("operational", "explicit", "recurrence")


@dataclass(frozen=True)
class HermiteFamily:
    """Cached monic family ``H_0..H_N`` and, when defined, its normalization.

    ``normalized[n] = H_n / sqrt([n]!)`` exists only for parameter sets with
    ``flags.positive``; otherwise :meth:`tilde` raises.
    """

    params: AlgebraParams
    monic: tuple
    route: str
    _normalized: Optional[tuple] = None

    @property
    def N(self) -> int:
        return len(self.monic) - 1

    def __getitem__(self, n: int) -> DensePoly:
        return self.monic[n]

    @property
    def normalized(self) -> tuple:
        if self._normalized is None:
            raise ParameterError(
                "normalized polynomials need real positive deformed numbers"
            )
        return self._normalized

    def tilde(self, n: int) -> DensePoly:
        if n < 0:
            return DensePoly()
        return self.normalized[n]


def hermite_operational(p: AlgebraParams, n: int) -> DensePoly:
    return exp_neg_dunkl_power(p, DensePoly.monomial(n))


def hermite_explicit(p: AlgebraParams, n: int) -> DensePoly:
    lam = p.lam
    c = np.zeros(n + 1, dtype=complex)
    kfact = 1.0
    for k in range(n // lam + 1):
        if k:
            kfact *= k
        # [n]!/[n - k lam]! as a falling product avoids the huge ratio
        c[n - k * lam] = (-1) ** k * falling_product(p, n, k * lam) / (lam**k * kfact)
    return DensePoly(c)


def recurrence_gamma(p: AlgebraParams, n: int) -> complex:
    """``gamma_n = [n][n-1]...[n-lam+2]`` (``lam - 1`` factors)."""
    return falling_product(p, n, p.lam - 1)


def _normalize(p: AlgebraParams, monic) -> Optional[tuple]:
    if not p.flags.positive:
        return None
    facts = factorial_table(p, len(monic) - 1).real
    return tuple(h / np.sqrt(f) for h, f in zip(monic, facts))


def hermite_by_recurrence(p: AlgebraParams, N: int) -> HermiteFamily:
    if N < 0:
        raise ParameterError(f"N must be >= 0, got {N}")
    d = p.d
    z = DensePoly.monomial(1)
    H = [DensePoly.monomial(n) for n in range(min(N, d) + 1)]
    for n in range(d, N):
        H.append(z * H[n] - recurrence_gamma(p, n) * H[n - d])
    return HermiteFamily(p, tuple(H), "recurrence", _normalize(p, H))


def build_family(p: AlgebraParams, N: int, route: str = "recurrence") -> HermiteFamily:
    """Family ``H_0..H_N`` via the chosen construction route."""
    if route == "recurrence":
        return hermite_by_recurrence(p, N)
    if route == "operational":
        H = [hermite_operational(p, n) for n in range(N + 1)]
    elif route == "explicit":
        H = [hermite_explicit(p, n) for n in range(N + 1)]
    else:
        raise ParameterError(f"unknown route {route!r}; choose from {ROUTES}")
    return HermiteFamily(p, tuple(H), route, _normalize(p, H))


def is_d_symmetric(h: DensePoly, n: int, lam: int) -> bool:
    """True when only exponents congruent to ``n`` mod ``lam`` carry nonzero
    coefficients (exact test)."""
    c = h.coeffs
    idx = np.arange(len(c))
    return not np.any(c[(idx - n) % lam != 0])


def _scaled(resid: DensePoly, *parts: DensePoly) -> float:
    scale = max(1.0, *(float(np.max(np.abs(q.coeffs), initial=0.0)) for q in parts))
    return float(np.max(np.abs(resid.coeffs), initial=0.0)) / scale


def lowering_raising_residual(fam: HermiteFamily, n: int) -> float:
    """Residual of ``Y H_n = [n] H_{n-1}`` and ``(z - Y**(lam-1)) H_n = H_{n+1}``."""
    if not 1 <= n < fam.N:
        raise ParameterError(f"need 1 <= n < {fam.N}, got {n}")
    p = fam.params
    Y, Z = dunkl(p), multiplication()
    raise_op = Z - dunkl_power(p, p.lam - 1)
    low = Y(fam[n])
    low_rhs = deformed_number(p, n) * fam[n - 1]
    up = raise_op(fam[n])
    return max(
        _scaled(low - low_rhs, low, low_rhs),
        _scaled(up - fam[n + 1], up, fam[n + 1]),
    )


def diff_eq_residual(fam: HermiteFamily, n: int) -> float:
    """Residual of the two eigen-equations

    ``Y (z - Y**(lam-1)) H_n = [n+1] H_n`` and
    ``(z - Y**(lam-1)) Y H_n = [n] H_n``.
    """
    if not 0 <= n <= fam.N:
        raise ParameterError(f"need 0 <= n <= {fam.N}, got {n}")
    p = fam.params
    Y = dunkl(p)
    raise_op = multiplication() - dunkl_power(p, p.lam - 1)
    h = fam[n]
    first = Y(raise_op(h))
    second = raise_op(Y(h))
    r1 = deformed_number(p, n + 1) * h
    r2 = deformed_number(p, n) * h
    return max(_scaled(first - r1, first, r1), _scaled(second - r2, second, r2))


def generating_function_residual(p: AlgebraParams, x0: complex, T: int) -> float:
    """Compare Taylor coefficients of ``exp(-t^lam/lam) E(x0 t)`` with ``H_n(x0)/[n]!``.

    The left side is formed as a product of two truncated power series in
    ``t`` at the fixed point ``x0``; the right side uses the recurrence family.
    Returns the largest absolute deviation over ``t**0..t**T``.
    """
    if T < 1:
        raise ParameterError(f"T must be >= 1, got {T}")
    lam = p.lam
    facts = factorial_table(p, T)
    x0 = complex(x0)
    gen_exp = np.array([x0**m / facts[m] for m in range(T + 1)])
    damp = np.zeros(T + 1, dtype=complex)
    kfact = 1.0
    for k in range(T // lam + 1):
        if k:
            kfact *= k
        damp[k * lam] = (-1.0 / lam) ** k / kfact
    lhs = np.convolve(damp, gen_exp)[: T + 1]
    fam = hermite_by_recurrence(p, T)
    rhs = np.array([fam[n](x0) / facts[n] for n in range(T + 1)])
    return float(np.max(np.abs(lhs - rhs)))


def inversion_expand(p: AlgebraParams, m: int) -> list:
    """Coefficients ``c_k`` with ``z**m = sum_k c_k H_{m - k lam}``.

    ``c_k = [m]! / (lam^k k! [m - k lam]!)``.
    """
    if m < 0:
        raise ParameterError(f"m must be >= 0, got {m}")
    out = []
    kfact = 1.0
    for k in range(m // p.lam + 1):
        if k:
            kfact *= k
        out.append(falling_product(p, m, k * p.lam) / (p.lam**k * kfact))
    return out


def inversion_reconstruct(fam: HermiteFamily, m: int) -> DensePoly:
    """``sum_k c_k H_{m - k lam}``; should reproduce ``z**m``."""
    acc = DensePoly()
    for k, c in enumerate(inversion_expand(fam.params, m)):
        acc = acc + c * fam[m - k * fam.params.lam]
    return acc


def inversion_residual(fam: HermiteFamily, m: int) -> float:
    """Gap between ``inversion_reconstruct`` and ``z**m``.

    The sum cancels heavily below the leading term, so the gap is measured
    against the largest coefficient of any single summand.
    """
    terms = [
        c * fam[m - k * fam.params.lam]
        for k, c in enumerate(inversion_expand(fam.params, m))
    ]
    scale = max(1.0, *(float(np.max(np.abs(t.coeffs))) for t in terms))
    resid = sum(terms, DensePoly()) - DensePoly.monomial(m)
    return float(np.max(np.abs(resid.coeffs), initial=0.0)) / scale

