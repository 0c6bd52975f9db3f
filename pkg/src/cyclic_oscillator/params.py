"""Algebra parameters and scalar deformed arithmetic.

The cyclic group of order ``lam`` acts through the primitive root
``eps = exp(2*pi*i/lam)``.  Powers of ``eps`` are tracked as integer
exponents reduced mod ``lam`` and only turned into complex numbers through
the table in :meth:`AlgebraParams.root`, so phases never drift.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

__all__ = [
    "ParameterError",
    "Flags",
    "AlgebraParams",
    "make_params",
    "random_params",
    "deformed_number",
    "deformed_numbers",
    "deformed_factorial",
    "factorial_table",
    "falling_product",
    "multi_index",
]

DEFAULT_TOL = 1e-9


class ParameterError(ValueError):
    """Raised for invalid algebra parameters or out-of-range indices."""


@dataclass(frozen=True)
class Flags:
    hermitian: bool
    positive: bool


@dataclass(frozen=True)
class AlgebraParams:
    """Validated, immutable parameter set.

    Attributes
    ----------
    lam : int
        Order of the cyclic group (``d = lam - 1``).
    nu : tuple of complex
        ``nu_0, ..., nu_{lam-1}`` with zero sum.
    nu_hat : tuple of complex
        Discrete Fourier transform ``sum_l nu_l eps^(s l)``.
    alpha : tuple of complex
        ``alpha_k = (k + nu_hat_k) / lam`` for ``k = 1..lam-1``.
    beta : tuple of complex
        ``beta_i = nu_i (eps^i - 1)`` for ``i = 1..lam-1``.
    beta_hat : tuple of complex
        ``nu_hat_{j+1} - nu_hat_j`` for ``j = 0..lam-1``.
    """

    lam: int
    nu: tuple
    nu_hat: tuple
    alpha: tuple
    beta: tuple
    beta_hat: tuple
    flags: Flags
    tol: float = DEFAULT_TOL
    precision: str = "extended"
    _roots: tuple = field(default=(), repr=False, compare=False)

    @property
    def d(self) -> int:
        return self.lam - 1

    def root(self, k: int) -> complex:
        """``eps**k``, exact up to one rounding of the table entry."""
        return self._roots[k % self.lam]

    def roots(self, k) -> np.ndarray:
        """Vectorised :meth:`root` over an integer array."""
        return np.asarray(self._roots, dtype=complex)[np.mod(k, self.lam)]

    @property
    def nu_hat_array(self) -> np.ndarray:
        return np.asarray(self.nu_hat, dtype=complex)

    def as_dict(self) -> dict:
        """JSON-friendly summary (complex numbers as ``[re, im]``)."""
        pair = lambda z: [float(z.real) + 0.0, float(z.imag) + 0.0]  # noqa: E731
        return {
            "lambda": self.lam,
            "nu": [pair(v) for v in self.nu],
            "nu_hat": [pair(v) for v in self.nu_hat],
            "alpha": [pair(v) for v in self.alpha],
            "beta": [pair(v) for v in self.beta],
            "beta_hat": [pair(v) for v in self.beta_hat],
            "hermitian": self.flags.hermitian,
            "positive": self.flags.positive,
            "tol": self.tol,
            "precision": self.precision,
        }


def _root_table(lam: int) -> tuple:
    table = []
    for k in range(lam):
        # exact values on the axes keep eps^(lam/2) = -1 etc. free of noise
        if (4 * k) % lam == 0:
            table.append(complex([1, 1j, -1, -1j][(4 * k) // lam]))
        else:
            t = 2.0 * np.pi * k / lam
            table.append(complex(np.cos(t), np.sin(t)))
    return tuple(table)


def _close(a: complex, b: complex, tol: float) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def make_params(
    lam: int,
    nu: Sequence[complex],
    *,
    tol: float = DEFAULT_TOL,
    precision: str = "extended",
) -> AlgebraParams:
    """Build and validate an :class:`AlgebraParams`.

    ``nu`` has ``lam`` entries summing to zero, or ``lam - 1`` entries
    ``nu_1..nu_{lam-1}`` in which case ``nu_0 = -sum(nu)`` is prepended.

    Examples
    --------
    >>> p = make_params(2, [0.5, -0.5])
    >>> p.nu_hat[1], p.alpha[0], p.flags.positive
    ((1+0j), (1+0j), True)
    """
    if isinstance(lam, bool) or int(lam) != lam:
        raise ParameterError(f"lambda must be an integer, got {lam!r}")
    lam = int(lam)
    if lam < 2:
        raise ParameterError(f"lambda must be >= 2, got {lam}")
    if precision not in ("extended", "double"):
        raise ParameterError(f"unknown precision {precision!r}")
    nu = [complex(v) for v in nu]
    if len(nu) == lam - 1:
        nu = [-sum(nu)] + nu
    elif len(nu) != lam:
        raise ParameterError(
            f"nu must have {lam} (or {lam - 1}) entries, got {len(nu)}"
        )
    total = sum(nu)
    if abs(total) > tol * max(1.0, max(abs(v) for v in nu)):
        raise ParameterError(f"sum of nu must vanish, got {total}")

    roots = _root_table(lam)
    nu_hat = [sum(nu[l] * roots[(s * l) % lam] for l in range(lam)) for s in range(lam)]
    # sum(nu) = 0 forces this exactly
    nu_hat[0] = 0j
    alpha = [(k + nu_hat[k]) / lam for k in range(1, lam)]
    beta = [nu[i] * (roots[i] - 1) for i in range(1, lam)]
    beta_hat = [nu_hat[(j + 1) % lam] - nu_hat[j] for j in range(lam)]

    hermitian = all(
        _close(nu[lam - i], -roots[i] * nu[i], tol) for i in range(1, lam)
    )
    positive = all(
        abs(nu_hat[s].imag) <= tol * max(1.0, abs(nu_hat[s])) and s + nu_hat[s].real > 0
        for s in range(1, lam)
    )
    if positive:
        nu_hat = [complex(v.real, 0.0) for v in nu_hat]
        alpha = [(k + nu_hat[k]) / lam for k in range(1, lam)]
        beta_hat = [nu_hat[(j + 1) % lam] - nu_hat[j] for j in range(lam)]

    return AlgebraParams(
        lam=lam,
        nu=tuple(nu),
        nu_hat=tuple(nu_hat),
        alpha=tuple(alpha),
        beta=tuple(beta),
        beta_hat=tuple(beta_hat),
        flags=Flags(hermitian=hermitian, positive=positive),
        tol=tol,
        precision=precision,
        _roots=roots,
    )


def _valid_directions(lam: int) -> np.ndarray:
    """Real basis of the nu-vectors that are both hermitian and positive-real.

    Unknowns are Re/Im of ``nu_1..nu_{lam-1}``; the constraints (hermitian
    pairing, real Fourier transform) are real-linear, so the valid set is a
    null space.
    """
    roots = np.asarray(_root_table(lam))
    m = lam - 1
    cols = []
    for b in np.eye(2 * m):
        v = b[:m] + 1j * b[m:]
        nu = np.concatenate([[-v.sum()], v])
        herm = [nu[lam - i] + roots[i] * nu[i] for i in range(1, lam)]
        nh = [np.sum(nu * roots[(s * np.arange(lam)) % lam]) for s in range(lam)]
        cols.append(np.concatenate([np.real(herm), np.imag(herm), np.imag(nh)]))
    constraints = np.array(cols).T
    _, sv, vt = np.linalg.svd(constraints)
    rank = int(np.sum(sv > 1e-10))
    return vt[rank:]


def random_params(
    lam: int,
    rng: np.random.Generator,
    *,
    spread: float = 0.9,
    tol: float = DEFAULT_TOL,
) -> AlgebraParams:
    """Draw a random parameter set with both ``hermitian`` and ``positive`` set.

    ``spread < 1`` bounds ``|nu_hat_s|`` so that ``s + nu_hat_s >= 1 - spread``.
    """
    basis = _valid_directions(lam)
    m = lam - 1
    if len(basis) == 0:
        return make_params(lam, [0.0] * lam, tol=tol)
    x = rng.standard_normal(len(basis)) @ basis
    v = x[:m] + 1j * x[m:]
    nu = np.concatenate([[-v.sum()], v])
    roots = np.asarray(_root_table(lam))
    nh = np.array([np.sum(nu * roots[(s * np.arange(lam)) % lam]) for s in range(lam)])
    scale = np.max(np.abs(nh))
    if scale > 0:
        nu = nu * (spread * rng.uniform(0.2, 1.0) / scale)
    nu[0] = -nu[1:].sum()
    return make_params(lam, list(nu), tol=tol)


def deformed_number(p: AlgebraParams, n: int) -> complex:
    """``[n] = n + nu_hat_{n mod lam}``; ``[0] = 0``."""
    if n < 0:
        raise ParameterError(f"n must be >= 0, got {n}")
    return n + p.nu_hat[n % p.lam]


def deformed_numbers(p: AlgebraParams, n) -> np.ndarray:
    n = np.asarray(n)
    return n + p.nu_hat_array[np.mod(n, p.lam)]


def _acc_dtype(p: AlgebraParams):
    return np.clongdouble if p.precision == "extended" else np.complex128


def factorial_table(p: AlgebraParams, n: int) -> np.ndarray:
    """``[0]!, [1]!, ..., [n]!`` by forward recurrence.

    Accumulated in 80-bit precision when ``p.precision == "extended"``.
    """
    out = np.empty(n + 1, dtype=_acc_dtype(p))
    out[0] = 1
    for k in range(1, n + 1):
        out[k] = out[k - 1] * (k + p.nu_hat[k % p.lam])
    return out.astype(complex)


def deformed_factorial(p: AlgebraParams, n: int) -> complex:
    if n < 0:
        raise ParameterError(f"n must be >= 0, got {n}")
    return complex(factorial_table(p, n)[-1])


def falling_product(p: AlgebraParams, n: int, m: int) -> complex:
    """``[n][n-1]...[n-m+1]``, i.e. ``[n]!/[n-m]!``; zero when ``m > n``."""
    if m > n:
        return 0j
    acc = _acc_dtype(p)(1)
    for k in range(n - m + 1, n + 1):
        acc = acc * (k + p.nu_hat[k % p.lam])
    return complex(acc)


def multi_index(p: AlgebraParams, s: int) -> list:
    """``(1, alpha_1+1, ..., alpha_s+1, alpha_{s+1}, ..., alpha_{lam-1})``."""
    if not 0 <= s <= p.lam - 1:
        raise ParameterError(f"s must lie in 0..{p.lam - 1}, got {s}")
    return [1 + 0j] + [a + 1 if k <= s else a for k, a in enumerate(p.alpha, start=1)]
