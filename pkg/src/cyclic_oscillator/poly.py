"""Dense complex polynomials and graded (band) operators acting on them.

Every operator used here maps a monomial to a multiple of a monomial,
``z**n -> c(n) z**(n+k)``.  Such an operator is stored by its shift ``k``
and its coefficient map ``c`` rather than as a matrix, so reflections are
exact and nothing is differentiated numerically.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .params import AlgebraParams, deformed_numbers

__all__ = [
    "ZERO_DEGREE",
    "DensePoly",
    "BandOperator",
    "GradedOperator",
    "apply_band",
    "identity",
    "differentiation",
    "multiplication",
    "reflection",
    "dunkl",
    "dunkl_from_definition",
    "dunkl_power",
    "exp_neg_dunkl_power",
    "commutator_residual",
    "coeff_residual",
]

#: Degree reported for the zero polynomial.  Negative, so ``deg // lam`` is
#: negative as well and loops over ``range(deg // lam + 1)`` do nothing.
ZERO_DEGREE = -1


class DensePoly:
    """Univariate polynomial with complex coefficients, lowest degree first.

    Instances are immutable.  Trailing coefficients that are exactly zero are
    dropped on construction; no tolerance is involved.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[complex] = ()):
        c = np.array(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs,
                     dtype=complex).ravel()
        nz = np.flatnonzero(c)
        c = c[: nz[-1] + 1] if nz.size else c[:0]
        c.flags.writeable = False
        self._c = c

    @classmethod
    def monomial(cls, n: int, coeff: complex = 1.0) -> "DensePoly":
        c = np.zeros(n + 1, dtype=complex)
        c[n] = coeff
        return cls(c)

    @classmethod
    def zero(cls) -> "DensePoly":
        return cls()

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1 if len(self._c) else ZERO_DEGREE

    def is_zero(self) -> bool:
        return len(self._c) == 0

    def coeff(self, n: int) -> complex:
        return complex(self._c[n]) if 0 <= n < len(self._c) else 0j

    def padded(self, length: int) -> np.ndarray:
        out = np.zeros(max(length, len(self._c)), dtype=complex)
        out[: len(self._c)] = self._c
        return out

    def __call__(self, x):
        x = np.asarray(x, dtype=complex)
        acc = np.zeros_like(x)
        for a in self._c[::-1]:
            acc = acc * x + a
        return acc if acc.ndim else complex(acc)

    def __add__(self, other):
        if not isinstance(other, DensePoly):
            other = DensePoly([other])
        n = max(len(self._c), len(other._c))
        return DensePoly(self.padded(n) + other.padded(n))

    __radd__ = __add__

    def __neg__(self):
        return DensePoly(-self._c)

    def __sub__(self, other):
        return self + (-other if isinstance(other, DensePoly) else -complex(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, DensePoly):
            if self.is_zero() or other.is_zero():
                return DensePoly()
            return DensePoly(np.convolve(self._c, other._c))
        return DensePoly(self._c * complex(other))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return DensePoly(self._c / complex(scalar))

    def __eq__(self, other):
        if not isinstance(other, DensePoly):
            return NotImplemented
        return np.array_equal(self._c, other._c)

    def __hash__(self):
        return hash(self._c.tobytes())

    def __repr__(self):
        return f"DensePoly({np.array2string(self._c, precision=6, separator=', ')})"

    def to_json(self) -> str:
        return json.dumps({"coeffs": [[float(a.real), float(a.imag)] for a in self._c]})

    @classmethod
    def from_json(cls, text: str) -> "DensePoly":
        data = json.loads(text)
        return cls([complex(re, im) for re, im in data["coeffs"]])


def coeff_residual(a: DensePoly, b: DensePoly) -> float:
    """Largest coefficient-wise relative gap, ``|a_i-b_i| / max(1,|a_i|,|b_i|)``."""
    n = max(len(a.coeffs), len(b.coeffs), 1)
    x, y = a.padded(n), b.padded(n)
    scale = np.maximum(1.0, np.maximum(np.abs(x), np.abs(y)))
    return float(np.max(np.abs(x - y) / scale))


CoeffMap = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class BandOperator:
    """``z**n -> coeff(n) z**(n+shift)``, extended linearly.

    ``coeff`` receives an integer array and must return an array of the same
    shape.  Products compose right to left: ``(A @ B)(f) == A(B(f))``.
    """

    shift: int
    coeff: CoeffMap
    name: str = "op"

    def __call__(self, f: DensePoly) -> DensePoly:
        return apply_band(self, f)

    def __matmul__(self, other):
        if isinstance(other, GradedOperator):
            return GradedOperator((self,)) @ other
        k1, c1, c2 = other.shift, other.coeff, self.coeff
        return BandOperator(
            shift=self.shift + k1,
            coeff=lambda n: c2(n + k1) * c1(n),
            name=f"{self.name}*{other.name}",
        )

    def __add__(self, other):
        return GradedOperator((self,)) + other

    def __sub__(self, other):
        return GradedOperator((self,)) + (-1) * other

    def __rmul__(self, scalar):
        s, c = complex(scalar), self.coeff
        return BandOperator(self.shift, lambda n: s * c(n), f"{scalar}*{self.name}")

    def __pow__(self, m: int):
        out = identity()
        for _ in range(m):
            out = self @ out
        return out


def apply_band(op: BandOperator, f: DensePoly) -> DensePoly:
    """Apply a band operator to a polynomial.

    Terms that would land below ``z**0`` are discarded; for the operators
    built here their coefficient is zero (or they cancel in a sum).
    """
    if f.is_zero():
        return f
    n = np.arange(len(f.coeffs))
    target = n + op.shift
    keep = target >= 0
    if not keep.any():
        return DensePoly()
    vals = np.asarray(op.coeff(n), dtype=complex) * f.coeffs
    out = np.zeros(target[keep].max() + 1, dtype=complex)
    out[target[keep]] = vals[keep]
    return DensePoly(out)


class GradedOperator:
    """Finite sum of band operators; bands with equal shift are merged."""

    def __init__(self, bands: Iterable[BandOperator]):
        merged: dict[int, BandOperator] = {}
        for b in bands:
            if b.shift in merged:
                a = merged[b.shift]
                ca, cb = a.coeff, b.coeff
                merged[b.shift] = BandOperator(
                    b.shift, lambda n, ca=ca, cb=cb: ca(n) + cb(n), f"{a.name}+{b.name}"
                )
            else:
                merged[b.shift] = b
        self.bands = tuple(merged[k] for k in sorted(merged))

    def __call__(self, f: DensePoly) -> DensePoly:
        out = DensePoly()
        for b in self.bands:
            out = out + apply_band(b, f)
        return out

    def __add__(self, other):
        other_bands = other.bands if isinstance(other, GradedOperator) else (other,)
        return GradedOperator(self.bands + tuple(other_bands))

    def __sub__(self, other):
        return self + (-1) * other

    def __rmul__(self, scalar):
        return GradedOperator(scalar * b for b in self.bands)

    def __matmul__(self, other):
        right = other.bands if isinstance(other, GradedOperator) else (other,)
        return GradedOperator(a @ b for a in self.bands for b in right)


def identity() -> BandOperator:
    return BandOperator(0, lambda n: np.ones(np.shape(n), dtype=complex), "I")


def differentiation() -> BandOperator:
    return BandOperator(-1, lambda n: np.asarray(n, dtype=complex), "D")


def multiplication() -> BandOperator:
    """The operator ``Z``: multiplication by ``z``."""
    return BandOperator(1, lambda n: np.ones(np.shape(n), dtype=complex), "Z")


def _division() -> BandOperator:
    # 1/z on monomials z^n with n >= 1; z^0 falls off (see apply_band)
    return BandOperator(-1, lambda n: np.ones(np.shape(n), dtype=complex), "Z^-1")


def reflection(p: AlgebraParams, j: int = 1) -> BandOperator:
    """``(S^j f)(z) = f(eps^j z)``: monomial ``z**n`` picks up ``eps^(j n)``."""
    return BandOperator(0, lambda n: p.roots(j * np.asarray(n)), f"S^{j % p.lam}")


def dunkl(p: AlgebraParams) -> BandOperator:
    """Dunkl-type operator ``Y``: ``z**n -> [n] z**(n-1)``."""
    return BandOperator(-1, lambda n: deformed_numbers(p, n), "Y")


def dunkl_from_definition(p: AlgebraParams) -> GradedOperator:
    """``d/dz + (1/z) sum_j nu_j S^j`` with ``j = 0..lam-1``, assembled term by term."""
    op = GradedOperator((differentiation(),))
    for j, v in enumerate(p.nu):
        op = op + v * (_division() @ reflection(p, j))
    return op


def dunkl_power(p: AlgebraParams, m: int) -> BandOperator:
    """``Y**m``: shift ``-m``, coefficient ``[n][n-1]...[n-m+1]`` (zero for ``n < m``)."""
    if m == 0:
        return identity()

    def coeff(n):
        n = np.asarray(n)
        acc = np.ones(n.shape, dtype=complex)
        for j in range(m):
            acc = acc * deformed_numbers(p, n - j)
        return np.where(n >= m, acc, 0)

    return BandOperator(-m, coeff, f"Y^{m}")


def exp_neg_dunkl_power(p: AlgebraParams, f: DensePoly) -> DensePoly:
    """``exp(-Y**lam / lam) f``; the series stops after ``deg(f) // lam`` terms."""
    y_lam = dunkl_power(p, p.lam)
    term, acc = f, f
    for k in range(1, f.degree // p.lam + 1):
        term = y_lam(term) * (-1.0 / (p.lam * k))
        acc = acc + term
    return acc


def _cyclic_factor(p: AlgebraParams, n: int) -> GradedOperator:
    """``n + sum_{i>=1} nu_i (eps^(i n) - 1) S^i``."""
    op = GradedOperator((n * identity(),))
    for i in range(1, p.lam):
        op = op + (p.nu[i] * (p.root(i * n) - 1)) * reflection(p, i)
    return op


def commutator_residual(p: AlgebraParams, n: int, deg: int) -> float:
    """Worst relative residual of the three reflection/commutator identities.

    Checked on every monomial ``z**m`` with ``m <= deg``:

    * ``Y S - eps S Y = 0``
    * ``[Y**n, Z] = (n + sum_i nu_i (eps^(in) - 1) S^i) Y**(n-1)``
    * ``[Y, Z**n] = Z**(n-1) (n + sum_i nu_i (eps^(in) - 1) S^i)``
    """
    Y, S, Z = dunkl(p), reflection(p), multiplication()
    Yn, Zn = dunkl_power(p, n), Z ** n
    factor = _cyclic_factor(p, n)
    worst = 0.0
    for m in range(deg + 1):
        f = DensePoly.monomial(m)
        pairs = [
            ((Y @ S)(f), p.root(1) * (S @ Y)(f), DensePoly()),
            ((Yn @ Z)(f), (Z @ Yn)(f), (factor @ dunkl_power(p, n - 1))(f)),
            ((Y @ Zn)(f), (Zn @ Y)(f), (Z ** (n - 1) @ factor)(f)),
        ]
        for left, right, rhs in pairs:
            lhs = left - right
            scale = max(
                1.0,
                *(float(np.max(np.abs(q.coeffs), initial=0.0)) for q in (left, right, rhs)),
            )
            resid = (lhs - rhs).coeffs
            worst = max(worst, float(np.max(np.abs(resid), initial=0.0)) / scale)
    return worst

