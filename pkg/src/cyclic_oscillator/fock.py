"""Truncated Fock representation of the cyclic extended oscillator.

Basis ``|0>, ..., |dim-1>`` with ``a_+|n> = sqrt([n+1]) |n+1>`` and
``a_-|n> = sqrt([n]) |n-1>``.  Truncation loses ``a_+|dim-1>``, so every
identity is compared only on columns whose intermediate states stay inside
the basis (see ``_interior``).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import AlgebraParams, ParameterError, deformed_numbers
from .report import Report

__all__ = ["FockMatrices", "fock_matrices", "verify_algebra", "verify_prop1"]


@dataclass(frozen=True)
class FockMatrices:
    params: AlgebraParams
    dim: int
    a_minus: np.ndarray
    a_plus: np.ndarray
    number: np.ndarray
    s: np.ndarray
    projections: tuple

    def as_dict(self) -> dict:
        out = {
            "a_minus": self.a_minus,
            "a_plus": self.a_plus,
            "N": self.number,
            "s": self.s,
        }
        for i, P in enumerate(self.projections):
            out[f"Pi{i}"] = P
        return out


def fock_matrices(p: AlgebraParams, dim: int) -> FockMatrices:
    if not p.flags.positive:
        raise ParameterError("Fock representation needs real positive deformed numbers")
    if dim < p.lam:
        raise ParameterError(f"dim must be >= lambda={p.lam}, got {dim}")
    n = np.arange(dim)
    amp = np.sqrt(deformed_numbers(p, n[1:]).real)
    a_minus = np.zeros((dim, dim), dtype=complex)
    a_minus[n[:-1], n[1:]] = amp
    a_plus = a_minus.conj().T.copy()
    number = np.diag(n.astype(complex))
    s = np.diag(p.roots(n))
    lam = p.lam
    powers = [np.eye(dim, dtype=complex)]
    for _ in range(1, lam):
        powers.append(powers[-1] @ s)
    projections = tuple(
        sum(p.root(-i * j) * powers[j] for j in range(lam)) / lam for i in range(lam)
    )
    for M in (a_minus, a_plus, number, s, *projections):
        M.flags.writeable = False
    return FockMatrices(p, dim, a_minus, a_plus, number, s, projections)


def _interior(fm: FockMatrices, raises: int) -> int:
    """Number of leading columns on which a product with ``raises`` creation
    factors is untouched by the truncation."""
    return max(0, min(fm.dim - fm.params.lam, fm.dim - raises))


def _resid(diff: np.ndarray, cols: int, *terms: np.ndarray) -> float:
    if cols == 0:
        return 0.0
    scale = max(1.0, *(float(np.max(np.abs(t[:, :cols]))) for t in terms))
    return float(np.max(np.abs(diff[:, :cols]))) / scale


def _comm(A, B):
    return A @ B - B @ A


def verify_algebra(fm: FockMatrices, tol: float | None = None) -> Report:
    """Defining relations of the algebra, measured on the untruncated interior.

    Residuals are relative to ``max(1, largest entry of the products involved)``.
    """
    p = fm.params
    tol = p.tol if tol is None else tol
    am, ap, N, s = fm.a_minus, fm.a_plus, fm.number, fm.s
    I = np.eye(fm.dim)
    lam = p.lam
    eps = p.root(1)
    cols = _interior(fm, 1)
    rep = Report("algebra")

    s_pow = [I]
    for _ in range(1, lam + 1):
        s_pow.append(s_pow[-1] @ s)
    comm = _comm(am, ap)
    via_beta = I + sum(p.beta[i - 1] * s_pow[i] for i in range(1, lam))
    via_beta_hat = I + sum(p.beta_hat[j] * fm.projections[j] for j in range(lam))

    rep.add("[a-,a+] = 1 + sum beta_i s^i", _resid(comm - via_beta, cols, am @ ap, ap @ am), tol)
    rep.add(
        "[a-,a+] = 1 + sum beta_hat_j Pi_j",
        _resid(comm - via_beta_hat, cols, am @ ap, ap @ am),
        tol,
    )
    rep.add("[N,a-] = -a-", _resid(_comm(N, am) + am, cols, N @ am), tol)
    rep.add("[N,a+] = a+", _resid(_comm(N, ap) - ap, cols, N @ ap), tol)
    rep.add("[N,s] = 0", _resid(_comm(N, s), fm.dim, N), tol)
    rep.add("s^lam = 1", _resid(s_pow[lam] - I, fm.dim, I), tol)
    rep.add("a- s = eps s a-", _resid(am @ s - eps * s @ am, cols, am), tol)
    rep.add("a+ s = eps^-1 s a+", _resid(ap @ s - s @ ap / eps, cols, ap), tol)
    worst = 0.0
    for i in range(lam):
        d = ap @ fm.projections[i] - fm.projections[(i + 1) % lam] @ ap
        worst = max(worst, _resid(d, cols, ap))
    rep.add("a+ Pi_i = Pi_{i+1} a+", worst, tol)
    rep.add("a+ = a-^dagger", float(np.max(np.abs(ap - am.conj().T))), tol)
    return rep


def _bracket_factor(p: AlgebraParams, n: int, s_pow) -> np.ndarray:
    """``n + sum_i beta_i (eps^(n i) - 1)/(eps^i - 1) s^i``."""
    out = n * s_pow[0]
    for i in range(1, p.lam):
        geom = sum(p.root(i * k) for k in range(n))
        out = out + p.beta[i - 1] * geom * s_pow[i]
    return out


def verify_prop1(fm: FockMatrices, n: int, tol: float | None = None) -> Report:
    """Commutators of powers of the ladder operators.

    * ``[a-^n, a+] = (n + sum_i beta_i (eps^(ni)-1)/(eps^i-1) s^i) a-^(n-1)``
    * ``[a-, a+^n] = a+^(n-1) (n + sum_i ...)``
    * ``[N, a-^n] = -n a-^n`` and ``[N, a+^n] = n a+^n``
    * ``[a-^(k lam), a+] = k lam a-^(k lam - 1)`` when ``lam`` divides ``n``
    """
    p = fm.params
    tol = p.tol if tol is None else tol
    if not 1 <= n <= fm.dim // 2:
        raise ParameterError(f"need 1 <= n <= {fm.dim // 2}, got {n}")
    am, ap, N = fm.a_minus, fm.a_plus, fm.number
    s_pow = [np.eye(fm.dim, dtype=complex)]
    for _ in range(1, p.lam):
        s_pow.append(s_pow[-1] @ fm.s)
    am_n = np.linalg.matrix_power(am, n)
    ap_n = np.linalg.matrix_power(ap, n)
    am_n1 = np.linalg.matrix_power(am, n - 1)
    ap_n1 = np.linalg.matrix_power(ap, n - 1)
    factor = _bracket_factor(p, n, s_pow)
    cols = _interior(fm, n + 1)
    rep = Report(f"prop1[n={n}]")

    left = am_n @ ap - ap @ am_n
    rep.add(f"[a-^{n},a+]", _resid(left - factor @ am_n1, cols, am_n @ ap, ap @ am_n), tol)
    left = am @ ap_n - ap_n @ am
    rep.add(f"[a-,a+^{n}]", _resid(left - ap_n1 @ factor, cols, am @ ap_n, ap_n @ am), tol)
    rep.add(f"[N,a-^{n}]", _resid(_comm(N, am_n) + n * am_n, cols, N @ am_n, am_n @ N), tol)
    rep.add(f"[N,a+^{n}]", _resid(_comm(N, ap_n) - n * ap_n, cols, N @ ap_n, ap_n @ N), tol)
    if n % p.lam == 0:
        rep.add(
            f"[a-^{n},a+] = {n} a-^{n - 1}",
            _resid(_comm(am_n, ap) - n * am_n1, cols, am_n @ ap, ap @ am_n),
            tol,
        )
        rep.add(
            f"[a-,a+^{n}] = {n} a+^{n - 1}",
            _resid(_comm(am, ap_n) - n * ap_n1, cols, am @ ap_n, ap_n @ am),
            tol,
        )
    return rep
