"""Block-matrix form of the oscillator on vector Hermite polynomials.

With ``d = lam - 1`` the normalized family is cut into vectors
``HH_n = [Ht_{nd}, ..., Ht_{(n+1)d-1}]`` and the operators ``x``, ``Y`` and
``S`` act through ``d x d`` blocks::

    x HH_n = A_n HH_{n+1} + B_n HH_n + C_n HH_{n-1}
    Y HH_n = A_{n-1}^T HH_{n-1} + B_n^T HH_n
    S HH_n = R_n HH_n

``assemble`` places whole blocks: for ``X``, ``B`` sits on the diagonal with
``A`` below and ``C`` above; ``Y`` carries ``B^T`` and ``A^T``.  The ordinary
operator matrices acting on
coefficient vectors in the flat basis ``Ht_0, Ht_1, ...`` are recovered by
transposing every block in place (:func:`flatten`).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .fock import fock_matrices
from .hermite import HermiteFamily, hermite_by_recurrence
from .params import AlgebraParams, ParameterError, deformed_numbers, factorial_table
from .poly import dunkl, reflection
from .report import Report

__all__ = [
    "BlockCoefficients",
    "BlockSystem",
    "block_coefficients",
    "assemble",
    "flatten",
    "verify_vector_recurrences",
    "commutator_spectrum",
    "rotation_residual",
]


class BlockCoefficients(NamedTuple):
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    R: np.ndarray


def _require_positive(p: AlgebraParams) -> None:
    if not p.flags.positive:
        raise ParameterError("block realization needs real positive deformed numbers")


def _recurrence_alpha(p: AlgebraParams, m: int) -> float:
    """``sqrt([m]! / [m-lam+1]!)``; zero when ``m < lam - 1``."""
    if m < p.lam - 1:
        return 0.0
    facts = factorial_table(p, m).real
    return float(np.sqrt(facts[m] / facts[m - p.lam + 1]))


def block_coefficients(p: AlgebraParams, n: int) -> BlockCoefficients:
    _require_positive(p)
    if n < 0:
        raise ParameterError(f"n must be >= 0, got {n}")
    d = p.d
    A = np.zeros((d, d), dtype=complex)
    A[d - 1, 0] = np.sqrt(deformed_numbers(p, (n + 1) * d).real)
    B = np.zeros((d, d), dtype=complex)
    for j in range(1, d):
        B[j - 1, j] = np.sqrt(deformed_numbers(p, n * d + j).real)
    C = np.diag([_recurrence_alpha(p, n * d + j) for j in range(d)]).astype(complex)
    R = np.diag(p.roots(n * d + np.arange(d)))
    return BlockCoefficients(A, B, C, R)


@dataclass(frozen=True)
class BlockSystem:
    params: AlgebraParams
    nblocks: int
    blocks: tuple
    X: np.ndarray
    Y: np.ndarray
    R: np.ndarray

    @property
    def flat_x(self) -> np.ndarray:
        return flatten(self.X, self.params.d)

    @property
    def flat_y(self) -> np.ndarray:
        return flatten(self.Y, self.params.d)


def assemble(p: AlgebraParams, nblocks: int) -> BlockSystem:
    _require_positive(p)
    if nblocks < 1:
        raise ParameterError(f"nblocks must be >= 1, got {nblocks}")
    d = p.d
    size = nblocks * d
    blocks = tuple(block_coefficients(p, n) for n in range(nblocks + 1))
    X = np.zeros((size, size), dtype=complex)
    Y = np.zeros((size, size), dtype=complex)
    R = np.zeros((size, size), dtype=complex)

    def sl(n):
        return slice(n * d, (n + 1) * d)

    for n in range(nblocks):
        A, B, _, Rn = blocks[n]
        X[sl(n), sl(n)] = B
        Y[sl(n), sl(n)] = B.T
        R[sl(n), sl(n)] = Rn
        if n + 1 < nblocks:
            X[sl(n + 1), sl(n)] = A
            X[sl(n), sl(n + 1)] = blocks[n + 1].C
            Y[sl(n), sl(n + 1)] = A.T
    return BlockSystem(p, nblocks, blocks, X, Y, R)


def flatten(M: np.ndarray, d: int) -> np.ndarray:
    """Transpose every ``d x d`` block in place."""
    k = M.shape[0] // d
    return M.reshape(k, d, k, d).transpose(0, 3, 2, 1).reshape(M.shape)


def _family_for(bs: BlockSystem, fam: HermiteFamily | None) -> HermiteFamily:
    need = (bs.nblocks + 1) * bs.params.d
    if fam is not None and fam.N >= need:
        return fam
    return hermite_by_recurrence(bs.params, need)


def verify_vector_recurrences(
    bs: BlockSystem, samples, fam: HermiteFamily | None = None, tol: float | None = None
) -> Report:
    """Check the three vector identities at each sample point, ``n <= nblocks-2``.

    Residuals are relative to ``max(1, largest term magnitude)``.
    """
    p = bs.params
    tol = p.tol if tol is None else tol
    d = p.d
    fam = _family_for(bs, fam)
    Y = dunkl(p)
    S = reflection(p)
    xs = np.asarray(list(samples), dtype=complex)

    def vec(n, x):
        if n < 0:
            return np.zeros(d, dtype=complex)
        return np.array([fam.tilde(n * d + j)(x) for j in range(d)])

    def y_vec(n, x):
        return np.array([Y(fam.tilde(n * d + j))(x) for j in range(d)])

    def s_vec(n, x):
        return np.array([S(fam.tilde(n * d + j))(x) for j in range(d)])

    worst = {"x": 0.0, "Y": 0.0, "S": 0.0}
    for x in xs:
        for n in range(bs.nblocks - 1):
            A, B, C, Rn = bs.blocks[n]
            cur, nxt, prv = vec(n, x), vec(n + 1, x), vec(n - 1, x)
            lhs = x * cur
            rhs = A @ nxt + B @ cur + C @ prv
            scale = max(1.0, np.max(np.abs(lhs)), np.max(np.abs(rhs)))
            worst["x"] = max(worst["x"], float(np.max(np.abs(lhs - rhs))) / scale)

            lhs = y_vec(n, x)
            A_prev = bs.blocks[n - 1].A if n > 0 else np.zeros((d, d))
            rhs = A_prev.T @ prv + B.T @ cur
            scale = max(1.0, np.max(np.abs(lhs)), np.max(np.abs(rhs)))
            worst["Y"] = max(worst["Y"], float(np.max(np.abs(lhs - rhs))) / scale)

            lhs = s_vec(n, x)
            rhs = Rn @ cur
            scale = max(1.0, np.max(np.abs(lhs)), np.max(np.abs(rhs)))
            worst["S"] = max(worst["S"], float(np.max(np.abs(lhs - rhs))) / scale)
    rep = Report("blocks")
    rep.add("x HH_n = A HH_{n+1} + B HH_n + C HH_{n-1}", worst["x"], tol)
    rep.add("Y HH_n = A^T HH_{n-1} + B^T HH_n", worst["Y"], tol)
    rep.add("S HH_n = R HH_n", worst["S"], tol)
    return rep


def commutator_spectrum(bs: BlockSystem, tol: float | None = None) -> Report:
    """``[Y', X']`` in the flat basis against ``1 + beta_hat_{m mod lam}`` and
    against the Fock commutator ``[a-, a+]``."""
    p = bs.params
    tol = p.tol if tol is None else tol
    fx, fy = bs.flat_x, bs.flat_y
    size = fx.shape[0]
    comm = fy @ fx - fx @ fy
    cols = size - 1
    expected = np.array([1 + p.beta_hat[m % p.lam] for m in range(cols)])
    diag = np.diag(comm)[:cols]
    scale = max(1.0, float(np.max(np.abs(fy @ fx))))
    rep = Report("commutator")
    rep.add("diag [Y',X'] = 1 + beta_hat", float(np.max(np.abs(diag - expected))) / scale, tol)
    off = comm[:, :cols] - np.diag(np.diag(comm))[:, :cols]
    rep.add("[Y',X'] diagonal", float(np.max(np.abs(off))) / scale, tol)
    fm = fock_matrices(p, size)
    fcomm = fm.a_minus @ fm.a_plus - fm.a_plus @ fm.a_minus
    rep.add(
        "[Y',X'] = [a-,a+] (Fock)",
        float(np.max(np.abs(comm[:, :cols] - fcomm[:, :cols]))),
        1e-12,
    )
    rep.notes = {"diagonal": [[float(v.real), float(v.imag)] for v in diag]}
    return rep


def rotation_residual(bs: BlockSystem, interior: int | None = None) -> float:
    """Distance between the eigenvalues of the flat ``X'`` truncation and the
    same multiset rotated by ``eps``.

    Each rotated eigenvalue is matched to a distinct original eigenvalue by
    optimal assignment; the worst matched distance is returned, relative to
    ``max(1, spectral radius)``.
    """
    from scipy.optimize import linear_sum_assignment

    p = bs.params
    fx = bs.flat_x
    m = fx.shape[0] if interior is None else interior
    ev = np.linalg.eigvals(fx[:m, :m])
    rot = ev * p.root(1)
    cost = np.abs(rot[:, None] - ev[None, :])
    r, c = linear_sum_assignment(cost)
    return float(np.max(cost[r, c])) / max(1.0, float(np.max(np.abs(ev))))
