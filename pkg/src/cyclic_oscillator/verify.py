"""Verification suites run by ``cyclic-osc verify``.

Each suite returns a :class:`~cyclic_oscillator.report.Report`; ``run_suite``
merges them.  Suites that need a positive parameter set are skipped (and
noted) otherwise.
"""
from __future__ import annotations

from math import lgamma

import numpy as np

from . import analytic, blocks, fock, functionals, hermite
from .params import AlgebraParams, factorial_table
from .poly import DensePoly, coeff_residual, commutator_residual, dunkl, multiplication
from .report import Report

SUITES = ("algebra", "hermite", "orthogonality", "bargmann", "blocks")

#: Tolerances that are fixed independently of ``params.tol``.
EXACT_TOL = 1e-12
HYPERGEOM_TOL = 1e-10
GENFUN_TOL = 1e-8
ROTATION_TOL = 1e-6


def _tol(p: AlgebraParams, tol):
    return p.tol if tol is None else tol


def laguerre_monic(alpha: float, n: int) -> DensePoly:
    """Monic Laguerre ``y^n + ...`` from its three-term recurrence."""
    y = DensePoly.monomial(1)
    prev, cur = DensePoly(), DensePoly([1.0])
    for k in range(n):
        prev, cur = cur, (y - (2 * k + alpha + 1)) * cur - (k * (k + alpha)) * prev
    return cur


def szego_hermite(mu: float, n: int) -> DensePoly:
    """Monic Szego generalized Hermite ``h_n`` built from monic Laguerre.

    ``h_{2m}(x) = l_m^{mu-1/2}(x^2)`` and ``h_{2m+1}(x) = x l_m^{mu+1/2}(x^2)``.
    """
    m, odd = divmod(n, 2)
    lag = laguerre_monic(mu + 0.5 if odd else mu - 0.5, m)
    c = np.zeros(n + 1, dtype=complex)
    c[odd::2] = lag.padded(m + 1)
    return DensePoly(c)


def szego_residual(mu: float, n: int, p: AlgebraParams | None = None) -> float:
    """Compare ``H_n^{(2,(mu,-mu))}(x)`` with ``2^{n/2} h_n(x/sqrt 2)`` coefficient-wise."""
    from .params import make_params

    p = make_params(2, [mu, -mu]) if p is None else p
    h = szego_hermite(mu, n)
    j = np.arange(len(h.coeffs))
    scaled = DensePoly(h.coeffs * 2.0 ** ((n - j) / 2))
    return coeff_residual(hermite.hermite_by_recurrence(p, n)[n], scaled)


def algebra_suite(p: AlgebraParams, degree: int = 20, dim: int = 32, tol=None) -> Report:
    tol = _tol(p, tol)
    rep = Report("algebra")
    worst = max(commutator_residual(p, n, max(degree, n)) for n in range(1, p.lam + 2))
    rep.add("poly: reflection/commutator identities", worst, tol)
    if not p.flags.positive:
        rep.notes["skipped"] = "Fock matrices need a positive parameter set"
        return rep
    fm = fock.fock_matrices(p, dim)
    rep.extend(fock.verify_algebra(fm, tol), "fock: ")
    for n in range(1, min(6, dim // 2) + 1):
        rep.extend(fock.verify_prop1(fm, n, tol), "fock: ")
    rep.add("fock = Bargmann matrix elements", bargmann_fock_residual(p, dim), EXACT_TOL)
    return rep


def bargmann_fock_residual(p: AlgebraParams, dim: int) -> float:
    """Entrywise gap between the Fock ladder matrices and ``<op e_n, e_m>``
    for ``op`` the Dunkl operator and multiplication by ``z``."""
    fm = fock.fock_matrices(p, dim)
    basis = [analytic.orthonormal_monomial(p, n) for n in range(dim)]
    Y, Z = dunkl(p), multiplication()
    mY = np.zeros((dim, dim), dtype=complex)
    mZ = np.zeros((dim, dim), dtype=complex)
    for n, e in enumerate(basis):
        ye, ze = Y(e), Z(e)
        for m, f in enumerate(basis):
            mY[m, n] = analytic.bergmann_inner(p, ye, f)
            mZ[m, n] = analytic.bergmann_inner(p, ze, f)
    return float(max(np.max(np.abs(mY - fm.a_minus)), np.max(np.abs(mZ - fm.a_plus))))


def hermite_suite(p: AlgebraParams, degree: int = 20, tol=None) -> Report:
    tol = _tol(p, tol)
    rep = Report("hermite")
    fam = hermite.hermite_by_recurrence(p, degree)
    route_gap = 0.0
    sym = True
    for n in range(degree + 1):
        ops = hermite.hermite_operational(p, n)
        exp = hermite.hermite_explicit(p, n)
        route_gap = max(route_gap, coeff_residual(ops, fam[n]), coeff_residual(exp, fam[n]))
        sym = sym and all(hermite.is_d_symmetric(h, n, p.lam) for h in (ops, exp, fam[n]))
    rep.add("route equivalence", route_gap, tol)
    rep.add("d-symmetry (exact zeros)", 0.0 if sym else 1.0, 0.0)
    rep.add(
        "lowering/raising",
        max((hermite.lowering_raising_residual(fam, n) for n in range(1, degree)), default=0.0),
        tol,
    )
    rep.add(
        "differential-difference equations",
        max(hermite.diff_eq_residual(fam, n) for n in range(degree)),
        tol,
    )
    rep.add(
        "generating function",
        max(hermite.generating_function_residual(p, x0, degree) for x0 in (1.0, -2 + 1j)),
        GENFUN_TOL,
    )
    rep.add(
        "inversion round trip",
        max(hermite.inversion_residual(fam, m) for m in range(degree + 1)),
        tol,
    )
    if p.lam == 2 and abs(p.nu[0] + p.nu[1]) == 0 and abs(p.nu[0].imag) == 0:
        mu = p.nu[0].real
        rep.add(
            "Szego reduction (lambda=2)",
            max(szego_residual(mu, n, p) for n in range(min(degree, 12) + 1)),
            tol,
        )
    return rep


def orthogonality_suite(p: AlgebraParams, degree: int = 18, tol=None) -> Report:
    tol = _tol(p, tol)
    N = max(degree, p.d)
    fam = hermite.hermite_by_recurrence(p, max(N, 7 * p.d))
    rep = functionals.verify_d_orthogonality(p, N, fam, tol)
    worst = 0.0
    for m in range(N + 1):
        coeffs = hermite.inversion_expand(p, m)
        for k in range(p.d):
            direct = functionals.moment(p, k, m)
            via = sum(
                c * functionals.pair(p, k, fam[m - i * p.lam]) for i, c in enumerate(coeffs)
            )
            worst = max(worst, abs(direct - via) / max(1.0, abs(direct)))
    rep.add("moments from inversion formula", worst, tol)
    if p.flags.positive:
        tri_gap, diag_min = 0.0, np.inf
        for n in range(7):
            delta = functionals.vector_orthogonality_delta(p, n, fam, tol)
            scale = max(1.0, float(np.max(np.abs(delta))))
            tri_gap = max(tri_gap, float(np.max(np.abs(np.tril(delta, -1)), initial=0.0)) / scale)
            diag_min = min(diag_min, float(np.min(np.abs(np.diag(delta)))) / scale)
        rep.add("Delta_n upper triangular (n<=6)", tri_gap, tol)
        rep.add("Delta_n regular diagonal (n<=6)", diag_min, tol, "min")
    return rep


def bargmann_suite(p: AlgebraParams, degree: int = 25, seed: int = 0, tol=None) -> Report:
    tol = _tol(p, tol)
    rep = Report("bargmann")
    grid = [r * np.exp(1j * t) for r in (0.0, 0.5, 1.0, 1.5, 2.0) for t in np.linspace(0, 2 * np.pi, 7)]
    try:
        gap = max(
            abs(analytic.gen_exp_series(p, z) - analytic.gen_exp_hypergeom(p, z))
            / max(1.0, abs(analytic.gen_exp_series(p, z)))
            for z in grid
        )
        rep.add("E series = hypergeometric (|z|<=2)", gap, HYPERGEOM_TOL)
    except ValueError as exc:
        rep.notes["hypergeometric"] = str(exc)

    T = 30
    Y = dunkl(p)
    worst = 0.0
    for rho in (1.0, 2j):
        trunc = DensePoly(rho ** np.arange(T + 1) / factorial_table(p, T))
        lhs = Y(trunc)
        rhs = DensePoly((rho * trunc).coeffs[:T])
        worst = max(worst, coeff_residual(lhs, rhs))
    rep.add("Y E(rho z) = rho E(rho z)", worst, tol)

    h_worst = 0.0
    for n in range(degree + 1):
        v = analytic.hamiltonian_eigenvalue(p, n)
        anti = 0.5 * ((Y @ multiplication())(DensePoly.monomial(n)) + (multiplication() @ Y)(DensePoly.monomial(n)))
        h_worst = max(h_worst, abs(anti.coeff(n) - v) / max(1.0, abs(v)))
    rep.add("Hamiltonian = ({Y,Z})/2 spectrum", h_worst, EXACT_TOL)

    if not p.flags.positive:
        rep.notes["skipped"] = "inner-product checks need a positive parameter set"
        return rep
    basis = [analytic.orthonormal_monomial(p, n) for n in range(degree + 1)]
    gram = np.array([[analytic.bergmann_inner(p, a, b) for b in basis] for a in basis])
    rep.add("orthonormal e_n", float(np.max(np.abs(gram - np.eye(len(basis))))), HYPERGEOM_TOL)

    rng = np.random.default_rng(seed)
    adj = 0.0
    Z = multiplication()
    for _ in range(100):
        f = random_poly(rng, 20)
        g = random_poly(rng, 20)
        left = analytic.bergmann_inner(p, Y(f), g)
        right = analytic.bergmann_inner(p, f, Z(g))
        adj = max(adj, abs(left - right) / max(1.0, abs(left)))
    rep.add("<Y f, g> = <f, z g>", adj, HYPERGEOM_TOL)

    rk = 0.0
    f = DensePoly.monomial(2) + DensePoly([0.3, -1.2j])
    for w in (0.7, -0.3 + 0.4j):
        k = analytic.kernel_section(p, w, 40)
        rk = max(rk, abs(analytic.bergmann_inner(p, f, k) - f(w)))
    rep.add("kernel reproducing property", rk, HYPERGEOM_TOL)
    return rep


def random_poly(rng: np.random.Generator, max_degree: int) -> DensePoly:
    """Random complex polynomial with coefficients scaled so that
    ``|c_n|^2 [n]!`` stays of order one."""
    deg = int(rng.integers(0, max_degree + 1))
    c = rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)
    return DensePoly(c / np.exp(np.array([lgamma(n + 1) for n in range(deg + 1)]) / 2))


def blocks_suite(p: AlgebraParams, nblocks: int = 6, tol=None) -> Report:
    tol = _tol(p, tol)
    if not p.flags.positive:
        rep = Report("blocks")
        rep.notes["skipped"] = "block realization needs a positive parameter set"
        return rep
    bs = blocks.assemble(p, nblocks)
    rep = blocks.verify_vector_recurrences(bs, [0.3, -1.1, 2.7 + 0.5j], tol=tol)
    rep.extend(blocks.commutator_spectrum(bs, tol))
    structural = np.max(np.abs(bs.X - bs.Y.T - _c_superdiagonal(bs)))
    rep.add("X = Y^T + C superdiagonal", float(structural), EXACT_TOL)
    rep.add(
        "eps-rotation invariance of spectrum",
        blocks.rotation_residual(blocks.assemble(p, max(nblocks, 12))),
        ROTATION_TOL,
    )
    return rep


def _c_superdiagonal(bs) -> np.ndarray:
    d = bs.params.d
    out = np.zeros_like(bs.X)
    for n in range(bs.nblocks - 1):
        out[n * d:(n + 1) * d, (n + 1) * d:(n + 2) * d] = bs.blocks[n + 1].C
    return out


def run_suite(
    p: AlgebraParams,
    suite: str = "all",
    degree: int = 20,
    dim: int = 32,
    seed: int = 0,
    tol=None,
) -> Report:
    names = SUITES if suite == "all" else (suite,)
    out = Report(suite)
    for name in names:
        if name == "algebra":
            r = algebra_suite(p, degree, dim, tol)
        elif name == "hermite":
            r = hermite_suite(p, degree, tol)
        elif name == "orthogonality":
            r = orthogonality_suite(p, degree, tol)
        elif name == "bargmann":
            r = bargmann_suite(p, degree, seed, tol)
        elif name == "blocks":
            r = blocks_suite(p, 6, tol)
        else:
            raise ValueError(f"unknown suite {name!r}")
        out.extend(r, f"{name}: ")
        if r.notes:
            out.notes[name] = r.notes
    return out
