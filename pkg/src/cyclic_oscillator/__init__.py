"""Cyclic-group extended oscillator algebra and its generalized Hermite family.

The package realizes the algebra in two ways:

* analytically, by Dunkl-type operators acting on polynomials;
* by block matrices acting on vectors of normalized Hermite polynomials.

It builds the d-orthogonal Hermite family by three independent routes and
checks every identity numerically at a configurable truncation.
"""
from .analytic import (
    ConvergenceError,
    SeriesFunction,
    SeriesValue,
    bergmann_inner,
    gen_exp_evaluate,
    gen_exp_hypergeom,
    gen_exp_series,
    hamiltonian_eigenvalue,
    hamiltonian_operator,
    hyp0f,
    kernel_eval,
    kernel_evaluate,
    kernel_section,
    orthonormal_monomial,
)
from .blocks import (
    BlockCoefficients,
    BlockSystem,
    assemble,
    block_coefficients,
    commutator_spectrum,
    flatten,
    rotation_residual,
    verify_vector_recurrences,
)
from .fock import FockMatrices, fock_matrices, verify_algebra, verify_prop1
from .functionals import (
    MomentFunctional,
    VerificationError,
    moment,
    moments,
    pair,
    vector_orthogonality_delta,
    verify_d_orthogonality,
)
from .hermite import (
    ROUTES,
    HermiteFamily,
    build_family,
    diff_eq_residual,
    generating_function_residual,
    hermite_by_recurrence,
    hermite_explicit,
    hermite_operational,
    inversion_expand,
    inversion_reconstruct,
    inversion_residual,
    is_d_symmetric,
    lowering_raising_residual,
    recurrence_gamma,
)
from .params import (
    AlgebraParams,
    Flags,
    ParameterError,
    deformed_factorial,
    deformed_number,
    deformed_numbers,
    factorial_table,
    falling_product,
    make_params,
    multi_index,
    random_params,
)
from .poly import (
    BandOperator,
    DensePoly,
    GradedOperator,
    coeff_residual,
    commutator_residual,
    differentiation,
    dunkl,
    dunkl_from_definition,
    dunkl_power,
    identity,
    multiplication,
    reflection,
)
from .report import Check, Report
from .verify import SUITES, run_suite

__version__ = "0.1.0"
