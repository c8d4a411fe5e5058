"""Finite Hilbert transform on (-1, 1) through Chebyshev expansions.

Modules
-------
chebyshev
    Chebyshev-Gauss grids, T/U analysis and synthesis, weighted norms.
transform
    The coefficient map ``T_k / sqrt(1-x^2) -> -U_{k-1}``, a quadrature
    oracle, the weighted Parseval identity and the off-interval probe.
circle
    The lift to the circle and the conjugate function.
airfoil
    Solving ``H f = g`` up to the null direction.
roots
    Orthogonal-polynomial roots and the roots of their derivatives.
flow
    The transport equation for the root density of ``p_n^(tn)``.
"""

from .airfoil import AirfoilSolution, airfoil_residual, airfoil_solve
from .catalog import CATALOG, WeightedFunction
from .chebyshev import (
    Basis,
    ChebSeries,
    GridFunction,
    Weight,
    analyze_T,
    analyze_U,
    cheb_nodes,
    synth,
    synth_grid,
    tail_mass,
    weighted_norm_sq,
)
from .circle import CircleFunction, conjugate, conjugate_at, fht_via_circle, lift
from .errors import (
    ConvergenceError,
    DegenerateWeightError,
    DomainError,
    InstabilityError,
    MeanValueError,
    OracleError,
    ResolutionError,
    UnderResolvedWarning,
)
from .flow import (
    DensityProfile,
    arcsine_profile,
    compare_to_empirical,
    evolve,
    flux,
    hilbert_of_density,
    semicircle_profile,
    step,
)
from .roots import (
    RecurrenceCoeffs,
    RootSet,
    differentiate_rooted,
    hermite_roots,
    iterate_derivatives,
    jacobi_recurrence,
    ks_to_arcsine,
    recurrence_from_weight,
    roots_via_jacobi,
    stieltjes,
)
from .transform import (
    FhtInput,
    fht_apply,
    fht_coeff_map,
    fht_eval,
    fht_quadrature_oracle,
    lower_bound_probe,
    nullspace_residual,
    outer_transform,
    parseval_check,
)

__version__ = "0.1.0"
