"""Exact-arithmetic asymptotic invariants of graded semigroups, monomial
ideal families, and monomial linear series."""

from .lattice import (
    IntegerLattice,
    RationalPolytope,
    convex_hull,
    hermite_basis,
    lattice_volume,
    sublattice_index,
)
from .monomial import (
    MonomialIdeal,
    NilPairIdeal,
    colength,
    max_ideal_power,
    multiplicity,
    unit_ideal,
    zero_ideal,
)
from .semigroup import (
    GradedSemigroup,
    OkounkovBody,
    SemigroupInvariants,
    empirical_limit,
    enumerate_levels,
    invariants,
    predicted_limit,
    truncate,
)
from .families import (
    BlockSchedule,
    GradedFamily,
    artin_tau_family,
    check_graded,
    family_to_semigroup,
    nilpair_sigma_family,
    perturbed_power_family,
    power_family,
    saturation_family,
    symbolic_family,
    valuation_family,
)
from .series import (
    MonomialLinearSeries,
    WeightedAmbient,
    count_weighted_monomials,
    dims,
    index_estimate,
    kodaira_iitaka,
    series_to_semigroup,
)
from .experiments import (
    ConvergenceReport,
    ScaledSequence,
    convergence_report,
    epsilon_multiplicity_report,
    length_sequence,
    semigroup_limit_report,
    volume_equals_multiplicity,
)

__version__ = "0.1.0"
