"""Ideal censuses and ideal/subspace ratio bounds for finite commutative
nilpotent F_p-algebras."""

from .algebra import (
    AnnihilatorChain,
    NilpotentAlgebra,
    annihilator_chain,
    build_binomial,
    build_custom,
    build_triangular,
    build_uniserial,
    load_algebra,
    module_product,
    multiply,
    parse_builtin,
    power_chain,
)
from .census import (
    CensusReport,
    Ideal,
    census,
    compute_q_t,
    count_ideals_within,
    enumerate_ideals,
    fiber_census,
    fibers_by_inversion,
    ideal_closure,
    interpolate_count,
    is_ideal,
    principal_ideal_dim,
    principal_ideals,
    stratified_identity_check,
)
from .fp import PrimeModulus, Subspace, enumerate_subspaces, rref
from .qcomb import (
    QPolynomial,
    delta,
    gauss_binomial_eval,
    gauss_binomial_poly,
    s_eval,
    s_poly,
)

__version__ = "0.1.0"
