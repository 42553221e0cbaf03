"""Krylov complexity of operator growth in a pentadiagonal natural basis.

The library studies the Hermitian evolution generator
L = alpha (a^dag + a) + (beta/2) ((a^dag)^2 + a^2) on a truncated Fock
space, three ways that must agree:

* closed forms for the number-basis amplitudes of the evolved vacuum
  (displaced-squeezed coherent states) and their moments (:mod:`coherent`),
* brute-force dense evolution by Hermitian eigendecomposition (:mod:`fock`),
* conventional Lanczos tridiagonalization and chain propagation
  (:mod:`lanczos`),

plus the group-element factorization machinery connecting them
(:mod:`bch`), the symmetry-algebra generators (:mod:`algebra`), and a
sweep/verification CLI (:mod:`cli`).
"""

from .algebra import (
    GeneratorSet,
    LiouvillianSpec,
    QuadraticHamiltonian,
    build_generators,
    build_liouvillian,
    commutator,
    hamiltonian_to_matrix,
)
from .bch import (
    Rep4Matrix,
    apply_displacement_squeeze,
    bogoliubov,
    decompose_exponential,
    displacement_operator,
    squeeze_operator,
    to_rep4,
)
from .coherent import (
    AmplitudeSeries,
    DisplacementParams,
    MomentReport,
    SL2RWeight,
    autocorrelator_alt_closed_form,
    autocorrelator_t,
    closed_form_params,
    complexity_closed,
    hermite_closed_form,
    hw_profile,
    interaction_term,
    late_time_growth_exponent,
    mehler_normalization_check,
    moment_identity_value,
    moment_n,
    moment_report,
    phi_series,
    phi_zero,
    schrodinger_complexity_t,
    scrambling_time,
    sl2r_profile,
    variance_alt_closed_form,
    variance_closed,
)
from .errors import (
    Breakdown,
    DecompositionFailure,
    DimensionMismatch,
    EdgeLeak,
    KrylovGrowthError,
    NonConvergent,
    NonHermitianInput,
    TruncationOverflow,
)
from .fock import (
    FockVector,
    OperatorMatrix,
    TruncationConfig,
    build_ladders,
    evolve_state,
    guard_band_mass,
    inner,
    matrix_bandwidth,
)
from .lanczos import (
    ChainWavefunction,
    KrylovChain,
    chain_complexity,
    lanczos_tridiagonalize,
    project_onto_chain,
    propagate_chain,
)

__version__ = "0.1.0"
