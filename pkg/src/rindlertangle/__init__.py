"""Entanglement degradation of fermionic qubit states in a non-inertial frame.

A party undergoing uniform acceleration loses access to one Rindler wedge;
tracing it out degrades shared entanglement by a universal factor: cos(r)
for the two-qubit concurrence and cos(r)^2 for the three-tangle, where r is
the Fermi-Dirac statistical angle of the acceleration. This package builds
the states, applies the wedge channels, evaluates the measures through both
closed forms and an independent convex-roof optimizer, and ships a CLI for
sweeps and seeded verification batteries.
"""

from .convexroof import (
    DegenerateRankError,
    Rank2Decomposition,
    RoofCandidate,
    alice_decomposition,
    analytic_mixed_tangle,
    bob_decomposition,
    charlie_decomposition,
    decomposition_for,
    equal_weight_family,
    mixture_bracket,
    optimize_roof,
    spectral_mixed_tangle,
)
from .kernels import backend_name
from .measures import (
    HyperdetCoefficients,
    MeasureResult,
    concurrence_mixed,
    concurrence_pure,
    hyperdet,
    hyperdet_coefficients,
    monogamy_residual,
    three_tangle_acin,
    three_tangle_pure,
)
from .qmat import InvariantViolation, eig_hermitian, partial_trace, tensor
from .states import (
    AcinParams,
    DensityMatrix,
    PureState,
    from_acin,
    from_amplitudes,
    load_state,
    named_state,
    random_acin,
    random_pure,
    save_state,
)
from .unruh import (
    RindlerParams,
    UnruhModeParams,
    apply_single_mode_channel,
    apply_unruh_mode,
    particle_sector_state,
    particle_sector_template,
    r_from_acceleration,
    reduced_state,
    unruh_mode_kets,
)

__version__ = "0.1.0"

__all__ = [
    "AcinParams",
    "DegenerateRankError",
    "DensityMatrix",
    "HyperdetCoefficients",
    "InvariantViolation",
    "MeasureResult",
    "PureState",
    "Rank2Decomposition",
    "RindlerParams",
    "RoofCandidate",
    "UnruhModeParams",
    "alice_decomposition",
    "analytic_mixed_tangle",
    "apply_single_mode_channel",
    "apply_unruh_mode",
    "backend_name",
    "bob_decomposition",
    "charlie_decomposition",
    "concurrence_mixed",
    "concurrence_pure",
    "decomposition_for",
    "eig_hermitian",
    "equal_weight_family",
    "from_acin",
    "from_amplitudes",
    "hyperdet",
    "hyperdet_coefficients",
    "load_state",
    "mixture_bracket",
    "monogamy_residual",
    "named_state",
    "optimize_roof",
    "partial_trace",
    "particle_sector_state",
    "particle_sector_template",
    "r_from_acceleration",
    "random_acin",
    "random_pure",
    "reduced_state",
    "save_state",
    "spectral_mixed_tangle",
    "tensor",
    "three_tangle_acin",
    "three_tangle_pure",
    "unruh_mode_kets",
]
