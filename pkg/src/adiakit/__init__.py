"""Adiabaticity analysis for slowly driven closed and open quantum systems.

The package is organized around four questions about a drive H(s) or
Lindbladian L(s) on s in [0, 1], traversed in total time T:

* how adiabatic is a closed evolution, and how long must it take
  (:mod:`adiakit.closed`: spectral tracking, condition ratios, time
  estimates, the adiabatic reference state, an order-by-order corrected
  propagator);
* what replaces eigenlevels when the generator is non-normal
  (:mod:`adiakit.open_system`: Jordan block tracking, block-resolved
  adiabaticity metrics, finite-time-window conditions);
* whether the "frozen eigenvector" shortcut solution is admissible
  (:mod:`adiakit.consistency`: it is not, and the module measures by how
  much);
* and a scenario-driven command line for all of the above
  (:mod:`adiakit.cli`).
"""

from .errors import (
    AdiakitError,
    ConditioningError,
    ConfigError,
    CrossingError,
    DegeneracyError,
    DomainError,
    InputError,
    NumericalError,
    ResolutionError,
    ShapeError,
    StiffnessError,
)
from .schedules import (
    MODEL_NAMES,
    Envelope,
    GeneratorSpec,
    constant,
    cosine_ramp,
    envelope_from_json,
    linear,
    make_model,
    polynomial,
    sinusoid,
)
from .closed import (
    ConditionRatios,
    SpectralTrack,
    Trajectory,
    adiabatic_condition_ratio,
    adiabatic_state,
    berry_phase_curve,
    coefficient_dynamics,
    fidelity,
    instantaneous_propagator,
    integrate_schrodinger,
    min_time_estimate,
    track_spectrum,
    wu_expansion,
)
from .open_system import (
    JordanTrack,
    build_supermatrix,
    classify_regime,
    condition_term_count,
    expand_jordan_coefficients,
    integrate_master,
    jordan_track,
    open_condition_metric,
    open_time_condition,
    time_term_count,
    unitary_embedding_jordan,
)
from .consistency import (
    ConsistencyReport,
    consistency_report,
    illegal_solution,
    inconsistency_witness,
    projector_residual,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "AdiakitError", "ShapeError", "InputError", "DomainError", "ConfigError",
    "DegeneracyError", "CrossingError", "ConditioningError", "StiffnessError",
    "ResolutionError", "NumericalError",
    "Envelope", "GeneratorSpec", "MODEL_NAMES", "constant", "linear",
    "polynomial", "cosine_ramp", "sinusoid", "envelope_from_json",
    "make_model",
    "SpectralTrack", "Trajectory", "ConditionRatios", "track_spectrum",
    "integrate_schrodinger", "adiabatic_condition_ratio", "min_time_estimate",
    "adiabatic_state", "berry_phase_curve", "coefficient_dynamics",
    "wu_expansion", "instantaneous_propagator", "fidelity",
    "JordanTrack", "build_supermatrix", "integrate_master", "jordan_track",
    "unitary_embedding_jordan", "expand_jordan_coefficients",
    "open_condition_metric", "condition_term_count", "open_time_condition",
    "time_term_count", "classify_regime",
    "ConsistencyReport", "consistency_report", "illegal_solution",
    "inconsistency_witness", "projector_residual",
]
