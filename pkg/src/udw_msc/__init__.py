"""Maximal steered coherence of two accelerated detectors in a thermal bath.

Library layout:

* ``qmat``: dense 2x2/4x4 complex-matrix kernel.
* ``udw_state``: the stationary X-state family and its parameters.
* ``steering``: measurements, steered states, coherence, and MSC via a
  closed form and an independent numeric maximizer.
* ``lindblad``: thermal rates, the collective dissipator, fixed-step
  RK4 integration, and a null-space stationary-state solver.
* ``sweep``: parameter grids, thresholds, monotonicity, figure data.
* ``cli``: the ``udw-msc`` command-line front end.
"""

__version__ = "0.1.0"

from .lindblad import (
    LindbladParams,
    RateTriple,
    StepTooLargeError,
    Trajectory,
    evolve,
    generator,
    kossakowski,
    steady_state_numeric,
    superoperator_matrix,
    thermal_params,
    unruh_rates,
    unruh_spectral_profile,
)
from .qmat import (
    DensityReport,
    EigenSystem2,
    eigensystem2,
    kron,
    partial_trace,
    pauli,
    trace_distance,
    validate_density,
)
from .steering import (
    AngleGrid,
    MeasurementDirection,
    MscResult,
    ReferenceBasis,
    SteeredOutcome,
    UnreachableOutcomeError,
    bloch_projector,
    coherence,
    msc_closed_form,
    msc_numeric,
    msc_random_povm,
    steer,
    steered_ellipsoid,
)
from .sweep import (
    GridSpec,
    MonotonicityReport,
    SweepRow,
    asymptotic_msc,
    figure_data,
    inclusive_range,
    monotonicity_report,
    msc_grid,
    msc_point,
    threshold_temperature,
)
from .udw_state import (
    ModelParams,
    XStateCoeffs,
    acceleration_to_temperature,
    coeffs_to_density,
    delta_of_state,
    gamma_ratio,
    steady_state,
    steady_state_coeffs,
)

__all__ = [
    "__version__",
    "AngleGrid",
    "DensityReport",
    "EigenSystem2",
    "GridSpec",
    "LindbladParams",
    "MeasurementDirection",
    "ModelParams",
    "MonotonicityReport",
    "MscResult",
    "RateTriple",
    "ReferenceBasis",
    "SteeredOutcome",
    "StepTooLargeError",
    "SweepRow",
    "Trajectory",
    "UnreachableOutcomeError",
    "XStateCoeffs",
    "acceleration_to_temperature",
    "asymptotic_msc",
    "bloch_projector",
    "coeffs_to_density",
    "coherence",
    "delta_of_state",
    "eigensystem2",
    "evolve",
    "figure_data",
    "gamma_ratio",
    "generator",
    "inclusive_range",
    "kossakowski",
    "kron",
    "monotonicity_report",
    "msc_closed_form",
    "msc_grid",
    "msc_numeric",
    "msc_point",
    "msc_random_povm",
    "partial_trace",
    "pauli",
    "steady_state",
    "steady_state_coeffs",
    "steady_state_numeric",
    "steer",
    "steered_ellipsoid",
    "superoperator_matrix",
    "thermal_params",
    "threshold_temperature",
    "trace_distance",
    "unruh_rates",
    "unruh_spectral_profile",
    "validate_density",
]
