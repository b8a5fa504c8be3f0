"""chshlab: two-qubit CHSH analysis.

Exact CHSH violation bounds for pure states, measurement settings that
achieve them, the Horodecki criterion for mixed states, and an independent
derivative-free optimizer that cross-checks every closed form.
"""

__version__ = "0.1.0"

from .errors import (
    ChshlabError,
    DomainError,
    NoConvergenceError,
    NotHermitianError,
    NotSymmetricError,
    NotUnitError,
    StateError,
)
from .linalg import hermitian_eigen, svd2_complex, sym3_eigen_desc
from .rng import SeededRng, rng_substream
from .states import (
    DensityMatrix,
    LocalUnitary,
    PureState,
    SchmidtForm,
    canonical_state,
    concurrence,
    correlation_matrix,
    entanglement_entropy,
    fidelity,
    partial_trace,
    purity,
    random_density,
    random_pure,
    schmidt_decompose,
)
from .bell import (
    BellSpectrum,
    MeasurementScheme,
    Observable,
    OptimalSettings,
    TSIRELSON,
    analytic_max_violation,
    bell_operator,
    bell_spectrum,
    chsh_value,
    eta_basis,
    horodecki_M,
    landau_bound,
    max_violation_pure,
    observable_from_bloch,
    optimal_settings_for,
)
from .optimize import OptResult, OptimizerConfig, local_search, maximize_chsh

__all__ = [
    "ChshlabError",
    "DomainError",
    "NoConvergenceError",
    "NotHermitianError",
    "NotSymmetricError",
    "NotUnitError",
    "StateError",
    "hermitian_eigen",
    "svd2_complex",
    "sym3_eigen_desc",
    "SeededRng",
    "rng_substream",
    "DensityMatrix",
    "LocalUnitary",
    "PureState",
    "SchmidtForm",
    "canonical_state",
    "concurrence",
    "correlation_matrix",
    "entanglement_entropy",
    "fidelity",
    "partial_trace",
    "purity",
    "random_density",
    "random_pure",
    "schmidt_decompose",
    "BellSpectrum",
    "MeasurementScheme",
    "Observable",
    "OptimalSettings",
    "TSIRELSON",
    "analytic_max_violation",
    "bell_operator",
    "bell_spectrum",
    "chsh_value",
    "eta_basis",
    "horodecki_M",
    "landau_bound",
    "max_violation_pure",
    "observable_from_bloch",
    "optimal_settings_for",
    "OptResult",
    "OptimizerConfig",
    "local_search",
    "maximize_chsh",
    "__version__",
]
