"""Three-qubit quantum thermal transistor in common thermal environments.

Steady states of the global master equation, heat currents, amplification
factors, dark-state heat modulation and the parameter sweeps behind them.
"""

from .channels import (
    DissipationChannel,
    FrequencyAmbiguityError,
    channels_analytic,
    decompose_numeric,
    jump_operators,
    positive_frequency_part,
)
from .dynamics import (
    DriveSpec,
    IntegrationError,
    OverdeterminedError,
    SteadyStateError,
    UnderdeterminedError,
    apply_drive,
    bose_occupation,
    dissipator_superoperator,
    evolve_density_matrix,
    evolve_populations,
    rate_matrix,
    steady_state,
)
from .experiments import (
    ConfigError,
    DarkStateError,
    ModulationReport,
    PopulationCurves,
    RunRecord,
    SweepSpec,
    run_modulation,
    run_populations,
    run_sweep,
    write_sweep_csv,
)
from .model import (
    EigenSystem,
    MixingAngles,
    ParameterError,
    SecularReport,
    SystemParams,
    analytic_eigensystem,
    build_hamiltonian,
    mixing_angle,
    validate_secular,
)
from .observables import (
    AmplificationResult,
    DegenerateControlError,
    HeatCurrentTriple,
    LambdaScan,
    SingularDenominatorError,
    amplification_factor,
    closed_form_discrepancy,
    closed_form_populations,
    heat_currents,
    heat_currents_trace,
    optimize_lambda,
)

__version__ = "0.1.0"

__all__ = [
    "AmplificationResult",
    "ConfigError",
    "DarkStateError",
    "DegenerateControlError",
    "DissipationChannel",
    "DriveSpec",
    "EigenSystem",
    "FrequencyAmbiguityError",
    "HeatCurrentTriple",
    "IntegrationError",
    "LambdaScan",
    "MixingAngles",
    "ModulationReport",
    "OverdeterminedError",
    "ParameterError",
    "PopulationCurves",
    "RunRecord",
    "SecularReport",
    "SingularDenominatorError",
    "SteadyStateError",
    "SweepSpec",
    "SystemParams",
    "UnderdeterminedError",
    "amplification_factor",
    "analytic_eigensystem",
    "apply_drive",
    "bose_occupation",
    "build_hamiltonian",
    "channels_analytic",
    "closed_form_discrepancy",
    "closed_form_populations",
    "decompose_numeric",
    "dissipator_superoperator",
    "evolve_density_matrix",
    "evolve_populations",
    "heat_currents",
    "heat_currents_trace",
    "jump_operators",
    "mixing_angle",
    "optimize_lambda",
    "positive_frequency_part",
    "rate_matrix",
    "run_modulation",
    "run_populations",
    "run_sweep",
    "steady_state",
    "validate_secular",
    "write_sweep_csv",
]
