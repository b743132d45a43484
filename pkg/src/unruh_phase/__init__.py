"""Geometric phases of two-level atoms in accelerated and thermal environments."""
from .bloch import (
    BlochAngles,
    EigenSystem,
    TwoLevelState,
    angles_from_bloch,
    bloch_from_density,
    eigensystem,
)
from .condensate import (
    BogoliubovPair,
    CondensateMode,
    aai_invariant,
    energy_uncertainty,
    rindler_occupation,
    unruh_bogoliubov,
    unruh_temperature,
)
from .constants import CONSTANTS
from .dynamics import (
    ChiXi,
    DissipatorCoefficients,
    EvolutionSpec,
    chi_xi,
    rho_closed_form,
    rho_integrated,
    survival_fraction,
)
from .environment import (
    AtomicLine,
    EnvironmentSpec,
    catalog_ids,
    catalog_lookup,
    coefficients,
    rindler_kinematics,
    unruh_spectral_function,
)
from .errors import (
    DegeneratePath,
    DegenerateState,
    NotMonotone,
    OutOfRange,
    OverlapVanishes,
    PathTooCoarse,
    PhysicsDomainError,
    UnknownLine,
)
from .experiments import (
    SweepRequest,
    SweepRow,
    interferometer_report,
    thermal_sweep,
    thermometer_invert,
    unruh_sweep,
)
from .phase import (
    PhaseBreakdown,
    SampledStatePath,
    dynamical_mismatch_delta,
    geometric_phase_closed,
    geometric_phase_generic,
    pure_phase_from_path,
    total_phase,
)

__version__ = "0.1.0"
