"""Angular-momentum structure of photons emitted by atomic dipole transitions.

Subpackages cover the truncated Fock-space operator algebra, the total-AM
and SU(3) generator sets, radial spin/OAM density profiles with zone
diagnostics, Weisskopf-Wigner decay of the AM expectation, and the
entanglement of counter-propagating photon twins.
"""

from .angular import (
    AlgebraReport,
    AmOperatorTriple,
    DensityOperator,
    Su3GeneratorSet,
    am_variances,
    density_commutator_check,
    density_operator,
    j_operators,
    su3_generators,
    three_mode_space,
    verify_su2,
)
from .decay import (
    DecayCurve,
    DecayParams,
    calibration_constant,
    conservation_check,
    excited_amplitude,
    photon_amplitude,
    sz_curve,
    sz_expectation,
)
from .fock import (
    FockSpace,
    ModeLabel,
    OperatorMatrix,
    StateVector,
    annihilation,
    build_space,
    commutator,
    creation,
    expectation,
    fock_state,
    number_operator,
    occupation_projector,
    total_number_operator,
    vacuum_state,
    variance,
)
from .radial import (
    CavityConfig,
    NormalizedMode,
    QuadratureError,
    RadialProfile,
    ZoneReport,
    f_oam,
    f_spin,
    normalize_mode,
    radial_profile,
    spherical_bessel,
    wave_zone_discrepancy,
    zone_report,
)
from .twins import (
    AtomFieldSpace,
    EntanglementOptimum,
    ParityBasis,
    RadiatedState,
    SelectionRuleReport,
    TwoQutritState,
    atom_field_space,
    entanglement_measure,
    interaction_hamiltonian,
    local_expectations,
    maximize_entanglement,
    parity_basis,
    selection_rule_check,
)

__version__ = "0.1.0"
