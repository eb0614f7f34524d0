"""Discord-like quantum-correlation quantifiers: projective, weak and symmetric."""

from .info import (
    classical_mutual_info_I,
    classical_mutual_info_J,
    mutual_info_gap,
    quantum_mutual_info,
    shannon_entropy,
    von_neumann_entropy,
)
from .linalg import PVM, DensityMatrix, DimensionError, ValidationError, embed, hermitian_eigenvalues, kron, partial_trace
from .maps import (
    BlochAngles,
    ZeroProbabilityError,
    collapse,
    dichotomic_channel,
    dichotomic_operators,
    monitoring,
    monitoring_power,
    pvm_from_bloch,
    stinespring_dilation,
    trace_out_ancilla,
    unrevealed_projective,
    weak_collapse,
)
from .optimize import OptimizerConfig, minimize_bloch, minimize_bloch_pair
from .quantifiers import (
    QuantifierResult,
    UnsupportedDimensionError,
    classical_correlations,
    conditional_entropy_term,
    discord,
    discord_fixed,
    interpretation_decomposition,
    super_discord,
    sym_discord,
    sym_weak_discord,
    weak_collapse_discord,
    weak_discord,
    weak_discord_fixed,
)
from .states import bell, product, quantum_classical, random_density, werner_singlet, werner_wqd_closed_form

__version__ = "0.1.0"
