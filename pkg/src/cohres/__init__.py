"""cohres: exact accounting of a coherent energy reservoir under repeated use.

A finite ladder reservoir in a uniform phase superposition can drive coherent
single-qubit gates.  Each qubit alone looks perfectly reusable -- identical
output state every time -- but the joint record of all prepared qubits is
correlated, and those correlations carry the cost: discrimination bounds,
asymmetry budgets, and the repeatability error all expose it exactly.
"""

from .reservoir import (
    LaurentCoeffs,
    ParameterError,
    ReservoirState,
    WindowOverflowError,
    apply_shift,
    laurent_expectation,
    make_eta,
    reservoir_overlap,
    shift_overlap,
)
from .channels import (
    BranchState,
    CapacityError,
    DENSE_QUBIT_CAP,
    HermitianMatrix,
    QubitGate,
    WeightClass,
    apply_VU,
    as_density_matrix,
    delta_expectation_invariance_check,
    delta_trace,
    joint_qubit_state,
    lambda_channel,
    phi_channel,
    second_use_marginal_check,
    sequential_prepare,
    weight_class_prepare,
)
from .correlations import (
    CollapseReport,
    SequenceStats,
    conditional_collapse_demo,
    p_count_exact,
    p_seq_approx,
    p_seq_exact,
    product_state_stats,
    sequence_stats,
)
from .discrimination import (
    DiscriminationReport,
    exact_report,
    fidelity,
    helstrom_error,
    naive_report,
    per_copy_fidelity,
    single_use_output,
    trace_distance,
)
from .wigner import WignerTable, wigner_d_half_pi
from .asymmetry import (
    AsymmetryReport,
    EntropyDecomposition,
    TwirlSpec,
    asymmetry_approx,
    asymmetry_dense,
    asymmetry_exact_formula,
    asymmetry_report,
    asymmetry_upper_bound,
    entropy_decomposition,
    gamma_multiplicity,
    spectrum_for_length,
    twirl_dense,
    von_neumann_entropy,
)
from .repeatability import (
    RepeatabilityResult,
    repeatability_result,
    single_qubit_marginals,
    xi_matrix,
    xi_trace_norm,
    xi_trace_norm_approx,
)

__version__ = "0.1.0"
