"""Qubit circuits with closed timelike curves under Davies thermal noise."""

from .channels import (
    CptpReport,
    DaviesParams,
    QuantumChannel,
    compose,
    davies_apply,
    davies_superoperator,
    gibbs_state,
    is_cptp,
    temperature_to_p,
)
from .deutsch import (
    CtcSolutionSet,
    DeutschResult,
    closed_form_rho_f,
    closed_form_tau,
    deutsch_output,
    fig1_solve,
    fixed_point_iterate,
    lambda_map,
    noisy_consistency_map,
    select_max_entropy,
    solve_deutsch,
    solve_fixed_point,
    unproven_solve,
)
from .errors import (
    ConvergenceError,
    CTCError,
    InfeasibleFixedPointError,
    UnsupportedAmbiguityError,
    ZeroPostselectionError,
)
from .pctc import PctcResult, l_operators, noisy_bell, pctc_output, pctc_output_via_l
from .qmat import (
    bloch_from_state,
    named_state,
    partial_trace,
    state_from_bloch,
    tensor,
    trace_distance,
    von_neumann_entropy,
)

__version__ = "0.1.0"
