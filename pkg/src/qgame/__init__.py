"""Two-angle quantization of 2x2 bimatrix games.

An initial state entangled by gamma, two-parameter unitary strategies, and a
measurement basis entangled by delta. Payoffs come from two independent
paths: exact state simulation (scheme.payoffs_oracle) and analytic formulas
(closedform.payoff_general and its special cases), which the verification
suite cross-checks. The equilibrium module certifies epsilon-Nash profiles
on strategy grids.
"""

from .closedform import (
    BosCoefficients,
    bos_coefficients,
    payoff_case_a_i,
    payoff_case_a_ii,
    payoff_case_b_i,
    payoff_case_b_ii,
    payoff_case_c,
    payoff_case_d,
    payoff_du_maximal,
    payoff_general,
)
from .equilibrium import (
    ProfileResult,
    StrategyGrid,
    SweepRow,
    best_response,
    epsilon_nash,
    payoff_tables,
    probability_tables,
    sweep,
)
from .linalg import apply_local, inner_product, is_unitary
from .scheme import (
    GameMatrix,
    MeasurementBasis,
    PayoffPair,
    SchemeParams,
    StrategyParams,
    battle_of_sexes,
    final_state,
    flip_op,
    initial_state,
    measurement_basis,
    outcome_probabilities,
    payoffs_oracle,
    rotation_op,
    strategy_op,
)
from .verification import VerificationReport, run_verification

__version__ = "0.1.0"

__all__ = [
    "BosCoefficients",
    "GameMatrix",
    "MeasurementBasis",
    "PayoffPair",
    "ProfileResult",
    "SchemeParams",
    "StrategyGrid",
    "StrategyParams",
    "SweepRow",
    "VerificationReport",
    "apply_local",
    "battle_of_sexes",
    "best_response",
    "bos_coefficients",
    "epsilon_nash",
    "final_state",
    "flip_op",
    "initial_state",
    "inner_product",
    "is_unitary",
    "measurement_basis",
    "outcome_probabilities",
    "payoff_case_a_i",
    "payoff_case_a_ii",
    "payoff_case_b_i",
    "payoff_case_b_ii",
    "payoff_case_c",
    "payoff_case_d",
    "payoff_du_maximal",
    "payoff_general",
    "payoff_tables",
    "payoffs_oracle",
    "probability_tables",
    "rotation_op",
    "run_verification",
    "strategy_op",
    "sweep",
]
