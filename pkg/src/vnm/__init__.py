"""Expected-utility theory made executable: lotteries, axiom checks,
utility elicitation, affine uniqueness, and preference-dataset fitting."""

from .lottery import (
    FLOAT,
    RATIONAL,
    Lottery,
    OutcomeSpace,
    UtilityFunction,
    degenerate,
    expected_utility,
    mix,
    new_lottery,
    new_utility,
    utility_from_mapping,
)
from .preference import (
    AxiomReport,
    Comparison,
    PreferenceOracle,
    UtilityOracle,
    check_classical_independence,
    check_independence,
    check_order_axioms,
    compare,
    probe_continuity,
)
from .oracles import RankDependentOracle, SubprocessOracle
from .claims import (
    ClaimReport,
    analytic_indifference_alpha,
    verify_claim_v,
    verify_claims_i_to_iv,
)
from .elicitation import (
    ElicitationResult,
    bisect_indifference,
    elicit_utility,
    find_extreme_degenerates,
    verify_representation,
)
from .uniqueness import AffineCheck, AffineTransform, recover_affine, verify_affine
from .dataset import (
    FitCheck,
    PrefDataset,
    RewardModel,
    ValidationReport,
    dataset_from_json,
    dataset_to_json,
    fit_reward_model,
    lotteries_equal,
    model_fits_data,
    model_from_json,
    model_to_json,
    validate_dataset,
)
from . import errors, jsonio, sampling

__all__ = [
    "AffineCheck",
    "AffineTransform",
    "AxiomReport",
    "ClaimReport",
    "Comparison",
    "ElicitationResult",
    "FLOAT",
    "FitCheck",
    "Lottery",
    "OutcomeSpace",
    "PrefDataset",
    "PreferenceOracle",
    "RATIONAL",
    "RankDependentOracle",
    "RewardModel",
    "SubprocessOracle",
    "UtilityFunction",
    "UtilityOracle",
    "ValidationReport",
    "analytic_indifference_alpha",
    "bisect_indifference",
    "check_classical_independence",
    "check_independence",
    "check_order_axioms",
    "compare",
    "dataset_from_json",
    "dataset_to_json",
    "degenerate",
    "elicit_utility",
    "errors",
    "expected_utility",
    "find_extreme_degenerates",
    "fit_reward_model",
    "jsonio",
    "lotteries_equal",
    "mix",
    "model_fits_data",
    "model_from_json",
    "model_to_json",
    "new_lottery",
    "new_utility",
    "probe_continuity",
    "recover_affine",
    "sampling",
    "utility_from_mapping",
    "validate_dataset",
    "verify_affine",
    "verify_claim_v",
    "verify_claims_i_to_iv",
    "verify_representation",
]

__version__ = "0.1.0"
