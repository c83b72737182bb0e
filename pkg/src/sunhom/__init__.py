"""Exact multiphoton interference at the symmetric N-port beam splitter."""

from .bs_core import ExponentMatrix, afsr, build_sn, fsr
from .cyclo import (
    CycloPoly,
    CyclotomicPolynomial,
    as_rational_integer,
    cyclotomic_polynomial,
    eval_numeric,
    from_power,
    is_zero,
    reduce,
)
from .dist import SuperpositionInput, cnl_check, output_distribution
from .errors import (
    BudgetExceededError,
    DegenerateEstimateError,
    InvalidOrderError,
    NotCoincidentError,
    OrderMismatchError,
    ResourceGuardError,
    SunHomError,
    TransitionError,
    VerificationError,
)
from .kmatrix import (
    GroupReport,
    amplitude_by_ksum,
    count_weak_compositions,
    enumerate_k,
    group_analysis,
    jkn_estimate,
    k_coefficient,
    k_exponent,
)
from .lambda_matrix import Transition, build_lambda, build_lambda_prime
from .permanent import (
    amplitude_normalized,
    amplitude_unnormalized,
    permanent_naive,
    permanent_ryser,
)
from .symmetry import (
    ScanRow,
    Status,
    Verdict,
    all_odd_zero_applies,
    cnl_family,
    diagonal_gehom_zero,
    p_sym,
    p_tilde,
    procedure_lambda_triple,
    scan_gehom,
    verdict,
)

__version__ = "0.1.0"
