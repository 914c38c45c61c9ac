"""Central and noncentral gamma / chi-square distribution functions, their
inverses, and the error and gamma functions they are built on."""

from .asymptotic import (
    EtaFrame,
    InversionExpansion,
    coefficient_scheme,
    eta_to_lambda,
    f_gamma_series,
    gamma_frame,
    invert_expansion,
    lambda_to_eta,
    normal_frame,
)
from .central import cdf_central, inv_central, inversion_seed
from .erf import erf, erfc, erfc_scaled, inverfc, normal_cdf, normal_quantile
from .gamma import (
    QuotientCoefficients,
    StirlingCorrection,
    dterm,
    gammafun,
    gamstar,
    log_dterm,
    loggam,
    quotgamm,
    quotient_coefficients,
    stirling_S,
)
from .noncentral import bessel_ratio, cdf_noncentral, inv_noncentral, marcum_q_half
from .types import (
    ComputationStatus,
    DistributionKind,
    DomainError,
    InversionTarget,
    PoleError,
    ProbabilityPair,
    Status,
    SubcomputationError,
)

__all__ = [
    "ComputationStatus",
    "DistributionKind",
    "DomainError",
    "EtaFrame",
    "InversionExpansion",
    "InversionTarget",
    "PoleError",
    "ProbabilityPair",
    "QuotientCoefficients",
    "Status",
    "StirlingCorrection",
    "SubcomputationError",
    "bessel_ratio",
    "cdf_central",
    "cdf_noncentral",
    "coefficient_scheme",
    "dterm",
    "erf",
    "erfc",
    "erfc_scaled",
    "eta_to_lambda",
    "f_gamma_series",
    "gamma_frame",
    "gammafun",
    "gamstar",
    "inv_central",
    "inv_noncentral",
    "inverfc",
    "inversion_seed",
    "invert_expansion",
    "lambda_to_eta",
    "log_dterm",
    "loggam",
    "marcum_q_half",
    "normal_cdf",
    "normal_frame",
    "normal_quantile",
    "quotgamm",
    "quotient_coefficients",
    "stirling_S",
]
