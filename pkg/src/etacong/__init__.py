"""Truncated q-series arithmetic and numerical certification of partition
congruences modulo powers of 11."""

from .series_core import (
    EtaQuotientSpec,
    ExactIntegers,
    IntegralityError,
    Mod11Power,
    NonUnitError,
    PrecisionError,
    QSeries,
    RingMismatchError,
    equal_on_common_window,
    eta_quotient,
    euler_product,
)
from .partition_oracle import OracleSequence, euler_p, naive_coeffs, valuation_11
from .congruence_engine import (
    ALPHA_GRID,
    ALPHA_NEGATIVE_LAST_COLUMN,
    ALPHA_ROW_LABELS,
    DELTA_GRID,
    THETA_GRID,
    A,
    AlphaTable,
    CongruenceStatement,
    DeltaTable,
    GuardError,
    ThetaTable,
    alpha,
    alpha_table_regenerate,
    corollary_bound_check,
    delta,
    lambda_seq,
    mu_closed,
    mu_seq,
    n_canonical,
    n_raw,
    n_raw_closed,
    omega,
    order_bound,
    pole_basis,
    statement,
    theta,
    theta_table_regenerate,
)
from .verifier import (
    COEFF_BUDGET,
    ConfigError,
    ResourceError,
    TowerResult,
    VerificationReport,
    build_tower,
    crosscheck_product_form,
    phi_power,
    up_identity_selftest,
    verify_theorem,
)

__version__ = "0.1.0"

__all__ = [
    "A",
    "ALPHA_GRID",
    "ALPHA_NEGATIVE_LAST_COLUMN",
    "ALPHA_ROW_LABELS",
    "AlphaTable",
    "COEFF_BUDGET",
    "CongruenceStatement",
    "ConfigError",
    "DELTA_GRID",
    "DeltaTable",
    "EtaQuotientSpec",
    "ExactIntegers",
    "GuardError",
    "IntegralityError",
    "Mod11Power",
    "NonUnitError",
    "OracleSequence",
    "PrecisionError",
    "QSeries",
    "ResourceError",
    "RingMismatchError",
    "THETA_GRID",
    "ThetaTable",
    "TowerResult",
    "VerificationReport",
    "alpha",
    "alpha_table_regenerate",
    "build_tower",
    "corollary_bound_check",
    "crosscheck_product_form",
    "delta",
    "equal_on_common_window",
    "eta_quotient",
    "euler_p",
    "euler_product",
    "lambda_seq",
    "mu_closed",
    "mu_seq",
    "n_canonical",
    "n_raw",
    "n_raw_closed",
    "naive_coeffs",
    "omega",
    "order_bound",
    "phi_power",
    "pole_basis",
    "statement",
    "theta",
    "theta_table_regenerate",
    "up_identity_selftest",
    "valuation_11",
    "verify_theorem",
    "__version__",
]
