"""Exact generalized Ramanujan sums, divisor sums and checks of their moment asymptotics."""

__version__ = "0.1.0"

from .arith import SieveTables, build_sieve, euler_phi, factorize, mobius, phi_s, sawtooth
from .divisor import sigma_pair_table, sigma_table, sigma_z_beta
from .errors import (
    CohenMomentsError,
    DomainError,
    ExactOverflowError,
    NumericIntegrityError,
    ResourceLimitError,
)
from .moments import MomentQuery, moment_brute, moment_exact
from .partial_sums import PartialSumQuery, delta_report
from .ramanujan import CohenQuery, cohen_sum_direct, cohen_sum_identity, row_sum, row_table
from .zeta import ZetaConfig, bernoulli, zeta

__all__ = [
    "CohenMomentsError",
    "CohenQuery",
    "DomainError",
    "ExactOverflowError",
    "MomentQuery",
    "NumericIntegrityError",
    "PartialSumQuery",
    "ResourceLimitError",
    "SieveTables",
    "ZetaConfig",
    "bernoulli",
    "build_sieve",
    "cohen_sum_direct",
    "cohen_sum_identity",
    "delta_report",
    "euler_phi",
    "factorize",
    "mobius",
    "moment_brute",
    "moment_exact",
    "phi_s",
    "row_sum",
    "row_table",
    "sawtooth",
    "sigma_pair_table",
    "sigma_table",
    "sigma_z_beta",
    "zeta",
]
