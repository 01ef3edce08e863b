"""Exact combinatorics of involution-split root systems — positive systems
and their dominance order, restricted chambers, wall cones and convergence
domains — plus a floating-point laboratory for rank-one matrix integrals."""

from __future__ import annotations

from .chambers import (
    ChamberComplex,
    WeylElement,
    build_from_chamber,
    chamber_of,
    chambers_q,
    conjugate,
    conjugate_parabolic,
    faq_plus,
    p_sigma_a_q,
    script_w,
    weyl_group,
    weyl_group_restricted,
)
from .cones import (
    Domain,
    Piece,
    RationalCone,
    delta_exponent,
    gamma_cone,
    gamma_dual,
    omega_hat,
    omega_pq,
    omega_q,
    rho,
    rho_p,
    rho_ph,
    upsilon,
    upsilon_hat,
)
from .datum import (
    RestrictedRootSystem,
    SymmetricRootDatum,
    ValidationReport,
    build_doubled,
    build_split,
    restricted_system,
    validate,
)
from .datumio import format_datum, load_datum, parse_datum, save_datum
from .fixtures import build_fixture, fixture_names, load_fixture
from .parabolics import (
    ParabolicSet,
    adjacent,
    chain,
    enumerate_parabolics,
    enumerate_q_extreme,
    hasse,
    is_q_extreme,
    maximal_elements,
    minimal_elements,
    minus_set,
    opposite,
    preceq,
    tau_set,
)
from .rankone import (
    AsymptoticReport,
    CFunctionValue,
    HFunctionReport,
    RankOneBlock,
    asymptotic_td2,
    block_integral,
    c_partial,
    convergence_region,
    gaussian_prediction,
    h_function_checks,
    iwasawa_h,
    make_block,
    scalar_exponent,
)
from .verify import LemmaCertificate, certificates_to_json, run_suite, suite_ok

__version__ = "0.1.0"

__all__ = [
    "AsymptoticReport",
    "CFunctionValue",
    "ChamberComplex",
    "Domain",
    "HFunctionReport",
    "LemmaCertificate",
    "ParabolicSet",
    "Piece",
    "RankOneBlock",
    "RationalCone",
    "RestrictedRootSystem",
    "SymmetricRootDatum",
    "ValidationReport",
    "WeylElement",
    "adjacent",
    "asymptotic_td2",
    "block_integral",
    "build_doubled",
    "build_fixture",
    "build_from_chamber",
    "build_split",
    "c_partial",
    "certificates_to_json",
    "chain",
    "chamber_of",
    "chambers_q",
    "conjugate",
    "conjugate_parabolic",
    "convergence_region",
    "delta_exponent",
    "enumerate_parabolics",
    "enumerate_q_extreme",
    "faq_plus",
    "fixture_names",
    "format_datum",
    "gamma_cone",
    "gamma_dual",
    "gaussian_prediction",
    "h_function_checks",
    "hasse",
    "is_q_extreme",
    "iwasawa_h",
    "load_datum",
    "load_fixture",
    "make_block",
    "maximal_elements",
    "minimal_elements",
    "minus_set",
    "omega_hat",
    "omega_pq",
    "omega_q",
    "opposite",
    "p_sigma_a_q",
    "parse_datum",
    "preceq",
    "restricted_system",
    "rho",
    "rho_p",
    "rho_ph",
    "run_suite",
    "save_datum",
    "scalar_exponent",
    "script_w",
    "suite_ok",
    "tau_set",
    "upsilon",
    "upsilon_hat",
    "validate",
    "weyl_group",
    "weyl_group_restricted",
]
