"""Equations over chains, counterexample search and the claims suite."""

from .search import Budget, check_equation, find_counterexample
from .suite import ClaimResult, Config, enumerate_finite_sums, format_human, format_machine, verify_claims_suite
from .terms import (
    EQUATIONS,
    Equation,
    EVar,
    Imp,
    Join,
    Meet,
    Mul,
    Neg,
    NOplus,
    NUplus,
    One,
    Oplus,
    Pow,
    Term,
    Uplus,
    Zero,
    equation,
    eval_term,
    parse_equation,
    parse_term,
    schema_equation,
)

__all__ = [
    "Budget", "ClaimResult", "Config", "EQUATIONS", "EVar", "Equation", "Imp", "Join", "Meet", "Mul",
    "NOplus", "NUplus", "Neg", "One", "Oplus", "Pow", "Term", "Uplus", "Zero", "check_equation",
    "enumerate_finite_sums", "equation", "eval_term", "find_counterexample", "format_human",
    "format_machine", "parse_equation", "parse_term", "schema_equation", "verify_claims_suite",
]
