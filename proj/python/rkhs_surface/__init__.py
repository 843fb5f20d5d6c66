"""Reproducing kernel spaces on real compact Riemann surfaces."""

from ._core import (
    DomainError,
    InvariantError,
    Phi,
    SchemaError,
    Surface,
    comparison_table_csv,
    theta,
    theta_char,
    verify,
)

__all__ = [
    "DomainError",
    "InvariantError",
    "Phi",
    "SchemaError",
    "Surface",
    "comparison_table_csv",
    "theta",
    "theta_char",
    "verify",
]
