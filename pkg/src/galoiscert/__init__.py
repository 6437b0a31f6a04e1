"""Conditional bounds and Frobenius-data certificates for surjectivity of
mod-ell Galois representations of non-CM elliptic curves over Q."""

from .bounds import isogeny_bound, serre_bound, verify_isogeny_constants
from .curve import WeierstrassCurve, parse_curve, profile, quadratic_twist
from .galois_image import Mode, certify
from .isogeny import distinguishing_prime, twist_pair
from .pipeline import RunConfig, run_report
from .reduction import TraceCache, TraceTable, ap, batch_traces

__version__ = "0.1.0"

__all__ = [
    "Mode",
    "RunConfig",
    "TraceCache",
    "TraceTable",
    "WeierstrassCurve",
    "ap",
    "batch_traces",
    "certify",
    "distinguishing_prime",
    "isogeny_bound",
    "parse_curve",
    "profile",
    "quadratic_twist",
    "run_report",
    "serre_bound",
    "twist_pair",
    "verify_isogeny_constants",
]
