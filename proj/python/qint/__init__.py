"""Differential and path integral of real-analytic functions of a quaternionic variable."""

import json as _json

from ._core import (
    AnalyticFunction,
    DegenerateSlice,
    DomainError,
    IntegrationReport,
    MissingReference,
    ParseError,
    Path,
    QintError,
    Quaternion,
    SliceEscape,
    StepTooCoarse,
    Unsupported,
    ZeroDivisorError,
    __version__,
    antiderivative,
    convergence_study,
    decompose_delta,
    differential,
    integrate,
    integrate_slice_quadrature,
    integrate_with_branch_tracking,
    perp_quotient,
    slice_form,
    slice_point,
    sym_product_sum,
)
from ._core import run_suite as _run_suite


def run_suite(suite="default", threads=1):
    """Run the verification suite and return the check reports as dicts."""
    return _json.loads(_run_suite(suite, threads))


__all__ = [name for name in dir() if not name.startswith("_")]
