"""Python bindings for the speck C++ core."""

import json as _json

from ._speck import (
    DecomposeFirstError,
    DomainError,
    ParseError,
    PreconditionError,
    ResourceError,
    StructuralError,
    UnsupportedError,
    UsageError,
    bott_class,
    cayley,
    clifford_norm,
    comultiply,
    generator_images,
    graded_index,
    index,
    mehler_parameters,
    multiply,
    oscillator_spectrum,
    residual_table,
    unitary_retraction,
)
from ._speck import run_suite as _run_suite


def run_suite(suite, seed=20240917, tol_scale=1.0):
    """Run a verification suite; returns the report as a dict."""
    return _json.loads(_run_suite(suite, seed, tol_scale))


__all__ = [
    "DecomposeFirstError",
    "DomainError",
    "ParseError",
    "PreconditionError",
    "ResourceError",
    "StructuralError",
    "UnsupportedError",
    "UsageError",
    "bott_class",
    "cayley",
    "clifford_norm",
    "comultiply",
    "generator_images",
    "graded_index",
    "index",
    "mehler_parameters",
    "multiply",
    "oscillator_spectrum",
    "residual_table",
    "run_suite",
    "unitary_retraction",
]
