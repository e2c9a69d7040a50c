"""Positive maps, entanglement witnesses and indecomposability certificates."""

import json

from . import _core
from ._core import (
    appendix_d3,
    apply_map,
    catalog_names,
    cd_value,
    char_poly_coeffs,
    choi_matrix,
    detector_state,
    lambda_min,
    pairing,
    partial_transpose,
    rotation_family_a,
)

__all__ = [
    "appendix_d3",
    "apply_map",
    "catalog_names",
    "cd_value",
    "certify",
    "char_poly_coeffs",
    "choi_matrix",
    "detect_cyclic",
    "detector_state",
    "lambda_min",
    "map_json",
    "pairing",
    "partial_transpose",
    "rotation_family_a",
    "run_cli",
    "terhal_witness",
]


def map_json(name, params=()):
    return json.loads(_core.map_json(name, list(params)))


def certify(name, params=()):
    """Positivity, CP, CcP and witness certificates keyed by property."""
    return json.loads(_core.certify(name, list(params)))


def detect_cyclic(alpha):
    return json.loads(_core.detect_cyclic(list(alpha)))


def terhal_witness():
    return json.loads(_core.terhal_witness())


def run_cli(*args):
    """Runs the command line in-process; returns (exit_code, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args])
