"""Exact Tor tables and the theta / eta invariants over graded complete intersections."""

from .checks import certify, isolated_singularity_check, regular_sequence_check
from .invariants import ab_identity_check, choose_E, eta, fit_even_odd, gen_fun, hilbert_series, koszul_residual
from .linalg import FieldSpec
from .modules import direct_sum, free_presentation, presentation, quotient_module, residue_field
from .resolution import resolve
from .ring import RingDescriptor
from .tor import rigidity_scan, tor_table

__all__ = [
    "FieldSpec", "RingDescriptor", "presentation", "quotient_module", "residue_field", "free_presentation",
    "direct_sum", "resolve", "tor_table", "rigidity_scan", "hilbert_series", "fit_even_odd", "eta", "gen_fun",
    "choose_E", "koszul_residual", "ab_identity_check", "certify", "regular_sequence_check",
    "isolated_singularity_check",
]
