"""Spectra, extremal indices and consensus rates of regular ring lattices C_N^m."""
from .core import AdmissibilityError, MatrixKind, RRLGraph, basic_properties, new_rrl
from .spectral import extremal_report, full_spectrum

__all__ = [
    "AdmissibilityError",
    "MatrixKind",
    "RRLGraph",
    "basic_properties",
    "extremal_report",
    "full_spectrum",
    "new_rrl",
]
