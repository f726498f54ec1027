"""Specialization at characters, spectra, gap certificates and torus scans."""

from charvariety.certificate import CertificateCheck, gap_certificate, verify_certificate
from charvariety.character import Character, grid_characters, torsion_characters
from charvariety.roots import roots
from charvariety.scan import CoverGapReport, ScanReport, cover_gap, rho_scan, scan_csv, write_plot, write_scan_csv
from charvariety.spectrum import SpectrumReport, power_radius, specialize_matrix, specialize_upoly, spectrum

__all__ = [
    "CertificateCheck",
    "Character",
    "CoverGapReport",
    "ScanReport",
    "SpectrumReport",
    "cover_gap",
    "gap_certificate",
    "grid_characters",
    "power_radius",
    "rho_scan",
    "roots",
    "scan_csv",
    "specialize_matrix",
    "specialize_upoly",
    "spectrum",
    "torsion_characters",
    "verify_certificate",
    "write_plot",
    "write_scan_csv",
]
