"""Desk-scale laboratory for series solutions, arithmetic certificates,
small auxiliary sections, zero-lemma rank bounds, value-distribution
measurements, independence probes, and isomonodromic family checks."""

__version__ = "0.1.0"
