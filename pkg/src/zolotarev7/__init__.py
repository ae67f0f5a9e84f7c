"""Septic proper Zolotarev polynomials in arbitrary precision."""

__version__ = "0.1.0"
