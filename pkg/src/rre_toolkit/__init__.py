"""RRE Toolkit - Reduced Rank Extrapolation for fixed-point iterations."""

__version__ = "1.0.0"
__author__ = "RRE Toolkit Developer"
