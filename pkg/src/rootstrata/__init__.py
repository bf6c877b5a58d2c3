"""Closed root subsystems, pseudo-Levi combinatorics and torsion-point strata."""

__version__ = "0.1.0"
