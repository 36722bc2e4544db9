"""
Generalized Ricci solitons on three-dimensional Lie groups with
left-invariant Riemannian and Lorentzian metrics.
"""

SCHEMA_VERSION = 1
