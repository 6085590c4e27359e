"""
Saturation Lab
==============
Exact constructions, closed-form counts and brute-force certificates for weak and
strong saturation of complete d-partite d-uniform hypergraphs, together with the
multi-partite Two Families bound that governs them.
"""

__version__ = "1.0.0"
__author__ = "Saturation Lab"
