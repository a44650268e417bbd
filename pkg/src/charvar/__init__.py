"""Exact invariants of complex hyperplane arrangements.

The package computes, in exact arithmetic, the degree-1 resonance variety
of an arrangement's Orlik-Solomon algebra (as linear subspaces cut out by
integer equations), the components of the first characteristic variety (as
subtori cut out by monomial equations), and point membership in the higher
characteristic varieties via a presentation matrix assembled from braid
monodromy data.
"""

__version__ = "0.1.0"
