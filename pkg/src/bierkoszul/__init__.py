"""Gorenstein algebras from pure flag simplicial complexes.

Construct the whiskered Bier ball of a complex, present the Nagata
idealization of its canonical module, and test the combinatorial avatars of
its homological properties: quadraticity, k-step linearity, Koszulness,
quadratic Groebner bases, and the gamma-vector identities.
"""

__version__ = "0.1.0"
