"""hok: exact-arithmetic toolkit for finite reductive group combinatorics.

Subpackages cover classified root data and regular-reduction thresholds, Weyl
group (F-)conjugacy, two-row symbol combinatorics with their pairing blocks,
the subset sign-matrix rank lemma, and brute-force harmonic analysis on small
GL_n models.  All arithmetic is exact (rationals / small cyclotomic fields).
"""

__version__ = "0.1.0"
