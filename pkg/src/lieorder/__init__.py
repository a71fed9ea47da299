"""Conjugacy classes of finite-order elements in the exceptional Lie groups.

Counts N(G, m), the number of conjugacy classes of elements with x**m == 1,
and N(G, m, s), the number of those with s distinct eigenvalues in the
smallest faithful representation, for G in {G2, F4, E6, E7, E8}.  All
arithmetic is exact.
"""

__version__ = "0.1.0"

GROUPS = ("G2", "F4", "E6", "E7", "E8")
