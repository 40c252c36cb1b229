"""E-polynomials of SL(n, C) and PGL(n, C) character varieties of free groups, n = 2, 3."""

__version__ = "0.1.0"
