"""Exact calculus of quadratic algebra structures on graded vector spaces.

Everything is computed over the rationals: graded spaces with named bases,
Koszul-sign bookkeeping, cyclic multilinear forms with the Pinczon bracket,
multilinear maps as Taylor coefficients of coderivations (tensor, symmetric,
shuffle-vanishing and pre-Lie flavors), concrete algebra structures with
their invariant forms and double semidirect products, and the associated
cohomologies (Hochschild, Chevalley, Harrison, pre-Lie, Pinczon) by exact
sparse linear algebra.
"""

__version__ = "0.1.0"
