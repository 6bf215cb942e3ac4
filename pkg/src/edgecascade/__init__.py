"""Edge-density expansions of Gaussian and Laguerre random matrix ensembles.

Subpackages and modules:

* ``exactcore``  exact polynomials over Q[A, T, Ã] and linear solving
* ``basisalg``   Airy/Bessel basis modules and differential operators
* ``opcatalog``  operators and scaling maps per edge case
* ``cascade``    correction tables, residuals, ansatz solving, relations
* ``transforms`` Laplace-side recursion, saddle expansion, hypergeometric tables
* ``numerics``   special functions, finite-N densities, convergence studies
* ``cli``        the ``edgecascade`` command
"""
__version__ = "0.1.0"
