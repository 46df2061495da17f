"""Numerical toolkit for the harmonic Dirichlet space on the unit circle.

Subpackages cover grid/Fourier representations (circle_fn), norm and
energy functionals (norms), closed circle sets (geometry), equilibrium
measures and capacities (capacity), outer functions (outer), and the
cyclicity certificate experiments (certify).  The O(M^2) quadrature loops
live in _kernels with a compiled core and a NumPy fallback.
"""

from ._kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = ["KERNEL_BACKEND", "__version__"]
