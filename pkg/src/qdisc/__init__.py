"""Radial harmonic analysis on the quantum disc.

Submodules:

``qspecial``   q-Pochhammer symbols, q-Gamma, basic hypergeometric series, c-function
``lattice``    Jackson calculus on ``q^(-2Z+)`` and the radial Laplacian
``eigen``      eigenfunctions, Green kernel, resolvent, Poisson solution
``transform``  spectral density and the forward/inverse spectral transform
``uqsl2``      principal-series action of U_q sl2 on Laurent polynomials
``cli``        the ``qdisc`` command line tool
"""
from . import eigen, lattice, qspecial, transform, uqsl2
from .errors import *  # noqa: F401,F403
from .lattice import Lattice, LatticeFunction
from .qspecial import Deformation, SeriesTolerance, SpectralParameter
from .transform import SpectralFunction, SpectralGrid

__version__ = "0.1.0"
