"""Kazhdan–Lusztig, inverse Kazhdan–Lusztig and Z-polynomials of matroids,
and their behaviour under circuit-hyperplane relaxation."""

from .closed_forms import (
    delta_p,
    delta_q,
    delta_z,
    lambda_bound,
    sparse_paving_triple,
    uniform_P,
    uniform_Q,
    uniform_Z,
)
from .errors import KLRelaxError
from .kl import KLTriple, kl_P, kl_Q, kl_triple, kl_Z
from .lattice import flat_lattice
from .matroid import Matroid, make_matroid
from .poly import Poly

__version__ = "0.1.0"

__all__ = [
    "KLRelaxError", "KLTriple", "Matroid", "Poly",
    "delta_p", "delta_q", "delta_z", "flat_lattice", "kl_P", "kl_Q", "kl_Z",
    "kl_triple", "lambda_bound", "make_matroid", "sparse_paving_triple",
    "uniform_P", "uniform_Q", "uniform_Z",
]
