"""Finite computations behind the classification of holomorphic framed VOAs
of central charge 24: F2 linear algebra, triply even codes, quadratic spaces
over F2, module classes of sqrt(2)E8^+, Niemeier glue and Lie dimensions."""

from ._kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
