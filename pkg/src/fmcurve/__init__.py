"""Exact numerical Fourier-Mukai calculus between smooth projective curves."""

from .fm import (
    AffinePicMap,
    CatalogEntry,
    TorelliReport,
    apply_k,
    catalog_entry,
    catalog_kernel,
    convolve,
    dual,
    is_numerical_equivalence,
    jac_map,
    left_adjoint,
    pic_map,
    right_adjoint,
    shift,
    swap_kernel,
    torelli_report,
    twist,
)
from .grr import KClassCurve, KernelClass, diagonal_kernel
from .kunneth import CohClass, CurveSpec, ProductSpace
from .lattice import JacHom, JacPoint, SymplecticLattice

__version__ = "0.1.0"

__all__ = [
    "AffinePicMap",
    "CatalogEntry",
    "CohClass",
    "CurveSpec",
    "JacHom",
    "JacPoint",
    "KClassCurve",
    "KernelClass",
    "ProductSpace",
    "SymplecticLattice",
    "TorelliReport",
    "apply_k",
    "catalog_entry",
    "catalog_kernel",
    "convolve",
    "diagonal_kernel",
    "dual",
    "is_numerical_equivalence",
    "jac_map",
    "left_adjoint",
    "pic_map",
    "right_adjoint",
    "shift",
    "swap_kernel",
    "torelli_report",
    "twist",
]
