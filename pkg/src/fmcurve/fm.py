"""Fourier-Mukai calculus on numerical kernel classes between curves.

Convention: ``convolve(e1, e2)`` is the kernel of ``Phi_{e2} o Phi_{e1}``
(``e1`` on ``C x C'``, ``e2`` on ``C' x C''``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Tuple

from . import _rational as rq
from .errors import GenusMismatchError, FMCurveError
from .grr import (
    KClassCurve,
    KernelClass,
    chern_character_curve,
    coh_to_kernel,
    diagonal_kernel,
    grr_push,
    k_class_from_coh,
    kernel_to_coh,
)
from .kunneth import CurveSpec, ProductSpace, correspondence_action, cup, pullback, swap
from .lattice import (
    JacHom,
    SymplecticLattice,
    compose,
    is_unimodular_iso,
    preserves_polarization,
)


# -- induced maps ----------------------------------------------------------

def _check_source(e: KernelClass, f: KClassCurve):
    if f.curve.genus != e.genus_source:
        raise GenusMismatchError(
            f"K-class on genus {f.curve.genus} fed to kernel with source genus {e.genus_source}")


def apply_k(e: KernelClass, f: KClassCurve) -> KClassCurve:
    """``f -> q_!(p^* f (x) e)`` in closed form."""
    _check_source(e, f)
    g1 = e.genus_source - 1
    rank = e.a * f.rank + e.rank * f.degree - g1 * e.rank * f.rank
    degree = e.ch2 * f.rank + e.b * f.degree - g1 * e.b * f.rank
    jac = rq.matvec(jac_map(e).matrix, f.jac)
    return KClassCurve(CurveSpec(e.genus_target), rank, degree, jac)


def apply_k_engine(e: KernelClass, f: KClassCurve) -> KClassCurve:
    """Same map as :func:`apply_k`, evaluated through the full GRR engine."""
    _check_source(e, f)
    space = ProductSpace.of(*e.genera)
    pulled = pullback(chern_character_curve(f), space, (0,))
    return k_class_from_coh(grr_push(cup(pulled, kernel_to_coh(e)), (1,)))


def jac_map(e: KernelClass) -> JacHom:
    """Jacobian map ``M -> q_*(p^*(M - O_C) . c_1(e))``; only ``gamma`` matters."""
    matrix = correspondence_action(kernel_to_coh(e))
    return JacHom(SymplecticLattice(e.genus_source), SymplecticLattice(e.genus_target), matrix)


@dataclass(frozen=True)
class AffinePicMap:
    """Affine map on rational Picard groups, split into degree and Jacobian parts."""

    slope_degree: Fraction
    jac_linear: JacHom
    translation_degree: Fraction

    def apply(self, degree, jac) -> Tuple[Fraction, Tuple[Fraction, ...]]:
        degree = rq.frac(degree)
        jac = tuple(rq.frac(v) for v in jac)
        return (self.slope_degree * degree + self.translation_degree,
                rq.matvec(self.jac_linear.matrix, jac))

    def then(self, other: "AffinePicMap") -> "AffinePicMap":
        """``other o self`` as affine maps."""
        return AffinePicMap(
            other.slope_degree * self.slope_degree,
            compose(other.jac_linear, self.jac_linear),
            other.slope_degree * self.translation_degree + other.translation_degree,
        )


def pic_map(e: KernelClass) -> AffinePicMap:
    return AffinePicMap(e.b, jac_map(e), e.ch2 - (e.genus_source - 1) * e.b)


def pic_map_engine(e: KernelClass) -> AffinePicMap:
    """Read the affine Picard map off the engine's action on line-bundle classes."""
    curve = CurveSpec(e.genus_source)
    at_zero = apply_k_engine(e, KClassCurve(curve, 1, 0))
    at_one = apply_k_engine(e, KClassCurve(curve, 1, 1))
    cols = []
    for k in range(2 * e.genus_source):
        x = [0] * (2 * e.genus_source)
        x[k] = 1
        cols.append(apply_k_engine(e, KClassCurve(curve, 1, 0, x)).jac)
    n = 2 * e.genus_target
    matrix = tuple(tuple(c[i] - at_zero.jac[i] for c in cols) for i in range(n))
    return AffinePicMap(
        at_one.degree - at_zero.degree,
        JacHom(SymplecticLattice(e.genus_source), SymplecticLattice(e.genus_target), matrix),
        at_zero.degree,
    )


# -- kernel algebra ----------------------------------------------------------

def shift(e: KernelClass) -> KernelClass:
    return -e


def dual(e: KernelClass) -> KernelClass:
    return KernelClass(*e.genera, e.rank, -e.a, -e.b, rq.scale(-1, e.gamma), e.ch2)


def twist(e: KernelClass, d_source, d_target) -> KernelClass:
    """Tensor with ``p^*F (x) q^*F'`` for line bundles of the given degrees."""
    ds, dt = rq.frac(d_source), rq.frac(d_target)
    return KernelClass(
        *e.genera,
        e.rank,
        e.a + e.rank * ds,
        e.b + e.rank * dt,
        e.gamma,
        e.ch2 + e.a * dt + e.b * ds + e.rank * ds * dt,
    )


def swap_kernel(e: KernelClass) -> KernelClass:
    return coh_to_kernel(swap(kernel_to_coh(e)))


def left_adjoint(e: KernelClass) -> KernelClass:
    """Kernel of the left adjoint, ``E^v (x) q^*K_{C'} [1]`` on ``C' x C``."""
    k_target = 2 * e.genus_target - 2
    return swap_kernel(shift(twist(dual(e), 0, k_target)))


def right_adjoint(e: KernelClass) -> KernelClass:
    """Kernel of the right adjoint, ``E^v (x) p^*K_C [1]`` on ``C' x C``."""
    k_source = 2 * e.genus_source - 2
    return swap_kernel(shift(twist(dual(e), k_source, 0)))


def convolve(e1: KernelClass, e2: KernelClass) -> KernelClass:
    """Class of ``pi_13!(pi_12^* e1 (x) pi_23^* e2)`` on ``C x C''``."""
    if e1.genus_target != e2.genus_source:
        raise GenusMismatchError(
            f"cannot convolve: middle genera {e1.genus_target} and {e2.genus_source}")
    space = ProductSpace.of(e1.genus_source, e1.genus_target, e2.genus_target)
    x = pullback(kernel_to_coh(e1), space, (0, 1))
    y = pullback(kernel_to_coh(e2), space, (1, 2))
    return coh_to_kernel(grr_push(cup(x, y), (0, 2)))


# -- equivalence checks --------------------------------------------------------

def is_numerical_equivalence(e: KernelClass) -> bool:
    """Both adjoints invert ``e`` at the level of kernel classes."""
    if convolve(e, left_adjoint(e)) != diagonal_kernel(e.genus_source):
        return False
    return convolve(right_adjoint(e), e) == diagonal_kernel(e.genus_target)


@dataclass(frozen=True)
class TorelliReport:
    numerical_equivalence: bool
    jac_is_isomorphism: bool
    jac_preserves_polarization: bool

    @property
    def consistent(self) -> bool:
        return self.numerical_equivalence == (
            self.jac_is_isomorphism and self.jac_preserves_polarization)

    def as_dict(self) -> Dict[str, bool]:
        return {
            "numerical_equivalence": self.numerical_equivalence,
            "jac_is_isomorphism": self.jac_is_isomorphism,
            "jac_preserves_polarization": self.jac_preserves_polarization,
            "consistent": self.consistent,
        }


def _safe_polarization(phi: JacHom) -> bool:
    if phi.source.rank != phi.target.rank or not phi.is_integral():
        return False
    return preserves_polarization(phi)


def torelli_report(e: KernelClass) -> TorelliReport:
    phi = jac_map(e)
    return TorelliReport(
        is_numerical_equivalence(e),
        is_unimodular_iso(phi),
        _safe_polarization(phi),
    )


# -- catalog --------------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    name: str
    kernel: KernelClass
    is_equivalence: bool


def _diagonal(genus: int) -> Tuple[KernelClass, bool]:
    return diagonal_kernel(genus), True


def _diagonal_twist(genus: int, d_source=0, d_target=0) -> Tuple[KernelClass, bool]:
    return twist(diagonal_kernel(genus), d_source, d_target), True


def _diagonal_shift(genus: int) -> Tuple[KernelClass, bool]:
    return shift(diagonal_kernel(genus)), True


def _diagonal_dual(genus: int) -> Tuple[KernelClass, bool]:
    return dual(diagonal_kernel(genus)), True


def _diagonal_double(genus: int) -> Tuple[KernelClass, bool]:
    return 2 * diagonal_kernel(genus), False


def _poincare(genus: int = 1) -> Tuple[KernelClass, bool]:
    if genus != 1:
        raise FMCurveError("the Poincare-type kernel is only defined for genus 1")
    delta = diagonal_kernel(1)
    return KernelClass(1, 1, 1, 0, 0, delta.gamma, -1), True


def _point_sheaf(genus: int, genus_target: int | None = None) -> Tuple[KernelClass, bool]:
    gt = genus if genus_target is None else genus_target
    return KernelClass.build(genus, gt, b=1), False


def _zero(genus: int, genus_target: int | None = None) -> Tuple[KernelClass, bool]:
    gt = genus if genus_target is None else genus_target
    return KernelClass.zero(genus, gt), False


CATALOG: Dict[str, Callable[..., Tuple[KernelClass, bool]]] = {
    "diagonal": _diagonal,
    "diagonal_twist": _diagonal_twist,
    "diagonal_shift": _diagonal_shift,
    "diagonal_dual": _diagonal_dual,
    "diagonal_double": _diagonal_double,
    "poincare": _poincare,
    "point_sheaf": _point_sheaf,
    "zero": _zero,
}


def catalog_entry(name: str, **params) -> CatalogEntry:
    try:
        builder = CATALOG[name]
    except KeyError:
        raise FMCurveError(f"unknown catalog kernel {name!r}; known: {sorted(CATALOG)}") from None
    try:
        kernel, is_equivalence = builder(**params)
    except TypeError as exc:
        raise FMCurveError(f"bad parameters for {name!r}: {exc}") from None
    return CatalogEntry(name, kernel, is_equivalence)


def catalog_kernel(name: str, **params) -> KernelClass:
    return catalog_entry(name, **params).kernel
