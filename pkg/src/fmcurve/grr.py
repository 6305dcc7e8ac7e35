"""Chern characters, relative Todd classes and the Grothendieck-Riemann-Roch push.

Kernel classes on ``C x C'`` are kept in compact form::

    ch(e) = r + a.A + b.B + Gamma + s.[pt x pt']

with ``A = p^*[pt]``, ``B = q^*[pt']`` and ``Gamma`` the ``H^1 (x) H^1`` piece of
``c_1``.  ``s`` is ``ch_2 = (c_1^2 - 2 c_2) / 2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

import numpy as np

from . import _rational as rq
from .errors import ShapeError
from .kunneth import (
    CohClass,
    CurveSpec,
    ProductSpace,
    cup,
    diagonal_class,
    pullback,
    pushforward,
)

_KERNEL_DEGREES = {(0, 0), (2, 0), (0, 2), (1, 1), (2, 2)}


@dataclass(frozen=True)
class KClassCurve:
    """Numerical K-class on a curve: rank, degree and a Jacobian vector."""

    curve: CurveSpec
    rank: Fraction
    degree: Fraction
    jac: Tuple[Fraction, ...] = None

    def __post_init__(self):
        object.__setattr__(self, "rank", rq.frac(self.rank))
        object.__setattr__(self, "degree", rq.frac(self.degree))
        jac = (0,) * (2 * self.curve.genus) if self.jac is None else self.jac
        jac = tuple(rq.frac(v) for v in jac)
        if len(jac) != 2 * self.curve.genus:
            raise ShapeError(f"jac vector must have length {2 * self.curve.genus}")
        object.__setattr__(self, "jac", jac)

    @classmethod
    def structure_sheaf(cls, genus: int) -> "KClassCurve":
        return cls(CurveSpec(genus), 1, 0)

    def __add__(self, other: "KClassCurve") -> "KClassCurve":
        if other.curve != self.curve:
            raise ShapeError("K-classes on different curves")
        return KClassCurve(self.curve, self.rank + other.rank, self.degree + other.degree,
                           tuple(x + y for x, y in zip(self.jac, other.jac)))


@dataclass(frozen=True)
class KernelClass:
    genus_source: int
    genus_target: int
    rank: Fraction
    a: Fraction
    b: Fraction
    gamma: rq.Matrix
    ch2: Fraction

    def __post_init__(self):
        if self.genus_source < 0 or self.genus_target < 0:
            raise ValueError("genera must be non-negative")
        for name in ("rank", "a", "b", "ch2"):
            object.__setattr__(self, name, rq.frac(getattr(self, name)))
        rows, cols = 2 * self.genus_source, 2 * self.genus_target
        gamma = rq.zeros(rows, cols) if self.gamma is None else rq.matrix(self.gamma)
        if len(gamma) != rows or any(len(r) != cols for r in gamma):
            raise ShapeError(f"gamma must be {rows}x{cols}")
        object.__setattr__(self, "gamma", gamma)

    @classmethod
    def build(cls, genus_source: int, genus_target: int, rank=0, a=0, b=0,
              gamma=None, ch2=0) -> "KernelClass":
        return cls(genus_source, genus_target, rank, a, b, gamma, ch2)

    @classmethod
    def zero(cls, genus_source: int, genus_target: int) -> "KernelClass":
        return cls.build(genus_source, genus_target)

    @property
    def genera(self) -> Tuple[int, int]:
        return self.genus_source, self.genus_target

    def _same_shape(self, other: "KernelClass"):
        if other.genera != self.genera:
            raise ShapeError("kernels on different products")

    def __add__(self, other: "KernelClass") -> "KernelClass":
        self._same_shape(other)
        return KernelClass(*self.genera, self.rank + other.rank, self.a + other.a,
                           self.b + other.b, rq.add(self.gamma, other.gamma),
                           self.ch2 + other.ch2)

    def __mul__(self, c) -> "KernelClass":
        c = rq.frac(c)
        return KernelClass(*self.genera, c * self.rank, c * self.a, c * self.b,
                           rq.scale(c, self.gamma), c * self.ch2)

    __rmul__ = __mul__

    def __neg__(self) -> "KernelClass":
        return self * -1


def chern_character_curve(f: KClassCurve) -> CohClass:
    space = ProductSpace((f.curve,))
    return CohClass(space, {(0,): f.rank, (1,): np.array(f.jac, dtype=object),
                            (2,): f.degree})


def k_class_from_coh(x: CohClass) -> KClassCurve:
    if len(x.space) != 1:
        raise ShapeError("expected a class on a single curve")
    return KClassCurve(x.space.factors[0], x.scalar((0,)), x.scalar((2,)),
                       tuple(x.component((1,)).flat))


def kernel_to_coh(e: KernelClass) -> CohClass:
    space = ProductSpace.of(*e.genera)
    return CohClass(space, {
        (0, 0): e.rank,
        (2, 0): e.a,
        (0, 2): e.b,
        (1, 1): e.gamma,
        (2, 2): e.ch2,
    })


def coh_to_kernel(x: CohClass) -> KernelClass:
    if len(x.space) != 2:
        raise ShapeError("kernel classes live on a product of two curves")
    stray = set(x.components) - _KERNEL_DEGREES
    if stray:
        raise ShapeError(f"class has components outside the kernel range: {sorted(stray)}")
    g, g2 = x.space.genera
    gamma = x.component((1, 1))
    rows = tuple(tuple(row) for row in gamma.reshape(2 * g, 2 * g2).tolist())
    return KernelClass(g, g2, x.scalar((0, 0)), x.scalar((2, 0)), x.scalar((0, 2)),
                       rows if g and g2 else None, x.scalar((2, 2)))


def relative_todd(space: ProductSpace, keep: Sequence[int]) -> CohClass:
    """Todd class of the relative tangent bundle of ``space -> space[keep]``."""
    td = CohClass.unit(space)
    for i, curve in enumerate(space.factors):
        if i in keep:
            continue
        factor = CohClass.unit(space) - (curve.genus - 1) * CohClass.point(space, i)
        td = cup(td, factor)
    return td


def grr_push(ch: CohClass, keep: Sequence[int]) -> CohClass:
    """``ch(f_! x) = f_*(ch(x) . Td(f))`` along the projection onto ``keep``."""
    return pushforward(cup(ch, relative_todd(ch.space, keep)), keep)


def diagonal_kernel(genus: int) -> KernelClass:
    """Class of the structure sheaf of the diagonal, via closed-immersion GRR.

    ``ch(O_Delta) = delta_*(Td C) . Td(C x C)^{-1}``.
    """
    curve = ProductSpace.of(genus)
    surface = ProductSpace.of(genus, genus)
    delta = diagonal_class(genus)
    one_minus_g = 1 - genus

    td_curve = CohClass.unit(curve) + one_minus_g * CohClass.point(curve, 0)
    # delta_* x = p^* x . [Delta] by the projection formula, since delta^* p^* = id
    pushed = cup(pullback(td_curve, surface, (0,)), delta)

    unit = CohClass.unit(surface)
    td_inv = cup(unit - one_minus_g * CohClass.point(surface, 0),
                 unit - one_minus_g * CohClass.point(surface, 1))
    return coh_to_kernel(cup(pushed, td_inv))
