"""Symplectic lattices standing in for Jacobians.

``J(C)`` is modelled as the real torus ``H^1(C, R) / H^1(C, Z)``.  The basis is
``a_1..a_g, b_1..b_g`` and the pairing is ``E(x, y) = x^T J_g y`` with
``J_g = [[0, I], [-I, 0]]``, so ``a_i . b_j = delta_ij``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Sequence, Tuple

from . import _rational as rq
from .errors import DimensionMismatchError, PreconditionError


@lru_cache(maxsize=None)
def standard_form(genus: int) -> rq.Matrix:
    n = 2 * genus
    rows = []
    for i in range(n):
        row = [Fraction(0)] * n
        if i < genus:
            row[i + genus] = Fraction(1)
        else:
            row[i - genus] = Fraction(-1)
        rows.append(tuple(row))
    return tuple(rows)


@dataclass(frozen=True)
class SymplecticLattice:
    genus: int

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be non-negative")

    @property
    def rank(self) -> int:
        return 2 * self.genus

    @property
    def form(self) -> rq.Matrix:
        return standard_form(self.genus)

    def pairing(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
        return sum((x[i] * self.form[i][j] * y[j]
                    for i in range(self.rank) for j in range(self.rank)), Fraction(0))


@dataclass(frozen=True)
class JacHom:
    """Homomorphism ``J(source) -> J(target)``; columns index the source basis."""

    source: SymplecticLattice
    target: SymplecticLattice
    matrix: rq.Matrix

    def __post_init__(self):
        m = rq.matrix(self.matrix)
        if len(m) != self.target.rank or any(len(r) != self.source.rank for r in m):
            raise DimensionMismatchError(
                f"matrix must be {self.target.rank}x{self.source.rank}")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls, lattice: SymplecticLattice) -> "JacHom":
        return cls(lattice, lattice, rq.identity(lattice.rank))

    @classmethod
    def zero(cls, source: SymplecticLattice, target: SymplecticLattice) -> "JacHom":
        return cls(source, target, rq.zeros(target.rank, source.rank))

    def is_integral(self) -> bool:
        return rq.is_integral(self.matrix)

    def __neg__(self) -> "JacHom":
        return JacHom(self.source, self.target, rq.scale(-1, self.matrix))


@dataclass(frozen=True)
class JacPoint:
    lattice: SymplecticLattice
    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(rq.frac(c) for c in self.coords)
        if len(coords) != self.lattice.rank:
            raise DimensionMismatchError("point has wrong number of coordinates")
        # canonical representative in [0, 1)^{2g}
        object.__setattr__(self, "coords", tuple(c - math.floor(c) for c in coords))

    @classmethod
    def zero(cls, lattice: SymplecticLattice) -> "JacPoint":
        return cls(lattice, (Fraction(0),) * lattice.rank)

    def __add__(self, other: "JacPoint") -> "JacPoint":
        if other.lattice != self.lattice:
            raise DimensionMismatchError("points on different lattices")
        return JacPoint(self.lattice, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)


def compose(g2: JacHom, g1: JacHom) -> JacHom:
    """``g2 o g1``."""
    if g1.target != g2.source:
        raise DimensionMismatchError(
            f"cannot compose: genus {g1.target.genus} target vs genus {g2.source.genus} source")
    m = rq.matmul(g2.matrix, g1.matrix, g1.target.rank, g1.source.rank)
    return JacHom(g1.source, g2.target, m)


def dual_hom(phi: JacHom) -> JacHom:
    """Dual homomorphism, identified back through both principal polarizations.

    Matrix ``S_source^{-1} phi^T S_target``.
    """
    s, t = phi.source, phi.target
    phit = rq.transpose(phi.matrix, s.rank)
    m = rq.matmul(rq.inverse(s.form), phit, s.rank, t.rank)
    m = rq.matmul(m, t.form, t.rank, t.rank)
    return JacHom(t, s, m)


def preserves_polarization(phi: JacHom) -> bool:
    if not phi.is_integral():
        raise PreconditionError("polarization check needs an integral homomorphism")
    s, t = phi.source, phi.target
    pulled = rq.matmul(rq.transpose(phi.matrix, s.rank), t.form, t.rank, t.rank)
    pulled = rq.matmul(pulled, phi.matrix, t.rank, s.rank)
    return pulled == s.form


def is_unimodular_iso(phi: JacHom) -> bool:
    if phi.source.rank != phi.target.rank or not phi.is_integral():
        return False
    return abs(rq.det(phi.matrix)) == 1


def apply_point(phi: JacHom, x: JacPoint) -> JacPoint:
    if not phi.is_integral():
        raise PreconditionError("only integral homomorphisms act on the torus")
    if x.lattice != phi.source:
        raise DimensionMismatchError("point does not lie on the source lattice")
    return JacPoint(phi.target, rq.matvec(phi.matrix, x.coords))
