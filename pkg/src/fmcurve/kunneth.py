"""Exact cohomology of products of one to three curves.

A class is stored sparsely by multi-degree ``(d_1, ..., d_n)`` with each
``d_i`` in ``{0, 1, 2}``.  The coefficient tensor has one axis of length
``2 g_i`` for every slot with ``d_i == 1``, in slot order; slots of degree
0 or 2 contribute the unit or the point class and carry no axis.

Decomposable classes ``x_1 (x) ... (x) x_n`` mean ``pr_1^* x_1 . ... . pr_n^* x_n``,
which fixes the Koszul signs used by :func:`cup` and :func:`swap`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Mapping, Sequence, Tuple

import numpy as np

from . import _rational as rq
from .errors import DimensionMismatchError, GenusMismatchError, ShapeError
from .lattice import standard_form

Degrees = Tuple[int, ...]

_LOWER = "abc"
_UPPER = "ABC"


@dataclass(frozen=True)
class CurveSpec:
    genus: int

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be non-negative")

    @property
    def canonical_degree(self) -> int:
        return 2 * self.genus - 2


@dataclass(frozen=True)
class ProductSpace:
    factors: Tuple[CurveSpec, ...]

    def __post_init__(self):
        factors = tuple(self.factors)
        if not 1 <= len(factors) <= 3:
            raise ValueError("products of 1 to 3 curves are supported")
        object.__setattr__(self, "factors", factors)

    @classmethod
    def of(cls, *genera: int) -> "ProductSpace":
        return cls(tuple(CurveSpec(g) for g in genera))

    @property
    def genera(self) -> Tuple[int, ...]:
        return tuple(f.genus for f in self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def sub(self, slots: Sequence[int]) -> "ProductSpace":
        return ProductSpace(tuple(self.factors[i] for i in slots))

    def tensor_shape(self, degrees: Degrees) -> Tuple[int, ...]:
        return tuple(2 * g for g, d in zip(self.genera, degrees) if d == 1)


@lru_cache(maxsize=None)
def _form_array(genus: int) -> np.ndarray:
    return _as_array(standard_form(genus))


def _as_array(data) -> np.ndarray:
    arr = np.array(data, dtype=object)
    if arr.ndim == 0:
        return np.array(rq.frac(arr.item()), dtype=object)
    return np.vectorize(rq.frac, otypes=[object])(arr) if arr.size else arr


def _zero_tensor(shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def _is_zero(t: np.ndarray) -> bool:
    return all(v == 0 for v in t.flat)


class CohClass:
    """A cohomology class on a :class:`ProductSpace` with exact coefficients.

    Treat instances as immutable; all operations return new classes.
    """

    __slots__ = ("space", "_components")

    def __init__(self, space: ProductSpace, components: Mapping[Degrees, object] = ()):
        self.space = space
        comps: Dict[Degrees, np.ndarray] = {}
        for degrees, tensor in dict(components).items():
            degrees = tuple(int(d) for d in degrees)
            if len(degrees) != len(space) or any(d not in (0, 1, 2) for d in degrees):
                raise ShapeError(f"bad multi-degree {degrees} for a {len(space)}-fold product")
            expected = space.tensor_shape(degrees)
            arr = _as_array(tensor)
            if arr.size == 0 and 0 in expected:
                continue
            if arr.shape != expected:
                raise ShapeError(f"component {degrees} needs shape {expected}, got {arr.shape}")
            if _is_zero(arr):
                continue
            if degrees in comps:
                arr = comps[degrees] + arr
            arr.setflags(write=False)
            comps[degrees] = arr
        self._components = comps

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, space: ProductSpace) -> "CohClass":
        return cls(space)

    @classmethod
    def unit(cls, space: ProductSpace) -> "CohClass":
        return cls(space, {(0,) * len(space): Fraction(1)})

    @classmethod
    def point(cls, space: ProductSpace, slot: int) -> "CohClass":
        """Pullback of the point class of factor ``slot``."""
        degrees = [0] * len(space)
        degrees[slot] = 2
        return cls(space, {tuple(degrees): Fraction(1)})

    @classmethod
    def top(cls, space: ProductSpace) -> "CohClass":
        return cls(space, {(2,) * len(space): Fraction(1)})

    @classmethod
    def h1(cls, space: ProductSpace, slot: int, k: int) -> "CohClass":
        degrees = [0] * len(space)
        degrees[slot] = 1
        vec = _zero_tensor((2 * space.genera[slot],))
        vec[k] = Fraction(1)
        return cls(space, {tuple(degrees): vec})

    # -- access -------------------------------------------------------------

    @property
    def components(self) -> Mapping[Degrees, np.ndarray]:
        return dict(self._components)

    def component(self, degrees: Degrees) -> np.ndarray:
        degrees = tuple(degrees)
        if degrees in self._components:
            return self._components[degrees]
        return _zero_tensor(self.space.tensor_shape(degrees))

    def scalar(self, degrees: Degrees) -> Fraction:
        return self.component(degrees).item()

    def is_zero(self) -> bool:
        return not self._components

    def homogeneous_degree(self) -> int:
        degs = {sum(d) for d in self._components}
        if len(degs) > 1:
            raise ValueError("class is not homogeneous")
        return degs.pop() if degs else 0

    # -- linear structure ---------------------------------------------------

    def _check(self, other: "CohClass"):
        if not isinstance(other, CohClass):
            return NotImplemented
        if other.space != self.space:
            raise DimensionMismatchError("classes live on different products")

    def __add__(self, other: "CohClass") -> "CohClass":
        self._check(other)
        comps = dict(self._components)
        for k, v in other._components.items():
            comps[k] = comps[k] + v if k in comps else v
        return CohClass(self.space, comps)

    def __neg__(self) -> "CohClass":
        return CohClass(self.space, {k: -v for k, v in self._components.items()})

    def __sub__(self, other: "CohClass") -> "CohClass":
        return self + (-other)

    def __mul__(self, c) -> "CohClass":
        c = rq.frac(c)
        return CohClass(self.space, {k: v * c for k, v in self._components.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, CohClass):
            return NotImplemented
        if other.space != self.space or self._components.keys() != other._components.keys():
            return False
        return all(np.array_equal(v, other._components[k]) for k, v in self._components.items())

    def __hash__(self):
        return hash((self.space, tuple(sorted(
            (k, tuple(v.flat)) for k, v in self._components.items()))))

    def __repr__(self) -> str:
        parts = []
        for k in sorted(self._components):
            v = self._components[k]
            body = rq.format_rational(v.item()) if v.ndim == 0 else v.tolist()
            parts.append(f"{k}: {body}")
        return f"CohClass({self.space.genera}, {{{', '.join(map(str, parts))}}})"


def _cup_components(space: ProductSpace, d: Degrees, t: np.ndarray,
                    e: Degrees, u: np.ndarray):
    new = tuple(a + b for a, b in zip(d, e))
    if any(n > 2 for n in new):
        return None
    sign = sum(d[i] * e[j] for i in range(len(d)) for j in range(i)) % 2
    t_sub = "".join(_LOWER[i] for i, a in enumerate(d) if a == 1)
    u_sub = "".join(_UPPER[i] for i, b in enumerate(e) if b == 1)
    operands = [t, u]
    subs = [t_sub, u_sub]
    out = ""
    for i, (a, b) in enumerate(zip(d, e)):
        if a == 1 and b == 1:
            operands.append(_form_array(space.genera[i]))
            subs.append(_LOWER[i] + _UPPER[i])
        elif a == 1:
            out += _LOWER[i]
        elif b == 1:
            out += _UPPER[i]
    result = np.einsum(",".join(subs) + "->" + out, *operands)
    result = np.asarray(result, dtype=object)
    return new, (-result if sign else result)


def cup(x: CohClass, y: CohClass) -> CohClass:
    if x.space != y.space:
        raise DimensionMismatchError("cup of classes on different products")
    out: Dict[Degrees, np.ndarray] = {}
    for (d, t), (e, u) in itertools.product(x._components.items(), y._components.items()):
        res = _cup_components(x.space, d, t, e, u)
        if res is None:
            continue
        key, val = res
        out[key] = out[key] + val if key in out else val
    return CohClass(x.space, out)


def _check_slots(slots: Sequence[int], n: int) -> Tuple[int, ...]:
    slots = tuple(slots)
    if any(s < 0 or s >= n for s in slots) or list(slots) != sorted(set(slots)):
        raise ShapeError(f"slot list {slots} must be strictly increasing within 0..{n - 1}")
    return slots


def pullback(x: CohClass, target: ProductSpace, keep: Sequence[int]) -> CohClass:
    """Pull ``x`` back along the projection ``target -> prod(target[keep])``."""
    keep = _check_slots(keep, len(target))
    if target.sub(keep).genera != x.space.genera:
        raise GenusMismatchError(
            f"class on genera {x.space.genera} cannot be pulled back along slots {keep} "
            f"of {target.genera}")
    out = {}
    for d, t in x._components.items():
        degrees = [0] * len(target)
        for slot, deg in zip(keep, d):
            degrees[slot] = deg
        out[tuple(degrees)] = t
    return CohClass(target, out)


def pushforward(x: CohClass, keep: Sequence[int]) -> CohClass:
    """Integrate over the slots not in ``keep``."""
    keep = _check_slots(keep, len(x.space))
    dropped = [i for i in range(len(x.space)) if i not in keep]
    target = x.space.sub(keep)
    out = {}
    for d, t in x._components.items():
        if all(d[i] == 2 for i in dropped):
            out[tuple(d[i] for i in keep)] = t
    return CohClass(target, out)


def swap(x: CohClass) -> CohClass:
    if len(x.space) != 2:
        raise ShapeError("swap needs a two-factor product")
    space = ProductSpace(x.space.factors[::-1])
    out = {}
    for (d1, d2), t in x._components.items():
        if d1 == 1 and d2 == 1:
            t = t.T
        out[(d2, d1)] = -t if (d1 * d2) % 2 else t
    return CohClass(space, out)


def diagonal_correspondence(genus: int) -> rq.Matrix:
    """Coefficient matrix of the H^1 (x) H^1 piece of the diagonal.

    A (1,1) tensor ``M`` induces ``omega -> q_*(p^* omega . M)`` with matrix
    ``(S M)^T``; the diagonal must induce the identity, hence ``M = S^{-1}``.
    """
    return rq.inverse(standard_form(genus))


def diagonal_class(genus: int) -> CohClass:
    space = ProductSpace.of(genus, genus)
    return CohClass(space, {
        (2, 0): Fraction(1),
        (0, 2): Fraction(1),
        (1, 1): diagonal_correspondence(genus),
    })


def correspondence_action(x: CohClass) -> rq.Matrix:
    """Matrix of ``omega -> q_*(p^* omega . x)`` on H^1, columns by source basis."""
    if len(x.space) != 2:
        raise ShapeError("correspondence action needs a two-factor product")
    g, g2 = x.space.genera
    src = ProductSpace.of(g)
    cols = []
    for k in range(2 * g):
        image = pushforward(cup(pullback(CohClass.h1(src, 0, k), x.space, (0,)), x), (1,))
        cols.append(tuple(image.component((1,)).flat))
    return tuple(tuple(cols[j][i] for j in range(2 * g)) for i in range(2 * g2))
