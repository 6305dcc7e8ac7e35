"""Randomised invariant suites shared by the test-suite and ``fmcurve selftest``.

Each suite takes a :class:`random.Random` and a trial count and returns a
list of failure descriptions (empty on success).
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Callable, Dict, List

from . import _rational as rq
from .fm import (
    apply_k,
    apply_k_engine,
    catalog_entry,
    convolve,
    dual,
    jac_map,
    left_adjoint,
    pic_map,
    pic_map_engine,
    right_adjoint,
    shift,
    swap_kernel,
    torelli_report,
    twist,
)
from .grr import KClassCurve, KernelClass, coh_to_kernel, diagonal_kernel, kernel_to_coh
from .kernelfile import emit_kernel, parse_kernel_text
from .kunneth import CohClass, CurveSpec, ProductSpace, cup, pullback, pushforward, swap
from .lattice import (
    JacHom,
    JacPoint,
    SymplecticLattice,
    apply_point,
    compose,
    dual_hom,
    is_unimodular_iso,
    preserves_polarization,
)

DEFAULT_SEED = 20080313
MAX_GENUS = 3
ENTRY_RANGE = (-3, 3)


# -- random generators ----------------------------------------------------------

def _entry(rng: random.Random) -> int:
    return rng.randint(*ENTRY_RANGE)


def random_kernel(rng: random.Random, g: int, g2: int) -> KernelClass:
    gamma = [[_entry(rng) for _ in range(2 * g2)] for _ in range(2 * g)]
    return KernelClass(g, g2, _entry(rng), _entry(rng), _entry(rng), gamma, _entry(rng))


def random_k_class(rng: random.Random, g: int) -> KClassCurve:
    return KClassCurve(CurveSpec(g), _entry(rng), _entry(rng),
                       [_entry(rng) for _ in range(2 * g)])


def random_jac_hom(rng: random.Random, g: int, g2: int) -> JacHom:
    matrix = [[_entry(rng) for _ in range(2 * g)] for _ in range(2 * g2)]
    return JacHom(SymplecticLattice(g), SymplecticLattice(g2), matrix)


def random_symplectic(rng: random.Random, g: int, steps: int = 6) -> JacHom:
    """Product of random symplectic transvections ``x -> x + c E(v, x) v``."""
    lat = SymplecticLattice(g)
    phi = JacHom.identity(lat)
    n = lat.rank
    for _ in range(steps if n else 0):
        v = [rng.randint(-1, 1) for _ in range(n)]
        c = rng.choice((-1, 1))
        ev = rq.matvec(rq.transpose(lat.form, n), v)  # row vector v^T S
        t = tuple(tuple(Fraction(int(i == j)) + c * v[i] * ev[j] for j in range(n))
                  for i in range(n))
        phi = compose(JacHom(lat, lat, t), phi)
    return phi


def random_coh_class(rng: random.Random, space: ProductSpace, density: float = 0.7) -> CohClass:
    comps = {}
    for degrees in itertools.product((0, 1, 2), repeat=len(space)):
        if rng.random() > density:
            continue
        shape = space.tensor_shape(degrees)
        count = 1
        for s in shape:
            count *= s
        flat = [Fraction(_entry(rng)) for _ in range(count)]
        comps[degrees] = _reshape(flat, shape)
    return CohClass(space, comps)


def random_homogeneous(rng: random.Random, space: ProductSpace, total: int) -> CohClass:
    x = random_coh_class(rng, space, density=1.0)
    return CohClass(space, {d: t for d, t in x.components.items() if sum(d) == total})


def _reshape(flat, shape):
    if not shape:
        return flat[0]
    step = len(flat) // shape[0] if shape[0] else 0
    return [_reshape(flat[i * step:(i + 1) * step], shape[1:]) for i in range(shape[0])]


def random_space(rng: random.Random, factors: int) -> ProductSpace:
    return ProductSpace.of(*(rng.randint(0, MAX_GENUS) for _ in range(factors)))


def random_genera(rng: random.Random, n: int) -> List[int]:
    return [rng.randint(0, MAX_GENUS) for _ in range(n)]


# -- suites ----------------------------------------------------------------------

def suite_lattice(rng: random.Random, trials: int) -> List[str]:
    bad = []
    for t in range(trials):
        g0, g1, g2 = random_genera(rng, 3)
        phi, psi = random_jac_hom(rng, g0, g1), random_jac_hom(rng, g1, g2)
        if dual_hom(dual_hom(phi)) != phi:
            bad.append(f"lattice[{t}]: dual is not an involution")
        if dual_hom(compose(psi, phi)) != compose(dual_hom(phi), dual_hom(psi)):
            bad.append(f"lattice[{t}]: dual does not reverse composition")
        s1, s2 = random_symplectic(rng, g0), random_symplectic(rng, g0)
        if not (preserves_polarization(s1) and preserves_polarization(compose(s2, s1))):
            bad.append(f"lattice[{t}]: symplectic products lose the polarization")
        if not is_unimodular_iso(s1):
            bad.append(f"lattice[{t}]: symplectic matrix not unimodular")
        lat = SymplecticLattice(g0)
        square = random_jac_hom(rng, g0, g0)
        if preserves_polarization(square) != (compose(dual_hom(square), square)
                                              == JacHom.identity(lat)):
            bad.append(f"lattice[{t}]: polarization test disagrees with dual o phi = id")
        x = JacPoint(lat, [Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(lat.rank)])
        y = JacPoint(lat, [Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(lat.rank)])
        target = random_jac_hom(rng, g0, g1)
        if apply_point(target, x + y) != apply_point(target, x) + apply_point(target, y):
            bad.append(f"lattice[{t}]: point action is not additive")
    return bad


def suite_kunneth(rng: random.Random, trials: int) -> List[str]:
    bad = []
    for t in range(trials):
        n = 2 + t % 2
        space = random_space(rng, n)
        x, y, z = (random_coh_class(rng, space) for _ in range(3))
        if cup(cup(x, y), z) != cup(x, cup(y, z)):
            bad.append(f"kunneth[{t}]: cup not associative on {space.genera}")
        if cup(CohClass.unit(space), x) != x:
            bad.append(f"kunneth[{t}]: unit law fails")
        p, q = rng.randint(0, 2 * n), rng.randint(0, 2 * n)
        hx, hy = random_homogeneous(rng, space, p), random_homogeneous(rng, space, q)
        if cup(hx, hy) != (-1) ** (p * q) * cup(hy, hx):
            bad.append(f"kunneth[{t}]: graded commutativity fails in degrees {p},{q}")
        keep = tuple(sorted(rng.sample(range(n), rng.randint(1, n - 1))))
        base = random_coh_class(rng, space.sub(keep))
        lhs = pushforward(cup(pullback(base, space, keep), x), keep)
        rhs = cup(base, pushforward(x, keep))
        if lhs != rhs:
            bad.append(f"kunneth[{t}]: projection formula fails for keep={keep}")
        other = random_coh_class(rng, space.sub(keep))
        if pullback(cup(base, other), space, keep) != cup(pullback(base, space, keep),
                                                         pullback(other, space, keep)):
            bad.append(f"kunneth[{t}]: pullback is not multiplicative")
        if not pushforward(pullback(base, space, keep), keep).is_zero():
            bad.append(f"kunneth[{t}]: push o pull is nonzero")
        if n == 2 and swap(swap(x)) != x:
            bad.append(f"kunneth[{t}]: swap is not an involution")
    return bad


def suite_grr(rng: random.Random, trials: int) -> List[str]:
    bad = []
    for g in range(6):
        delta = diagonal_kernel(g)
        if (delta.rank, delta.a, delta.b, delta.ch2) != (0, 1, 1, g - 1):
            bad.append(f"grr: diagonal_kernel({g}) has wrong numerical data")
        if jac_map(delta) != JacHom.identity(SymplecticLattice(g)):
            bad.append(f"grr: diagonal_kernel({g}) does not act as the identity on J")
    for t in range(trials):
        g, g2 = random_genera(rng, 2)
        e = random_kernel(rng, g, g2)
        if coh_to_kernel(kernel_to_coh(e)) != e:
            bad.append(f"grr[{t}]: kernel round-trip fails")
        f = random_k_class(rng, g)
        if apply_k(e, f) != apply_k_engine(e, f):
            bad.append(f"grr[{t}]: closed-form apply_k disagrees with the engine")
        if pic_map(e) != pic_map_engine(e):
            bad.append(f"grr[{t}]: closed-form pic_map disagrees with the engine")
        if apply_k(diagonal_kernel(g), f) != f:
            bad.append(f"grr[{t}]: diagonal kernel does not fix a K-class")
        if parse_kernel_text(emit_kernel(e)) != e:
            bad.append(f"grr[{t}]: kernel JSON round-trip fails")
    return bad


def composite_pic(e1: KernelClass, e2: KernelClass):
    """Degree part of the Picard map induced by ``convolve(e1, e2)``, from the factors.

    The rank of ``Phi_{e1}(M)`` feeds the second translation, so affine
    composition only applies when that rank is identically 1.
    """
    p1, p2 = pic_map(e1), pic_map(e2)
    slope = p1.slope_degree * p2.slope_degree + e1.rank * p2.translation_degree
    offset = (p2.slope_degree * p1.translation_degree
              + p2.translation_degree * (e1.a - (e1.genus_source - 1) * e1.rank))
    return slope, offset


def suite_functoriality(rng: random.Random, trials: int) -> List[str]:
    bad = []
    for t in range(trials):
        g0, g1, g2, g3 = random_genera(rng, 4)
        e1, e2, e3 = random_kernel(rng, g0, g1), random_kernel(rng, g1, g2), random_kernel(rng, g2, g3)
        c12 = convolve(e1, e2)
        f = random_k_class(rng, g0)
        if apply_k(c12, f) != apply_k(e2, apply_k(e1, f)):
            bad.append(f"functoriality[{t}]: apply_k does not compose")
        if jac_map(c12) != compose(jac_map(e2), jac_map(e1)):
            bad.append(f"functoriality[{t}]: jac_map does not compose")
        pic = pic_map(c12)
        if (pic.slope_degree, pic.translation_degree) != composite_pic(e1, e2):
            bad.append(f"functoriality[{t}]: pic_map degree part does not compose")
        line_preserving = KernelClass(g0, g1, 0, 1, e1.b, e1.gamma, e1.ch2)
        if pic_map(convolve(line_preserving, e2)) != pic_map(line_preserving).then(pic_map(e2)):
            bad.append(f"functoriality[{t}]: affine composition fails for a line-preserving kernel")
        if convolve(c12, e3) != convolve(e1, convolve(e2, e3)):
            bad.append(f"functoriality[{t}]: convolution is not associative")
        if convolve(diagonal_kernel(g0), e1) != e1 or convolve(e1, diagonal_kernel(g1)) != e1:
            bad.append(f"functoriality[{t}]: diagonal is not a two-sided unit")
    return bad


def suite_kernel_algebra(rng: random.Random, trials: int) -> List[str]:
    bad = []
    for t in range(trials):
        g, g2 = random_genera(rng, 2)
        e = random_kernel(rng, g, g2)
        phi = jac_map(e)
        if jac_map(shift(e)) != -phi or jac_map(dual(e)) != -phi:
            bad.append(f"algebra[{t}]: shift/dual do not negate the Jacobian map")
        if jac_map(twist(e, _entry(rng), _entry(rng))) != phi:
            bad.append(f"algebra[{t}]: twist changes the Jacobian map")
        ps, p = pic_map(shift(e)), pic_map(e)
        if (ps.slope_degree, ps.translation_degree, ps.jac_linear) != (
                -p.slope_degree, -p.translation_degree, -p.jac_linear):
            bad.append(f"algebra[{t}]: shift does not negate the Picard map")
        if shift(shift(e)) != e or swap_kernel(swap_kernel(e)) != e:
            bad.append(f"algebra[{t}]: shift/swap not involutions")
        dphi = dual_hom(phi)
        if jac_map(left_adjoint(e)) != dphi or jac_map(right_adjoint(e)) != dphi:
            bad.append(f"algebra[{t}]: adjoints do not induce the dual map")
        if jac_map(swap_kernel(e)) != dphi:
            bad.append(f"algebra[{t}]: swapped kernel does not induce the dual map")
        x, y = random_k_class(rng, g), random_k_class(rng, g)
        mx = KClassCurve(x.curve, 1, 0, x.jac)
        my = KClassCurve(y.curve, 1, 0, y.jac)
        dm, jm = p.apply(0, mx.jac)
        dn, jn = p.apply(0, my.jac)
        diff = rq.matvec(p.jac_linear.matrix, [u - v for u, v in zip(mx.jac, my.jac)])
        if dm != dn or tuple(u - v for u, v in zip(jm, jn)) != diff:
            bad.append(f"algebra[{t}]: Picard map depends on M beyond its linear term")
    return bad


def suite_theorem(rng: random.Random, trials: int) -> List[str]:
    bad = []
    for t in range(trials):
        g, g2 = random_genera(rng, 2)
        e = random_kernel(rng, g, g2)
        report = torelli_report(e)
        if report.numerical_equivalence and not (report.jac_is_isomorphism
                                                 and report.jac_preserves_polarization):
            bad.append(f"theorem[{t}]: numerical equivalence without polarized isomorphism")
    for entry in catalog_sweep():
        report = torelli_report(entry.kernel)
        if not report.consistent or report.numerical_equivalence != entry.is_equivalence:
            bad.append(f"theorem: catalog kernel {entry.name} disagrees with ground truth")
    return bad


def catalog_sweep(genera=(1, 2, 3)):
    """Catalog kernels over the given genera, with ground-truth flags."""
    from .fm import CatalogEntry

    entries = []
    for g in genera:
        entries.append(catalog_entry("diagonal", genus=g))
        entries.append(catalog_entry("diagonal_shift", genus=g))
        entries.append(catalog_entry("diagonal_dual", genus=g))
        entries.append(catalog_entry("diagonal_twist", genus=g, d_source=2, d_target=-1))
        entries.append(catalog_entry("diagonal_double", genus=g))
        entries.append(catalog_entry("point_sheaf", genus=g))
        entries.append(catalog_entry("zero", genus=g))
    if 1 in genera:
        entries.append(catalog_entry("poincare"))
        p = entries[-1].kernel
        entries.append(CatalogEntry("poincare_dual", dual(p), True))
        entries.append(CatalogEntry("poincare_shift", shift(p), True))
    return entries


SUITES: Dict[str, Callable[[random.Random, int], List[str]]] = {
    "lattice": suite_lattice,
    "kunneth": suite_kunneth,
    "grr": suite_grr,
    "functoriality": suite_functoriality,
    "kernel_algebra": suite_kernel_algebra,
    "theorem": suite_theorem,
}


def run_all(trials: int = 100, seed: int = DEFAULT_SEED) -> Dict[str, List[str]]:
    """Run every suite; each gets its own RNG derived from ``seed`` and its name."""
    results = {}
    for name, suite in SUITES.items():
        rng = random.Random(f"{seed}:{name}")
        results[name] = suite(rng, trials)
    return results
