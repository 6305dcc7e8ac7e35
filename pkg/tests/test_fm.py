import random
from fractions import Fraction

import pytest

import oracle
from fmcurve import _rational as rq
from fmcurve.errors import FMCurveError, GenusMismatchError
from fmcurve.fm import (
    apply_k,
    apply_k_engine,
    catalog_entry,
    catalog_kernel,
    convolve,
    dual,
    is_numerical_equivalence,
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
from fmcurve.grr import KClassCurve, KernelClass, diagonal_kernel
from fmcurve.kunneth import CurveSpec
from fmcurve.lattice import JacHom, SymplecticLattice, compose, dual_hom, standard_form
from fmcurve.selftest import composite_pic, random_k_class, random_kernel

GAMMA1 = diagonal_kernel(1).gamma
POINCARE = KernelClass(1, 1, 1, 0, 0, GAMMA1, -1)


def k(g, r, d, jac=None):
    return KClassCurve(CurveSpec(g), r, d, jac)


# -- apply_k ----------------------------------------------------------------------

@pytest.mark.parametrize("g", range(6))
def test_diagonal_is_identity_on_k(g, rng):
    for _ in range(5):
        f = random_k_class(rng, g)
        assert apply_k(diagonal_kernel(g), f) == f


def test_poincare_k_map():
    assert apply_k(POINCARE, k(1, 1, 0)) == k(1, 0, -1)
    # independent monomial expansion agrees
    assert oracle.apply_k(POINCARE, 1, 0, [0, 0])[:2] == (0, -1)
    for r, d in [(0, 1), (2, 5), (-3, 4)]:
        assert apply_k(POINCARE, k(1, r, d)) == k(1, d, -r)


def test_zero_kernel_k_map(rng):
    f = random_k_class(rng, 2)
    assert apply_k(KernelClass.zero(2, 3), f) == k(3, 0, 0)


def test_apply_k_genus_mismatch():
    with pytest.raises(GenusMismatchError):
        apply_k(diagonal_kernel(2), k(1, 1, 0))


@pytest.mark.parametrize("seed", range(30))
def test_apply_k_closed_form_matches_oracles(seed):
    r = random.Random(seed)
    g, h = r.randint(0, 3), r.randint(0, 3)
    e, f = random_kernel(r, g, h), random_k_class(r, g)
    out = apply_k(e, f)
    assert out == apply_k_engine(e, f)
    rank, degree, jac = oracle.apply_k(e, f.rank, f.degree, f.jac)
    assert (out.rank, out.degree, out.jac) == (rank, degree, tuple(jac))


# -- pic_map / jac_map --------------------------------------------------------------

@pytest.mark.parametrize("g", range(5))
def test_pic_map_of_diagonal(g):
    p = pic_map(diagonal_kernel(g))
    assert (p.slope_degree, p.translation_degree) == (1, 0)
    assert p.jac_linear == JacHom.identity(SymplecticLattice(g))


def test_pic_map_example_degree_shift():
    p = pic_map(KernelClass.build(2, 2, rank=1, b=1))
    assert [p.apply(m, [0] * 4)[0] for m in (0, 1, 5)] == [-1, 0, 4]
    assert p == pic_map_engine(KernelClass.build(2, 2, rank=1, b=1))


def test_pic_map_agrees_with_k_map_on_line_bundles(rng):
    for _ in range(20):
        g, h = rng.randint(0, 3), rng.randint(0, 3)
        e = random_kernel(rng, g, h)
        m = rng.randint(-4, 4)
        x = [rng.randint(-3, 3) for _ in range(2 * g)]
        degree, jac = pic_map(e).apply(m, x)
        out = apply_k(e, k(g, 1, m, x))
        assert (degree, jac) == (out.degree, out.jac)


def test_shift_negates_pic_map(rng):
    e = random_kernel(rng, 2, 1)
    p, q = pic_map(e), pic_map(shift(e))
    assert (q.slope_degree, q.translation_degree, q.jac_linear) == (
        -p.slope_degree, -p.translation_degree, -p.jac_linear)


@pytest.mark.parametrize("seed", range(20))
def test_jac_map_closed_form(seed):
    # engine column evaluation equals -gamma^T S_source
    r = random.Random(seed)
    g, h = r.randint(0, 3), r.randint(0, 3)
    e = random_kernel(r, g, h)
    expected = rq.scale(-1, rq.matmul(rq.transpose(e.gamma, 2 * h), standard_form(g), 2 * g, 2 * g))
    assert jac_map(e).matrix == expected


def test_jac_map_ignores_everything_but_gamma():
    e = KernelClass.build(2, 1, rank=3, a=-2, b=7, ch2=Fraction(1, 3))
    assert jac_map(e) == JacHom.zero(SymplecticLattice(2), SymplecticLattice(1))
    assert jac_map(diagonal_kernel(3)) == JacHom.identity(SymplecticLattice(3))


def test_integral_gamma_gives_integral_jac(rng):
    assert jac_map(random_kernel(rng, 3, 2)).is_integral()


# -- kernel algebra ----------------------------------------------------------------

def test_shift_dual_twist_examples(rng):
    e = random_kernel(rng, 2, 3)
    assert shift(shift(e)) == e
    assert dual(POINCARE) == KernelClass(1, 1, 1, 0, 0, rq.scale(-1, GAMMA1), -1)
    assert twist(KernelClass.build(2, 2, rank=1), 2, 3) == KernelClass.build(2, 2, 1, 2, 3, None, 6)


@pytest.mark.parametrize("seed", range(10))
def test_twist_matches_engine_multiplication(seed):
    # ch(e (x) p^*F (x) q^*F') = ch(e) . (1 + dF A)(1 + dF' B)
    from fmcurve.grr import coh_to_kernel, kernel_to_coh
    from fmcurve.kunneth import CohClass, cup

    r = random.Random(seed)
    e = random_kernel(r, r.randint(0, 3), r.randint(0, 3))
    ds, dt = r.randint(-3, 3), r.randint(-3, 3)
    x = kernel_to_coh(e)
    s = x.space
    line = cup(CohClass.unit(s) + ds * CohClass.point(s, 0), CohClass.unit(s) + dt * CohClass.point(s, 1))
    assert twist(e, ds, dt) == coh_to_kernel(cup(x, line))


@pytest.mark.parametrize("seed", range(15))
def test_remark_laws(seed):
    r = random.Random(seed)
    e = random_kernel(r, r.randint(0, 3), r.randint(0, 3))
    phi = jac_map(e)
    assert jac_map(shift(e)) == -phi
    assert jac_map(dual(e)) == -phi
    assert jac_map(twist(e, r.randint(-3, 3), r.randint(-3, 3))) == phi


def test_swap_kernel_examples(rng):
    for g in range(4):
        assert swap_kernel(diagonal_kernel(g)) == diagonal_kernel(g)
    assert swap_kernel(KernelClass.build(2, 3, 0, 2, 5, None, 1)) == KernelClass.build(3, 2, 0, 5, 2, None, 1)
    e = random_kernel(rng, 2, 1)
    assert swap_kernel(swap_kernel(e)) == e
    assert jac_map(swap_kernel(e)) == dual_hom(jac_map(e))


def test_left_adjoint_of_poincare():
    assert left_adjoint(POINCARE) == KernelClass(1, 1, -1, 0, 0, GAMMA1, 1)
    assert convolve(POINCARE, left_adjoint(POINCARE)) == diagonal_kernel(1)


@pytest.mark.parametrize("g", range(4))
def test_adjoints_of_diagonal(g):
    d = diagonal_kernel(g)
    assert left_adjoint(d) == d == right_adjoint(d)
    assert convolve(left_adjoint(d), d) == d


@pytest.mark.parametrize("seed", range(15))
def test_adjoints_induce_dual(seed):
    r = random.Random(seed)
    e = random_kernel(r, r.randint(0, 3), r.randint(0, 3))
    dphi = dual_hom(jac_map(e))
    assert jac_map(left_adjoint(e)) == dphi == jac_map(right_adjoint(e))


# -- convolution --------------------------------------------------------------------

@pytest.mark.parametrize("seed", range(15))
def test_diagonal_is_unit_for_convolution(seed):
    r = random.Random(seed)
    g, h = r.randint(0, 3), r.randint(0, 3)
    e = random_kernel(r, g, h)
    assert convolve(diagonal_kernel(g), e) == e
    assert convolve(e, diagonal_kernel(h)) == e


def test_poincare_square():
    sq = convolve(POINCARE, POINCARE)
    for r, d in [(1, 0), (0, 1), (3, -2)]:
        assert apply_k(sq, k(1, r, d)) == k(1, -r, -d)


def test_convolve_zero_and_mismatch(rng):
    e = random_kernel(rng, 2, 1)
    assert convolve(KernelClass.zero(3, 2), e) == KernelClass.zero(3, 1)
    with pytest.raises(GenusMismatchError):
        convolve(e, e)


@pytest.mark.parametrize("seed", range(15))
def test_convolve_matches_monomial_oracle(seed):
    r = random.Random(seed)
    g = [r.randint(0, 2) for _ in range(3)]
    e1, e2 = random_kernel(r, g[0], g[1]), random_kernel(r, g[1], g[2])
    expected = oracle.kernel_monomials(convolve(e1, e2))
    assert oracle.convolve(e1, e2) == expected


@pytest.mark.parametrize("seed", range(15))
def test_functoriality(seed):
    r = random.Random(seed)
    g = [r.randint(0, 3) for _ in range(4)]
    e1, e2, e3 = (random_kernel(r, g[i], g[i + 1]) for i in range(3))
    c = convolve(e1, e2)
    f = random_k_class(r, g[0])
    assert apply_k(c, f) == apply_k(e2, apply_k(e1, f))
    assert jac_map(c) == compose(jac_map(e2), jac_map(e1))
    assert convolve(c, e3) == convolve(e1, convolve(e2, e3))
    p = pic_map(c)
    assert (p.slope_degree, p.translation_degree) == composite_pic(e1, e2)


@pytest.mark.parametrize("seed", range(15))
def test_affine_composition_for_line_preserving_kernels(seed):
    r = random.Random(seed)
    g = [r.randint(0, 3) for _ in range(3)]
    e1 = random_kernel(r, g[0], g[1])
    e1 = KernelClass(g[0], g[1], 0, 1, e1.b, e1.gamma, e1.ch2)
    e2 = random_kernel(r, g[1], g[2])
    assert pic_map(convolve(e1, e2)) == pic_map(e1).then(pic_map(e2))


def test_affine_composition_fails_in_general():
    # rank-one kernel followed by a pure ch2 kernel: the first output has rank 1
    # for every input degree, which the second translation multiplies
    e1, e2 = KernelClass.build(1, 1, rank=1), KernelClass.build(1, 1, ch2=1)
    p = pic_map(convolve(e1, e2))
    q = pic_map(e1).then(pic_map(e2))
    assert (p.slope_degree, p.translation_degree) == (1, 0)
    assert (q.slope_degree, q.translation_degree) == (0, 1)


# -- equivalence and the theorem ---------------------------------------------------

@pytest.mark.parametrize("g", range(6))
def test_diagonal_is_numerical_equivalence(g):
    assert is_numerical_equivalence(diagonal_kernel(g))


def test_equivalence_examples():
    assert is_numerical_equivalence(POINCARE)
    assert not is_numerical_equivalence(KernelClass.build(2, 2, b=1))


def test_torelli_report_examples():
    full = torelli_report(diagonal_kernel(2))
    assert full.as_dict() == {"numerical_equivalence": True, "jac_is_isomorphism": True,
                              "jac_preserves_polarization": True, "consistent": True}
    for e in (2 * diagonal_kernel(2), KernelClass.build(2, 2, b=1)):
        rep = torelli_report(e)
        assert (rep.numerical_equivalence, rep.jac_is_isomorphism,
                rep.jac_preserves_polarization, rep.consistent) == (False, False, False, True)


def test_torelli_report_total_on_odd_shapes():
    rep = torelli_report(KernelClass.build(1, 2, gamma=[[Fraction(1, 2)] * 4, [0] * 4]))
    assert not rep.jac_is_isomorphism and not rep.jac_preserves_polarization


def test_genus_zero_non_equivalences_are_inconsistent():
    # J(P^1) = 0: every kernel has a trivially polarized iso on Jacobians
    for name in ("zero", "point_sheaf", "diagonal_double"):
        rep = torelli_report(catalog_kernel(name, genus=0))
        assert rep.jac_is_isomorphism and rep.jac_preserves_polarization
        assert not rep.numerical_equivalence and not rep.consistent


def test_identity_jac_does_not_force_equivalence():
    e = KernelClass(1, 1, 0, 0, 0, GAMMA1, 0)
    rep = torelli_report(e)
    assert rep.jac_is_isomorphism and rep.jac_preserves_polarization
    assert not rep.numerical_equivalence


# -- catalog ------------------------------------------------------------------------

def test_catalog_examples():
    assert catalog_kernel("diagonal", genus=3) == KernelClass(
        3, 3, 0, 1, 1, diagonal_kernel(3).gamma, 2)
    p = catalog_entry("poincare")
    assert p.kernel == POINCARE and p.is_equivalence
    ps = catalog_entry("point_sheaf", genus=2, genus_target=1)
    assert ps.kernel == KernelClass.build(2, 1, b=1) and not ps.is_equivalence
    assert catalog_kernel("zero", genus=1) == KernelClass.zero(1, 1)
    assert catalog_kernel("diagonal_shift", genus=1) == shift(diagonal_kernel(1))
    assert catalog_kernel("diagonal_twist", genus=2, d_source=1, d_target=1) == twist(
        diagonal_kernel(2), 1, 1)


def test_catalog_errors():
    with pytest.raises(FMCurveError):
        catalog_kernel("nope", genus=1)
    with pytest.raises(FMCurveError):
        catalog_kernel("poincare", genus=2)
    with pytest.raises(FMCurveError):
        catalog_kernel("diagonal", genus=1, genus_target=2)
