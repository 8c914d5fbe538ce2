"""Bundle ring constructors: projective, ordered pairs, planes, unordered pairs."""

import math
import random

import pytest

from tcbundles import (
    BundleError,
    BundleSpec,
    Coeffs,
    GradingError,
    KField,
    PolyRing,
    Polynomial,
    PPolyTable,
    Presentation,
    Strategy,
    feder_ring,
    free_presentation,
    gaussian_binomial_two,
    grassmann_ring,
    make_bundle,
    p_polynomial,
    point_presentation,
    projective_ring,
    projective_x_classes,
    q_tilde_ring,
    reduce_mod2,
    trivial_bundle,
)
from tcbundles.ringquot import _monomials_of_degree

from oracles import gaussian_binomial_series


def rp_base(m: int) -> Presentation:
    ring = PolyRing(Coeffs.F2, [("x", 1)])
    return Presentation(
        ring, [ring.parse(f"x^{m + 1}")], Strategy.MONIC_TOWER
    ).complete()


def generic_base(n: int, coeffs: Coeffs = Coeffs.F2, d: int = 1) -> Presentation:
    gens = [(f"w{i}", i * d) for i in range(1, n + 2)]
    return free_presentation(coeffs, gens)


def generic_bundle(field: KField, n: int, coeffs: Coeffs = Coeffs.F2) -> BundleSpec:
    base = generic_base(n, coeffs, field.d)
    return make_bundle(field, n + 1, base, {i: f"w{i}" for i in range(1, n + 2)})


# -- BundleSpec validation -----------------------------------------------------


def test_field_tags_and_degrees():
    assert KField.R.d == 1 and KField.C.d == 2 and KField.H.d == 4
    assert KField.from_tag("C") is KField.C
    with pytest.raises(BundleError):
        KField.from_tag("O")


def test_rank_must_give_positive_n():
    with pytest.raises(BundleError):
        trivial_bundle(KField.R, 1)
    assert trivial_bundle(KField.R, 2).n == 1


def test_real_bundles_need_f2():
    base = point_presentation(Coeffs.INT)
    with pytest.raises(BundleError):
        BundleSpec(KField.R, 3, base, [base.zero()] * 3)


def test_class_degree_checked():
    base = generic_base(2)
    with pytest.raises(BundleError):
        make_bundle(KField.R, 3, base, {1: "w2"})
    with pytest.raises(BundleError):
        make_bundle(KField.C, 3, point_presentation(Coeffs.INT), {1: 1})


def test_class_index_checked():
    with pytest.raises(BundleError):
        make_bundle(KField.R, 3, point_presentation(), {4: 0})


def test_inhomogeneous_class_rejected():
    base = generic_base(3)
    with pytest.raises(BundleError):
        make_bundle(KField.R, 4, base, {2: "w2 + w1"})  # mixes degrees 2 and 1


def test_base_generator_names_reserved_for_fibre_classes():
    ring = PolyRing(Coeffs.F2, [("T", 2)])
    base = Presentation(ring, [], Strategy.GROEBNER_F2, truncation=6).complete()
    with pytest.raises(BundleError):
        BundleSpec(KField.R, 2, base, [base.zero()] * 2)


def test_disconnected_base_rejected():
    # a presentation whose degree-0 part is not one-dimensional cannot happen
    # with homogeneous positive-degree generators; the guard is the w(0) = 1
    # convention instead
    b = trivial_bundle(KField.R, 3)
    assert b.w(0) == b.base.one()
    assert b.w(5).is_zero()


def test_bundle_equality_and_hash():
    a = trivial_bundle(KField.R, 3)
    b = trivial_bundle(KField.R, 3)
    assert a == b and hash(a) == hash(b)
    assert a != trivial_bundle(KField.R, 4)


def test_reduce_mod2_on_integral_bundle():
    b = trivial_bundle(KField.C, 3)
    b2 = reduce_mod2(b)
    assert b2.base.ring.coeffs is Coeffs.F2
    assert reduce_mod2(b2) is b2


# -- projective ring ----------------------------------------------------------


def test_projective_point_real():
    b = trivial_bundle(KField.R, 3)  # lines in a trivial R^3, i.e. P(R^3)
    pres, e_zeta, e_eta = projective_ring(b)
    assert pres.ring.names == ("t",)
    assert [r for r in pres.relations] == [pres.ring.parse("t^3")]
    assert e_zeta == pres.element("t^2")
    assert e_eta == pres.element("t")
    assert pres.dimension(2) == 1 and pres.dimension(3) == 0


def test_projective_point_complex_sign():
    b = trivial_bundle(KField.C, 2)
    pres, e_zeta, e_eta = projective_ring(b)
    assert [r.terms for r in pres.relations] == [{(2,): 1}]
    # zeta + eta is trivial, so e(zeta) = -e(eta) integrally
    assert e_zeta == -pres.element("t")
    assert e_eta == pres.element("t")
    assert (e_zeta * e_eta).is_zero()


def test_projective_line_bundle_over_projective_space():
    m, n = 3, 1
    b = make_bundle(KField.R, n + 1, rp_base(m), {1: "x"})
    pres, e_zeta, _ = projective_ring(b)
    fibre_rel = pres.relations[-1]
    assert fibre_rel == pres.ring.parse("t^2 + x*t")
    assert e_zeta == pres.element("t + x")


def test_projective_euler_product_identity():
    # e(zeta) e(eta) = e(xi) = w_(n+1) with fully generic classes
    for n in (1, 2, 3):
        b = generic_bundle(KField.R, n)
        pres, e_zeta, e_eta = projective_ring(b)
        lifted = pres.element(b.w(n + 1).poly.lift(pres.ring))
        assert e_zeta * e_eta == lifted
    for n in (1, 2):
        b = generic_bundle(KField.C, n, Coeffs.INT)
        pres, e_zeta, e_eta = projective_ring(b)
        lifted = pres.element(b.w(n + 1).poly.lift(pres.ring))
        assert e_zeta * e_eta == lifted


def test_projective_x_classes_satisfy_recursion():
    n = 3
    b = generic_bundle(KField.R, n)
    pres, e_zeta, _ = projective_ring(b)
    xs = projective_x_classes(b, pres)
    t = pres.element("t")
    assert xs[0] == pres.one()
    for i in range(1, n + 1):
        w_i = pres.element(b.w(i).poly.lift(pres.ring))
        assert xs[i] == t * xs[i - 1] + w_i
    assert e_zeta == xs[n]


def test_projective_relations_homogeneous():
    for field, coeffs in ((KField.R, Coeffs.F2), (KField.C, Coeffs.INT)):
        b = generic_bundle(field, 2, coeffs)
        pres, _, _ = projective_ring(b)
        for r in pres.relations:
            assert r.is_homogeneous()


# -- ordered pairs of lines (the deleted-square model) -----------------------------


def test_q_tilde_milnor_presentation():
    n = 2
    b = trivial_bundle(KField.R, n + 1)
    pres, e = q_tilde_ring(b)
    texts = {str_of(r) for r in pres.relations}
    assert texts == {"S^3", "T^2 + S*T + S^2"}
    assert e == pres.element("T + S")


def test_q_tilde_complex_point_presentation():
    n = 2
    b = trivial_bundle(KField.C, n + 1)
    pres, e = q_tilde_ring(b)
    texts = {str_of(r) for r in pres.relations}
    assert texts == {"S^3", "T^2 + S*T + S^2"}
    assert e == pres.element("T") - pres.element("S")


def test_q_tilde_symmetry_under_swapping_the_factors():
    for field, coeffs in ((KField.R, Coeffs.F2), (KField.C, Coeffs.INT)):
        b = generic_bundle(field, 2, coeffs)
        pres, _ = q_tilde_ring(b)
        s, t = pres.ring.index("S"), pres.ring.index("T")
        for r in pres.relations:
            swapped = {}
            for exps, c in r.terms.items():
                e = list(exps)
                e[s], e[t] = e[t], e[s]
                swapped[tuple(e)] = c
            assert pres.normal_form(Polynomial(pres.ring, swapped)).is_zero()


def test_q_tilde_telescoping_identity():
    ring = PolyRing(Coeffs.INT, [("S", 2), ("T", 2)])
    for i in range(0, 6):
        h = ring.parse(" + ".join(f"S^{j}*T^{i - j}" for j in range(i + 1)))
        lhs = ring.parse("T - S") * h
        assert lhs == ring.parse(f"T^{i + 1} - S^{i + 1}")


def test_q_tilde_requires_even_classes_over_z():
    b = generic_bundle(KField.R, 2)
    pres, e = q_tilde_ring(b)  # F2 default for real bundles
    assert pres.ring.coeffs is Coeffs.F2
    with pytest.raises((BundleError, GradingError)):
        q_tilde_ring(b, Coeffs.INT)


# -- the p-polynomial table ----------------------------------------------------


def p_table(coeffs: Coeffs) -> PPolyTable:
    scale = 2 if coeffs is Coeffs.INT else 1
    ring = PolyRing(coeffs, [("Y", scale), ("Z", 2 * scale)])
    return PPolyTable(ring, ring.gen("Y"), ring.gen("Z"), [ring.one()])


def test_p_polynomials_small_f2():
    table = p_table(Coeffs.F2)
    ring = table.ring
    assert p_polynomial(0, table) == ring.one()
    assert p_polynomial(1, table) == ring.parse("Y")
    assert p_polynomial(2, table) == ring.parse("Y^2 + Z")
    assert p_polynomial(3, table) == ring.parse("Y^3")
    assert p_polynomial(4, table) == ring.parse("Y^4 + Y^2*Z + Z^2")


def test_p_polynomials_small_integral():
    table = p_table(Coeffs.INT)
    ring = table.ring
    assert p_polynomial(3, table) == ring.parse("Y^3 + 2*Y*Z")
    assert p_polynomial(4, table) == ring.parse("Y^4 + 3*Y^2*Z + Z^2")


def test_p_polynomial_closed_form():
    # p_i = sum_j binom(i-j, j) Y^(i-2j) Z^j, an independent derivation
    for coeffs in (Coeffs.F2, Coeffs.INT):
        table = p_table(coeffs)
        ring = table.ring
        for i in range(0, 9):
            want = ring.zero()
            for j in range(i // 2 + 1):
                c = math.comb(i - j, j)
                want = want + ring.monomial((i - 2 * j, j), c)
            assert p_polynomial(i, table) == want


def test_p_xi_reduces_to_p_for_zero_classes():
    b = trivial_bundle(KField.R, 4)
    _, y, z = grassmann_ring(b)
    pres = y.pres
    table = PPolyTable(
        pres.ring, pres.ring.gen("Y"), pres.ring.gen("Z"),
        [b.w(i).poly.lift(pres.ring) for i in range(0, 5)],
    )
    for i in range(0, 4):
        assert table.p_xi(i) == table.p(i)


def test_p_xi_recursion_identity():
    # p_(n+1)^xi = Y p_n^xi + Z p_(n-1)^xi + w_((n+1)d) as plain polynomials
    for n in (2, 3, 4):
        gens = [(f"w{i}", i) for i in range(1, n + 2)] + [("Y", 1), ("Z", 2)]
        ring = PolyRing(Coeffs.F2, gens)
        lifted = [ring.one()] + [ring.gen(f"w{i}") for i in range(1, n + 2)]
        table = PPolyTable(ring, ring.gen("Y"), ring.gen("Z"), lifted)
        want = (
            ring.gen("Y") * table.p_xi(n)
            + ring.gen("Z") * table.p_xi(n - 1)
            + lifted[n + 1]
        )
        got = sum(
            (table.p(n + 1 - j) * lifted[j] for j in range(n + 2)), ring.zero()
        )
        assert got == want


# -- planes rings ------------------------------------------------------------------


def test_grassmann_point_rank_three():
    b = trivial_bundle(KField.R, 3)
    pres, y, z = grassmann_ring(b)
    dims = [pres.dimension(m) for m in range(0, 4)]
    assert dims == [1, 1, 1, 0]
    assert y == pres.element("Y")
    assert z == pres.element("Z")
    assert pres.element("Z") == pres.element("Y^2")  # Z = Y^2 holds here
    assert pres.element("Z*Y").is_zero()


def test_grassmann_matches_q_binomial_dimensions():
    for n in (1, 2, 3):
        b = trivial_bundle(KField.R, n + 1)
        pres, _, _ = grassmann_ring(b)
        series = gaussian_binomial_two(n + 1)
        for m in range(len(series)):
            assert pres.dimension(m) == series[m]
        for m in range(len(series), (pres.truncation or 0) + 1):
            assert pres.dimension(m) == 0


def test_gaussian_binomial_against_series_oracle():
    for m in range(2, 8):
        got = gaussian_binomial_two(m)
        want = gaussian_binomial_series(m, len(got) + 4)
        assert got == want[: len(got)]
        assert all(c == 0 for c in want[len(got):])


def generic_truncated_bundle(n: int, trunc: int) -> BundleSpec:
    gens = [(f"w{i}", i) for i in range(1, n + 2)]
    ring = PolyRing(Coeffs.F2, gens)
    base = Presentation(ring, [], Strategy.GROEBNER_F2, truncation=trunc).complete()
    return make_bundle(KField.R, n + 1, base, {i: f"w{i}" for i in range(1, n + 2)})


def test_grassmann_relations_homogeneous_and_verified():
    for n in (1, 2, 3):
        b = generic_truncated_bundle(n, 6)
        pres, _, _ = grassmann_ring(b)  # verify=True checks freeness degreewise
        for r in pres.relations:
            assert r.is_homogeneous()


def test_grassmann_quaternionic_degrees():
    b = trivial_bundle(KField.H, 3, Coeffs.F2)
    pres, y, z = grassmann_ring(b)
    iy = pres.ring.index("Y")
    assert pres.ring.degrees[iy] == 4
    assert y.degree() == 4 and z.degree() == 8


# -- unordered pairs (Feder model) ------------------------------------------------


def test_feder_point_small():
    b = trivial_bundle(KField.R, 2)
    pres, e_lambda, e_alpha, w_d_beta = feder_ring(b)
    total = sum(pres.dimension(m) for m in range(0, (pres.truncation or 0) + 1))
    assert total == 2  # same total rank as lines in R^2
    assert e_lambda == pres.element("X")
    assert e_alpha == pres.element("Y + X")
    assert w_d_beta == pres.element("Y")


def test_feder_x_relation():
    for rank in (2, 3, 4):
        b = trivial_bundle(KField.R, rank)
        pres, e_lambda, e_alpha, w_d_beta = feder_ring(b)
        d = b.d
        assert (e_lambda * (e_lambda ** d + w_d_beta)).is_zero()


def test_feder_free_over_planes_basis():
    # verify=True re-checks 1, X, ..., X^d freeness; run it on a nontrivial base
    m, n = 2, 1
    base = rp_base(m)
    b = make_bundle(KField.R, n + 1, base, {1: "x"})
    pres, e_lambda, e_alpha, w_d_beta = feder_ring(b)
    assert e_alpha == e_lambda ** b.d + pres.element(
        w_d_beta.poly
    )  # Y = e(alpha) + e(lambda)^d rearranged
    assert not e_alpha.is_zero()


def test_feder_complex_bundle_reduces_mod_two():
    # any field is accepted; coefficients drop to F2 and e(alpha) sits in
    # degree d
    pres, e_lambda, e_alpha, _ = feder_ring(trivial_bundle(KField.C, 3))
    assert pres.ring.coeffs is Coeffs.F2
    assert e_lambda.degree() == 1
    assert e_alpha.degree() == 2


# -- truncation bookkeeping ---------------------------------------------------------


def test_truncated_base_extension_switches_strategy():
    ring = PolyRing(Coeffs.F2, [("x", 1)])
    base = Presentation(ring, [], Strategy.GROEBNER_F2, truncation=3).complete()
    b = make_bundle(KField.R, 2, base, {1: "x"})
    pres, _, _ = projective_ring(b)
    assert pres.strategy is Strategy.GROEBNER_F2
    assert pres.truncation == 3 + 1 * 1  # base truncation + fibre budget n*d


def test_bounded_tower_base_stays_a_tower():
    # a monic tower with finite top degree needs no truncation bookkeeping
    b = make_bundle(KField.R, 2, rp_base(3), {1: "x"})
    pres, _, _ = projective_ring(b)
    assert pres.strategy is Strategy.MONIC_TOWER
    assert pres.truncation is None
    assert pres.top_degree() == 3 + 1  # x^3 t survives


def test_free_base_extension_keeps_tower():
    b = generic_bundle(KField.R, 2)
    pres, _, _ = projective_ring(b)
    assert pres.strategy is Strategy.MONIC_TOWER
    assert pres.truncation is None


def test_default_grassmann_truncation_bound():
    m, n = 3, 1
    b = make_bundle(KField.R, n + 1, rp_base(m), {1: "x"})
    pres, _, _ = grassmann_ring(b)
    assert pres.truncation == m + 2 * n * 1 + 1 + 1


# -- helpers ------------------------------------------------------------------------


def str_of(p: Polynomial) -> str:
    from tcbundles import render_polynomial

    return render_polynomial(p)


def test_monomial_enumeration_matches_degrees():
    ring = PolyRing(Coeffs.F2, [("Y", 1), ("Z", 2)])
    mons = list(_monomials_of_degree(ring, 4))
    assert set(mons) == {(4, 0), (2, 1), (0, 2)}
