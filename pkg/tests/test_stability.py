import random
from fractions import Fraction

import pytest

from slopestab.errors import (
    DegeneratePolarization,
    DegenerateQuotientSlope,
    NotAmplePolarization,
    ParamError,
)
from slopestab.lattice import pair, self_intersection
from slopestab.polysign import OpenInterval
from slopestab.positivity import (
    AmpleStatus,
    SeshadriBound,
    ample_in_plane,
    boundary_seshadri_diagonal,
    seshadri_diagonal,
)
from slopestab.rationals import RationalInterval
from slopestab.stability import (
    S_FAMILY,
    T_FAMILY,
    destabilizes,
    instability_window_c,
    instability_window_s,
    kodaira_polarization,
    kodaira_quotient_limit,
    kodaira_quotient_slope,
    kodaira_slope,
    kodaira_slope_limit,
    kodaira_window_c,
    product_destabilization_witness,
    product_quotient_closed,
    product_slope_closed,
    quotient_slope,
    residual_boundary_margin,
    slope,
    weinkove_alpha,
    weinkove_threshold,
)
from slopestab.surfaces import (
    KodairaParams,
    ProductSurfaceParams,
    kodaira_surface,
    product_surface,
)

EXAMPLE = KodairaParams(q=3, r=2, group_order=2)


def product_model(q):
    return product_surface(ProductSurfaceParams(q=q))


def l_s(model, s):
    return s * model.named("f") + model.named("delta_prime")


# ---------------------------------------------------------------------------
# slope


def test_slope_boundary_value():
    for q in (2, 3, 11):
        X = product_model(q)
        assert slope(X, l_s(X, q)) == -2


def test_slope_q2_l3():
    X = product_model(2)
    assert slope(X, l_s(X, 3)) == Fraction(-6, 7)


def test_slope_orthogonal_to_canonical():
    X = product_model(2)
    dp = X.named("delta_prime")
    assert slope(X, dp) == 0


def test_slope_degenerate():
    X = product_model(4)
    with pytest.raises(DegeneratePolarization):
        slope(X, l_s(X, 2))  # l_2^2 = 2(4-4) = 0


def test_slope_matches_closed_form_random():
    rng = random.Random(101)
    for _ in range(100):
        q = rng.randint(2, 20)
        s = Fraction(rng.randint(q * 3 + 1, q * 9), 3)
        X = product_model(q)
        assert slope(X, l_s(X, s)) == product_slope_closed(q, s)


# ---------------------------------------------------------------------------
# quotient slope


def test_quotient_slope_boundary_scaling():
    for q in (2, 5):
        X = product_model(q)
        D = X.named("diagonal")
        for c in (Fraction(1, 2), Fraction(1, 3), Fraction(2, 3)):
            assert quotient_slope(X, D, l_s(X, q), c) == Fraction(-3) / (2 * c)


def test_quotient_slope_q2_l3():
    X = product_model(2)
    D = X.named("diagonal")
    assert quotient_slope(X, D, l_s(X, 3), Fraction(1, 2)) == Fraction(9, 7)


def test_quotient_slope_matches_closed_form_random():
    rng = random.Random(202)
    for _ in range(100):
        q = rng.randint(2, 20)
        s = Fraction(rng.randint(q * 2 + 1, q * 8), 2)
        c = Fraction(rng.randint(1, 20), 21)
        X = product_model(q)
        D = X.named("diagonal")
        assert quotient_slope(X, D, l_s(X, s), c) == product_quotient_closed(q, s, c)


def test_quotient_slope_zero_denominator():
    X = product_model(2)
    L = l_s(X, 3)
    # Z = L: 3 L.Z - c Z^2 = 0 at c = 3
    with pytest.raises(DegenerateQuotientSlope):
        quotient_slope(X, L, L, 3)
    with pytest.raises(ParamError):
        quotient_slope(X, X.named("diagonal"), L, 0)


# ---------------------------------------------------------------------------
# destabilization verdicts


def test_destabilizes_near_boundary():
    q = 2
    params = ProductSurfaceParams(q=q)
    X = product_surface(params)
    D = X.named("diagonal")
    s = Fraction(201, 100)
    rep = destabilizes(X, D, l_s(X, s), Fraction(1, 2), seshadri_diagonal(params, s))
    assert rep.destabilized and rep.admissible
    assert rep.mu_c < rep.mu


def test_not_destabilized_away_from_boundary():
    X = product_model(2)
    D = X.named("diagonal")
    rep = destabilizes(
        X, D, l_s(X, 3), Fraction(1, 2), seshadri_diagonal(ProductSurfaceParams(q=2), 3)
    )
    assert not rep.destabilized
    assert rep.mu_c == Fraction(9, 7) and rep.mu == Fraction(-6, 7)


def test_inadmissible_c_flagged():
    params = ProductSurfaceParams(q=2)
    X = product_surface(params)
    D = X.named("diagonal")
    bound = SeshadriBound(lower=Fraction(1), upper=None, exact=False)
    rep = destabilizes(X, D, l_s(X, Fraction(201, 100)), Fraction(3, 2), bound)
    assert not rep.destabilized and not rep.admissible
    assert "inadmissible c" in rep.flags


# ---------------------------------------------------------------------------
# window in c


def test_boundary_window_is_three_quarters():
    for q in (2, 3, 10):
        params = ProductSurfaceParams(q=q)
        X = product_surface(params)
        w = instability_window_c(
            X, X.named("diagonal"), l_s(X, q), boundary_seshadri_diagonal(params)
        )
        assert w.intervals == (OpenInterval(Fraction(0), Fraction(3, 4)),)


def test_window_c_empty_away_from_boundary():
    X = product_model(2)
    w = instability_window_c(
        X,
        X.named("diagonal"),
        l_s(X, 3),
        seshadri_diagonal(ProductSurfaceParams(q=2), 3),
    )
    assert w.is_empty


def test_window_c_interior_and_exterior_recheck():
    q = 2
    params = ProductSurfaceParams(q=q)
    X = product_surface(params)
    D = X.named("diagonal")
    s = Fraction(201, 100)
    bound = seshadri_diagonal(params, s)
    w = instability_window_c(X, D, l_s(X, s), bound)
    assert len(w.intervals) == 1
    iv = w.intervals[0]
    interior = iv.inner_point()
    assert destabilizes(X, D, l_s(X, s), interior, bound).destabilized
    # exterior points near each endpoint do not destabilize
    offset = Fraction(1, 1000)
    lo_out = (iv.lo.lo if isinstance(iv.lo, RationalInterval) else iv.lo) - offset
    hi_out = (iv.hi.hi if isinstance(iv.hi, RationalInterval) else iv.hi) + offset
    if lo_out > 0:
        assert not destabilizes(X, D, l_s(X, s), lo_out, bound).destabilized
    assert not destabilizes(X, D, l_s(X, s), hi_out, bound).destabilized


def test_window_c_degenerate_subscheme():
    X = product_model(2)
    with pytest.raises(DegenerateQuotientSlope):
        instability_window_c(
            X, X.zero(), l_s(X, 3), SeshadriBound(lower=Fraction(1))
        )


# ---------------------------------------------------------------------------
# window in s


def test_window_s_left_endpoint_is_q():
    for q in (2, 5, 9):
        w = instability_window_s(ProductSurfaceParams(q=q), Fraction(1, 2), 10)
        assert len(w.intervals) == 1
        assert w.intervals[0].lo == Fraction(q)


def test_window_s_witness_recheck():
    for q in (2, 7):
        params = ProductSurfaceParams(q=q)
        for c in (Fraction(1, 4), Fraction(1, 2), Fraction(7, 10)):
            s = product_destabilization_witness(params, c, 10)
            assert s is not None and s > q
            X = product_surface(params)
            rep = destabilizes(
                X, X.named("diagonal"), l_s(X, s), c, seshadri_diagonal(params, s)
            )
            assert rep.destabilized


def test_window_s_exterior_recheck():
    q = 2
    params = ProductSurfaceParams(q=q)
    X = product_surface(params)
    D = X.named("diagonal")
    c = Fraction(1, 2)
    w = instability_window_s(params, c, 10)
    hi = w.intervals[0].hi
    outside = (hi.hi if isinstance(hi, RationalInterval) else hi) + Fraction(1, 1000)
    rep = destabilizes(X, D, l_s(X, outside), c, seshadri_diagonal(params, outside))
    assert not rep.destabilized and rep.admissible


def test_window_s_empty_above_three_quarters():
    for q in (2, 6, 20):
        w = instability_window_s(ProductSurfaceParams(q=q), Fraction(4, 5), 10)
        assert w.is_empty
        assert product_destabilization_witness(ProductSurfaceParams(q=q), Fraction(4, 5), 10) is None


def test_window_s_zero_extent():
    assert instability_window_s(ProductSurfaceParams(q=2), Fraction(1, 2), 0).is_empty


def test_window_s_truncation():
    w = instability_window_s(ProductSurfaceParams(q=2), Fraction(1, 2), Fraction(1, 100))
    assert len(w.intervals) == 1
    assert w.intervals[0].hi == Fraction(2) + Fraction(1, 100)
    assert w.context["truncated"]


def test_window_s_rejects_bad_c():
    with pytest.raises(ParamError):
        instability_window_s(ProductSurfaceParams(q=2), 0, 10)
    with pytest.raises(ParamError):
        instability_window_s(ProductSurfaceParams(q=2), 1, 10)


# ---------------------------------------------------------------------------
# cyclic cover slopes


def test_cover_boundary_slope():
    assert kodaira_slope(EXAMPLE, S_FAMILY, 3, 0) == Fraction(-13, 6)


def test_cover_boundary_slope_formula_grid():
    for q in range(2, 6):
        for r in (2, 3):
            for g in (r, 2 * r):
                params = KodairaParams(q=q, r=r, group_order=g)
                expected = Fraction(-2) - Fraction((r - 1) * (g - 1), r * q)
                assert kodaira_slope(params, S_FAMILY, q, 0) == expected


def test_cover_boundary_quotient_slope():
    assert kodaira_quotient_slope(EXAMPLE, S_FAMILY, 3, 0, Fraction(1, 2)) == Fraction(-3, 2)
    for c in (Fraction(1, 3), Fraction(3, 5)):
        assert kodaira_quotient_slope(EXAMPLE, S_FAMILY, 3, 0, c) == Fraction(-3) / (
            2 * c * EXAMPLE.r
        )


def test_cover_slope_limit_agreement():
    # lattice evaluation at eps=0 equals the scalar expansion constant term
    rng = random.Random(303)
    for _ in range(40):
        q = rng.randint(2, 6)
        r = rng.choice((2, 3))
        g = r * rng.randint(1, 3)
        params = KodairaParams(q=q, r=r, group_order=g)
        s = q + Fraction(rng.randint(1, 12), 5)
        assert kodaira_slope(params, S_FAMILY, s, 0) == kodaira_slope_limit(
            params, S_FAMILY, s
        )
        assert kodaira_quotient_slope(
            params, S_FAMILY, s, 0, Fraction(1, 2)
        ) == kodaira_quotient_limit(params, S_FAMILY, s, Fraction(1, 2))


def test_cover_residual_limit_agreement():
    params = KodairaParams(q=9, r=2, group_order=2, k=3)
    for t in (Fraction(9, 2), 5, Fraction(19, 4)):
        assert kodaira_slope(params, T_FAMILY, t, 0) == kodaira_slope_limit(
            params, T_FAMILY, t
        )
        assert kodaira_quotient_slope(params, T_FAMILY, t, 0, 1) == kodaira_quotient_limit(
            params, T_FAMILY, t, 1
        )


def test_cover_residual_requires_unit_c():
    params = KodairaParams(q=9, r=2, group_order=2, k=3)
    with pytest.raises(ParamError):
        kodaira_quotient_slope(params, T_FAMILY, 5, 0, Fraction(1, 2))


def test_cover_eps_linearity():
    base = kodaira_slope(EXAMPLE, S_FAMILY, 3, 0)
    ratios = [
        (kodaira_slope(EXAMPLE, S_FAMILY, 3, Fraction(1, 10**n)) - base) * 10**n
        for n in (3, 4, 5)
    ]
    spread = max(ratios) - min(ratios)
    assert spread < min(abs(r) for r in ratios) / 10


def test_cover_window_boundary_endpoint():
    # independent derivation: -3/(2cr) < -2 - (r-1)(|G|-1)/(rq)
    # <=> c < 3q / (4rq + 2(r-1)(|G|-1))
    for q in range(2, 7):
        for r in (2, 3):
            for g in (r, 2 * r):
                params = KodairaParams(q=q, r=r, group_order=g)
                endpoint = Fraction(3 * q, 4 * r * q + 2 * (r - 1) * (g - 1))
                w = kodaira_window_c(
                    params, q, 0, SeshadriBound(lower=Fraction(1), note="boundary-limit")
                )
                assert w.intervals == (OpenInterval(Fraction(0), endpoint),)
                assert endpoint < Fraction(3, 4)


def test_cover_window_with_positive_eps():
    params = EXAMPLE
    eps = Fraction(1, 1000)
    w = kodaira_window_c(params, 3, eps, SeshadriBound(lower=Fraction(1)))
    assert len(w.intervals) == 1
    iv = w.intervals[0]
    model = kodaira_surface(params)
    D = model.named("diagonal")
    L = kodaira_polarization(model, S_FAMILY, 3, eps)
    c_in = iv.inner_point()
    assert quotient_slope(model, D, L, c_in) < slope(model, L)


def test_cover_polarization_requires_nonnegative_eps():
    model = kodaira_surface(EXAMPLE)
    with pytest.raises(ParamError):
        kodaira_polarization(model, S_FAMILY, 3, -1)
    with pytest.raises(ParamError):
        kodaira_polarization(model, "nope", 3, 0)


# ---------------------------------------------------------------------------
# residual margin at the nef boundary


def test_residual_margin_worked_example():
    out = residual_boundary_margin(9, 3, 2)
    assert out.holds
    assert out.lhs == Fraction(152, 9)
    assert out.rhs == 42
    assert out.margin == Fraction(226, 9)
    assert out.floor == 14
    assert out.margin > out.floor


def test_residual_margin_small_case():
    out = residual_boundary_margin(5, 3, 2)
    assert out.holds and out.margin > out.floor > 0


def test_residual_margin_validation():
    with pytest.raises(ParamError):
        residual_boundary_margin(4, 3, 2)  # (k-1)^2 = 4 >= 4
    with pytest.raises(ParamError):
        residual_boundary_margin(9, 2, 2)  # k-1 < 2


# ---------------------------------------------------------------------------
# J-flow threshold


def test_weinkove_examples():
    assert weinkove_threshold(2, 4).status is AmpleStatus.AMPLE  # 18 > 16
    assert weinkove_threshold(2, 3).status is AmpleStatus.NOT_AMPLE  # 11 < 12
    with pytest.raises(NotAmplePolarization):
        weinkove_threshold(2, 2)


def test_weinkove_alpha_class():
    X = product_model(2)
    L = l_s(X, 3)
    alpha = weinkove_alpha(X, L)
    assert alpha == 4 * (11 * X.named("f") + 6 * X.named("delta_prime"))


def test_weinkove_alpha_degenerate_form():
    # with K.L = 0 the class degenerates to -(L^2) K; for delta_prime that is 2q*K
    X = product_model(3)
    dp = X.named("delta_prime")
    assert pair(X.canonical, dp) == 0
    assert weinkove_alpha(X, dp) == -self_intersection(dp) * X.canonical


def test_weinkove_agrees_with_cone():
    params = ProductSurfaceParams(q=4)
    X = product_surface(params)
    for s in (Fraction(9, 2), 5, 7, 8, 12):
        L = l_s(X, s)
        alpha = weinkove_alpha(X, L)
        direct = weinkove_threshold(4, s)
        cone = ample_in_plane(params, alpha.coefficient("f"), alpha.coefficient("delta_prime"))
        assert direct.status is cone.status


# ---------------------------------------------------------------------------
# scale invariance


def test_scale_invariance_of_verdicts():
    rng = random.Random(404)
    for _ in range(100):
        q = rng.randint(2, 12)
        params = ProductSurfaceParams(q=q)
        X = product_surface(params)
        D = X.named("diagonal")
        s = q + Fraction(rng.randint(1, 30), 17)
        c = Fraction(rng.randint(1, 9), 10)
        bound = seshadri_diagonal(params, s)
        base = destabilizes(X, D, l_s(X, s), c, bound)
        for m in (2, 3, 5):
            scaled = destabilizes(X, D, m * l_s(X, s), m * c, bound.scaled(m))
            assert scaled.destabilized == base.destabilized
            assert scaled.mu == base.mu / m
            assert scaled.mu_c == base.mu_c / m
