"""Acceptance suite: one test per exit criterion, exact tolerances.

Every expected value is either asserted with exact equality against a
value recomputed here by an independent route (direct substitution into
scalar formulas, membership resampling) or is an enclosure check at the
stated width.  Each criterion prints one summary line on success; a
pytest failure line marks the criterion red.
"""

import random
from fractions import Fraction

from slopestab.invariants import invariants, k_squared_from_lattice
from slopestab.lattice import pair
from slopestab.polysign import OpenInterval, quadratic_negativity
from slopestab.positivity import (
    AmpleStatus,
    ample_in_plane,
    ample_ls,
    ample_Lt,
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
    kodaira_slope,
    kodaira_window_c,
    product_destabilization_witness,
    residual_boundary_margin,
    weinkove_alpha,
    weinkove_threshold,
)
from slopestab.positivity import SeshadriBound
from slopestab.surfaces import (
    BranchedCover,
    KodairaParams,
    ProductSurfaceParams,
    cover_surface,
    kodaira_surface,
    product_surface,
    pullback_from_cover,
)

TOL = Fraction(1, 10**9)
Q_RANGE = range(2, 21)


def _product(q):
    return product_surface(ProductSurfaceParams(q=q))


def _l(model, s):
    return s * model.named("f") + model.named("delta_prime")


def test_criterion_1_product_boundary_slope():
    from slopestab.stability import slope

    for q in Q_RANGE:
        X = _product(q)
        assert slope(X, _l(X, q)) == -2, q
    print("[PASS] criterion 1: boundary slope is exactly -2 for q in 2..20")


def test_criterion_2_product_window():
    for q in Q_RANGE:
        params = ProductSurfaceParams(q=q)
        X = product_surface(params)
        D = X.named("diagonal")
        window = instability_window_c(
            X, D, _l(X, q), boundary_seshadri_diagonal(params), TOL
        )
        assert window.intervals == (OpenInterval(Fraction(0), Fraction(3, 4)),), q

        for c in (Fraction(1, 4), Fraction(1, 2), Fraction(7, 10)):
            s = product_destabilization_witness(params, c, 10, TOL)
            assert s is not None and s > q, (q, c)
            bound = seshadri_diagonal(params, s)
            report = destabilizes(X, D, _l(X, s), c, bound)
            assert report.destabilized and report.admissible, (q, c, s)

        # no claim at c = 4/5
        assert instability_window_s(params, Fraction(4, 5), 10, TOL).is_empty, q
    print(
        "[PASS] criterion 2: boundary window is exactly (0, 3/4); certified "
        "witnesses exist for c in {1/4, 1/2, 7/10}; nothing claimed at c = 4/5"
    )


def test_criterion_3_ample_cone_thresholds():
    shift = Fraction(1, 10**6)
    for q in Q_RANGE:
        assert ample_ls(q, q + shift).status is AmpleStatus.AMPLE, q
        assert ample_ls(q, q - shift).status is AmpleStatus.NOT_AMPLE, q
    for q, k in ((9, 3), (5, 3), (10, 4)):
        params = ProductSurfaceParams(q=q, sc_mode=BranchedCover(k=k))
        threshold = params.sc_exact()
        assert threshold == Fraction(q, k - 1), (q, k)
        assert ample_Lt(params, threshold + shift).status is AmpleStatus.AMPLE
        assert ample_Lt(params, threshold - shift).status is AmpleStatus.NOT_AMPLE
        assert ample_Lt(params, threshold).status is AmpleStatus.NOT_AMPLE
    print(
        "[PASS] criterion 3: s-family flips exactly at q (q in 2..20); "
        "t-family threshold equals q/(k-1) for (9,3), (5,3), (10,4)"
    )


def test_criterion_4_kodaira_example():
    params = KodairaParams(q=3, r=2, group_order=2)
    inv = invariants(params)
    assert inv.d == 64
    assert inv.base_genus == 129
    assert inv.fiber_genus == 6
    # independent recomputation of chi from the two Euler factors
    chi_independent = (2 - 2 * inv.base_genus) * (2 * (2 - 2 * 3) - (2 - 1) * 2)
    assert chi_independent == 2560
    assert inv.euler == 2560
    # K^2 cross-checked through the intersection form
    assert k_squared_from_lattice(params) == inv.k_squared == 5888
    assert Fraction(inv.k_squared - 2 * inv.euler, 3) == inv.signature == 256
    print(
        "[PASS] criterion 4: example invariants d=64, p=129, fiber genus 6, "
        "chi=2560, K^2=5888 (closed form == lattice), tau=256"
    )


def test_criterion_5_residual_margin_grid():
    cases = 0
    for q in range(5, 31):
        k = 3
        while (k - 1) ** 2 < q:
            for g in (2, 4, 6):
                out = residual_boundary_margin(q, k, g)
                assert out.holds, (q, k, g)
                assert out.floor == k * g + q - 1 > 0
                assert out.margin > out.floor, (q, k, g)
                cases += 1
            k += 1
    assert cases >= 100
    print(
        f"[PASS] criterion 5: residual boundary inequality holds with margin "
        f"above k|G|+q-1 in all {cases} grid cases"
    )


def test_criterion_6_cover_window_grid():
    for q in range(2, 7):
        for r in (2, 3):
            for g in (r, 2 * r):
                params = KodairaParams(q=q, r=r, group_order=g)
                # independent oracle: boundary slope and quotient slope by
                # direct substitution, then solve -3/(2cr) < mu for c
                mu_boundary = Fraction(-2) - Fraction((r - 1) * (g - 1), r * q)
                endpoint = Fraction(3) / (2 * r * (-mu_boundary))
                assert endpoint == Fraction(3 * q, 4 * r * q + 2 * (r - 1) * (g - 1))
                window = kodaira_window_c(
                    params,
                    q,
                    0,
                    SeshadriBound(lower=Fraction(1), note="boundary-limit"),
                    TOL,
                )
                assert window.intervals == (
                    OpenInterval(Fraction(0), endpoint),
                ), (q, r, g)
                assert endpoint < Fraction(3, 4)
    print(
        "[PASS] criterion 6: cover boundary window equals "
        "(0, 3q/(4rq + 2(r-1)(|G|-1))) exactly on the grid, endpoint < 3/4"
    )


def test_criterion_7_eps_expansion_agreement():
    params = KodairaParams(q=3, r=2, group_order=2)
    for family, value in ((S_FAMILY, Fraction(3)), (T_FAMILY, Fraction(3))):
        base = kodaira_slope(params, family, value, 0)
        ratios = [
            abs(kodaira_slope(params, family, value, Fraction(1, 10**n)) - base)
            * 10**n
            for n in (3, 4, 5)
        ]
        scale = min(ratios)
        assert scale > 0
        assert max(ratios) - min(ratios) < scale / 10, (family, ratios)
    print(
        "[PASS] criterion 7: |slope(eps) - slope(0)|/eps varies by < 10% over "
        "eps in {1e-3, 1e-4, 1e-5} for both polarization families"
    )


def test_criterion_8_jflow_threshold():
    for q in Q_RANGE:
        profile = quadratic_negativity(1, -2 * q, q, TOL)
        flip = profile.negativity_set[-1].hi
        assert isinstance(flip, RationalInterval) and flip.width <= TOL, q
        # the enclosed value is q + sqrt(q^2 - q)
        assert (flip.lo - q) ** 2 < q * q - q < (flip.hi - q) ** 2, q
        assert weinkove_threshold(q, flip.lo).status is AmpleStatus.NOT_AMPLE, q
        assert weinkove_threshold(q, flip.hi).status is AmpleStatus.AMPLE, q

        params = ProductSurfaceParams(q=q)
        X = product_surface(params)
        for s in (flip.lo, flip.hi, Fraction(2 * q), q + 1):
            alpha = weinkove_alpha(X, _l(X, s))
            expected = 2 * (2 * q - 2) * (
                (s * s + q) * X.named("f") + 2 * s * X.named("delta_prime")
            )
            assert alpha == expected, (q, s)
            cone = ample_in_plane(
                params, alpha.coefficient("f"), alpha.coefficient("delta_prime")
            )
            assert cone.status is weinkove_threshold(q, s).status, (q, s)
    print(
        "[PASS] criterion 8: J-flow verdict flips inside a width-1e-9 "
        "enclosure of q + sqrt(q^2 - q) and matches the cone test on the "
        "explicit class"
    )


def test_criterion_9_property_suites():
    rng = random.Random(20250809)

    # pairing symmetry and bilinearity: 10^3 cases
    for i in range(1000):
        q = rng.randint(2, 15)
        X = _product(q)

        def rand_cls():
            return X.divisor(
                {
                    "f": Fraction(rng.randint(-40, 40), rng.randint(1, 11)),
                    "delta_prime": Fraction(rng.randint(-40, 40), rng.randint(1, 11)),
                }
            )

        a, b, c = rand_cls(), rand_cls(), rand_cls()
        x = Fraction(rng.randint(-7, 7), rng.randint(1, 5))
        y = Fraction(rng.randint(-7, 7), rng.randint(1, 5))
        assert pair(a, b) == pair(b, a)
        assert pair(x * a + y * b, c) == x * pair(a, c) + y * pair(b, c)

    # pullback scaling by the cover degree r: 10^2 cases
    for i in range(100):
        q = rng.randint(2, 4)
        r = rng.choice((2, 3))
        g = r * rng.randint(1, 2)
        params = KodairaParams(q=q, r=r, group_order=g)
        base = cover_surface(params)
        top = kodaira_surface(params)
        a = base.divisor({lbl: rng.randint(-6, 6) for lbl in base.basis})
        b = base.divisor({lbl: rng.randint(-6, 6) for lbl in base.basis})
        assert pair(pullback_from_cover(top, a), pullback_from_cover(top, b)) == r * pair(a, b)

    # verdict invariance under (L, c) -> (mL, mc): 10^2 cases
    for i in range(100):
        q = rng.randint(2, 12)
        params = ProductSurfaceParams(q=q)
        X = product_surface(params)
        D = X.named("diagonal")
        s = q + Fraction(rng.randint(1, 40), 19)
        c = Fraction(rng.randint(1, 9), 10)
        bound = seshadri_diagonal(params, s)
        base_verdict = destabilizes(X, D, _l(X, s), c, bound)
        for m in (2, 3, 5):
            scaled = destabilizes(X, D, m * _l(X, s), m * c, bound.scaled(m))
            assert scaled.destabilized == base_verdict.destabilized, (q, s, c, m)
    print(
        "[PASS] criterion 9: pairing laws (1000 cases), pullback scaling "
        "(100 cases), verdict scale invariance (100 cases) with zero failures"
    )
