"""Built-in verification suites behind the ``verify`` CLI command.

Each suite recomputes a family of known exact values through at least
two independent routes (Gram-matrix models vs scalar closed forms, or
closed formulas vs direct substitution) and records one pass/fail line
per check.  Provenance tags:

* ``reference`` -- the expected value is a known closed form or table entry;
* ``direct``    -- immediate arithmetic, no second route needed;
* ``derived``   -- the expected value is recomputed in the suite by an
                   independent substitution before comparison.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParamError
from .invariants import invariants, k_squared_from_lattice
from .lattice import pair, self_intersection
from .polysign import OpenInterval, quadratic_negativity
from .positivity import (
    AmpleStatus,
    SeshadriBound,
    ample_cover_polarization,
    ample_in_plane,
    ample_ls,
    ample_ls_minus_diagonal,
    boundary_seshadri_diagonal,
    seshadri_diagonal,
    seshadri_lower_bound_residual,
)
from .rationals import DEFAULT_TOL, RationalLike, as_fraction
from .reporting import CheckRecorder, VerificationSuiteResult
from .stability import (
    S_FAMILY,
    T_FAMILY,
    destabilizes,
    instability_window_c,
    kodaira_quotient_limit,
    kodaira_quotient_slope,
    kodaira_slope,
    kodaira_slope_limit,
    kodaira_window_c,
    product_destabilization_witness,
    product_slope_closed,
    quotient_slope,
    residual_boundary_margin,
    slope,
    weinkove_alpha,
    weinkove_threshold,
)
from .surfaces import (
    BranchedCover,
    KodairaParams,
    ProductSurfaceParams,
    kodaira_surface,
    product_surface,
)


def _window_equals(intervals: tuple[OpenInterval, ...], lo: Fraction, hi: Fraction) -> bool:
    if len(intervals) != 1:
        return False
    iv = intervals[0]
    return iv.lo == lo and iv.hi == hi


def suite_product(
    q: int = 2, k: int | None = None, tol: RationalLike = DEFAULT_TOL
) -> VerificationSuiteResult:
    """Exact reproduction of the product-surface statements."""
    tol = as_fraction(tol)
    mode = BranchedCover(k) if k is not None else None
    params = ProductSurfaceParams(q=q, sc_mode=mode)
    model = product_surface(params)
    rec = CheckRecorder()

    f = model.named("f")
    dp = model.named("delta_prime")
    K = model.canonical
    D = model.named("diagonal")

    rec.expect("gram.f.f", Fraction(2), pair(f, f), "reference")
    rec.expect("gram.f.delta_prime", Fraction(0), pair(f, dp), "reference")
    rec.expect("gram.delta_prime.delta_prime", Fraction(-2 * q), pair(dp, dp), "reference")
    rec.expect("canonical.multiple_of_f", (2 * q - 2) * f, K, "reference")
    rec.expect("canonical.self_intersection", Fraction(2 * (2 * q - 2) ** 2), self_intersection(K), "derived")
    rec.expect("diagonal.self_intersection", Fraction(2 - 2 * q), self_intersection(D), "reference")

    lq = q * f + dp
    rec.expect("slope.boundary", Fraction(-2), slope(model, lq), "reference")
    rec.expect(
        "quotient_slope.boundary.c=1/2",
        Fraction(-3),
        quotient_slope(model, D, lq, Fraction(1, 2)),
        "reference",
    )
    rec.expect(
        "slope.closed_form.s=q+1",
        product_slope_closed(q, q + 1),
        slope(model, (q + 1) * f + dp),
        "derived",
    )

    window = instability_window_c(model, D, lq, boundary_seshadri_diagonal(params), tol)
    rec.expect_true(
        "window_c.boundary",
        _window_equals(window.intervals, Fraction(0), Fraction(3, 4)),
        f"intervals={[str(iv) for iv in window.intervals]}",
        "reference",
    )

    shift = Fraction(1, 10**6)
    rec.expect(
        "ample.flip.above",
        AmpleStatus.AMPLE,
        ample_ls(q, q + shift).status,
        "reference",
    )
    rec.expect(
        "ample.flip.below",
        AmpleStatus.NOT_AMPLE,
        ample_ls(q, q - shift).status,
        "reference",
    )

    c = Fraction(1, 2)
    witness = product_destabilization_witness(params, c, 10, tol)
    rec.expect_true("window_s.witness_exists", witness is not None, "no witness", "derived")
    if witness is not None:
        report = destabilizes(model, D, witness * f + dp, c, seshadri_diagonal(params, witness))
        rec.expect_true(
            "window_s.witness_destabilizes",
            report.destabilized,
            f"mu={report.mu} mu_c={report.mu_c}",
            "derived",
        )
        for m in (2, 3):
            scaled = destabilizes(
                model,
                D,
                m * (witness * f + dp),
                m * c,
                seshadri_diagonal(params, witness).scaled(m),
            )
            rec.expect(
                f"scale_invariance.m={m}",
                report.destabilized,
                scaled.destabilized,
                "derived",
            )

    sc = params.sc_exact()
    if sc is not None:
        s = Fraction(q + 1)
        expected = (s + sc) / (1 + sc)
        bound = seshadri_diagonal(params, s)
        rec.expect("seshadri.exact_value", expected, bound.lower, "derived")
        rec.expect(
            "seshadri.flip.below",
            True,
            ample_ls_minus_diagonal(params, s, expected - Fraction(1, 10**6)).is_ample,
            "derived",
        )
        rec.expect(
            "seshadri.flip.above",
            False,
            ample_ls_minus_diagonal(params, s, expected + Fraction(1, 10**6)).is_ample,
            "derived",
        )
    else:
        rec.expect_true(
            "seshadri.unit_lower_bound",
            seshadri_diagonal(params, Fraction(q + 1)).lower >= 1,
            "lower bound below 1",
            "reference",
        )

    return VerificationSuiteResult(
        suite="product", parameters={"q": q, "k": k}, checks=tuple(rec.checks)
    )


def suite_kodaira(
    q: int = 3,
    r: int = 2,
    group_order: int = 2,
    k: int | None = None,
    tol: RationalLike = DEFAULT_TOL,
) -> VerificationSuiteResult:
    """Exact reproduction of the cyclic-cover statements."""
    tol = as_fraction(tol)
    params = KodairaParams(q=q, r=r, group_order=group_order, k=k)
    g = group_order
    rec = CheckRecorder()

    inv = invariants(params)
    rec.expect("cover_degree", r ** (2 * q), inv.d, "reference")
    rec.expect("base_genus", inv.d * (q - 1) + 1, inv.base_genus, "reference")
    rec.expect(
        "fiber_genus",
        (r * (2 * q - 2) + (r - 1) * g) // 2 + 1,
        inv.fiber_genus,
        "reference",
    )
    # independent route: chi as a product of the two Euler factors
    chi_product_form = (2 - 2 * inv.base_genus) * (r * (2 - 2 * q) - (r - 1) * g)
    rec.expect("euler.product_form", chi_product_form, inv.euler, "derived")
    rec.expect("k_squared.lattice", k_squared_from_lattice(params), inv.k_squared, "derived")
    rec.expect(
        "signature.from_chern_numbers",
        Fraction(inv.k_squared - 2 * inv.euler, 3),
        Fraction(inv.signature),
        "reference",
    )
    rec.expect_true(
        "invariants.positive",
        inv.euler > 0 and inv.k_squared > 0 and inv.signature > 0,
        f"chi={inv.euler} K2={inv.k_squared} tau={inv.signature}",
        "reference",
    )
    if (q, r, g, inv.d) == (3, 2, 2, 64):
        rec.expect("example.euler", 2560, inv.euler, "derived")
        rec.expect("example.k_squared", 5888, inv.k_squared, "derived")
        rec.expect("example.signature", 256, inv.signature, "reference")
        rec.expect("example.fiber_genus", 6, inv.fiber_genus, "reference")
        rec.expect("example.base_genus", 129, inv.base_genus, "reference")

    model = kodaira_surface(params)
    rec.expect("gram.f.f", Fraction(2 * r * inv.d), self_intersection(model.named("f")), "reference")
    rec.expect(
        "gram.delta_prime.delta_prime",
        Fraction(-2 * r * inv.d * q),
        self_intersection(model.named("delta_prime")),
        "reference",
    )
    rec.expect(
        "gram.f.delta_prime",
        Fraction(0),
        pair(model.named("f"), model.named("delta_prime")),
        "reference",
    )

    sq = Fraction(q)
    expected_boundary = Fraction(-2) - Fraction((r - 1) * (g - 1), r * q)
    rec.expect(
        "slope.boundary",
        expected_boundary,
        kodaira_slope(params, S_FAMILY, sq, 0, model=model),
        "reference",
    )
    rec.expect(
        "slope.boundary.scalar_route",
        kodaira_slope_limit(params, S_FAMILY, sq),
        kodaira_slope(params, S_FAMILY, sq, 0, model=model),
        "derived",
    )
    c_half = Fraction(1, 2)
    rec.expect(
        "quotient_slope.boundary.c=1/2",
        Fraction(-3, r),
        kodaira_quotient_slope(params, S_FAMILY, sq, 0, c_half, model=model),
        "reference",
    )
    rec.expect(
        "quotient_slope.boundary.scalar_route",
        kodaira_quotient_limit(params, S_FAMILY, sq, c_half),
        kodaira_quotient_slope(params, S_FAMILY, sq, 0, c_half, model=model),
        "derived",
    )

    # c-window at the boundary: solve -3/(2cr) < mu_boundary by hand
    endpoint = Fraction(3 * q, 4 * r * q + 2 * (r - 1) * (g - 1))
    window = kodaira_window_c(
        params, sq, 0, SeshadriBound(lower=Fraction(1), note="boundary-limit"), tol
    )
    rec.expect_true(
        "window_c.boundary",
        _window_equals(window.intervals, Fraction(0), endpoint),
        f"intervals={[str(iv) for iv in window.intervals]} expected (0, {endpoint})",
        "derived",
    )
    rec.expect_true(
        "window_c.endpoint_below_3/4",
        endpoint < Fraction(3, 4),
        f"endpoint={endpoint}",
        "derived",
    )

    # linearity of the eps perturbation
    base = kodaira_slope(params, S_FAMILY, sq, 0, model=model)
    ratios = [
        (kodaira_slope(params, S_FAMILY, sq, Fraction(1, 10**n), model=model) - base)
        * Fraction(10**n)
        for n in (3, 4, 5)
    ]
    scale = min(abs(x) for x in ratios)
    spread_ok = scale != 0 and max(ratios) - min(ratios) < scale / 10
    rec.expect_true(
        "slope.eps_linearity",
        spread_ok,
        f"ratios={[str(x) for x in ratios]}",
        "derived",
    )

    if k is not None:
        margin = residual_boundary_margin(q, k, g)
        rec.expect_true(
            "residual_margin.holds", margin.holds, f"margin={margin.margin}", "reference"
        )
        rec.expect_true(
            "residual_margin.dominates_floor",
            margin.margin > margin.floor > 0,
            f"margin={margin.margin} floor={margin.floor}",
            "derived",
        )
        t0 = Fraction(q, k - 1)
        rec.expect(
            "ample_certificate.t_boundary",
            AmpleStatus.AMPLE_CERTIFIED,
            ample_cover_polarization(params, t0, Fraction(1, 1000)).status,
            "reference",
        )
        rec.expect(
            "seshadri.residual_unit_bound",
            Fraction(1),
            seshadri_lower_bound_residual(params, t0, Fraction(1, 100)).lower,
            "reference",
        )
        rec.expect(
            "slope.t_family.scalar_route",
            kodaira_slope_limit(params, T_FAMILY, t0 + 1),
            kodaira_slope(params, T_FAMILY, t0 + 1, 0, model=model),
            "derived",
        )
        rec.expect(
            "quotient_slope.t_family.scalar_route",
            kodaira_quotient_limit(params, T_FAMILY, t0 + 1, 1),
            kodaira_quotient_slope(params, T_FAMILY, t0 + 1, 0, 1, model=model),
            "derived",
        )

    return VerificationSuiteResult(
        suite="kodaira",
        parameters={"q": q, "r": r, "group_order": group_order, "k": k, "d": params.d},
        checks=tuple(rec.checks),
    )


def suite_jflow(
    q: int = 2, s: RationalLike | None = None, tol: RationalLike = DEFAULT_TOL
) -> VerificationSuiteResult:
    """The J-flow convergence threshold and its cone-test cross-check."""
    tol = as_fraction(tol)
    params = ProductSurfaceParams(q=q)
    model = product_surface(params)
    f = model.named("f")
    dp = model.named("delta_prime")
    rec = CheckRecorder()

    def alpha_checks(s_val: Fraction, label: str) -> None:
        L = s_val * f + dp
        alpha = weinkove_alpha(model, L)
        expected_alpha = 2 * (2 * q - 2) * ((s_val * s_val + q) * f + 2 * s_val * dp)
        rec.expect(f"alpha.closed_form.{label}", expected_alpha, alpha, "reference")
        direct = weinkove_threshold(q, s_val)
        expected_status = (
            AmpleStatus.AMPLE if s_val * s_val + q > 2 * q * s_val else AmpleStatus.NOT_AMPLE
        )
        rec.expect(f"threshold.sign_test.{label}", expected_status, direct.status, "direct")
        cone = ample_in_plane(
            params, alpha.coefficient("f"), alpha.coefficient("delta_prime")
        )
        rec.expect(f"threshold.cone_agreement.{label}", direct.status, cone.status, "derived")

    if s is not None:
        s = as_fraction(s)
        if s <= q:
            raise ParamError(f"s must exceed q={q}")
        alpha_checks(s, f"s={s}")
    alpha_checks(Fraction(2 * q), f"s={2 * q}")

    # enclosure of the flip point q + sqrt(q^2 - q): right root of s^2 - 2qs + q
    profile = quadratic_negativity(1, -2 * q, q, tol)
    flip = profile.negativity_set[-1].hi
    rec.expect_true(
        "flip.enclosure_width",
        flip is not None and not isinstance(flip, Fraction) and flip.width <= tol,
        f"flip={flip}",
        "derived",
    )
    if flip is not None and not isinstance(flip, Fraction):
        rec.expect(
            "flip.below",
            AmpleStatus.NOT_AMPLE,
            weinkove_threshold(q, flip.lo).status,
            "derived",
        )
        rec.expect(
            "flip.above",
            AmpleStatus.AMPLE,
            weinkove_threshold(q, flip.hi).status,
            "derived",
        )

    return VerificationSuiteResult(
        suite="jflow",
        parameters={"q": q, "s": None if s is None else str(s)},
        checks=tuple(rec.checks),
    )


def suite_all(tol: RationalLike = DEFAULT_TOL) -> list[VerificationSuiteResult]:
    """Default parameter sets covering every statement family."""
    return [
        suite_product(q=2, tol=tol),
        suite_product(q=9, k=3, tol=tol),
        suite_kodaira(q=3, r=2, group_order=2, tol=tol),
        suite_kodaira(q=9, r=2, group_order=2, k=3, tol=tol),
        suite_jflow(q=2, tol=tol),
        suite_jflow(q=9, tol=tol),
    ]
