"""Slopes, quotient slopes, destabilization verdicts, and windows.

For a polarized surface (X, L) and a curve class Z the two quantities

    mu(X, L)      = -(K.L) / L^2
    mu_c(O_Z, L)  = 3(2 L.Z - c(K.Z + Z^2)) / (2c(3 L.Z - c Z^2))

decide slope semistability: (X, L) is destabilized by Z whenever
mu_c < mu for some admissible 0 < c <= epsilon(Z, L).  Everything here
is computed exactly on the Gram-matrix models; the classical closed
forms are kept alongside as independent cross-check oracles.

Clearing the (positive) quotient-slope denominator turns ``mu_c < mu``
into a quadratic inequality in c, and fixing c turns the product-surface
case into a cubic inequality in the polarization parameter s that is
convex on the relevant ray; both are resolved by the exact machinery in
:mod:`slopestab.polysign`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import (
    DegeneratePolarization,
    DegenerateQuotientSlope,
    NotAmplePolarization,
    ParamError,
)
from .lattice import DivisorClass, SurfaceModel, pair
from .polysign import (
    OpenInterval,
    clip_pieces,
    convex_cubic_negativity,
    first_point_below,
    poly_add,
    poly_eval,
    poly_mul,
    poly_scale,
    _quadratic_pieces,
)
from .positivity import AmpleStatus, AmpleVerdict, SeshadriBound
from .rationals import DEFAULT_TOL, RationalLike, as_fraction, sign
from .surfaces import KodairaParams, ProductSurfaceParams, kodaira_surface

S_FAMILY = "s_family"  # value * f + delta_prime (+ eps * K)
T_FAMILY = "t_family"  # value * f - delta_prime (+ eps * K)


# ---------------------------------------------------------------------------
# slopes


def slope(model: SurfaceModel, L: DivisorClass) -> Fraction:
    """-(K.L) / L^2, exactly."""
    denom = pair(L, L)
    if denom == 0:
        raise DegeneratePolarization("polarization has zero self-intersection")
    return -pair(model.canonical, L) / denom


def quotient_slope(
    model: SurfaceModel, Z: DivisorClass, L: DivisorClass, c: RationalLike
) -> Fraction:
    """3(2 L.Z - c(K.Z + Z^2)) / (2c(3 L.Z - c Z^2)), exactly."""
    c = as_fraction(c)
    if c <= 0:
        raise ParamError("c must be positive")
    a = pair(L, Z)
    b = pair(model.canonical, Z)
    z2 = pair(Z, Z)
    denom = 2 * c * (3 * a - c * z2)
    if denom == 0:
        raise DegenerateQuotientSlope("quotient-slope denominator vanishes")
    return 3 * (2 * a - c * (b + z2)) / denom


# ---------------------------------------------------------------------------
# destabilization verdict


@dataclass(frozen=True)
class SlopeReport:
    mu: Fraction
    mu_c: Fraction
    c: Fraction
    seshadri: SeshadriBound
    destabilized: bool
    admissible: bool
    surface_id: str
    polarization: str
    subscheme: str
    flags: tuple[str, ...] = ()


def destabilizes(
    model: SurfaceModel,
    Z: DivisorClass,
    L: DivisorClass,
    c: RationalLike,
    seshadri: SeshadriBound,
) -> SlopeReport:
    """Exact verdict: mu_c < mu at an admissible c.

    Admissibility is certified only through the Seshadri lower bound;
    a c above the bound yields destabilized=False with an explicit flag
    rather than an uncertified claim.
    """
    c = as_fraction(c)
    mu = slope(model, L)
    mu_c = quotient_slope(model, Z, L, c)
    admissible = seshadri.certified and c <= seshadri.lower
    flags = [] if admissible else ["inadmissible c"]
    if seshadri.note:
        flags.append(seshadri.note)
    return SlopeReport(
        mu=mu,
        mu_c=mu_c,
        c=c,
        seshadri=seshadri,
        destabilized=(mu_c < mu) and admissible,
        admissible=admissible,
        surface_id=model.surface_id,
        polarization=L.render(),
        subscheme=Z.render(),
        flags=tuple(flags),
    )


# ---------------------------------------------------------------------------
# instability windows


@dataclass(frozen=True)
class StabilityWindow:
    variable: str  # "c", "s", or "t"
    intervals: tuple[OpenInterval, ...]
    context: dict

    @property
    def is_empty(self) -> bool:
        return not self.intervals


def instability_window_c(
    model: SurfaceModel,
    Z: DivisorClass,
    L: DivisorClass,
    seshadri: SeshadriBound,
    tol: RationalLike = DEFAULT_TOL,
) -> StabilityWindow:
    """The exact set of admissible c with mu_c(Z) < mu.

    mu_c < mu is cleared against the positive denominator 2c(3 L.Z - c Z^2)
    into a quadratic in c; the resulting negativity set is intersected
    with (0, seshadri.lower] and with the region where the denominator
    really is positive.
    """
    tol = as_fraction(tol)
    mu = slope(model, L)
    a = pair(L, Z)
    b = pair(model.canonical, Z)
    z2 = pair(Z, Z)
    if a == 0 and z2 == 0:
        raise DegenerateQuotientSlope("quotient-slope denominator vanishes identically")

    # region of c > 0 where 3a - c*z2 > 0
    pos_lo = Fraction(0)
    pos_hi: Optional[Fraction] = None
    if z2 > 0:
        if a <= 0:
            raise DegenerateQuotientSlope("denominator is nowhere positive for c > 0")
        pos_hi = 3 * a / z2
    elif z2 < 0:
        if a < 0:
            pos_lo = 3 * a / z2
    elif a < 0:  # z2 == 0
        raise DegenerateQuotientSlope("denominator is nowhere positive for c > 0")

    cap = seshadri.lower
    flags = []
    hi_bound = cap
    if pos_hi is not None and pos_hi < cap:
        hi_bound = pos_hi
        flags.append("window limited by the denominator-positivity region")
    if pos_lo > 0:
        flags.append("denominator positive only above a threshold")
    if hi_bound <= pos_lo:
        raise DegenerateQuotientSlope("no admissible c with a positive denominator")

    # mu_c < mu  <=>  (2 mu z2) c^2 - (3(b + z2) + 6 mu a) c + 6a < 0
    q2 = 2 * mu * z2
    q1 = -3 * (b + z2) - 6 * mu * a
    q0 = 6 * a
    if q2 == 0 and q1 == 0 and q0 == 0:
        intervals: tuple[OpenInterval, ...] = ()
    else:
        f = lambda x: sign(poly_eval((q0, q1, q2), x))
        pieces = _quadratic_pieces(q2, q1, q0, tol)
        intervals = clip_pieces(pieces, pos_lo, hi_bound, f)
        if any(iv.hi == hi_bound for iv in intervals) and f(hi_bound) < 0:
            flags.append("window truncated at the admissibility cap")

    context = {
        "surface": model.surface_id,
        "polarization": L.render(),
        "subscheme": Z.render(),
        "cap": cap,
        "quadratic": (q2, q1, q0),
        "flags": tuple(flags),
    }
    return StabilityWindow("c", intervals, context)


def _product_window_poly(q: int, c: Fraction) -> tuple[Fraction, ...]:
    """Coefficients (ascending) of the cubic F(s) whose negativity on
    s > q is exactly ``mu_c(diagonal) < mu`` on the product surface."""
    g = Fraction(2 * q - 2)
    two_a = (Fraction(-4 * q), Fraction(4))  # 2 * L.Z = 4(s - q)
    three_a = (Fraction(-6 * q), Fraction(6))
    s2_minus_q = (Fraction(-q), Fraction(0), Fraction(1))
    term1 = poly_scale(poly_mul(poly_add(two_a, (-c * g,)), s2_minus_q), Fraction(3))
    term2 = poly_mul((Fraction(0), 2 * c * g), poly_add(three_a, (c * g,)))
    return poly_add(term1, term2)


def instability_window_s(
    params: ProductSurfaceParams,
    c: RationalLike,
    search_extent: RationalLike,
    tol: RationalLike = DEFAULT_TOL,
) -> StabilityWindow:
    """Exact set of s in (q, q + search_extent] destabilized by the diagonal.

    The comparison clears both positive denominators into a cubic in s
    which is convex on [q, oo), so it has at most one sign change there;
    for c < 3/4 the window is nonempty with left endpoint exactly q.
    The unit Seshadri bound covers admissibility for every c < 1.
    """
    c = as_fraction(c)
    extent = as_fraction(search_extent)
    tol = as_fraction(tol)
    if c <= 0:
        raise ParamError("c must be positive")
    if c >= 1:
        raise ParamError("c must stay below the certified unit Seshadri bound")
    if extent < 0:
        raise ParamError("search extent cannot be negative")
    q = Fraction(params.q)
    context = {
        "surface": f"CxC(q={params.q})",
        "subscheme": "diagonal",
        "c": c,
        "search_extent": extent,
        "truncated": False,
    }
    if extent == 0:
        return StabilityWindow("s", (), context)
    coeffs = _product_window_poly(params.q, c)
    bound = q + extent
    intervals = convex_cubic_negativity(coeffs, q, bound, tol)
    context["truncated"] = any(
        isinstance(iv.hi, Fraction) and iv.hi == bound for iv in intervals
    )
    return StabilityWindow("s", intervals, context)


def product_destabilization_witness(
    params: ProductSurfaceParams,
    c: RationalLike,
    search_extent: RationalLike,
    tol: RationalLike = DEFAULT_TOL,
) -> Optional[Fraction]:
    """A rational s > q certified inside the instability window, if any."""
    window = instability_window_s(params, c, search_extent, tol)
    if window.is_empty:
        return None
    c = as_fraction(c)
    coeffs = _product_window_poly(params.q, c)
    f = lambda x: sign(poly_eval(coeffs, x))
    q = Fraction(params.q)
    return first_point_below(f, q, q + as_fraction(search_extent))


# ---------------------------------------------------------------------------
# polarizations and exact slopes on the cyclic cover


def kodaira_polarization(
    model: SurfaceModel, family: str, value: RationalLike, eps: RationalLike
) -> DivisorClass:
    """value*f +/- delta_prime + eps*K on the cyclic-cover model."""
    value, eps = as_fraction(value), as_fraction(eps)
    if eps < 0:
        raise ParamError("eps must be nonnegative")
    f = model.named("f")
    dp = model.named("delta_prime")
    if family == T_FAMILY:
        base = value * f - dp
    elif family == S_FAMILY:
        base = value * f + dp
    else:
        raise ParamError(f"unknown polarization family {family!r}")
    if eps == 0:
        return base
    return base + eps * model.canonical


def kodaira_slope(
    params: KodairaParams,
    family: str,
    value: RationalLike,
    eps: RationalLike,
    model: Optional[SurfaceModel] = None,
) -> Fraction:
    """Exact slope on the cyclic cover, eps term included without truncation."""
    model = model or kodaira_surface(params)
    L = kodaira_polarization(model, family, value, eps)
    return slope(model, L)


def kodaira_quotient_slope(
    params: KodairaParams,
    family: str,
    value: RationalLike,
    eps: RationalLike,
    c: RationalLike = 1,
    model: Optional[SurfaceModel] = None,
) -> Fraction:
    """Exact quotient slope on the cyclic cover.

    The t-family is measured against the residual pullback at c = 1
    only; the s-family against the diagonal pullback at any c > 0.
    """
    c = as_fraction(c)
    model = model or kodaira_surface(params)
    L = kodaira_polarization(model, family, value, eps)
    if family == T_FAMILY:
        if c != 1:
            raise ParamError("the residual quotient slope is evaluated at c = 1 only")
        Z = model.named("residual")
    else:
        Z = model.named("diagonal")
    return quotient_slope(model, Z, L, c)


def kodaira_window_c(
    params: KodairaParams,
    s: RationalLike,
    eps: RationalLike,
    seshadri: SeshadriBound,
    tol: RationalLike = DEFAULT_TOL,
) -> StabilityWindow:
    """Instability window in c for the diagonal pullback on the cyclic cover."""
    model = kodaira_surface(params)
    L = kodaira_polarization(model, S_FAMILY, s, eps)
    Z = model.named("diagonal")
    return instability_window_c(model, Z, L, seshadri, tol)


# ---------------------------------------------------------------------------
# closed-form cross-check oracles (scalar formulas, no Gram matrices)


def product_slope_closed(q: int, s: RationalLike) -> Fraction:
    """-s(2q-2)/(s^2-q) on the product surface."""
    s = as_fraction(s)
    denom = s * s - q
    if denom == 0:
        raise DegeneratePolarization("s^2 = q")
    return -s * (2 * q - 2) / denom


def product_quotient_closed(q: int, s: RationalLike, c: RationalLike) -> Fraction:
    """3(4s-4q-c(2q-2)) / (2c(6s-6q-2c+2cq)) for the diagonal."""
    s, c = as_fraction(s), as_fraction(c)
    denom = 2 * c * (6 * s - 6 * q - 2 * c + 2 * c * q)
    if denom == 0:
        raise DegenerateQuotientSlope("denominator vanishes")
    return 3 * (4 * s - 4 * q - c * (2 * q - 2)) / denom


def kodaira_slope_limit(params: KodairaParams, family: str, value: RationalLike) -> Fraction:
    """The eps -> 0 limit of the cover slope, from the scalar expansion."""
    v = as_fraction(value)
    q, r, g = params.q, params.r, params.group_order
    denom = v * v - q
    if denom == 0:
        raise DegeneratePolarization("value^2 = q")
    base = -v * (2 * q - 2) / denom
    if family == T_FAMILY:
        correction = Fraction(r - 1) * ((v + 1) * g + q - 1) / (r * denom)
    elif family == S_FAMILY:
        correction = Fraction(r - 1) * ((v - 1) * g - q + 1) / (r * denom)
    else:
        raise ParamError(f"unknown polarization family {family!r}")
    return base - correction


def kodaira_quotient_limit(
    params: KodairaParams, family: str, value: RationalLike, c: RationalLike = 1
) -> Fraction:
    """The eps -> 0 limit of the cover quotient slope, from the scalar expansion."""
    v, c = as_fraction(value), as_fraction(c)
    q, r, g = params.q, params.r, params.group_order
    if family == T_FAMILY:
        if c != 1:
            raise ParamError("the residual quotient slope is evaluated at c = 1 only")
        if params.k is None:
            raise ParamError("the residual class needs the branched-cover degree k")
        k = params.k
        a0 = 2 * v * (k - 1) - 2 * q
        b0 = 2 * (k - 1) * (2 * q - 2)
        c0 = 2 * (k - 1) ** 2 - 2 * q
        denom = 2 * (3 * a0 - c0)
        if denom == 0:
            raise DegenerateQuotientSlope("denominator vanishes")
        upstairs = 3 * (2 * a0 - (b0 + c0)) / denom
        corr_denom = 2 * r * (3 * v * (k - 1) - (k - 1) ** 2 - 2 * q)
        if corr_denom == 0:
            raise DegenerateQuotientSlope("correction denominator vanishes")
        return upstairs - Fraction(3 * (r - 1)) * (k * g + q - 1) / corr_denom
    if family == S_FAMILY:
        upstairs = product_quotient_closed(q, v, c)
        corr_denom = 2 * r * (3 * v - 3 * q - c * (1 - q))
        if corr_denom == 0:
            raise DegenerateQuotientSlope("correction denominator vanishes")
        return upstairs - Fraction(3 * (r - 1)) * (1 - q) / corr_denom
    raise ParamError(f"unknown polarization family {family!r}")


# ---------------------------------------------------------------------------
# residual destabilization margin at the nef boundary


@dataclass(frozen=True)
class BoundaryMargin:
    """Outcome of the exact inequality guaranteeing the residual window.

    ``margin`` is rhs - lhs of

        2((k-1)^2/q) ((q/(k-1) + 1)|G| + q - 1)  <  3(k|G| + q - 1)

    evaluated at the nef boundary t = q/(k-1); the hypothesis
    (k-1)^2 < q forces margin > floor = k|G| + q - 1 > 0.
    """

    holds: bool
    margin: Fraction
    floor: Fraction
    lhs: Fraction
    rhs: Fraction


def residual_boundary_margin(q: int, k: int, group_order: int) -> BoundaryMargin:
    if k - 1 < 2:
        raise ParamError("branched-cover degree needs k - 1 >= 2")
    if (k - 1) ** 2 >= q:
        raise ParamError("branched-cover degree needs (k - 1)^2 < q")
    if group_order < 1:
        raise ParamError("group order must be positive")
    g = group_order
    lhs = Fraction(2 * (k - 1) ** 2, q) * ((Fraction(q, k - 1) + 1) * g + q - 1)
    rhs = Fraction(3) * (k * g + q - 1)
    floor = Fraction(k * g + q - 1)
    margin = rhs - lhs
    return BoundaryMargin(holds=lhs < rhs, margin=margin, floor=floor, lhs=lhs, rhs=rhs)


# ---------------------------------------------------------------------------
# J-flow convergence threshold (Weinkove's ampleness condition)


def weinkove_threshold(q: int, s: RationalLike) -> AmpleVerdict:
    """Whether 2(K.L)L - (L^2)K is ample for L = s*f + delta_prime, s > q.

    Reduces to the exact sign of s^2 + q - 2qs; the flip happens at the
    irrational s = q + sqrt(q^2 - q), which is never materialized.
    """
    s = as_fraction(s)
    if q < 2:
        raise ParamError("genus q must be >= 2")
    if s <= q:
        raise NotAmplePolarization(f"s must exceed q={q}")
    value = s * s + q - 2 * q * s
    if value > 0:
        return AmpleVerdict(AmpleStatus.AMPLE, f"s^2 + q > 2qs: {s * s + q} > {2 * q * s}")
    return AmpleVerdict(AmpleStatus.NOT_AMPLE, f"s^2 + q <= 2qs at s={s}")


def weinkove_alpha(model: SurfaceModel, L: DivisorClass) -> DivisorClass:
    """The J-flow test class 2(K.L) L - (L^2) K."""
    K = model.canonical
    return 2 * pair(K, L) * L - pair(L, L) * K
