"""Ampleness tests, ample-cone section data, and Seshadri bounds.

On the product surface the cone is known exactly: in the (f, delta_prime)
plane a class x*f + y*delta_prime is ample iff

    y > 0 and x > q*y        (the s-family side, threshold q), or
    y = 0 and x > 0          (f itself is a positive multiple of K), or
    y < 0 and x > s_C*(-y)   (the t-family side, threshold s_C).

The t-family threshold s_C is exact in the branched-cover and
perfect-square modes and only bounded in the others, so t-side verdicts
may be tri-state.  On the cyclic cover, ampleness is only ever
*certified* through sufficient conditions (nef pullback plus a positive
multiple of the ample canonical class), never refuted.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional

from .errors import NotAmplePolarization, ParamError
from .polysign import bisect_root
from .rationals import DEFAULT_TOL, RationalLike, as_fraction, sign
from .surfaces import KodairaParams, ProductSurfaceParams


class AmpleStatus(enum.Enum):
    AMPLE = "Ample"
    NOT_AMPLE = "NotAmple"
    AMPLE_CERTIFIED = "AmpleCertified"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class AmpleVerdict:
    status: AmpleStatus
    certificate: str

    @property
    def is_ample(self) -> bool:
        return self.status in (AmpleStatus.AMPLE, AmpleStatus.AMPLE_CERTIFIED)

    @property
    def is_exact(self) -> bool:
        return self.status in (AmpleStatus.AMPLE, AmpleStatus.NOT_AMPLE)


@dataclass(frozen=True)
class SeshadriBound:
    """Certified information about a Seshadri constant.

    ``lower`` is always a true lower bound when ``certified`` is set;
    ``exact`` means lower == upper == the constant.
    """

    lower: Fraction
    upper: Optional[Fraction] = None
    exact: bool = False
    certified: bool = True
    note: str = ""

    def __post_init__(self):
        object.__setattr__(self, "lower", as_fraction(self.lower))
        if self.upper is not None:
            object.__setattr__(self, "upper", as_fraction(self.upper))
        if self.lower < 0:
            raise ParamError("Seshadri lower bound cannot be negative")
        if self.exact and self.upper != self.lower:
            raise ParamError("exact Seshadri bound needs upper == lower")

    def scaled(self, m: RationalLike) -> "SeshadriBound":
        """The bound for the polarization scaled by m > 0."""
        m = as_fraction(m)
        if m <= 0:
            raise ParamError("scale factor must be positive")
        upper = None if self.upper is None else m * self.upper
        return replace(self, lower=m * self.lower, upper=upper)


# ---------------------------------------------------------------------------
# product-surface ampleness


def ample_ls(q: int, s: RationalLike) -> AmpleVerdict:
    """Exact test for the s-family s*f + delta_prime: ample iff s > q."""
    if q < 2:
        raise ParamError("genus q must be >= 2")
    s = as_fraction(s)
    if s > q:
        return AmpleVerdict(AmpleStatus.AMPLE, f"s > q: {s} > {q}")
    return AmpleVerdict(
        AmpleStatus.NOT_AMPLE, f"pairs non-positively with the diagonal: 2s - 2q <= 0 at s={s}"
    )


def ample_Lt(params: ProductSurfaceParams, t: RationalLike) -> AmpleVerdict:
    """Test for the t-family t*f - delta_prime; tri-state if s_C is only bounded."""
    t = as_fraction(t)
    q = params.q
    lo, hi = params.sc_bounds()
    exact = params.sc_exact()
    if exact is not None:
        if t > exact:
            return AmpleVerdict(AmpleStatus.AMPLE, f"t > threshold: {t} > {exact}")
        return AmpleVerdict(AmpleStatus.NOT_AMPLE, f"t <= threshold {exact}")
    if t <= 0 or t * t <= q:
        # necessity: self-intersection 2(t^2 - q) must be positive
        return AmpleVerdict(AmpleStatus.NOT_AMPLE, "self-intersection is non-positive")
    if hi is not None and t > hi:
        return AmpleVerdict(
            AmpleStatus.AMPLE_CERTIFIED, f"t above certified upper bound {hi}"
        )
    if lo is not None and t < lo:
        return AmpleVerdict(AmpleStatus.NOT_AMPLE, f"t below certified lower bound {lo}")
    return AmpleVerdict(AmpleStatus.UNKNOWN, "threshold not resolved at this t")


def ample_in_plane(
    params: ProductSurfaceParams, x: RationalLike, y: RationalLike
) -> AmpleVerdict:
    """Classify x*f + y*delta_prime by normalizing into one of the families."""
    x, y = as_fraction(x), as_fraction(y)
    q = params.q
    if y > 0:
        if x > q * y:
            return AmpleVerdict(AmpleStatus.AMPLE, "s-family: x/y > q")
        return AmpleVerdict(AmpleStatus.NOT_AMPLE, "s-family: x/y <= q")
    if y == 0:
        if x > 0:
            return AmpleVerdict(AmpleStatus.AMPLE, "positive multiple of f")
        return AmpleVerdict(AmpleStatus.NOT_AMPLE, "not a positive multiple of f")
    return ample_Lt(params, x / (-y))


def ample_ls_minus_diagonal(
    params: ProductSurfaceParams, s: RationalLike, c: RationalLike
) -> AmpleVerdict:
    """Ampleness of s*f + delta_prime - c*(diagonal) = (s-c)f + (1-c)delta_prime."""
    s, c = as_fraction(s), as_fraction(c)
    return ample_in_plane(params, s - c, 1 - c)


# ---------------------------------------------------------------------------
# Seshadri bounds


def seshadri_diagonal(params: ProductSurfaceParams, s: RationalLike) -> SeshadriBound:
    """Seshadri constant of the diagonal for the polarization s*f + delta_prime.

    The constant equals (s + s_C)/(1 + s_C), which is decreasing in s_C
    for s > 1, so an upper bound on s_C gives a lower Seshadri bound and
    vice versa.  Whatever the mode, the constant is at least 1: removing
    c < 1 diagonals leaves (s-c)f + (1-c)delta_prime, which stays ample.
    """
    s = as_fraction(s)
    q = params.q
    if s <= q:
        raise NotAmplePolarization(f"s must exceed q={q} for an ample polarization")
    lo_sc, hi_sc = params.sc_bounds()

    def value_at(sc: Fraction) -> Fraction:
        return (s + sc) / (1 + sc)

    exact_sc = params.sc_exact()
    if exact_sc is not None:
        v = value_at(exact_sc)
        return SeshadriBound(lower=v, upper=v, exact=True, note="threshold known exactly")
    lower = Fraction(1) if hi_sc is None else value_at(hi_sc)
    upper = None if lo_sc is None else value_at(lo_sc)
    note = (
        "from certified threshold bounds"
        if hi_sc is not None
        else "unit bound: (s-c)f + (1-c)delta_prime stays ample for c < 1"
    )
    return SeshadriBound(lower=lower, upper=upper, exact=False, note=note)


def boundary_seshadri_diagonal(params: ProductSurfaceParams) -> SeshadriBound:
    """Limit bound used for boundary-window computations at s = q.

    The diagonal's Seshadri constant exceeds 1 for every s > q, so 1 is
    a safe cap when evaluating the window at the nef boundary itself.
    """
    return SeshadriBound(
        lower=Fraction(1),
        upper=None,
        exact=False,
        note="boundary-limit: unit bound valid for every s > q",
    )


def seshadri_lower_bound_residual(
    params: KodairaParams, t: RationalLike, eps: RationalLike
) -> SeshadriBound:
    """Unit lower bound for the residual pullback on the cyclic cover.

    Valid in the certified ample region t >= q/(k-1), eps > 0, where the
    polarization minus the residual class is a nef pullback plus a
    positive multiple of the ample canonical class.
    """
    t, eps = as_fraction(t), as_fraction(eps)
    if params.k is None:
        raise ParamError("the residual class needs the branched-cover degree k")
    if eps <= 0:
        raise ParamError("eps must be positive")
    threshold = Fraction(params.q, params.k - 1)
    if t < threshold:
        return SeshadriBound(
            lower=Fraction(0),
            certified=False,
            note="outside the certified ample region; no bound claimed",
        )
    return SeshadriBound(
        lower=Fraction(1),
        exact=False,
        note="(t - k + 1) * f pulls back nef; eps * K is ample",
    )


def seshadri_lower_bound_diagonal_cover(
    params: KodairaParams, s: RationalLike, eps: RationalLike
) -> SeshadriBound:
    """Unit lower bound for the diagonal pullback on the cyclic cover.

    For s > 1 and eps > 0 the polarization minus the diagonal pullback
    is (s-1)*f pulled back (nef) plus eps*K (ample).  At eps = 0 or
    s = q the same bound is reported as a boundary limit.
    """
    s, eps = as_fraction(s), as_fraction(eps)
    if s < 1 or eps < 0:
        return SeshadriBound(
            lower=Fraction(0),
            certified=False,
            note="outside the certified region; no bound claimed",
        )
    if eps > 0 and s > 1:
        return SeshadriBound(
            lower=Fraction(1),
            exact=False,
            note="(s - 1) * f pulls back nef; eps * K is ample",
        )
    return SeshadriBound(
        lower=Fraction(1),
        exact=False,
        note="boundary-limit: unit bound valid for every s > 1, eps > 0",
    )


def ample_cover_polarization(
    params: KodairaParams, t: RationalLike, eps: RationalLike
) -> AmpleVerdict:
    """Certify t*f - delta_prime + eps*K on the cyclic cover.

    Sufficient condition only: for t >= q/(k-1) the pullback is nef and
    eps > 0 adds a positive multiple of the ample canonical class.  The
    exact ample threshold on the cover is not computed.
    """
    t, eps = as_fraction(t), as_fraction(eps)
    if params.k is None:
        raise ParamError("certification needs the branched-cover degree k")
    threshold = Fraction(params.q, params.k - 1)
    if eps > 0 and t >= threshold:
        return AmpleVerdict(
            AmpleStatus.AMPLE_CERTIFIED,
            f"nef pullback (t >= {threshold}) plus eps*K with eps={eps} > 0",
        )
    return AmpleVerdict(
        AmpleStatus.UNKNOWN, "no certificate below the nef pullback region or at eps=0"
    )


# ---------------------------------------------------------------------------
# ample cone section


@dataclass(frozen=True)
class ConeRay:
    """A boundary ray of the cone section, with its family threshold."""

    family: str  # "s_family" or "t_family"
    threshold_lo: Fraction
    threshold_hi: Optional[Fraction]  # None when no certified upper bound exists


@dataclass(frozen=True)
class ConeCell:
    f_coeff: Fraction
    delta_coeff: Fraction
    membership: str  # "1", "0", or "unknown"


def cone_section(
    params: ProductSurfaceParams,
    extent: RationalLike,
    samples: int,
    tol: RationalLike = DEFAULT_TOL,
) -> tuple[tuple[ConeRay, ...], tuple[ConeCell, ...]]:
    """Boundary rays plus a rasterized ample-membership grid.

    The grid covers f-coefficients in [0, extent] and delta_prime
    coefficients in [-extent, extent] with ``samples`` points per axis.
    """
    extent = as_fraction(extent)
    tol = as_fraction(tol)
    if extent <= 0:
        raise ParamError("extent must be positive")
    if samples < 2:
        raise ParamError("need at least 2 samples per axis")

    q = params.q
    rays = [ConeRay("s_family", Fraction(q), Fraction(q))]
    lo_sc, hi_sc = params.sc_bounds()
    if lo_sc is None:
        # universal lower bound sqrt(q): enclose it once, report the inner end
        f = lambda x: sign(x * x - q)
        enc = bisect_root(f, Fraction(0), Fraction(q), tol)
        lo_sc = enc if isinstance(enc, Fraction) else enc.lo
    rays.append(ConeRay("t_family", lo_sc, hi_sc))

    cells = []
    denom = samples - 1
    for i in range(samples):
        x = extent * i / denom
        for j in range(samples):
            y = -extent + 2 * extent * j / denom
            verdict = ample_in_plane(params, x, y)
            if verdict.status is AmpleStatus.UNKNOWN:
                membership = "unknown"
            else:
                membership = "1" if verdict.is_ample else "0"
            cells.append(ConeCell(x, y, membership))
    return tuple(rays), tuple(cells)
