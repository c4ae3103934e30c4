"""Exact sign analysis of low-degree rational polynomials.

Every ampleness and destabilization threshold in this package reduces to
the sign of a polynomial with rational coefficients: quadratics in the
Seshadri parameter c, and one convex cubic in the polarization parameter
s.  Rational roots are returned exactly; irrational roots are isolated
by bisection into :class:`RationalInterval` enclosures whose width is
bounded by a configurable tolerance.  All evaluations use exact rational
arithmetic, so every reported sign is certified.

Polynomials are coefficient tuples in ascending order: ``(a0, a1, ...)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from .errors import DegenerateInequality, ParamError
from .rationals import DEFAULT_TOL, RationalInterval, as_fraction, rational_sqrt, sign

Endpoint = Union[Fraction, RationalInterval]
SignFn = Callable[[Fraction], int]


# ---------------------------------------------------------------------------
# polynomial helpers


def poly_eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_derivative(coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(k * c for k, c in enumerate(coeffs) if k > 0)


def poly_mul(p: Sequence[Fraction], q: Sequence[Fraction]) -> tuple[Fraction, ...]:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return tuple(out)


def poly_add(p: Sequence[Fraction], q: Sequence[Fraction]) -> tuple[Fraction, ...]:
    n = max(len(p), len(q))
    return tuple(
        (p[i] if i < len(p) else Fraction(0)) + (q[i] if i < len(q) else Fraction(0))
        for i in range(n)
    )


def poly_scale(p: Sequence[Fraction], a: Fraction) -> tuple[Fraction, ...]:
    return tuple(a * c for c in p)


def _poly_mod(p: Sequence[Fraction], q: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Remainder of p by q (q nonzero leading coefficient)."""
    rem = list(p)
    dq = len(q) - 1
    lead = q[-1]
    while len(rem) - 1 >= dq and any(c != 0 for c in rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) - 1 < dq:
            break
        factor = rem[-1] / lead
        shift = len(rem) - 1 - dq
        for i, c in enumerate(q):
            rem[shift + i] -= factor * c
        rem.pop()
    while rem and rem[-1] == 0:
        rem.pop()
    return tuple(rem)


def _deflate(coeffs: Sequence[Fraction], root: Fraction) -> tuple[Fraction, ...]:
    """Exact synthetic division by (x - root); the remainder must vanish."""
    out = []
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * root + c
        out.append(acc)
    if out[-1] != 0:
        raise ParamError(f"{root} is not a root; cannot deflate")
    out.pop()
    return tuple(reversed(out))


# ---------------------------------------------------------------------------
# endpoints and intervals


def endpoint_inf(ep: Endpoint) -> Fraction:
    """Largest rational certified <= the value represented by ``ep``."""
    return ep.lo if isinstance(ep, RationalInterval) else ep


def endpoint_sup(ep: Endpoint) -> Fraction:
    """Smallest rational certified >= the value represented by ``ep``."""
    return ep.hi if isinstance(ep, RationalInterval) else ep


def endpoint_is_exact(ep: Endpoint) -> bool:
    return not isinstance(ep, RationalInterval)


@dataclass(frozen=True)
class OpenInterval:
    """An open interval (lo, hi); ``hi=None`` means unbounded above.

    Endpoints are exact rationals or enclosures bracketing an irrational
    threshold.
    """

    lo: Endpoint
    hi: Optional[Endpoint]

    def inner_point(self) -> Fraction:
        """A rational certified to lie strictly inside the interval."""
        lo = endpoint_sup(self.lo)
        if self.hi is None:
            return lo + 1
        hi = endpoint_inf(self.hi)
        if lo >= hi:
            raise ParamError("enclosures too wide to expose an interior point")
        return (lo + hi) / 2

    def __str__(self) -> str:
        hi = "inf" if self.hi is None else str(self.hi)
        return f"({self.lo}, {hi})"


@dataclass(frozen=True)
class QuadraticSignProfile:
    """Where a2*x^2 + a1*x + a0 is negative on x > 0."""

    a2: Fraction
    a1: Fraction
    a0: Fraction
    negativity_set: tuple[OpenInterval, ...]


# ---------------------------------------------------------------------------
# bisection


def bisect_root(f: SignFn, lo: Fraction, hi: Fraction, tol: Fraction) -> Endpoint:
    """Isolate the sign change of ``f`` on [lo, hi] to width <= tol.

    Requires f(lo) and f(hi) to have strictly opposite signs.  Returns an
    exact rational if a midpoint evaluates to zero, otherwise an
    enclosure.
    """
    slo, shi = f(lo), f(hi)
    if slo == 0:
        return lo
    if shi == 0:
        return hi
    if slo == shi:
        raise ParamError("bisection bracket does not straddle a sign change")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        smid = f(mid)
        if smid == 0:
            return mid
        if smid == slo:
            lo = mid
        else:
            hi = mid
    return RationalInterval(lo, hi)


def first_point_below(f: SignFn, lo: Fraction, hi: Fraction) -> Fraction:
    """A rational x in (lo, hi] with f(x) < 0, assuming such x accumulate at lo.

    Walks geometrically toward ``lo``; used to exhibit certified witness
    points just inside an instability window whose left endpoint is
    ``lo``.
    """
    step = hi - lo
    if step <= 0:
        raise ParamError("empty search range")
    x = hi
    while f(x) >= 0:
        step = step / 2
        x = lo + step
        if step.denominator > 2 ** 200:
            raise ParamError("no negative point found near the left endpoint")
    return x


# ---------------------------------------------------------------------------
# negativity pieces over the whole real line, then clipping


def _quadratic_pieces(
    a2: Fraction, a1: Fraction, a0: Fraction, tol: Fraction
) -> list[tuple[Optional[Endpoint], Optional[Endpoint]]]:
    """Open intervals (None = unbounded) where the quadratic is negative."""
    if a2 == 0:
        if a1 == 0:
            if a0 == 0:
                raise DegenerateInequality("all coefficients vanish")
            return [(None, None)] if a0 < 0 else []
        x0 = -a0 / a1
        return [(None, x0)] if a1 > 0 else [(x0, None)]

    disc = a1 * a1 - 4 * a2 * a0
    if disc < 0:
        return [(None, None)] if a2 < 0 else []
    if disc == 0:
        x0 = -a1 / (2 * a2)
        return [(None, x0), (x0, None)] if a2 < 0 else []

    sq = rational_sqrt(disc)
    if sq is not None:
        r1 = (-a1 - sq) / (2 * a2)
        r2 = (-a1 + sq) / (2 * a2)
        if r1 > r2:
            r1, r2 = r2, r1
        return [(r1, r2)] if a2 > 0 else [(None, r1), (r2, None)]

    # Irrational root pair: vertex v sits between them, and the half-width
    # w = sqrt(disc) / (2|a2|) satisfies w < max(1, w^2) exactly because
    # w is irrational.
    v = -a1 / (2 * a2)
    wsq = disc / (4 * a2 * a2)
    u = wsq if wsq >= 1 else Fraction(1)
    f = lambda x: sign(poly_eval((a0, a1, a2), x))
    e1 = bisect_root(f, v - u, v, tol)
    e2 = bisect_root(f, v, v + u, tol)
    if a2 > 0:
        return [(e1, e2)]
    return [(None, e1), (e2, None)]


def _split_enclosure_at(ep: RationalInterval, cut: Fraction, f: SignFn) -> Endpoint:
    """Refine an enclosure that straddles ``cut`` so it lands on one side.

    The enclosed value is a root of ``f``; evaluating f(cut) decides the
    side exactly (or reveals that cut itself is the root).
    """
    s_cut = f(cut)
    if s_cut == 0:
        return cut
    if s_cut == f(ep.lo):
        return RationalInterval(cut, ep.hi)
    return RationalInterval(ep.lo, cut)


def _max_with_bound(ep: Optional[Endpoint], bound: Fraction, f: SignFn) -> Endpoint:
    if ep is None:
        return bound
    if endpoint_is_exact(ep):
        return ep if ep > bound else bound
    if ep.lo >= bound:
        return ep
    if ep.hi <= bound:
        return bound
    resolved = _split_enclosure_at(ep, bound, f)
    return _max_with_bound(resolved, bound, f)


def _min_with_bound(
    ep: Optional[Endpoint], bound: Optional[Fraction], f: SignFn
) -> Optional[Endpoint]:
    if bound is None:
        return ep
    if ep is None:
        return bound
    if endpoint_is_exact(ep):
        return ep if ep < bound else bound
    if ep.hi <= bound:
        return ep
    if ep.lo >= bound:
        return bound
    resolved = _split_enclosure_at(ep, bound, f)
    return _min_with_bound(resolved, bound, f)


def _endpoint_strictly_below(lo: Endpoint, hi: Optional[Endpoint], f: SignFn) -> bool:
    """Whether the value of ``lo`` is strictly less than the value of ``hi``.

    Enclosures produced here always bracket their value strictly (the
    sign function is nonzero at enclosure endpoints), which makes every
    comparison against an exact rational decidable by one sign test.
    """
    if hi is None:
        return True
    if endpoint_is_exact(lo) and endpoint_is_exact(hi):
        return lo < hi
    if endpoint_is_exact(lo):
        if lo <= hi.lo:
            return True
        if lo >= hi.hi:
            return False
        s = f(lo)
        if s == 0:
            return False  # lo is exactly the enclosed value
        return s == f(hi.lo)  # same side as the left end: value is above lo
    if endpoint_is_exact(hi):
        if lo.hi <= hi:
            return True
        if lo.lo >= hi:
            return False
        s = f(hi)
        if s == 0:
            return False
        return s != f(lo.lo)  # opposite side: the enclosed value is below hi
    if lo.hi <= hi.lo:
        return True
    if hi.hi <= lo.lo:
        return False
    raise ParamError("overlapping root enclosures; tighten the tolerance")


def clip_pieces(
    pieces: list[tuple[Optional[Endpoint], Optional[Endpoint]]],
    lo_bound: Fraction,
    hi_bound: Optional[Fraction],
    f: SignFn,
) -> tuple[OpenInterval, ...]:
    """Intersect negativity pieces with the open window (lo_bound, hi_bound)."""
    out = []
    for plo, phi in pieces:
        lo = _max_with_bound(plo, lo_bound, f)
        hi = _min_with_bound(phi, hi_bound, f)
        if _endpoint_strictly_below(lo, hi, f):
            out.append(OpenInterval(lo, hi))
    return tuple(out)


# ---------------------------------------------------------------------------
# public quadratic interface


def sign_of_quadratic_at(
    a2: Fraction, a1: Fraction, a0: Fraction, x: Fraction
) -> int:
    """Exact sign of a2*x^2 + a1*x + a0."""
    a2, a1, a0, x = map(as_fraction, (a2, a1, a0, x))
    return sign(poly_eval((a0, a1, a2), x))


def quadratic_negativity(
    a2: Fraction, a1: Fraction, a0: Fraction, tol: Fraction = DEFAULT_TOL
) -> QuadraticSignProfile:
    """Describe {x > 0 : a2*x^2 + a1*x + a0 < 0} exactly.

    Rational roots (square discriminant) become exact endpoints;
    irrational roots become enclosures of width <= tol.
    """
    a2, a1, a0 = map(as_fraction, (a2, a1, a0))
    tol = as_fraction(tol)
    if tol <= 0:
        raise ParamError("tolerance must be positive")
    f = lambda x: sign(poly_eval((a0, a1, a2), x))
    pieces = _quadratic_pieces(a2, a1, a0, tol)
    intervals = clip_pieces(pieces, Fraction(0), None, f)
    return QuadraticSignProfile(a2, a1, a0, intervals)


# ---------------------------------------------------------------------------
# convex cubic negativity (used by the instability window in s)


def _cubic_discriminant(coeffs: Sequence[Fraction]) -> Fraction:
    a0, a1, a2, a3 = coeffs
    return (
        18 * a3 * a2 * a1 * a0
        - 4 * a2**3 * a0
        + a2**2 * a1**2
        - 4 * a3 * a1**3
        - 27 * a3**2 * a0**2
    )


def _repeated_root_pieces(
    coeffs: Sequence[Fraction],
) -> list[tuple[Optional[Endpoint], Optional[Endpoint]]]:
    """Negativity pieces of a cubic with vanishing discriminant.

    A repeated root of a rational cubic is rational, so the whole sign
    pattern is exact.
    """
    a0, a1, a2, a3 = coeffs
    d1 = poly_derivative(coeffs)
    rem = _poly_mod(coeffs, d1)
    if not rem:
        rho = -a2 / (3 * a3)  # triple root
        return [(None, rho)] if a3 > 0 else [(rho, None)]
    if len(rem) == 1:
        raise ParamError("discriminant is zero but no repeated root was found")
    rho = -rem[0] / rem[1]  # double root
    sigma = -a2 / a3 - 2 * rho  # remaining simple root
    if a3 > 0:
        # sign = sign(x - sigma) away from rho
        if rho < sigma:
            return [(None, rho), (rho, sigma)]
        return [(None, sigma)]
    if rho > sigma:
        return [(sigma, rho), (rho, None)]
    return [(sigma, None)]


def _grow_until_positive(
    poly: Sequence[Fraction], start: Fraction, step0: Fraction
) -> Fraction:
    x = start
    step = step0 if step0 > 0 else Fraction(1)
    while poly_eval(poly, x) <= 0:
        x += step
        step *= 2
    return x


def convex_cubic_negativity(
    coeffs: Sequence[Fraction],
    lo: Fraction,
    hi: Fraction,
    tol: Fraction = DEFAULT_TOL,
) -> tuple[OpenInterval, ...]:
    """Describe {x in (lo, hi] : F(x) < 0} for a cubic convex on [lo, oo).

    Requires a positive leading coefficient and F'' >= 0 at ``lo`` (the
    second derivative is increasing, so this certifies convexity on the
    whole ray).  Convexity caps the number of roots past ``lo`` at two,
    which keeps every step an exact sign argument.
    """
    coeffs = tuple(as_fraction(c) for c in coeffs)
    lo, hi, tol = as_fraction(lo), as_fraction(hi), as_fraction(tol)
    if len(coeffs) != 4 or coeffs[3] <= 0:
        raise ParamError("expected a cubic with positive leading coefficient")
    d1 = poly_derivative(coeffs)
    d2 = poly_derivative(d1)
    if poly_eval(d2, lo) < 0:
        raise ParamError("cubic is not convex on the requested ray")
    if tol <= 0:
        raise ParamError("tolerance must be positive")
    if hi <= lo:
        return ()

    f = lambda x: sign(poly_eval(coeffs, x))

    if _cubic_discriminant(coeffs) == 0:
        return clip_pieces(_repeated_root_pieces(coeffs), lo, hi, f)

    f_lo = poly_eval(coeffs, lo)
    f_hi = poly_eval(coeffs, hi)

    if f_lo < 0:
        # convexity: exactly one root to the right of lo
        if f_hi < 0:
            return (OpenInterval(lo, hi),)
        root = bisect_root(f, lo, hi, tol)
        return (OpenInterval(lo, root),)

    if f_lo == 0:
        quad = _deflate(coeffs, lo)
        fq = lambda x: sign(poly_eval(quad, x))
        pieces = _quadratic_pieces(quad[2], quad[1], quad[0], tol)
        return clip_pieces(pieces, lo, hi, fq)

    # f_lo > 0
    if poly_eval(d1, lo) >= 0:
        return ()  # nondecreasing and convex: stays positive

    # Bracket the unique minimizer m (d1 is increasing past lo).
    m1 = lo
    m2 = _grow_until_positive(d1, hi, hi - lo)
    while True:
        f_m1 = poly_eval(coeffs, m1)
        if f_m1 < 0:
            break
        if f_m1 == 0:
            quad = _deflate(coeffs, m1)
            fq = lambda x: sign(poly_eval(quad, x))
            pieces = _quadratic_pieces(quad[2], quad[1], quad[0], tol)
            return clip_pieces(pieces, m1, hi, fq)
        # support line at m1 bounds F from below on the whole ray
        if f_m1 + poly_eval(d1, m1) * (m2 - m1) > 0:
            return ()
        mid = (m1 + m2) / 2
        s_mid = sign(poly_eval(d1, mid))
        if s_mid == 0:
            f_min = poly_eval(coeffs, mid)
            if f_min >= 0:
                return ()
            m1 = mid
            break
        if s_mid < 0:
            m1 = mid
        else:
            m2 = mid

    # F(lo) > 0 > F(m1): two crossings straddle m1.
    if f_hi < 0:
        r1 = bisect_root(f, lo, hi, tol)
        return (OpenInterval(r1, hi),)
    if f_hi == 0:
        if m1 >= hi:
            return ()  # hi is the left crossing itself
        r1 = bisect_root(f, lo, m1, tol)
        return (OpenInterval(r1, hi),)
    if m1 >= hi:
        return ()  # both crossings sit past the window
    r1 = bisect_root(f, lo, m1, tol)
    r2 = bisect_root(f, m1, hi, tol)
    return (OpenInterval(r1, r2),)
