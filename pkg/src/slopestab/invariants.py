"""Topological invariants of the cyclic-cover Kodaira fibrations.

Closed formulas, with p - 1 = d(q - 1) and G the free group action:

    chi      = 4r(p-1)(q-1) + 2(p-1)(r-1)|G|
    K^2      = 8r(p-1)(q-1) + 4(r-1)(p-1)|G| + 2((r^2-1)/r)(q-1) d |G|
    tau      = (K^2 - 2 chi) / 3 = 2(r^2-1)(q-1) d |G| / (3r)
    fiber    : 2g - 2 = r(2q-2) + (r-1)|G|   (degree-r cover of C branched
                                              at the |G| group-orbit points)

``k_squared_from_lattice`` recomputes K^2 from the Gram-matrix model as
an independent cross-check of the closed formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParamError
from .lattice import self_intersection
from .surfaces import KodairaParams, kodaira_surface


@dataclass(frozen=True)
class KodairaInvariants:
    d: int
    base_genus: int
    fiber_genus: int
    euler: int
    k_squared: int
    signature: int
    d_overridden: bool


def _closed_formulas(q: int, r: int, group_order: int, d: int) -> tuple[Fraction, Fraction]:
    """(chi, K^2) with the branch-term weight carried by group_order.

    Setting group_order = 0 removes every branch contribution, which is
    the degenerate product direction (signature zero); used as a
    diagnostic, not exposed through the validated constructor.
    """
    p1 = d * (q - 1)  # p - 1
    chi = 4 * r * p1 * (q - 1) + 2 * p1 * (r - 1) * group_order
    k2 = (
        8 * r * p1 * (q - 1)
        + 4 * (r - 1) * p1 * group_order
        + Fraction(2 * (r * r - 1) * (q - 1) * d * group_order, r)
    )
    return Fraction(chi), k2


def invariants(params: KodairaParams) -> KodairaInvariants:
    """Exact invariants; rejects parameter sets with non-integer answers."""
    q, r, g, d = params.q, params.r, params.group_order, params.d

    two_gf_minus_2 = r * (2 * q - 2) + (r - 1) * g
    if two_gf_minus_2 % 2 != 0:
        raise ParamError("fiber genus is not an integer: (r-1)|G| must be even")
    fiber_genus = two_gf_minus_2 // 2 + 1

    chi, k2 = _closed_formulas(q, r, g, d)
    if k2.denominator != 1:
        raise ParamError("K^2 is not an integer for these parameters")
    tau3 = k2 - 2 * chi
    if tau3 % 3 != 0:
        raise ParamError("signature is not an integer for these parameters")

    inv = KodairaInvariants(
        d=d,
        base_genus=params.p,
        fiber_genus=fiber_genus,
        euler=int(chi),
        k_squared=int(k2),
        signature=int(tau3) // 3,
        d_overridden=params.d_overridden,
    )
    if inv.euler <= 0 or inv.k_squared <= 0 or inv.signature <= 0:
        raise ParamError("invariants lost positivity; parameters are not realizable")
    return inv


def signature_closed_form(params: KodairaParams) -> Fraction:
    """tau = 2(r^2-1)(q-1) d |G| / (3r), prior to integrality checks."""
    q, r, g, d = params.q, params.r, params.group_order, params.d
    return Fraction(2 * (r * r - 1) * (q - 1) * d * g, 3 * r)


def k_squared_from_lattice(params: KodairaParams) -> int:
    """K^2 via the intersection form of the cyclic-cover model."""
    model = kodaira_surface(params)
    value = self_intersection(model.canonical)
    if value.denominator != 1:
        raise ParamError("lattice K^2 is not an integer for these parameters")
    return int(value)
