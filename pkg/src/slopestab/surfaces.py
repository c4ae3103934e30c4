"""Constructors for the three surface models.

* ``product_surface`` -- the self-product of a smooth curve of genus q,
  with basis {f, delta_prime}: f is the sum of the two fiber classes and
  delta_prime is the diagonal class minus f.  Intersection table:
  f.f = 2, f.delta_prime = 0, delta_prime.delta_prime = -2q.

* ``cover_surface`` -- the product B x C where h: B -> C is the degree
  d = r^(2q) unbranched cover killing mod-r homology.  Basis
  {B0, C0, graph_h, Sigma}: the two fiber classes, the graph of h, and
  the union of the |G| translated graphs g o h for g in a finite group G
  acting freely on C.

* ``kodaira_surface`` -- the cyclic degree-r cover of B x C branched
  along Sigma.  Basis pullbacks scale the Gram matrix by r; the
  canonical class gains the ramification class ((r-1)/r) * pb_Sigma.

The graph classes all pair through one fact: the self-intersection of
the graph of a degree-d map to a target with Euler number e is d*e.
Distinct translated graphs are disjoint because the group action is
fixed-point free, so Sigma.graph_h equals graph_h.graph_h.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional, Union

from .errors import ParamError
from .lattice import DivisorClass, SurfaceModel
from .rationals import as_fraction, is_perfect_square


# ---------------------------------------------------------------------------
# parameter records


@dataclass(frozen=True)
class BranchedCover:
    """The curve carries a simple degree-k branched cover of the line.

    Then the L-family ampleness threshold is exactly q/(k-1).  The
    destabilization statements need 2 <= k-1 and (k-1)^2 < q.
    """

    k: int


@dataclass(frozen=True)
class GeneralModuliSquare:
    """General-moduli curve whose genus is a perfect square.

    The L-family threshold is then exactly the integer square root of q.
    """


@dataclass(frozen=True)
class UserBounds:
    """Caller-certified bounds on the L-family ampleness threshold."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", as_fraction(self.lo))
        object.__setattr__(self, "hi", as_fraction(self.hi))


SCMode = Union[BranchedCover, GeneralModuliSquare, UserBounds, None]


@dataclass(frozen=True)
class ProductSurfaceParams:
    """Genus plus whatever is known about the L-family threshold.

    ``sc_mode=None`` means no curve-specific knowledge; only universal
    facts (positive self-intersection, the unit lower Seshadri bound)
    are used in that case.
    """

    q: int
    sc_mode: SCMode = None

    def __post_init__(self):
        if not isinstance(self.q, int) or self.q < 2:
            raise ParamError("genus q must be an integer >= 2")
        mode = self.sc_mode
        if mode is None:
            return
        if isinstance(mode, BranchedCover):
            if not isinstance(mode.k, int) or mode.k - 1 < 2:
                raise ParamError("branched-cover degree needs k - 1 >= 2")
            if (mode.k - 1) ** 2 >= self.q:
                raise ParamError("branched-cover degree needs (k - 1)^2 < q")
        elif isinstance(mode, GeneralModuliSquare):
            if not is_perfect_square(self.q):
                raise ParamError("general-moduli square mode needs q a perfect square")
        elif isinstance(mode, UserBounds):
            lo, hi = mode.lo, mode.hi
            if lo <= 0 or lo > hi:
                raise ParamError("user bounds must satisfy 0 < lo <= hi")
            if lo * lo < self.q:
                raise ParamError("lower bound is below sqrt(q) (sign test lo^2 >= q failed)")
            if hi > Fraction(self.q, isqrt(self.q)):
                raise ParamError("upper bound exceeds q / floor(sqrt(q))")
        else:
            raise ParamError(f"unknown threshold mode {mode!r}")

    def sc_bounds(self) -> tuple[Optional[Fraction], Optional[Fraction]]:
        """Certified (lower, upper) rational bounds on the threshold, if any."""
        mode = self.sc_mode
        if isinstance(mode, BranchedCover):
            value = Fraction(self.q, mode.k - 1)
            return value, value
        if isinstance(mode, GeneralModuliSquare):
            root = Fraction(isqrt(self.q))
            return root, root
        if isinstance(mode, UserBounds):
            return mode.lo, mode.hi
        return None, None

    def sc_exact(self) -> Optional[Fraction]:
        lo, hi = self.sc_bounds()
        if lo is not None and lo == hi:
            return lo
        return None


@dataclass(frozen=True)
class KodairaParams:
    """Parameters of the cyclic-cover construction.

    q: genus of the curve C; r: cyclic cover degree; group_order: |G|
    for the freely-acting group whose translated graphs form the branch
    locus (r must divide |G|); k: optional branched-cover degree of C
    over the line, needed for the residual-divisor family.

    The cover degree d of h defaults to r^(2q), the order of the mod-r
    homology of C; it may be overridden to explore hypothetical covers,
    and the genus of B is re-derived from 2p - 2 = d(2q - 2) either way.
    """

    q: int
    r: int
    group_order: int
    k: Optional[int] = None
    d: Optional[int] = None

    def __post_init__(self):
        for name in ("q", "r", "group_order"):
            v = getattr(self, name)
            if not isinstance(v, int):
                raise ParamError(f"{name} must be an integer")
        if self.q < 2:
            raise ParamError("genus q must be >= 2")
        if self.r < 2:
            raise ParamError("cyclic cover degree r must be >= 2")
        if self.group_order < 1 or self.group_order % self.r != 0:
            raise ParamError("r must divide the group order")
        if self.k is not None:
            if not isinstance(self.k, int) or self.k - 1 < 2:
                raise ParamError("branched-cover degree needs k - 1 >= 2")
            if (self.k - 1) ** 2 >= self.q:
                raise ParamError("branched-cover degree needs (k - 1)^2 < q")
        if self.d is None:
            object.__setattr__(self, "d", self.r ** (2 * self.q))
        elif not isinstance(self.d, int) or self.d < 1:
            raise ParamError("cover degree d must be a positive integer")

    @property
    def p(self) -> int:
        """Genus of B, from 2p - 2 = d(2q - 2)."""
        return self.d * (self.q - 1) + 1

    @property
    def d_overridden(self) -> bool:
        return self.d != self.r ** (2 * self.q)


# ---------------------------------------------------------------------------
# surface constructors


def product_surface(params: ProductSurfaceParams) -> SurfaceModel:
    """The self-product of a genus-q curve on the span of f and delta_prime."""
    q = params.q
    model = SurfaceModel(
        surface_id=f"CxC(q={q})",
        basis=("f", "delta_prime"),
        gram=[[2, 0], [0, -2 * q]],
        params=params,
    )
    model.register("K", {"f": 2 * q - 2})
    model.register("f", {"f": 1})
    model.register("delta_prime", {"delta_prime": 1})
    model.register("diagonal", {"f": 1, "delta_prime": 1})
    if isinstance(params.sc_mode, BranchedCover):
        model.register("residual", {"f": params.sc_mode.k - 1, "delta_prime": -1})
    return model


def cover_surface(params: KodairaParams) -> SurfaceModel:
    """B x C for the degree-d cover h: B -> C, with the branch locus Sigma."""
    q, d, g = params.q, params.d, params.group_order
    euler_c = 2 - 2 * q
    gram = [
        # B0, C0, graph_h, Sigma
        [0, 1, d, d * g],
        [1, 0, 1, g],
        [d, 1, d * euler_c, d * euler_c],
        [d * g, g, d * euler_c, d * euler_c * g],
    ]
    model = SurfaceModel(
        surface_id=f"BxC(q={q},r={params.r},G={g},d={d})",
        basis=("B0", "C0", "graph_h", "Sigma"),
        gram=gram,
        params=params,
    )
    model.register("K", {"C0": (2 * q - 2) * d, "B0": 2 * q - 2})
    model.register("f", {"C0": d, "B0": 1})
    model.register("delta_prime", {"graph_h": 1, "C0": -d, "B0": -1})
    model.register("diagonal", {"graph_h": 1})
    if params.k is not None:
        # residual = k*f - graph_h, i.e. (k-1)*f - delta_prime
        model.register("residual", {"C0": params.k * d, "B0": params.k, "graph_h": -1})
    return model


def kodaira_surface(params: KodairaParams) -> SurfaceModel:
    """The cyclic degree-r cover of B x C branched along Sigma.

    The basis consists of the pullbacks of the cover_surface basis, so
    the Gram matrix is r times the one upstairs.  The canonical class is
    the pullback of the one upstairs plus the ramification class
    ((r-1)/r) * pb_Sigma.
    """
    base = cover_surface(params)
    r = params.r
    q, d, g = params.q, params.d, params.group_order
    labels = tuple(f"pb_{label}" for label in base.basis)
    gram = [[r * entry for entry in row] for row in base.gram]
    model = SurfaceModel(
        surface_id=f"CyclicCover(q={q},r={r},G={g},d={d})",
        basis=labels,
        gram=gram,
        params=params,
    )
    ram = Fraction(r - 1, r)
    model.register("ramification", {"pb_Sigma": ram})
    model.register(
        "K", {"pb_C0": (2 * q - 2) * d, "pb_B0": 2 * q - 2, "pb_Sigma": ram}
    )
    model.register("f", {"pb_C0": d, "pb_B0": 1})
    model.register("delta_prime", {"pb_graph_h": 1, "pb_C0": -d, "pb_B0": -1})
    model.register("diagonal", {"pb_graph_h": 1})
    if params.k is not None:
        k = params.k
        model.register(
            "residual", {"pb_C0": k * d, "pb_B0": k, "pb_graph_h": -1}
        )
    return model


def graph_self_intersection(d: int, euler_target: int) -> int:
    """Self-intersection of the graph of a degree-d map: d * chi(target)."""
    return d * euler_target


# ---------------------------------------------------------------------------
# pullback helpers


def pullback_from_cover(model: SurfaceModel, cls: DivisorClass) -> DivisorClass:
    """Pull a cover_surface class back to the matching kodaira_surface."""
    coeffs = {f"pb_{label}": v for label, v in cls.coefficients.items()}
    return model.divisor(coeffs)


def pullback_from_product(model: SurfaceModel, cls: DivisorClass) -> DivisorClass:
    """Pull an f/delta_prime combination back along the composed covers."""
    x = cls.coefficient("f")
    y = cls.coefficient("delta_prime")
    return x * model.named("f") + y * model.named("delta_prime")
