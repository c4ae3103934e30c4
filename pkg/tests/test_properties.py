"""Property-based checks of the algebraic laws the package relies on."""

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from slopestab.lattice import pair
from slopestab.polysign import quadratic_negativity, sign_of_quadratic_at
from slopestab.rationals import RationalInterval
from slopestab.surfaces import KodairaParams, ProductSurfaceParams, product_surface

rationals = st.fractions(
    min_value=Fraction(-50), max_value=Fraction(50), max_denominator=64
)
small_rationals = st.fractions(
    min_value=Fraction(-8), max_value=Fraction(8), max_denominator=16
)


@given(rationals, rationals, rationals)
def test_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    # lowest-terms representation is unique
    lhs = a * b
    assert Fraction(lhs.numerator, lhs.denominator) == lhs
    if lhs != 0:
        assert lhs.denominator > 0


@given(st.integers(min_value=2, max_value=12), small_rationals, small_rationals,
       small_rationals, small_rationals)
def test_pairing_symmetric_bilinear(q, x1, y1, x2, y2):
    X = product_surface(ProductSurfaceParams(q=q))
    a = X.divisor({"f": x1, "delta_prime": y1})
    b = X.divisor({"f": x2, "delta_prime": y2})
    assert pair(a, b) == pair(b, a)
    assert pair(a + b, a + b) == pair(a, a) + 2 * pair(a, b) + pair(b, b)


@settings(max_examples=60)
@given(
    st.fractions(min_value=Fraction(-6), max_value=Fraction(6), max_denominator=12),
    st.fractions(min_value=Fraction(-6), max_value=Fraction(6), max_denominator=12),
    st.fractions(min_value=Fraction(-6), max_value=Fraction(6), max_denominator=12),
)
def test_negativity_set_is_sound(a2, a1, a0):
    if a2 == a1 == a0 == 0:
        return
    tol = Fraction(1, 10**9)
    prof = quadratic_negativity(a2, a1, a0, tol)
    for iv in prof.negativity_set:
        assert sign_of_quadratic_at(a2, a1, a0, iv.inner_point()) == -1
        for ep in (iv.lo, iv.hi):
            if isinstance(ep, RationalInterval):
                assert ep.width <= tol
                s_lo = sign_of_quadratic_at(a2, a1, a0, ep.lo)
                s_hi = sign_of_quadratic_at(a2, a1, a0, ep.hi)
                assert s_lo * s_hi < 0


@given(st.integers(min_value=2, max_value=5), st.sampled_from([2, 3]),
       st.integers(min_value=1, max_value=3))
def test_cover_gram_is_r_times_base(q, r, mult):
    from slopestab.lattice import self_intersection
    from slopestab.surfaces import cover_surface, kodaira_surface

    params = KodairaParams(q=q, r=r, group_order=r * mult)
    base = cover_surface(params)
    top = kodaira_surface(params)
    for i, la in enumerate(base.basis):
        for lb in base.basis[i:]:
            assert top.gram_entry(f"pb_{la}", f"pb_{lb}") == r * base.gram_entry(la, lb)
    assert self_intersection(top.named("f")) == 2 * r * params.d
