import random
from fractions import Fraction

import pytest

from slopestab.errors import ParamError, SurfaceMismatch
from slopestab.lattice import SurfaceModel, linear_combination, pair, self_intersection
from slopestab.surfaces import ProductSurfaceParams, product_surface


@pytest.fixture
def q3():
    return product_surface(ProductSurfaceParams(q=3))


@pytest.fixture
def q2():
    return product_surface(ProductSurfaceParams(q=2))


def test_gram_consistency(q3):
    assert pair(q3.basis_class("f"), q3.basis_class("f")) == 2
    assert pair(q3.basis_class("delta_prime"), q3.basis_class("delta_prime")) == -6
    assert pair(q3.basis_class("f"), q3.basis_class("delta_prime")) == 0
    for a in q3.basis:
        for b in q3.basis:
            assert pair(q3.basis_class(a), q3.basis_class(b)) == q3.gram_entry(a, b)


def test_bilinear_expansion(q2):
    cls = q2.divisor({"f": 3, "delta_prime": 1})
    assert self_intersection(cls) == 14  # 9*2 + 0 + (-4)


def test_cross_surface_pairing_rejected(q2, q3):
    with pytest.raises(SurfaceMismatch):
        pair(q2.basis_class("f"), q3.basis_class("f"))
    with pytest.raises(SurfaceMismatch):
        q2.basis_class("f") + q3.basis_class("f")


def test_unknown_label_rejected(q2):
    with pytest.raises(ParamError):
        q2.divisor({"nope": 1})
    with pytest.raises(ParamError):
        q2.basis_class("f").coefficient("nope")


def test_gram_must_be_symmetric():
    with pytest.raises(ParamError):
        SurfaceModel("bad", ("a", "b"), [[0, 1], [2, 0]])


def test_linear_combination_change_of_variables(q3):
    # f + delta_prime is the diagonal class
    combo = linear_combination([(1, q3.named("f")), (1, q3.named("delta_prime"))])
    assert combo == q3.named("diagonal")


def test_linear_combination_polarization(q3):
    l5 = linear_combination([(5, q3.named("f")), (1, q3.named("delta_prime"))])
    assert self_intersection(l5) == 2 * (25 - 3)


def test_linear_combination_empty(q3):
    assert linear_combination([], surface=q3) == q3.zero()
    with pytest.raises(ParamError):
        linear_combination([])


def test_operators_and_render(q2):
    f = q2.named("f")
    dp = q2.named("delta_prime")
    cls = 3 * f - dp
    assert cls.coefficient("f") == 3 and cls.coefficient("delta_prime") == -1
    assert cls.render() == "3*f - delta_prime"
    assert (cls - cls).is_zero()
    assert (Fraction(1, 2) * f).coefficient("f") == Fraction(1, 2)
    assert q2.zero().render() == "0"


def test_symmetry_and_bilinearity_random(q3):
    rng = random.Random(424242)
    f = q3.named("f")
    dp = q3.named("delta_prime")

    def rand_cls():
        return q3.divisor(
            {
                "f": Fraction(rng.randint(-30, 30), rng.randint(1, 7)),
                "delta_prime": Fraction(rng.randint(-30, 30), rng.randint(1, 7)),
            }
        )

    for _ in range(300):
        a, b, c = rand_cls(), rand_cls(), rand_cls()
        x = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        y = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        assert pair(a, b) == pair(b, a)
        assert pair(x * a + y * b, c) == x * pair(a, c) + y * pair(b, c)
    del f, dp
