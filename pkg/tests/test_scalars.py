import pytest

from models.errors import NotHomogeneousError, RingMismatchError
from models.scalar import BaseRing, Bidegree, bidegree_of, expand_alpha_n, scalar_mul, scalar_ring
from utils.formatter import format_scalar, latex_scalar, parse_scalar


def test_xi_bar_squares_to_zero():
    sring = scalar_ring(3)
    assert (sring.xi_bar * sring.xi_bar).is_zero
    assert scalar_mul(sring.xi_bar, sring.xi_bar * sring.r).is_zero


def test_unit_is_neutral():
    sring = scalar_ring(2)
    assert sring.one * sring.one == sring.one
    assert sring.one * sring.xi == sring.xi


@pytest.mark.parametrize(
    "build, expected",
    [
        (lambda s: s.xi, Bidegree(2, 2)),
        (lambda s: s.alpha(1), Bidegree(2, 2)),
        (lambda s: s.r, Bidegree(0, -2)),
        (lambda s: s.xi_bar, Bidegree(1, 2)),
        (lambda s: s.xi_bar * s.r, Bidegree(1, 0)),
        (lambda s: s.r * s.xi, Bidegree(2, 0)),
    ],
)
def test_bidegrees(build, expected):
    assert bidegree_of(build(scalar_ring(3))) == expected


def test_bidegree_is_additive():
    sring = scalar_ring(4)
    a = sring.xi_bar * sring.alpha(2)
    b = sring.r**2 * sring.alpha(4)
    assert bidegree_of(a * b) == bidegree_of(a) + bidegree_of(b)


def test_bidegree_rejects_mixed_and_zero():
    sring = scalar_ring(2)
    with pytest.raises(NotHomogeneousError):
        bidegree_of(sring.xi + sring.r)
    with pytest.raises(NotHomogeneousError):
        bidegree_of(sring.zero)


def test_expand_alpha_n():
    assert expand_alpha_n(1) == scalar_ring(1).xi
    s2 = scalar_ring(2)
    assert expand_alpha_n(2) == s2.xi - s2.alpha(1)
    s3 = scalar_ring(3)
    assert expand_alpha_n(3) == s3.xi - s3.alpha(1) - s3.alpha(2)
    with pytest.raises(ValueError):
        expand_alpha_n(0)


@pytest.mark.parametrize("n", range(1, 7))
def test_roots_sum_to_xi(n):
    sring = scalar_ring(n)
    total = sring.zero
    for i in range(1, n + 1):
        total = total + sring.alpha(i)
    assert total == sring.xi


def test_products_commute():
    sring = scalar_ring(3)
    samples = [sring.alpha(1) + 2, sring.xi_bar * sring.alpha(3), sring.r - sring.xi, sring.xi_bar + sring.r]
    for a in samples:
        for b in samples:
            assert a * b == b * a


def test_mismatched_rings():
    with pytest.raises(RingMismatchError):
        scalar_ring(2).xi * scalar_ring(3).xi
    with pytest.raises(RingMismatchError):
        scalar_ring(2).xi + scalar_ring(2, BaseRing("q")).xi


def test_base_ring_parse():
    assert BaseRing.parse("z") == BaseRing("z")
    assert BaseRing.parse("Q") == BaseRing("q")
    assert BaseRing.parse("gf:7") == BaseRing("gf", 7)
    assert str(BaseRing.parse("gf:7")) == "gf:7"
    for bad in ("gf:8", "gf:x", "reals"):
        with pytest.raises(ValueError):
            BaseRing.parse(bad)


def test_prime_field_arithmetic():
    sring = scalar_ring(2, BaseRing("gf", 2))
    assert (sring.xi + sring.xi).is_zero
    assert sring.alpha(2) == sring.xi + sring.alpha(1)


def test_canonical_text_form():
    sring = scalar_ring(3)
    a1, a2, x = sring.alpha(1), sring.alpha(2), sring.xi
    value = sring.xi_bar * sring.r**2 * (a1**2 * x + 3 * a2)
    assert format_scalar(value) == "xb*r^2*(a1^2*x + 3*a2)"
    assert parse_scalar(format_scalar(value), sring) == value


def test_text_round_trip():
    sring = scalar_ring(3)
    samples = [
        sring.zero,
        sring.one,
        -sring.xi_bar,
        sring.alpha(3),
        sring.r * sring.xi - sring.xi_bar * sring.alpha(1),
        sring.r**3 + 2 * sring.xi_bar * sring.r,
    ]
    for value in samples:
        assert parse_scalar(format_scalar(value), sring) == value


def test_parse_rejects_unknown_symbols():
    with pytest.raises(ValueError):
        parse_scalar("a1 + y", scalar_ring(2))
    assert parse_scalar("  ", scalar_ring(2)).is_zero


def test_latex_form():
    sring = scalar_ring(2)
    assert latex_scalar(-sring.xi_bar) == r"-\bar\xi"
    assert latex_scalar(sring.alpha(1)) == r"\alpha_{1}"
