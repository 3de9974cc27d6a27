import pytest
from sympy import Integer, cancel, symbols

from controllers.geometry_controller import GeometryController
from models.chart import DiagonalMap, ProjVector


def test_p_poly_examples():
    geometry = GeometryController(4)
    x1, x2, x3, x4 = geometry.x
    assert geometry.p_poly(1, 2) == x1 * x2
    assert geometry.p_poly(2, 2) == x2
    assert geometry.p_poly(3, 1) == x3 * x4 * x1
    assert geometry.p_poly(1, 4) == 1
    assert geometry.p_poly(2, 1) == 1
    with pytest.raises(ValueError):
        geometry.p_poly(0, 1)


def test_u_lines_n4():
    geometry = GeometryController(4)
    x1, x2, x3, x4 = geometry.x
    assert geometry.u_line(1).coords == (Integer(1), x1, x1 * x2, x1 * x2 * x3)
    assert geometry.u_line(2).coords == (x2 * x3 * x4, Integer(1), x2, x2 * x3)
    assert geometry.u()[0] == x1 * x2 * x3 * x4


def test_n1_chart_is_the_coordinate():
    geometry = GeometryController(1)
    point = geometry.u()
    assert point[1].coords == (Integer(1),)
    assert geometry.v(point) == (geometry.x[0],)


def test_inverse_recovers_coordinates():
    geometry = GeometryController(3)
    recovered = geometry.v(geometry.u())
    assert all(cancel(a - b) == 0 for a, b in zip(recovered, geometry.x))


def test_characters_multiply_to_z():
    geometry = GeometryController(3)
    total = Integer(1)
    for alpha in geometry.characters():
        total *= alpha
    assert cancel(total - geometry.z) == 0


def test_equivariance_at_a_point():
    geometry = GeometryController(3)
    assert geometry.equivariance_failure(y=(2, 3, 5), z=Integer(7)) is None


@pytest.mark.parametrize("n", list(range(1, 5)) + [pytest.param(n, marks=pytest.mark.slow) for n in range(5, 9)])
def test_chart_suite_passes(n):
    results = GeometryController(n).verify()
    assert all(r.passed for r in results), [str(r) for r in results if not r.passed]


def test_n_must_be_positive():
    with pytest.raises(ValueError):
        GeometryController(0)


def test_proj_vector():
    a, b = symbols("a b")
    line = ProjVector((a, a * b))
    assert line.proportional(ProjVector((2, 2 * b)))
    assert not line.proportional(ProjVector((1, a)))
    assert line[2] == a * b
    assert str(ProjVector((1, b))) == "[1 : b]"
    with pytest.raises(ValueError):
        ProjVector((0, a - a))
    with pytest.raises(ValueError):
        ProjVector(())
    with pytest.raises(ValueError):
        line.minors(ProjVector((1, 2, 3)))


def test_diagonal_map():
    a = symbols("a")
    g = DiagonalMap(3, 2, a)
    assert g.apply(ProjVector((1, 1, 1))).coords == (1, a, 1)
    with pytest.raises(ValueError):
        DiagonalMap(3, 4)
    with pytest.raises(ValueError):
        g.apply(ProjVector((1, 1)))


def test_report():
    report = GeometryController(2).report()
    assert report["n"] == 2
    assert len(report["lines"]) == 2
    assert report["f"] == "x1*x2"
