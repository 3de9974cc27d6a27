import pytest

from controllers.weyl_controller import WeylController, bruhat_leq, subword_leq
from models.hecke import HeckeElement, q
from models.subset import Subset
from models.weyl_element import ExtAffineElement, ReducedWord, reduced_word


def test_element_normalizes_coweight():
    x = ExtAffineElement(3, (1, 2, 3), (2, 3, 2))
    assert x.coweight == (0, 1, 0)
    assert x == ExtAffineElement.fundamental_coweight(3, 2)
    with pytest.raises(ValueError):
        ExtAffineElement(3, (1, 1, 3), (0, 0, 0))
    with pytest.raises(ValueError):
        ExtAffineElement(3, (1, 2, 3), (0, 0))


def test_simple_reflection_bounds():
    with pytest.raises(ValueError):
        ExtAffineElement.simple_reflection(1, 1)
    with pytest.raises(ValueError):
        ExtAffineElement.simple_reflection(3, 4)


@pytest.mark.parametrize("n", range(2, 6))
def test_generator_lengths(n):
    for i in range(1, n + 1):
        s = ExtAffineElement.simple_reflection(n, i)
        assert s.length == 1
        assert (s * s).is_identity
    assert ExtAffineElement.omega(n).length == 0


@pytest.mark.parametrize("n", range(1, 6))
def test_omega_has_order_n(n):
    omega = ExtAffineElement.omega(n)
    assert (omega**n).is_identity
    if n > 1:
        assert not (omega ** (n - 1)).is_identity


def test_inverse_and_negative_powers():
    n = 3
    x = ExtAffineElement.simple_reflection(n, 3) * ExtAffineElement.omega(n)
    assert (x * x.inverse()).is_identity
    assert (x**-2) * (x**2) == ExtAffineElement.identity(n)


@pytest.mark.parametrize("n", range(1, 6))
def test_translations(n):
    weyl = WeylController(n)
    product = weyl.identity
    for element, word in weyl.translations():
        assert word.is_reduced
        assert element.length == n - 1
        product = product * element
    assert product.is_identity


def test_translation_words_n3():
    weyl = WeylController(3)
    assert weyl.translation_word(3).letters == (2, 1)
    assert weyl.translation_word(1).letters == (3, 2)
    assert str(weyl.translation_word(3)) == "s2 s1 ω"


def test_omega_conjugation():
    weyl = WeylController(3)
    assert weyl.omega_conjugate(1) == 2
    assert weyl.omega_conjugate(3) == 1
    assert weyl.omega_conjugate(2, power=2) == 1
    assert weyl.omega_conjugate(2, power=0) == 2
    with pytest.raises(ValueError):
        weyl.omega_conjugate(4)


def test_no_generators_for_n1():
    weyl = WeylController(1)
    assert weyl.generators == []
    assert weyl.omega.is_identity
    with pytest.raises(ValueError):
        WeylController(0)


def test_reduced_word_round_trip():
    weyl = WeylController(3)
    for x in weyl.ball(3):
        for y in (x, x * weyl.omega):
            word = reduced_word(y)
            assert word.element() == y
            assert len(word) == y.length


def test_word_text():
    assert str(ReducedWord(3)) == "e"
    assert str(ReducedWord(3, (1,), 5)) == "s1 ω^2"
    with pytest.raises(ValueError):
        ReducedWord(3, (4,))
    assert not ReducedWord(2, (1, 1)).is_reduced


def test_bruhat_examples():
    n = 3
    s = [None] + [ExtAffineElement.simple_reflection(n, i) for i in range(1, n + 1)]
    e = ExtAffineElement.identity(n)
    assert bruhat_leq(e, s[1])
    assert not bruhat_leq(s[1], s[2])
    assert bruhat_leq(s[1], s[1] * s[2])
    assert bruhat_leq(s[2], s[1] * s[2] * s[1])
    assert not bruhat_leq(s[1] * s[2], s[2] * s[1])
    assert not bruhat_leq(e, ExtAffineElement.omega(n))


def test_bruhat_agrees_with_subwords():
    weyl = WeylController(3)
    elements = list(weyl.ball(2))
    for x in elements:
        for y in elements:
            assert bruhat_leq(x, y) == subword_leq(x, y), (x, y)


def test_admissible_elements_n2():
    weyl = WeylController(2)
    s1, s2, omega = weyl.s(1), weyl.s(2), weyl.omega
    admissible = weyl.admissible_elements()
    assert admissible == {
        Subset(2): omega,
        Subset.of(2, 1): s1 * omega,
        Subset.of(2, 2): s2 * omega,
    }


@pytest.mark.parametrize("n", list(range(1, 5)) + [pytest.param(n, marks=pytest.mark.slow) for n in range(5, 9)])
def test_admissible_is_a_bijection(n):
    admissible = WeylController(n).admissible_elements()
    assert len(admissible) == 2**n - 1
    assert len(set(admissible.values())) == 2**n - 1
    for subset, element in admissible.items():
        assert element.length == len(subset)
        assert element.omega_power == 1 % n


def test_admissible_independent_of_order():
    weyl = WeylController(4)
    subset = Subset.of(4, 1, 3)
    assert weyl.w_subset(subset, (1, 3)) == weyl.w_subset(subset, (3, 1))


@pytest.mark.parametrize("n", [2, 3])
def test_admissible_are_subexpressions(n):
    weyl = WeylController(n)
    assert set(weyl.admissible_elements().values()) == weyl.subexpression_elements()
    assert weyl.admissible_by_bruhat() == weyl.subexpression_elements()


def test_hecke_quadratic_relation():
    n = 2
    s = ExtAffineElement.simple_reflection(n, 1)
    square = HeckeElement.basis(s).left_multiply(1)
    assert square.coefficient(s) == q - 1
    assert square.coefficient(ExtAffineElement.identity(n)) == q


def test_hecke_commuting_letters():
    weyl = WeylController(4)
    coefficients = weyl.hecke_subexpression_check(ReducedWord(4, (1, 3)))
    assert len(coefficients) == 4
    assert all(c == 1 for c in coefficients.values())
    assert weyl.coefficients_are_one(ReducedWord(4, (1, 3)))


def test_hecke_repeated_letter_is_not_one():
    weyl = WeylController(2)
    coefficients = weyl.hecke_subexpression_check(ReducedWord(2, (1, 1)))
    assert coefficients[weyl.s(1)] == q + 1
    assert coefficients[weyl.identity] == q + 1
    assert not weyl.coefficients_are_one(ReducedWord(2, (1, 1)))


def test_hecke_text():
    assert str(HeckeElement(2)) == "0"
    assert len(HeckeElement.one(3)) == 1
    with pytest.raises(ValueError):
        HeckeElement.one(2) + HeckeElement.one(3)


@pytest.mark.parametrize("n", [1, 2, 3, pytest.param(4, marks=pytest.mark.slow)])
def test_weyl_suite_passes(n):
    results = WeylController(n).verify()
    assert all(r.passed for r in results), [str(r) for r in results if not r.passed]


def test_report_rows():
    report = WeylController(3).report()
    assert len(report["admissible"]) == 7
    assert sorted(row["length"] for row in report["admissible"]) == [0, 1, 1, 1, 2, 2, 2]
    assert [row["i"] for row in report["translations"]] == [1, 2, 3]
