from math import comb

import pytest

from controllers.nearby_controller import LEMMA_SUITES
from models.complex import Regime
from models.nearby_kit import NearbyKit, build_underlined
from models.scalar import scalar_ring
from models.subset import Subset


def signs(matrix):
    return dict(matrix.entries)


@pytest.mark.parametrize("n", range(1, 5))
def test_object_sizes(nearby, n):
    summary = nearby(n).summary()
    assert summary["E_left"] == summary["E_right"] == 2**n
    assert summary["E_diamond"] == sum((n - i) * comb(n, i) for i in range(n))
    assert summary["jordan"] == {i: (n - i) * comb(n, i) for i in range(n + 1)}


def test_eps_eta_signs(nearby):
    eps, eta = nearby(2).build_eps_eta(1)
    assert signs(eps) == {(0, 0): 1, (0, 1): -1}
    assert signs(eta) == {(0, 0): 1, (1, 0): -1}

    eps, _ = nearby(3).build_eps_eta(1)
    assert signs(eps) == {(0, 0): 1, (0, 1): -1, (0, 2): 1}


def test_eps_middle_level_n3(nearby):
    eps, _ = nearby(3).build_eps_eta(2)
    # rows E(1), E(2), E(3); columns E(1,2), E(1,3), E(2,3)
    assert signs(eps) == {
        (1, 0): 1,
        (0, 0): 1,
        (2, 1): 1,
        (0, 1): -1,
        (2, 2): -1,
        (1, 2): -1,
    }


def test_out_of_range_levels_are_empty(nearby):
    for k in (0, 4):
        eps, eta = nearby(3).build_eps_eta(k)
        assert eps.is_zero and eta.is_zero


def test_jordan_blocks(nearby):
    obj, n_map = nearby(2).build_jordan(0)
    assert [(s.stratum.members, s.twist) for s in obj] == [((), -1), ((), 1)]
    assert list(n_map.entries) == [(0, 1)]
    assert n_map.power(2).is_zero

    obj, n_map = nearby(3).build_jordan(2)
    assert len(obj) == 3 and n_map.is_zero
    obj, _ = nearby(3).build_jordan(3)
    assert len(obj) == 0


@pytest.mark.parametrize("n", range(1, 5))
def test_jordan_nilpotency(nearby, n):
    for i in range(n):
        _, n_map = nearby(n).build_jordan(i)
        assert n_map.power(n - i).is_zero


def test_single_copy_interface_maps(nearby, ring):
    sring = ring(3)
    maps = nearby(3).build_interface_maps(2)
    assert list(maps.iota_l.entries.values()) == [sring.one] * 3
    assert maps.iota_l.entries == maps.iota_r.entries
    assert all(value == sring.r for value in maps.rho.entries.values())


def test_Z_for_n1(nearby):
    z = nearby(1).build_Z()
    assert len(z) == 1
    assert z.object[0].stratum == Subset(1)
    assert z.differential.is_zero
    assert z.regime is Regime.MIX


def test_Z_for_n3_has_twelve_summands(nearby):
    z = nearby(3).build_Z()
    assert len(z) == 12
    assert len(z.object.positions()) == 5


def test_shriek_extension_for_n1(nearby):
    j = nearby(1).build_pushforwards()["j_!E"]
    assert [(s.stratum.members, s.twist) for s in j.object] == [((), -1), ((1,), 0)]
    assert list(j.differential.entries) == [(0, 1)]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_open_restriction(nearby, n):
    controller = nearby(n)
    for name in ("j_!E", "j_*E"):
        assert controller.open_restriction_check(controller.build_pushforwards()[name]).passed


@pytest.mark.parametrize("n", [1, 2, 3])
def test_lemma_suites(nearby, n):
    results = nearby(n).verify_lemmas()
    assert results
    assert all(r.passed for r in results), [str(r) for r in results if not r.passed]


def test_unknown_lemma_suite(nearby):
    with pytest.raises(ValueError):
        nearby(2).lemma_statements("epsilon9")
    assert "bold-h" in LEMMA_SUITES


@pytest.mark.parametrize("n", [1, 2, 3])
def test_pushforwards_and_shriek_mon(nearby, n):
    controller = nearby(n)
    for results in (controller.verify_pushforwards(), controller.verify_shriek_mon()):
        assert all(r.passed for r in results), [str(r) for r in results if not r.passed]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_nearby_cycles_equivalence(nearby, n):
    results = nearby(n).verify_theorem_nearby()
    assert all(r.passed for r in results), [str(r) for r in results if not r.passed]


def test_equivalence_statement_counts(nearby):
    names = [r.statement for r in nearby(2).verify_theorem_nearby()]
    assert len([s for s in names if s.endswith("-chain-map")]) == 4
    assert len([s for s in names if s.startswith("theorem:") and "homotopy" in s]) == 3


@pytest.mark.slow
def test_nearby_cycles_equivalence_n4(nearby):
    results = nearby(4).verify_theorem_nearby()
    assert all(r.passed for r in results)


@pytest.mark.parametrize("n", [2, 3])
def test_recursion_statements(nearby, n):
    results = [thunk() for _, thunk in nearby(n).recursion_statements()]
    assert results[0]
    assert results[1].passed


def test_recursion_needs_two_variables(nearby):
    with pytest.raises(ValueError):
        nearby(1).build_recursive()


@pytest.mark.parametrize("n, expected", [(1, None), (2, 0), (3, 1)])
def test_usage_bound(nearby, n, expected):
    report = nearby(n).usage_report(enforce=True)
    assert report["max_size"] == expected
    assert report["within_bound"]
    assert all(r.passed for r in report["results"])


def test_usage_sizes_for_n2(nearby):
    report = nearby(2).usage_report()
    assert report["subsets"] == [[]]


@pytest.mark.parametrize("n", range(1, 5))
def test_kit_builds_for_every_level(n):
    kit = NearbyKit(scalar_ring(n))
    assert sorted(kit.eps_r) == list(range(1, n + 1))
    assert sorted(kit.eta_r) == list(range(1, n + 1))
    assert len(kit.E_diamond) == sum(len(kit.jordan[i]) for i in range(n))


def test_underlined_maps_start_at_level_one():
    sring = scalar_ring(2)
    kit = NearbyKit(sring)
    with pytest.raises(ValueError):
        build_underlined(sring, 0, kit.eps[0], kit.eta[0])
    with pytest.raises(ValueError):
        build_underlined(sring, 3, kit.eps[3], kit.eta[3])


@pytest.mark.slow
@pytest.mark.parametrize("n", range(4, 9))
def test_differentials_lemmas_and_usage_up_to_n8(nearby, n):
    controller = nearby(n)
    assert len(controller.build_Z()) == sum((n - i) * comb(n, i) for i in range(n))
    for results in (controller.verify_lemmas(), controller.verify_pushforwards()):
        assert all(r.passed for r in results), [str(r) for r in results if not r.passed]
    report = controller.usage_report(enforce=True)
    assert report["max_size"] == n - 2
    assert all(r.passed for r in report["results"])


@pytest.mark.slow
@pytest.mark.parametrize("n", range(4, 7))
def test_equivalence_and_recursion_up_to_n6(nearby, n):
    controller = nearby(n)
    results = controller.verify_theorem_nearby() + controller.verify_shriek_mon()
    assert all(r.passed for r in results), [str(r) for r in results if not r.passed]
    box_product, negative_control = [thunk() for _, thunk in controller.recursion_statements()]
    assert box_product
    assert negative_control.passed
