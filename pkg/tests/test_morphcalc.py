import random
from concurrent.futures import ThreadPoolExecutor

import pytest

from models.errors import NotComposableError
from models.morphism import (
    UNIT_SUM,
    NormalMorphism,
    UsageLedger,
    block_unit_sum_check,
    compose,
    hom_dimension,
    unit_sum_check,
)
from models.scalar import scalar_ring
from models.subset import Block, Subset


def gen(sring, source, target):
    return NormalMorphism.generator(Subset(sring.n, source), Subset(sring.n, target), sring)


def test_eps_after_eta_is_alpha():
    sring = scalar_ring(2)
    eta = gen(sring, (), (1,))
    eps = gen(sring, (1,), ())
    result = compose(eps, eta)
    assert result.source == result.target == Subset(2)
    assert result.scalar == sring.alpha(1)


def test_eta_after_eps_is_alpha():
    sring = scalar_ring(2)
    result = compose(gen(sring, (), (1,)), gen(sring, (1,), ()))
    assert result.source == Subset.of(2, 1)
    assert result.scalar == sring.alpha(1)


def test_distinct_letters_do_not_interact():
    sring = scalar_ring(2)
    eta2 = gen(sring, (1,), (1, 2))
    eps1 = gen(sring, (1, 2), (2,))
    result = compose(eps1, eta2)
    assert result.scalar == sring.one
    assert result.epsilon_letters == [1]
    assert result.eta_letters == [2]
    assert result.degree() == 2
    assert str(result) == "e1*h2 @ (1)"


def test_compose_needs_matching_middle():
    sring = scalar_ring(2)
    with pytest.raises(NotComposableError):
        compose(gen(sring, (1,), ()), gen(sring, (), (2,)))


@pytest.mark.parametrize("n", [2, 3])
def test_compose_is_associative(n):
    sring = scalar_ring(n)
    subsets = Subset.all_subsets(n)
    for a in subsets:
        for b in subsets:
            for c in subsets:
                f = NormalMorphism(a, b, sring.alpha(1) + sring.r)
                g = NormalMorphism(b, c, sring.xi_bar + 2)
                for d in (Subset(n), Subset.full(n)):
                    h = NormalMorphism(c, d, sring.alpha(n))
                    assert compose(h, compose(g, f)) == compose(compose(h, g), f)


@pytest.mark.parametrize("n", range(2, 6))
def test_compose_is_associative_on_random_triples(n):
    sring = scalar_ring(n)
    rng = random.Random(n)
    subsets = Subset.all_subsets(n)
    scalars = [sring.one, sring.r, sring.xi_bar, sring.scalar(3)] + [sring.alpha(i) for i in range(1, n + 1)]

    def morphism(source, target):
        return NormalMorphism(source, target, rng.choice(scalars) + rng.choice(scalars))

    for _ in range(200):
        a, b, c, d = (rng.choice(subsets) for _ in range(4))
        f, g, h = morphism(a, b), morphism(b, c), morphism(c, d)
        assert compose(h, compose(g, f)) == compose(compose(h, g), f), (f, g, h)


@pytest.mark.parametrize("n", range(1, 7))
def test_unit_sum_holds_everywhere(n):
    sring = scalar_ring(n)
    ledger = UsageLedger()
    for subset in Subset.all_subsets(n):
        assert unit_sum_check(subset, ledger, sring)
    assert len(ledger) == 2**n
    assert ledger.max_size() == n


def test_unit_sum_examples():
    ledger = UsageLedger()
    assert unit_sum_check(Subset.of(2, 1), ledger, scalar_ring(2))
    assert unit_sum_check(Subset(1), ledger, scalar_ring(1))
    assert (UNIT_SUM, Subset.of(2, 1)) in ledger.entries


@pytest.mark.parametrize(
    "n, block, members",
    [
        (3, (1, 3), (1,)),
        (4, (3, 2), (1, 3)),
        (3, (2,), (1,)),
        (5, (2, 1, 5), (1, 2, 4)),
    ],
)
def test_block_unit_sum(n, block, members):
    assert block_unit_sum_check(Block(n, block), Subset(n, members), scalar_ring(n))


def test_block_unit_sum_precondition():
    with pytest.raises(ValueError):
        block_unit_sum_check(Block(3, (1, 3)), Subset.of(3, 3), scalar_ring(3))


def test_block_sums_add_up_to_unit_sum():
    n = 5
    sring = scalar_ring(n)
    from models.subset import block_decomposition

    for subset in Subset.all_subsets(n):
        if len(subset) > n - 2:
            continue
        total = sring.zero
        for block in block_decomposition(subset):
            for b in block.elements:
                total = total + sring.alpha(b)
        assert total == sring.xi


def test_hom_dimension():
    n = 2
    assert hom_dimension(Subset.of(n, 1), Subset.of(n, 1), 0) == 1
    assert hom_dimension(Subset.of(n, 1), Subset(n), 1) == 1
    assert hom_dimension(Subset(n), Subset(n), 1) == 0
    assert hom_dimension(Subset(n), Subset(n), 2) == 2
    assert hom_dimension(Subset(n), Subset.full(n), 1) == 0
    assert hom_dimension(Subset(3), Subset(3), 4) == 6


def test_degree_counts_word_and_polynomial():
    sring = scalar_ring(3)
    f = NormalMorphism(Subset.of(3, 1), Subset.of(3, 2), sring.alpha(1) * sring.xi)
    assert f.word_length == 2
    assert f.degree() == 6


def test_ledger_merges_concurrent_appends():
    ledger = UsageLedger()
    subsets = Subset.all_subsets(4)
    with ThreadPoolExecutor(max_workers=4) as pool:
        list(pool.map(lambda s: ledger.record(UNIT_SUM, s), subsets * 3))
    assert len(ledger) == 16
    other = UsageLedger([("other", Subset(4))])
    ledger.merge(other)
    assert len(ledger) == 17
    assert ledger.max_size("other") == 0
    assert UsageLedger().max_size() is None
