import pytest

from models.errors import BlockDecompositionError
from models.subset import Block, Subset, acceptable_orders, block_decomposition, is_acceptable


def test_subset_normalizes_members():
    assert Subset(4, (3, 1, 3)).members == (1, 3)
    with pytest.raises(ValueError):
        Subset(3, (4,))
    with pytest.raises(ValueError):
        Subset(0)


def test_all_subsets_counts():
    assert len(Subset.all_subsets(4)) == 16
    assert len(Subset.all_subsets(4, 2)) == 6
    assert Subset.all_subsets(3, 1) == [Subset.of(3, 1), Subset.of(3, 2), Subset.of(3, 3)]


def test_acceptable_orders_examples():
    assert acceptable_orders(Subset.of(4, 1, 3)) == [(1, 3), (3, 1)]
    assert acceptable_orders(Subset.of(3, 1, 2)) == [(2, 1)]
    assert acceptable_orders(Subset.of(5)) == [()]


def test_acceptable_orders_wrap_around():
    # 3 -> 2 -> 1 is broken once, at 1 -> 3
    assert acceptable_orders(Subset.of(4, 1, 2, 3)) == [(3, 2, 1)]
    assert acceptable_orders(Subset.of(4, 4, 1)) == [(1, 4)]


def test_full_set_has_no_acceptable_order():
    with pytest.raises(ValueError):
        acceptable_orders(Subset.full(3))


@pytest.mark.parametrize("n", range(1, 7))
def test_every_proper_subset_is_orderable(n):
    proper = [s for s in Subset.all_subsets(n) if s.is_proper]
    assert len(proper) == 2**n - 1
    for subset in proper:
        orders = acceptable_orders(subset)
        assert orders
        for order in orders:
            assert sorted(order) == list(subset.members)
            assert is_acceptable(order, subset)


def test_is_acceptable_rejects_bad_starts():
    subset = Subset.of(3, 1, 2)
    assert not is_acceptable((1, 2), subset)
    assert not is_acceptable((2,), subset)
    assert is_acceptable((), Subset(3))


def test_block_decomposition_examples():
    blocks = block_decomposition(Subset.of(4, 1, 3))
    assert [b.elements for b in blocks] == [(1, 4), (3, 2)]
    assert [b.core for b in blocks] == [(1,), (3,)]
    assert [b.tail for b in blocks] == [4, 2]

    singletons = block_decomposition(Subset(3))
    assert [b.elements for b in singletons] == [(1,), (2,), (3,)]
    assert all(b.core == () for b in singletons)


def test_block_decomposition_needs_two_gaps():
    with pytest.raises(BlockDecompositionError):
        block_decomposition(Subset.of(3, 1, 2))
    with pytest.raises(ValueError):
        block_decomposition(Subset.full(2))


def test_block_must_be_a_consecutive_run():
    assert Block(5, (2, 1, 5)).tail == 5
    with pytest.raises(ValueError):
        Block(5, (1, 2))
    with pytest.raises(ValueError):
        Block(3, (3, 2, 1))


@pytest.mark.parametrize("n", range(2, 7))
def test_rotated_cores_give_acceptable_orders(n):
    for subset in Subset.all_subsets(n):
        if len(subset) > n - 2:
            continue
        blocks = block_decomposition(subset)
        assert set().union(*(b.elements for b in blocks)) == set(range(1, n + 1))
        assert set().union(*(b.core for b in blocks)) == set(subset.members)
        # walk the circle downwards, the direction the cores are read in
        blocks = sorted(blocks, key=lambda b: -b.elements[0])
        for start in range(len(blocks)):
            rotated = blocks[start:] + blocks[:start]
            order = tuple(i for b in rotated for i in b.core)
            assert is_acceptable(order, subset), (subset, order)
