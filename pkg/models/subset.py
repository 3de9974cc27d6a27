"""
Subsets of [n] on the cyclic Dynkin diagram 1 - 2 - ... - n - 1.
"""

from dataclasses import dataclass
from itertools import combinations

from models.base_model import BaseModel
from models.errors import BlockDecompositionError


@dataclass(frozen=True)
class Subset(BaseModel):
    """A stratum label I, a subset of {1..n}."""

    n: int
    members: tuple = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        members = tuple(sorted(set(self.members)))
        if any(not 1 <= i <= self.n for i in members):
            raise ValueError(f"Members {members} not contained in [1..{self.n}]")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, n, *members):
        return cls(n, tuple(members))

    @classmethod
    def full(cls, n):
        return cls(n, tuple(range(1, n + 1)))

    @classmethod
    def all_subsets(cls, n, size=None):
        """Every subset of [n], or only those of the given size, in lex order."""
        sizes = range(n + 1) if size is None else [size]
        return [cls(n, combo) for k in sizes for combo in combinations(range(1, n + 1), k)]

    def __contains__(self, i):
        return i in self.members

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @property
    def is_proper(self):
        return len(self.members) < self.n

    def add(self, i):
        return Subset(self.n, self.members + (i,))

    def remove(self, i):
        return Subset(self.n, tuple(j for j in self.members if j != i))

    def complement(self):
        return Subset(self.n, tuple(i for i in range(1, self.n + 1) if i not in self.members))

    def symmetric_difference(self, other):
        return set(self.members) ^ set(other.members)

    def sort_key(self):
        """|I| descending, then lexicographic."""
        return (-len(self.members), self.members)

    def to_dict(self):
        return list(self.members)

    def __str__(self):
        return "(" + ",".join(str(i) for i in self.members) + ")" if self.members else "()"


def successor(i, n):
    """Clockwise neighbour of i on the cyclic diagram."""
    return 1 if i == n else i + 1


def predecessor(i, n):
    return n if i == 1 else i - 1


def is_acceptable(order, subset):
    """Check an ordering against the two-condition definition.

    Args:
        order (tuple): Candidate ordering of the members
        subset (Subset): The subset being ordered

    Returns:
        bool: True when the first element has its successor outside the subset
        and exactly one inequality of i1 > i2 > ... > ik > i1 fails
    """
    if sorted(order) != list(subset.members):
        return False
    if not order:
        return True
    if successor(order[0], subset.n) in subset:
        return False
    chain = list(order) + [order[0]]
    failures = sum(1 for a, b in zip(chain, chain[1:]) if not a > b)
    return failures == 1


def acceptable_orders(subset):
    """All acceptable orders on a proper subset.

    Elements are listed in decreasing cyclic order, starting from an element
    whose clockwise successor is not in the subset. Orders are returned by
    starting element ascending.

    Args:
        subset (Subset): A proper subset of [n]

    Returns:
        list: Tuples of members

    Raises:
        ValueError: If the subset is all of [n]
    """
    if not subset.is_proper:
        raise ValueError(f"{subset} is not a proper subset of [{subset.n}]")
    if not subset.members:
        return [()]
    n = subset.n
    orders = []
    for start in subset.members:
        if successor(start, n) in subset:
            continue
        orders.append(tuple(sorted(subset.members, key=lambda i: (start - i) % n)))
    return orders


@dataclass(frozen=True)
class Block(BaseModel):
    """A cyclically consecutive run read in acceptable (decreasing) order."""

    n: int
    elements: tuple

    def __post_init__(self):
        if not self.elements:
            raise ValueError("A block is nonempty")
        for a, b in zip(self.elements, self.elements[1:]):
            if b != predecessor(a, self.n):
                raise ValueError(f"{self.elements} is not a consecutive run")
        if len(self.elements) >= self.n:
            raise ValueError("A block is a proper subset")

    @property
    def core(self):
        return self.elements[:-1]

    @property
    def tail(self):
        return self.elements[-1]

    def as_subset(self):
        return Subset(self.n, self.elements)

    def core_subset(self):
        return Subset(self.n, self.core)

    def to_dict(self):
        return {"elements": list(self.elements), "core": list(self.core), "tail": self.tail}

    def __str__(self):
        return "(" + ",".join(str(b) for b in self.elements) + ")"


def block_decomposition(subset):
    """Split [n] into blocks whose cores together make up the subset.

    Every element outside the subset is the tail of exactly one block; its core
    is the run of members directly clockwise of it.

    Args:
        subset (Subset): The subset I

    Returns:
        list: Blocks ordered by first element

    Raises:
        BlockDecompositionError: If |I| > n-2
    """
    n = subset.n
    if len(subset) > n - 2:
        raise BlockDecompositionError(
            f"No block decomposition of {subset} in [{n}]: need |I| <= n-2"
        )
    blocks = []
    for tail in range(1, n + 1):
        if tail in subset:
            continue
        run = []
        i = successor(tail, n)
        while i in subset:
            run.append(i)
            i = successor(i, n)
        blocks.append(Block(n, tuple(reversed(run)) + (tail,)))
    return sorted(blocks, key=lambda b: b.elements[0])
