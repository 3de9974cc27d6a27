"""
Normal-form morphisms between the elementary objects E(I) on affine n-space.
"""

import logging
import threading
from dataclasses import dataclass
from math import comb

from models.base_model import BaseModel
from models.errors import NotComposableError, NotHomogeneousError
from models.subset import acceptable_orders

logger = logging.getLogger(__name__)

UNIT_SUM = "unit-sum"


@dataclass(frozen=True)
class NormalMorphism(BaseModel):
    """scalar * (canonical generator word) : E(source) -> E(target).

    The word has one dotted epsilon for each index in source - target and
    one dotted eta for each index in target - source. Letters with distinct
    indices commute, so no order is stored.
    """

    source: object
    target: object
    scalar: object

    def __post_init__(self):
        if self.source.n != self.target.n:
            raise ValueError("Source and target live on different affine spaces")
        if self.scalar.ring.n != self.source.n:
            raise ValueError("Scalar ring rank does not match the strata")

    @classmethod
    def generator(cls, source, target, sring):
        return cls(source, target, sring.one)

    @classmethod
    def identity(cls, stratum, sring):
        return cls(stratum, stratum, sring.one)

    @property
    def word_length(self):
        return len(self.source.symmetric_difference(self.target))

    @property
    def epsilon_letters(self):
        return sorted(set(self.source.members) - set(self.target.members))

    @property
    def eta_letters(self):
        return sorted(set(self.target.members) - set(self.source.members))

    def degree(self):
        """Sheaf degree d of the morphism E(I) -> E(J){d}.

        Raises:
            NotHomogeneousError: If the polynomial part mixes degrees
        """
        degrees = {2 * d for d, _, _ in self.scalar.polynomial_degrees()}
        if len(degrees) != 1:
            raise NotHomogeneousError(f"Morphism scalar {self.scalar} is not homogeneous")
        return self.word_length + degrees.pop()

    def _check_parallel(self, other):
        if self.source != other.source or self.target != other.target:
            raise NotComposableError("Only morphisms with equal source and target can be added")

    def __add__(self, other):
        self._check_parallel(other)
        return NormalMorphism(self.source, self.target, self.scalar + other.scalar)

    def __neg__(self):
        return NormalMorphism(self.source, self.target, -self.scalar)

    def scaled(self, scalar):
        return NormalMorphism(self.source, self.target, scalar * self.scalar)

    @property
    def is_zero(self):
        return self.scalar.is_zero

    def to_dict(self):
        from utils.formatter import format_scalar, format_word

        return {
            "source": self.source.to_dict(),
            "target": self.target.to_dict(),
            "word": format_word(self.source, self.target),
            "scalar": format_scalar(self.scalar),
        }

    def __str__(self):
        from utils.formatter import format_morphism

        return format_morphism(self)


class UsageLedger(BaseModel):
    """Append-only record of relation uses, as (tag, subset) pairs.

    Appends from several worker threads are merged as a set union.
    """

    def __init__(self, entries=()):
        self._entries = set(entries)
        self._lock = threading.Lock()

    def record(self, tag, subset):
        with self._lock:
            self._entries.add((tag, subset))

    def merge(self, other):
        with self._lock:
            self._entries |= other.entries

    @property
    def entries(self):
        with self._lock:
            return frozenset(self._entries)

    def subsets(self, tag=UNIT_SUM):
        return sorted(
            (subset for t, subset in self.entries if t == tag),
            key=lambda s: (len(s), s.members),
        )

    def max_size(self, tag=UNIT_SUM):
        """Largest |I| recorded for the tag, or None for an empty ledger."""
        sizes = [len(subset) for subset in self.subsets(tag)]
        return max(sizes) if sizes else None

    def __len__(self):
        return len(self.entries)

    def to_dict(self):
        return {
            "entries": [
                {"relation": tag, "subset": subset.to_dict()}
                for tag, subset in sorted(self.entries, key=lambda e: (e[0], len(e[1]), e[1].members))
            ],
            "max_size": self.max_size(),
        }


def compose(g, f):
    """Normal form of g o f.

    Each index touched by both words contributes an epsilon-eta or eta-epsilon
    pair, which reduces to a_i times the identity.

    Args:
        g (NormalMorphism): Second map, E(J) -> E(K)
        f (NormalMorphism): First map, E(I) -> E(J)

    Returns:
        NormalMorphism: E(I) -> E(K)

    Raises:
        NotComposableError: If f.target differs from g.source
    """
    if f.target != g.source:
        raise NotComposableError(f"Cannot compose: target {f.target} != source {g.source}")
    sring = f.scalar.ring
    scalar = g.scalar * f.scalar
    paired = f.source.symmetric_difference(f.target) & g.source.symmetric_difference(g.target)
    for i in sorted(paired):
        scalar = scalar * sring.alpha(i)
    return NormalMorphism(f.source, g.target, scalar)


def _pair(subset, i, sring):
    """The reduced composite through index i: eps.eta if i is outside, eta.eps if inside."""
    other = subset.remove(i) if i in subset else subset.add(i)
    there = NormalMorphism.generator(subset, other, sring)
    back = NormalMorphism.generator(other, subset, sring)
    return compose(back, there)


def unit_sum_check(subset, ledger, sring):
    """Check sum_{i not in I} eps_i eta_i + sum_{i in I} eta_i eps_i = xi id.

    Args:
        subset (Subset): The stratum I
        ledger (UsageLedger): Receives ("unit-sum", I)
        sring (ScalarRing): Ring of rank n

    Returns:
        bool: Whether the identity holds
    """
    total = sring.zero
    for i in range(1, subset.n + 1):
        total = total + _pair(subset, i, sring).scalar
    ledger.record(UNIT_SUM, subset)
    ok = total == sring.xi
    if not ok:
        logger.warning("Unit-sum identity fails on E%s: %s", subset, total)
    return ok


def block_unit_sum_check(block, subset, sring):
    """Check eps_j eta_j + sum_{i in core} eta_i eps_i = (sum_{b in B} a_b) id.

    Args:
        block (Block): Block with tail j
        subset (Subset): Stratum I with I & B = core and an acceptable order
            of I beginning with the core

    Returns:
        bool: Whether the identity holds

    Raises:
        ValueError: If the precondition on I fails
    """
    core = block.core
    if set(subset.members) & set(block.elements) != set(core):
        raise ValueError(f"{subset} does not meet block {block} exactly in its core")
    if core and not any(order[: len(core)] == core for order in acceptable_orders(subset)):
        raise ValueError(f"No acceptable order of {subset} starts with {core}")
    lhs = sring.zero
    for b in block.elements:
        lhs = lhs + _pair(subset, b, sring).scalar
    rhs = sring.zero
    for b in block.elements:
        rhs = rhs + sring.alpha(b)
    return lhs == rhs


def hom_dimension(source, target, d):
    """Rank of the degree-d morphisms E(source) -> E(target){d}.

    Args:
        source (Subset): I
        target (Subset): J
        d (int): Degree

    Returns:
        int: Number of monomials of degree (d - |I^J|)/2 in n variables,
        or 0 when the degree does not fit
    """
    n = source.n
    length = len(source.symmetric_difference(target))
    if d < length or (d - length) % 2:
        return 0
    return comb((d - length) // 2 + n - 1, n - 1)
