"""
Graded parity objects: formal direct sums of E(I)<t>[h].
"""

from dataclasses import dataclass, replace

from models.base_model import BaseModel
from models.subset import Subset


@dataclass(frozen=True)
class Summand(BaseModel):
    """E(I)<t>[h]; the underlying parity object is E(I){-t} at chain position p = -(t+h)."""

    stratum: Subset
    twist: int = 0
    shift: int = 0

    @property
    def position(self):
        return -(self.twist + self.shift)

    def twisted(self, k):
        return replace(self, twist=self.twist + k)

    def shifted(self, m):
        return replace(self, shift=self.shift + m)

    def sort_key(self):
        return (self.position, self.twist) + self.stratum.sort_key()

    def to_dict(self):
        return {"I": self.stratum.to_dict(), "t": self.twist, "h": self.shift}

    def __str__(self):
        text = f"E{self.stratum}"
        if self.twist:
            text += f"<{self.twist}>"
        if self.shift:
            text += f"[{self.shift}]"
        return text


class GradedObject(BaseModel):
    """An ordered finite direct sum of summands on affine n-space.

    Constructions keep their natural block order; canonical() sorts by chain
    position, then twist, then |I| descending, then I.
    """

    def __init__(self, n, summands=()):
        summands = tuple(summands)
        for s in summands:
            if s.stratum.n != n:
                raise ValueError(f"Summand {s} does not live on A^{n}")
        self.n = n
        self.summands = summands

    @classmethod
    def direct_sum(cls, n, *objects):
        summands = []
        for obj in objects:
            summands.extend(obj.summands)
        return cls(n, summands)

    @classmethod
    def zero(cls, n):
        return cls(n, ())

    def __len__(self):
        return len(self.summands)

    def __iter__(self):
        return iter(self.summands)

    def __getitem__(self, index):
        return self.summands[index]

    def __eq__(self, other):
        return isinstance(other, GradedObject) and self.n == other.n and self.summands == other.summands

    def __hash__(self):
        return hash((self.n, self.summands))

    @property
    def strata(self):
        return tuple(s.stratum for s in self.summands)

    def twist(self, k):
        return GradedObject(self.n, (s.twisted(k) for s in self.summands))

    def shift(self, m):
        return GradedObject(self.n, (s.shifted(m) for s in self.summands))

    def canonical_order(self):
        """Indices of the summands in canonical order (stable for equal keys)."""
        return sorted(range(len(self.summands)), key=lambda i: self.summands[i].sort_key())

    def canonical(self):
        return GradedObject(self.n, (self.summands[i] for i in self.canonical_order()))

    def positions(self):
        return sorted({s.position for s in self.summands})

    def indices_at(self, position):
        return [i for i, s in enumerate(self.summands) if s.position == position]

    def restrict_to(self, stratum):
        """Indices of the summands supported on the given stratum."""
        return [i for i, s in enumerate(self.summands) if s.stratum == stratum]

    def to_dict(self):
        return [s.to_dict() for s in self.summands]

    def __str__(self):
        return " + ".join(str(s) for s in self.summands) if self.summands else "0"

    def __repr__(self):
        return f"GradedObject(n={self.n}, {self})"
