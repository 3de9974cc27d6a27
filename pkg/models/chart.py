"""
Lines in homogeneous coordinates and the diagonal maps g_i(y) acting on them.
"""

from dataclasses import dataclass
from itertools import combinations

from sympy import S, cancel, expand, sympify

from models.base_model import BaseModel


@dataclass(frozen=True)
class ProjVector(BaseModel):
    """Homogeneous coordinates [c_1 : ... : c_n] of a line, entries sympy expressions."""

    coords: tuple

    def __post_init__(self):
        coords = tuple(sympify(c) for c in self.coords)
        if not coords:
            raise ValueError("A projective vector needs at least one coordinate")
        if all(expand(c) == 0 for c in coords):
            raise ValueError("Homogeneous coordinates may not all vanish")
        object.__setattr__(self, "coords", coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, index):
        """Coordinate at a 1-based index, as in a_{ij}."""
        return self.coords[index - 1]

    def minors(self, other):
        """All 2x2 minors of the pair, keyed by the column pair (1-based)."""
        if len(other) != len(self):
            raise ValueError(f"Cannot compare lines in P^{len(self) - 1} and P^{len(other) - 1}")
        return {
            (a + 1, b + 1): self.coords[a] * other.coords[b] - self.coords[b] * other.coords[a]
            for a, b in combinations(range(len(self)), 2)
        }

    def first_nonproportional(self, other):
        """First minor that does not vanish identically, as ((a, b), minor), or None."""
        for key, minor in self.minors(other).items():
            reduced = cancel(minor)
            if reduced != 0:
                return key, reduced
        return None

    def proportional(self, other):
        return self.first_nonproportional(other) is None

    def substitute(self, mapping):
        return ProjVector(tuple(c.subs(mapping, simultaneous=True) for c in self.coords))

    def scale(self, factors):
        """Coordinatewise product with the given factors."""
        return ProjVector(tuple(c * f for c, f in zip(self.coords, factors)))

    def to_dict(self):
        return [str(c) for c in self.coords]

    def __str__(self):
        return "[" + " : ".join(str(c) for c in self.coords) + "]"


@dataclass(frozen=True)
class DiagonalMap(BaseModel):
    """g_i(y): the identity on C^n except for the entry y in position i."""

    n: int
    index: int
    entry: object = S.One

    def __post_init__(self):
        if not 1 <= self.index <= self.n:
            raise ValueError(f"Index {self.index} out of range [1..{self.n}]")
        object.__setattr__(self, "entry", sympify(self.entry))

    @property
    def diagonal(self):
        return tuple(self.entry if j == self.index else S.One for j in range(1, self.n + 1))

    def apply(self, vector):
        if len(vector) != self.n:
            raise ValueError(f"g_{self.index} acts on C^{self.n}, got {len(vector)} coordinates")
        return vector.scale(self.diagonal)

    def to_dict(self):
        return {"n": self.n, "index": self.index, "entry": str(self.entry)}
