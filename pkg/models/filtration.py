"""
Filtration layers and multiplicity tables for the monodromy filtration.
"""

from dataclasses import dataclass

try:
    import pandas as pd
except ImportError:
    pd = None

from models.base_model import BaseModel


@dataclass(frozen=True)
class FiltrationLayer(BaseModel):
    """M_k as a set of summand indices of E_diamond."""

    k: int
    indices: frozenset

    def __len__(self):
        return len(self.indices)

    def __contains__(self, index):
        return index in self.indices

    def issubset(self, other):
        return self.indices <= other.indices

    def to_dict(self):
        return {"k": self.k, "indices": sorted(self.indices)}


class MultiplicityTable(BaseModel):
    """Multiplicities keyed by (|I|, k), optionally refined by the subset I.

    Args:
        counts (dict): {(size, k): multiplicity}
        refined (dict, optional): {(subset, k): multiplicity}
        twist_offset (int): Added to every k when labelling columns
    """

    def __init__(self, counts, refined=None, twist_offset=0):
        if any(v < 0 for v in counts.values()):
            raise ValueError("Multiplicities must be nonnegative")
        self.counts = {key: v for key, v in counts.items() if v}
        self.refined = {key: v for key, v in (refined or {}).items() if v}
        self.twist_offset = twist_offset

    def get(self, size, k):
        return self.counts.get((size, k), 0)

    @property
    def total(self):
        return sum(self.counts.values())

    def twists(self):
        return sorted({k for _, k in self.counts})

    def normalized(self, offset):
        """Same table with twists relabelled k -> k + offset."""
        return MultiplicityTable(
            {(s, k + offset): v for (s, k), v in self.counts.items()},
            {(i, k + offset): v for (i, k), v in self.refined.items()},
            self.twist_offset + offset,
        )

    def __eq__(self, other):
        return isinstance(other, MultiplicityTable) and self.counts == other.counts

    __hash__ = None

    def to_frame(self, refined=False):
        """DataFrame with one row per |I| (or per I) and one column per twist."""
        if pd is None:
            raise ImportError("pandas is required for table output")
        source = self.refined if refined else self.counts
        rows = [
            {"I" if refined else "|I|": str(key) if refined else key, "k": k, "multiplicity": v}
            for (key, k), v in source.items()
        ]
        label = "I" if refined else "|I|"
        if not rows:
            return pd.DataFrame(columns=[label])
        frame = pd.DataFrame(rows).pivot_table(
            index=label, columns="k", values="multiplicity", aggfunc="sum", fill_value=0
        )
        if not refined:
            frame = frame.sort_index(ascending=False)
        return frame.astype(int)

    def to_text(self, refined=False):
        frame = self.to_frame(refined)
        return frame.to_string() if len(frame) else "(empty table)"

    def to_dict(self):
        data = {
            "twist_offset": self.twist_offset,
            "entries": [
                {"size": s, "k": k, "multiplicity": v} for (s, k), v in sorted(self.counts.items())
            ],
            "total": self.total,
        }
        if self.refined:
            data["refined"] = [
                {"I": subset.to_dict(), "k": k, "multiplicity": v}
                for (subset, k), v in sorted(self.refined.items(), key=lambda e: (e[0][1], e[0][0].sort_key()))
            ]
        return data
