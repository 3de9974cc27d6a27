"""
Matrix morphisms between graded objects.

Matrices act on column vectors: entry (row, col) maps source summand col to
target summand row, as scalar times the generator word of the two strata.
"""

import logging

from models.base_model import BaseModel
from models.errors import NotComposableError, RegimeError
from models.morphism import UNIT_SUM

logger = logging.getLogger(__name__)


def entry_bidegrees(scalar, source, target):
    """Set of (i, j) bidegrees of an entry, one per monomial of its scalar.

    Args:
        scalar (Scalar): Entry scalar xb^e r^m (polynomial of degree 2d)
        source (Summand): (I1, t1, h1)
        target (Summand): (I2, t2, h2)

    Returns:
        set: {(i, j)} with j = l + 2d + (t2 - t1) + 2e - 2m and
        i = (p2 - p1) + (l + 2d + t2 - t1) + e
    """
    length = len(source.stratum.symmetric_difference(target.stratum))
    dt = target.twist - source.twist
    dp = target.position - source.position
    result = set()
    for d, e, m in scalar.polynomial_degrees():
        base = length + 2 * d + dt
        result.add((dp + base + e, base + 2 * e - 2 * m))
    return result


def _word_parity(source, target):
    """Parity of the word part of an entry: |I1^I2| + h1 - h2."""
    return (len(source.stratum.symmetric_difference(target.stratum)) + source.shift - target.shift) % 2


class MatrixMorphism(BaseModel):
    """A matrix of scalars between two graded objects.

    Besides the entries, every cell remembers which indices had their
    epsilon-eta relation applied while it was assembled (its coverage).
    """

    def __init__(self, source, target, entries=None, coverage=None, sring=None):
        self.source = source
        self.target = target
        self.sring = sring
        cleaned = {}
        for (row, col), value in (entries or {}).items():
            if not (0 <= row < len(target) and 0 <= col < len(source)):
                raise IndexError(f"Entry ({row}, {col}) outside a {len(target)}x{len(source)} matrix")
            if not value.is_zero:
                cleaned[(row, col)] = value
                if self.sring is None:
                    self.sring = value.ring
        self.entries = cleaned
        self.coverage = dict(coverage or {})

    # construction

    @classmethod
    def zero(cls, source, target, sring=None):
        return cls(source, target, {}, sring=sring)

    @classmethod
    def identity(cls, obj, sring, scalar=None):
        value = sring.one if scalar is None else scalar
        return cls(obj, obj, {(i, i): value for i in range(len(obj))}, sring=sring)

    @classmethod
    def scalar_map(cls, source, target, scalar):
        """scalar * id between two objects with the same strata."""
        if source.strata != target.strata:
            raise NotComposableError("scalar_map needs matching strata")
        return cls(source, target, {(i, i): scalar for i in range(len(source))}, sring=scalar.ring)

    @classmethod
    def from_blocks(cls, blocks, row_objects, col_objects, sring):
        """Assemble a block matrix.

        Args:
            blocks (list): Rows of blocks; each block a MatrixMorphism or None for zero
            row_objects (list): Target object of each block row
            col_objects (list): Source object of each block column
            sring (ScalarRing): Scalar ring

        Returns:
            MatrixMorphism: Map from the sum of col_objects to the sum of row_objects
        """
        n = sring.n
        source = _sum(n, col_objects)
        target = _sum(n, row_objects)
        entries, coverage = {}, {}
        row_offset = 0
        for block_row, row_obj in zip(blocks, row_objects):
            col_offset = 0
            for block, col_obj in zip(block_row, col_objects):
                if block is not None:
                    if len(block.target) != len(row_obj) or len(block.source) != len(col_obj):
                        raise NotComposableError("Block shape does not match its row/column objects")
                    if block.target.strata != row_obj.strata or block.source.strata != col_obj.strata:
                        raise NotComposableError("Block strata do not match its row/column objects")
                    for (r, c), value in block.entries.items():
                        entries[(row_offset + r, col_offset + c)] = value
                    for (r, c), covered in block.coverage.items():
                        coverage[(row_offset + r, col_offset + c)] = covered
                col_offset += len(col_obj)
            row_offset += len(row_obj)
        return cls(source, target, entries, coverage, sring=sring)

    def retarget(self, source, target):
        """Same matrix between other objects with the same strata."""
        if source.strata != self.source.strata or target.strata != self.target.strata:
            raise NotComposableError("retarget needs objects with the same strata")
        return MatrixMorphism(source, target, self.entries, self.coverage, sring=self.sring)

    def block(self, rows, cols, source=None, target=None):
        """Sub-matrix on the given row and column index ranges."""
        rows, cols = list(rows), list(cols)
        row_index = {r: i for i, r in enumerate(rows)}
        col_index = {c: i for i, c in enumerate(cols)}
        from models.graded_object import GradedObject

        source = source or GradedObject(self.source.n, (self.source[c] for c in cols))
        target = target or GradedObject(self.target.n, (self.target[r] for r in rows))
        entries = {
            (row_index[r], col_index[c]): v
            for (r, c), v in self.entries.items()
            if r in row_index and c in col_index
        }
        return MatrixMorphism(source, target, entries, sring=self.sring)

    # shape

    @property
    def shape(self):
        return (len(self.target), len(self.source))

    def get(self, row, col):
        value = self.entries.get((row, col))
        if value is None:
            return self.sring.zero if self.sring is not None else None
        return value

    @property
    def is_zero(self):
        return not self.entries

    @property
    def has_r(self):
        return any(v.has_r for v in self.entries.values())

    @property
    def has_xi_bar(self):
        return any(v.has_xi_bar for v in self.entries.values())

    def _ring(self, other=None):
        sring = self.sring or (other.sring if other is not None else None)
        return sring

    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise NotComposableError(f"Shapes {self.shape} and {other.shape} differ")
        if self.source.strata != other.source.strata or self.target.strata != other.target.strata:
            raise NotComposableError("Matrices with different strata cannot be added")

    # arithmetic

    def __add__(self, other):
        self._check_same_shape(other)
        entries = dict(self.entries)
        for key, value in other.entries.items():
            entries[key] = entries[key] + value if key in entries else value
        coverage = _merge_coverage(self.coverage, other.coverage)
        return MatrixMorphism(self.source, self.target, entries, coverage, sring=self._ring(other))

    def __neg__(self):
        return MatrixMorphism(
            self.source, self.target, {k: -v for k, v in self.entries.items()}, self.coverage, sring=self.sring
        )

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, scalar):
        """scalar placed to the left of every entry."""
        return MatrixMorphism(
            self.source,
            self.target,
            {k: scalar * v for k, v in self.entries.items()},
            self.coverage,
            sring=scalar.ring,
        )

    def __rmul__(self, scalar):
        return self.scaled(scalar)

    def __matmul__(self, other):
        """self o other: apply other first.

        When the xb-part of an entry of other moves past an entry of self of
        odd word parity, it changes sign.
        """
        if len(other.target) != len(self.source) or other.target.strata != self.source.strata:
            raise NotComposableError(
                f"Cannot compose {self.shape} after {other.shape}: middle objects differ"
            )
        sring = self._ring(other)
        by_row = {}
        for (j, k), value in other.entries.items():
            by_row.setdefault(j, []).append((k, value))
        covered_by_row = {}
        for (j, k), covered in other.coverage.items():
            covered_by_row.setdefault(j, []).append((k, covered))

        entries, coverage = {}, {}
        for (i, j), g_value in self.entries.items():
            mid, out = self.source[j], self.target[i]
            odd = _word_parity(mid, out)
            g_moved = mid.stratum.symmetric_difference(out.stratum)
            for k, f_value in by_row.get(j, ()):
                start = other.source[k]
                if odd and f_value.has_xi_bar:
                    even, xb_part = f_value.split_xi_bar()
                    f_value = even - xb_part.times_xi_bar()
                paired = start.stratum.symmetric_difference(mid.stratum) & g_moved
                product = g_value * f_value
                for index in sorted(paired):
                    product = product * sring.alpha(index)
                entries[(i, k)] = entries[(i, k)] + product if (i, k) in entries else product
                covered = set(paired)
                covered |= self.coverage.get((i, j), frozenset())
                covered |= other.coverage.get((j, k), frozenset())
                if covered:
                    coverage[(i, k)] = coverage.get((i, k), frozenset()) | frozenset(covered)
        return MatrixMorphism(other.source, self.target, entries, coverage, sring=sring)

    def power(self, k):
        if self.source.strata != self.target.strata:
            raise NotComposableError("Only endomorphisms have powers")
        endo = self.retarget(self.source, self.source)
        result = MatrixMorphism.identity(self.source, self.sring)
        for _ in range(k):
            result = endo @ result
        return result

    def equals(self, other):
        return (
            self.shape == other.shape
            and self.source.strata == other.source.strata
            and self.target.strata == other.target.strata
            and self.entries == other.entries
        )

    def __eq__(self, other):
        if not isinstance(other, MatrixMorphism):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def first_difference(self, other):
        """First cell (row, col, mine, theirs) where the matrices differ, or None."""
        if self.shape != other.shape:
            return ("shape", self.shape, other.shape)
        zero = self._ring(other).zero if self._ring(other) else None
        for key in sorted(set(self.entries) | set(other.entries)):
            mine = self.entries.get(key, zero)
            theirs = other.entries.get(key, zero)
            if mine != theirs:
                return (key[0], key[1], mine, theirs)
        if self.source.strata != other.source.strata or self.target.strata != other.target.strata:
            return ("strata", self.source.strata, other.source.strata)
        return None

    # super structure

    def split_xi_bar(self):
        """(A, B) with self = A + xb*B and A, B free of xb."""
        even, odd = {}, {}
        for key, value in self.entries.items():
            a, b = value.split_xi_bar()
            if not a.is_zero:
                even[key] = a
            if not b.is_zero:
                odd[key] = b
        return (
            MatrixMorphism(self.source, self.target, even, self.coverage, sring=self.sring),
            MatrixMorphism(self.source, self.target, odd, sring=self.sring),
        )

    def kappa(self):
        """Entrywise kappa(a + xb*b) = xi*b.

        Raises:
            RegimeError: If an entry contains r
        """
        if self.has_r:
            raise RegimeError("kappa is only defined on matrices without r")
        _, odd = self.split_xi_bar()
        if self.sring is None:
            return odd
        return odd.scaled(self.sring.xi)

    # degrees and bookkeeping

    def bidegree_violations(self, expected):
        """Cells whose bidegree set is not exactly {expected}."""
        bad = []
        for (row, col), value in sorted(self.entries.items()):
            found = entry_bidegrees(value, self.source[col], self.target[row])
            if found != {tuple(expected)}:
                bad.append((row, col, sorted(found)))
        return bad

    def record_usage(self, ledger):
        """Ledger every endomorphism cell assembled from relations on all of 1..n."""
        full = frozenset(range(1, self.source.n + 1))
        if not full:
            return
        for (row, col), covered in self.coverage.items():
            stratum = self.target[row].stratum
            if stratum == self.source[col].stratum and covered >= full:
                ledger.record(UNIT_SUM, stratum)

    def permuted(self, row_order, col_order, source, target):
        """Reindex rows and columns: new row i is old row row_order[i]."""
        new_row = {old: new for new, old in enumerate(row_order)}
        new_col = {old: new for new, old in enumerate(col_order)}
        entries = {(new_row[r], new_col[c]): v for (r, c), v in self.entries.items()}
        coverage = {(new_row[r], new_col[c]): v for (r, c), v in self.coverage.items()}
        return MatrixMorphism(source, target, entries, coverage, sring=self.sring)

    def to_dict(self):
        from utils.formatter import format_scalar, format_word

        return {
            "rows": len(self.target),
            "cols": len(self.source),
            "entries": [
                {
                    "row": row,
                    "col": col,
                    "scalar": format_scalar(value),
                    "word": format_word(self.source[col].stratum, self.target[row].stratum),
                }
                for (row, col), value in sorted(self.entries.items())
            ],
        }

    def __repr__(self):
        return f"MatrixMorphism({self.shape[0]}x{self.shape[1]}, {len(self.entries)} entries)"


def _sum(n, objects):
    from models.graded_object import GradedObject

    return GradedObject.direct_sum(n, *objects)


def _merge_coverage(left, right):
    merged = dict(left)
    for key, covered in right.items():
        merged[key] = merged.get(key, frozenset()) | covered
    return merged
