"""
Monodromy controller.
Computes the monodromy filtration of Z from bN and its associated graded.
"""

import logging
from collections import Counter
from math import comb

from sympy import Matrix, zeros

from models.check_result import CheckResult
from models.filtration import FiltrationLayer, MultiplicityTable
from utils.worker_pool import run_statements

logger = logging.getLogger(__name__)


def coordinate_map(matrix):
    """Read a matrix sending each summand to at most one summand as {col: row}.

    Raises:
        ValueError: If some column has two or more entries
    """
    mapping = {}
    for row, col in matrix.entries:
        if col in mapping:
            raise ValueError(f"Column {col} has more than one entry; not a coordinate map")
        mapping[col] = row
    return mapping


class MonodromyController:
    """Controller for the monodromy filtration of Z.

    Works from a NearbyController, whose kit supplies E_diamond and bN.
    """

    def __init__(self, nearby):
        self.nearby = nearby
        self.n = nearby.n
        self.sring = nearby.sring
        self._powers = {}

    @property
    def kit(self):
        return self.nearby.kit

    @property
    def size(self):
        return len(self.kit.E_diamond)

    def power(self, e):
        """bN^e, cached."""
        if e not in self._powers:
            self._powers[e] = self.kit.b_N.power(e)
        return self._powers[e]

    def nilpotency_order(self):
        """Smallest m with bN^m = 0."""
        m = 0
        while not self.power(m).is_zero:
            m += 1
        return m

    def kernel_image(self, e):
        """Summand index sets spanning ker bN^e and im bN^e.

        Args:
            e (int): Exponent, e >= 0

        Returns:
            tuple: (kernel, image) as frozensets of E_diamond indices
        """
        if e < 0:
            raise ValueError(f"Exponent must be nonnegative, got {e}")
        mapping = coordinate_map(self.power(e))
        everything = range(self.size)
        kernel = frozenset(c for c in everything if c not in mapping)
        image = frozenset(mapping.values())
        return kernel, image

    def monodromy_filtration(self, z=None):
        """Layers M_k = sum_{p-q=k} ker bN^{p+1} & im bN^q, for -m <= k <= m.

        Args:
            z (DifferentialComplex, optional): Z; built when omitted. Used to
                check that the differential preserves every layer.

        Returns:
            list: FiltrationLayer per k, increasing

        Raises:
            ValueError: If the differential of Z leaves a layer
        """
        z = z or self.nearby.build_Z()
        m = self.nilpotency_order()
        layers = []
        for k in range(-m, m + 1):
            span = set()
            for p in range(0, m + abs(k) + 1):
                q = p - k
                if q < 0:
                    continue
                kernel, _ = self.kernel_image(p + 1)
                _, image = self.kernel_image(q)
                span |= kernel & image
            layers.append(FiltrationLayer(k, frozenset(span)))
        for layer in layers:
            leak = self._leak(z.differential, layer, layer)
            if leak is not None:
                raise ValueError(f"The differential of Z leaves M_{layer.k}: entry {leak}")
        logger.debug("Monodromy filtration for n=%d: %s", self.n, [len(l) for l in layers])
        return layers

    @staticmethod
    def _leak(matrix, source_layer, target_layer):
        """First entry mapping into target_layer's complement from source_layer, or None."""
        for row, col in sorted(matrix.entries):
            if col in source_layer and row not in target_layer:
                return (row, col)
        return None

    @staticmethod
    def layer_at(layers, k):
        """M_k, extended by empty below and everything above the computed range."""
        first, last = layers[0], layers[-1]
        if k < first.k:
            return FiltrationLayer(k, frozenset())
        if k > last.k:
            return FiltrationLayer(k, last.indices)
        return layers[k - first.k]

    def graded_piece(self, layers, k):
        return self.layer_at(layers, k).indices - self.layer_at(layers, k - 1).indices

    def recursive_filtration(self):
        """The filtration rebuilt from its three characterizing clauses.

        M_k = 0 for k <= -m; M_i is the preimage of M_{-i-2} under bN^{i+1} for
        i >= 0; M_{-i} = bN^i(M_i) for i > 0.
        """
        m = self.nilpotency_order()
        everything = frozenset(range(self.size))
        known = {}

        def layer(k):
            if k <= -m:
                return frozenset()
            return known[k]

        for i in range(max(m - 1, 0), -1, -1):
            mapping = coordinate_map(self.power(i + 1))
            below = layer(-i - 2)
            known[i] = frozenset(c for c in everything if c not in mapping or mapping[c] in below)
            if i > 0:
                image = coordinate_map(self.power(i))
                known[-i] = frozenset(image[c] for c in known[i] if c in image)
        return [FiltrationLayer(k, layer(k) if k < m else everything) for k in range(-m, m + 1)]

    def verify_filtration_axioms(self, z=None, layers=None):
        """Check bN(M_k) in M_{k-2} and that bN^k induces gr_k -> gr_{-k} bijectively.

        Returns:
            bool: Whether both axioms hold on every layer
        """
        layers = layers or self.monodromy_filtration(z)
        m = self.nilpotency_order()
        strata = self.kit.E_diamond.strata
        for k in range(-m, m + 2):
            if self._leak(self.kit.b_N, self.layer_at(layers, k), self.layer_at(layers, k - 2)) is not None:
                logger.warning("bN does not map M_%d into M_%d", k, k - 2)
                return False
        for k in range(0, m + 1):
            mapping = coordinate_map(self.power(k))
            source = self.graded_piece(layers, k)
            target = self.graded_piece(layers, -k)
            if self._leak(self.power(k), self.layer_at(layers, k), self.layer_at(layers, -k)) is not None:
                return False
            images = {mapping[c] for c in source if c in mapping and mapping[c] in target}
            hits = [c for c in source if c in mapping and mapping[c] in target]
            if len(hits) != len(source) or len(images) != len(hits) or images != target:
                logger.warning("bN^%d does not induce gr_%d ~ gr_%d", k, k, -k)
                return False
            if any(strata[c] != strata[mapping[c]] for c in hits):
                return False
        return True

    def associated_graded(self, layers=None, refined=True):
        """Multiplicities of gr_k by (|I|, twist).

        Raises:
            ValueError: If some gr_k is not concentrated in twist k
        """
        layers = layers or self.monodromy_filtration()
        summands = self.kit.E_diamond
        counts, by_subset = Counter(), Counter()
        for layer in layers:
            for index in self.graded_piece(layers, layer.k):
                summand = summands[index]
                if summand.twist != layer.k:
                    raise ValueError(f"gr_{layer.k} contains {summand} of twist {summand.twist}")
                counts[(len(summand.stratum), layer.k)] += 1
                by_subset[(summand.stratum, layer.k)] += 1
        return MultiplicityTable(counts, by_subset if refined else None)

    def closed_form(self):
        """gr_k = sum over r, s >= 0 with r - s = k of O(n-1-r-s)<k>."""
        counts = {}
        n = self.n
        for k in range(-n + 1, n):
            for r in range(0, n):
                s = r - k
                size = n - 1 - r - s
                if s < 0 or size < 0:
                    continue
                counts[(size, k)] = counts.get((size, k), 0) + comb(n, size)
        return MultiplicityTable(counts)

    def psi_table(self, table=None):
        """The table for Psi = Z<-1>: twists k - 1."""
        return (table or self.associated_graded()).normalized(-1)

    # independent check by exact linear algebra

    def _sympy_power(self, e):
        size = self.size
        result = zeros(size, size)
        for (row, col), value in self.power(e).entries.items():
            result[row, col] = value.poly.as_expr()
        return result

    def oracle_layer_dimension(self, k, layers=None):
        """dim M_k from sympy nullspaces and column spaces of bN's powers.

        Also checks that M_k lies in the span of the combinatorial layer's summands.

        Returns:
            tuple: (dimension, contained in the combinatorial layer)
        """
        m = self.nilpotency_order()
        size = self.size
        vectors = []
        for p in range(0, m + abs(k) + 1):
            q = p - k
            if q < 0:
                continue
            kernel = self._sympy_power(p + 1).nullspace()
            image = self._sympy_power(q).columnspace()
            if not kernel or not image:
                continue
            a, b = Matrix.hstack(*kernel), Matrix.hstack(*image)
            for solution in Matrix.hstack(a, -b).nullspace():
                vectors.append(a * solution[: a.shape[1], :])
        if not vectors:
            return 0, True
        span = Matrix.hstack(*vectors)
        dimension = span.rank()
        layer = self.layer_at(layers or self.monodromy_filtration(), k)
        basis = [Matrix([[1 if i == j else 0] for i in range(size)]) for j in sorted(layer.indices)]
        if not basis:
            return dimension, dimension == 0
        return dimension, Matrix.hstack(*basis, span).rank() == len(basis)

    # statements

    def filtration_statements(self, oracle_limit=4):
        n = self.n
        z = self.nearby.build_Z()
        layers = self.monodromy_filtration(z)
        table = self.associated_graded(layers)
        expected_total = sum((n - i) * comb(n, i) for i in range(n))

        def symmetric():
            return all(table.get(s, k) == table.get(s, -k) for (s, k) in table.counts)

        statements = [
            ("monodromy:nilpotency-order", lambda: self.nilpotency_order() == n),
            (
                "monodromy:recursive-clauses",
                lambda: [l.indices for l in self.recursive_filtration()] == [l.indices for l in layers],
            ),
            ("monodromy:axioms", lambda: self.verify_filtration_axioms(z, layers)),
            (
                "monodromy:closed-form",
                lambda: CheckResult.from_bool(
                    "monodromy:closed-form",
                    table == self.closed_form(),
                    detail=f"{table.counts} vs {self.closed_form().counts}",
                ),
            ),
            ("monodromy:total", lambda: table.total == expected_total == self.size),
            ("monodromy:symmetry", symmetric),
        ]
        if n <= oracle_limit:
            for layer in layers:
                statements.append(
                    (
                        f"monodromy:oracle[{layer.k}]",
                        lambda l=layer: self.oracle_layer_dimension(l.k, layers) == (len(l), True),
                    )
                )
        return statements

    def verify(self, oracle_limit=4, workers=None):
        logger.info("Verifying the monodromy filtration for n=%d", self.n)
        return run_statements(self.filtration_statements(oracle_limit), workers)
