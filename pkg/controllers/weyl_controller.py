"""
Weyl controller.
Affine Weyl group combinatorics for PGL_n: lengths, fundamental translations,
Bruhat order, admissible elements and the Hecke subexpression identity.
"""

import logging
from collections import deque
from functools import lru_cache

from models.check_result import CheckResult
from models.errors import VerificationError
from models.hecke import HeckeElement, q
from models.subset import Subset, acceptable_orders
from models.weyl_element import ExtAffineElement, ReducedWord, reduced_word
from utils.worker_pool import run_statements

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def _bruhat_leq(x, y):
    # lifting property: for a left descent s of y, x <= y iff min(x, sx) <= sy
    if x.length > y.length:
        return False
    if y.length == 0:
        return x == y
    for i in range(1, y.n + 1):
        s = ExtAffineElement.simple_reflection(y.n, i)
        sy = s * y
        if sy.length < y.length:
            sx = s * x
            return _bruhat_leq(sx if sx.length < x.length else x, sy)
    raise ValueError(f"{y} has positive length but no left descent")


def bruhat_leq(x, y):
    """x <= y in the Bruhat order; elements with different omega powers are incomparable."""
    if x.n != y.n:
        raise ValueError(f"Cannot compare elements for n={x.n} and n={y.n}")
    if x.omega_power != y.omega_power:
        return False
    return _bruhat_leq(x, y)


def subword_leq(x, y):
    """The subword property read off one reduced word of y."""
    if x.omega_power != y.omega_power:
        return False
    return any(sub.element() == x for sub in reduced_word(y).subexpressions())


class WeylController:
    """Controller for the extended affine Weyl group of PGL_n and its Hecke algebra."""

    def __init__(self, n, workers=None):
        if n < 1:
            raise ValueError(f"n must be positive, got {n}")
        self.n = n
        self.workers = workers
        self._admissible = None

    @property
    def generators(self):
        return list(range(1, self.n + 1)) if self.n >= 2 else []

    def s(self, i):
        return ExtAffineElement.simple_reflection(self.n, i)

    @property
    def omega(self):
        return ExtAffineElement.omega(self.n)

    @property
    def identity(self):
        return ExtAffineElement.identity(self.n)

    def length(self, x):
        return x.length

    def omega_conjugate(self, i, power=1):
        """The j with omega^power s_i omega^-power = s_j.

        Raises:
            VerificationError: If the conjugate is not a simple reflection, or
                differs from s_{i+power} (indices mod n)
        """
        if i not in self.generators:
            raise ValueError(f"No simple reflection s_{i} for n={self.n}")
        w = self.omega**power
        conjugate = w * self.s(i) * w.inverse()
        for j in self.generators:
            if self.s(j) == conjugate:
                expected = (i - 1 + power) % self.n + 1
                if j != expected:
                    raise VerificationError(f"omega-conjugate[{i}]", f"s{j}", f"s{expected}")
                return j
        raise VerificationError(f"omega-conjugate[{i}]", str(conjugate), "a simple reflection")

    def translation_word(self, i):
        """s_{i-1} s_{i-2} ... s_{i+1} omega, indices mod n."""
        n = self.n
        letters = tuple((i - 2 - j) % n + 1 for j in range(n - 1))
        return ReducedWord(n, letters, 1)

    def fundamental_translation(self, i):
        """t_{e_i} together with its word, checking the word multiplies out to it.

        Returns:
            tuple: (ExtAffineElement, ReducedWord)
        """
        element = ExtAffineElement.fundamental_coweight(self.n, i)
        word = self.translation_word(i)
        if word.element() != element:
            raise VerificationError(f"translation-word[{i}]", str(word.element()), str(element))
        return element, word

    def translations(self):
        return [self.fundamental_translation(i) for i in range(1, self.n + 1)]

    # admissible elements

    def w_subset(self, subset, order=None):
        """w_I = s_{i1} ... s_{ik} omega for an acceptable order of I."""
        order = order if order is not None else acceptable_orders(subset)[0]
        return ReducedWord(self.n, order, 1).element()

    def admissible_elements(self):
        """The bijection I -> w_I on proper subsets of [n].

        Returns:
            dict: {Subset: ExtAffineElement}

        Raises:
            VerificationError: If w_I depends on the acceptable order or two
                subsets share an element
        """
        if self._admissible is not None:
            return dict(self._admissible)
        mapping = {}
        for subset in Subset.all_subsets(self.n):
            if not subset.is_proper:
                continue
            values = {self.w_subset(subset, order) for order in acceptable_orders(subset)}
            if len(values) != 1:
                raise VerificationError(f"admissible:independence[{subset}]", str(len(values)), "1")
            mapping[subset] = values.pop()
        distinct = set(mapping.values())
        if len(distinct) != 2**self.n - 1:
            raise VerificationError("admissible:bijection", str(len(distinct)), str(2**self.n - 1))
        logger.debug("Found %d admissible elements for n=%d", len(distinct), self.n)
        self._admissible = mapping
        return dict(mapping)

    def subexpression_elements(self):
        """Every subexpression of the n fundamental translation words."""
        found = set()
        for _, word in self.translations():
            found.update(sub.element() for sub in word.subexpressions())
        return found

    def ball(self, radius):
        """Breadth-first search over words in s_1..s_n: {element: word length}."""
        distances = {self.identity: 0}
        frontier = deque([self.identity])
        while frontier:
            x = frontier.popleft()
            if distances[x] == radius:
                continue
            for i in self.generators:
                y = self.s(i) * x
                if y not in distances:
                    distances[y] = distances[x] + 1
                    frontier.append(y)
        return distances

    def admissible_by_bruhat(self):
        """{x omega : l(x) <= n-1, x omega <= t^i for some i}, enumerated independently."""
        tops = [element for element, _ in self.translations()]
        candidates = {x * self.omega for x in self.ball(self.n - 1)}
        return {c for c in candidates if any(bruhat_leq(c, top) for top in tops)}

    # Hecke algebra

    def hecke_product(self, word):
        """(T_{s_i1} + 1) ... (T_{s_ik} + 1) T_{omega^m}, expanded in the standard basis."""
        result = HeckeElement.basis(self.omega**word.omega_power)
        for i in reversed(word.letters):
            result = result.left_multiply(i) + result
        return result

    def hecke_subexpression_check(self, word):
        """Coefficients of the expanded product, keyed by element.

        Returns:
            dict: {ExtAffineElement: coefficient polynomial in q}
        """
        return dict(self.hecke_product(word).terms)

    def coefficients_are_one(self, word):
        """Every subexpression of word appears with coefficient exactly 1."""
        coefficients = self.hecke_subexpression_check(word)
        expected = {sub.element() for sub in word.subexpressions()}
        return set(coefficients) == expected and all(c == 1 for c in coefficients.values())

    # statements

    def statements(self, oracle_limit=5):
        n = self.n
        statements = [
            ("weyl:omega-order", lambda: (self.omega**n).is_identity and self.omega.length == 0),
            ("weyl:translation-product", self._translation_product),
        ]
        for i in self.generators:
            statements.append((f"weyl:involution[{i}]", lambda i=i: (self.s(i) * self.s(i)).is_identity))
            statements.append((f"weyl:omega-conjugate[{i}]", lambda i=i: self._conjugate_check(i)))
        for i in range(1, n + 1):
            statements.append((f"weyl:translation[{i}]", lambda i=i: self._translation_check(i)))
        statements += [
            ("weyl:admissible-count", lambda: len(self.admissible_elements()) == 2**n - 1),
            ("weyl:admissible-subexpressions", self._subexpression_check),
            ("weyl:admissible-lengths", self._admissible_lengths),
            ("hecke:translation-words", lambda: all(self.coefficients_are_one(w) for _, w in self.translations())),
            ("hecke:admissible-words", self._admissible_hecke),
        ]
        if n >= 2:
            statements.append(("hecke:negative-control", self._negative_control))
        if n <= oracle_limit:
            statements += [
                ("weyl:length-oracle", lambda: self._length_oracle(n)),
                ("weyl:coxeter-parity", lambda: self._parity(n)),
                ("weyl:bruhat-oracle", lambda: self.admissible_by_bruhat() == set(self.admissible_elements().values())),
            ]
        return statements

    def _translation_product(self):
        product = self.identity
        for element, _ in self.translations():
            product = product * element
        return product.is_identity

    def _conjugate_check(self, i):
        return self.omega_conjugate(i) == i % self.n + 1

    def _translation_check(self, i):
        element, word = self.fundamental_translation(i)
        return word.is_reduced and element.length == self.n - 1

    def _subexpression_check(self):
        admissible = set(self.admissible_elements().values())
        return CheckResult.from_bool(
            "weyl:admissible-subexpressions",
            admissible == self.subexpression_elements(),
            detail=f"{len(admissible)} admissible, {len(self.subexpression_elements())} subexpressions",
        )

    def _admissible_lengths(self):
        for subset, element in self.admissible_elements().items():
            word = ReducedWord(self.n, acceptable_orders(subset)[0], 1)
            if element.length != len(subset) or not word.is_reduced:
                return CheckResult.from_bool("weyl:admissible-lengths", False, detail=f"I={subset}")
        return True

    def _admissible_hecke(self):
        for subset in self.admissible_elements():
            for order in acceptable_orders(subset):
                if not self.coefficients_are_one(ReducedWord(self.n, order, 1)):
                    return CheckResult.from_bool("hecke:admissible-words", False, detail=f"I={subset}")
        return True

    def _negative_control(self):
        coefficients = self.hecke_subexpression_check(ReducedWord(self.n, (1, 1)))
        return coefficients.get(self.s(1)) == q + 1

    def _length_oracle(self, radius):
        distances = self.ball(radius)
        return all(x.length == d and (x * self.omega).length == d for x, d in distances.items())

    def _parity(self, radius):
        for x in self.ball(radius):
            for i in self.generators:
                if abs((self.s(i) * x).length - x.length) != 1:
                    return False
        return True

    def verify(self, oracle_limit=5, workers=None):
        logger.info("Verifying affine Weyl combinatorics for n=%d", self.n)
        return run_statements(self.statements(oracle_limit), workers or self.workers)

    def report(self):
        """Admissible elements with their words and lengths, for output."""
        rows = []
        for subset, element in sorted(self.admissible_elements().items(), key=lambda e: e[0].sort_key()):
            order = acceptable_orders(subset)[0]
            rows.append(
                {
                    "I": subset.to_dict(),
                    "word": str(ReducedWord(self.n, order, 1)),
                    "length": element.length,
                    "element": element.to_dict(),
                }
            )
        return {
            "n": self.n,
            "translations": [
                {"i": i, "word": str(word), "element": element.to_dict()}
                for i, (element, word) in enumerate(self.translations(), start=1)
            ],
            "admissible": rows,
        }
