"""
Scalar algebra for the nearby-cycles calculus.

A scalar is an element of k[a1..a_{n-1}, x] (x) k[r] (x) k[xb]/(xb^2), stored as a
sparse sympy polynomial in graded lexicographic order with the xb^2 terms dropped.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache

from sympy import Symbol, isprime, sympify
from sympy.polys.domains import GF, QQ, ZZ
from sympy.polys.orderings import grlex
from sympy.polys.rings import ring

from models.base_model import BaseModel
from models.errors import NotHomogeneousError, RingMismatchError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BaseRing(BaseModel):
    """Exact coefficient ring: integers, rationals or a prime field."""

    kind: str = "z"
    modulus: int = 0

    def __post_init__(self):
        if self.kind not in ("z", "q", "gf"):
            raise ValueError(f"Unknown base ring kind: {self.kind}")
        if self.kind == "gf" and not isprime(self.modulus):
            raise ValueError(f"Prime field modulus must be prime, got {self.modulus}")
        if self.kind != "gf" and self.modulus:
            raise ValueError("Only prime fields take a modulus")

    @classmethod
    def parse(cls, text):
        """Parse the command-line form of a base ring.

        Args:
            text (str): One of "z", "q" or "gf:P"

        Returns:
            BaseRing: The parsed ring

        Raises:
            ValueError: If the text does not name a supported ring
        """
        text = (text or "z").strip().lower()
        if text in ("z", "q"):
            return cls(text)
        if text.startswith("gf:"):
            try:
                modulus = int(text[3:])
            except ValueError:
                raise ValueError(f"Invalid prime field: {text}") from None
            return cls("gf", modulus)
        raise ValueError(f"Invalid base ring: {text}")

    @property
    def domain(self):
        if self.kind == "z":
            return ZZ
        if self.kind == "q":
            return QQ
        return GF(self.modulus)

    def to_dict(self):
        return {"kind": self.kind, "modulus": self.modulus}

    def __str__(self):
        return f"gf:{self.modulus}" if self.kind == "gf" else self.kind


INTEGERS = BaseRing("z")


@dataclass(frozen=True, order=True)
class Bidegree:
    """Bidegree (homological degree, Tate degree) of a homogeneous scalar."""

    hom: int
    tate: int

    def __add__(self, other):
        return Bidegree(self.hom + other.hom, self.tate + other.tate)

    def __str__(self):
        return f"({self.hom},{self.tate})"


class ScalarRing:
    """The coefficient algebra for a fixed rank n and base ring.

    Generators are a1..a_{n-1}, x, r, xb in that order; a_n is never a
    generator and is always expanded as x - a1 - ... - a_{n-1}.
    """

    def __init__(self, n, base=INTEGERS):
        if n < 1:
            raise ValueError(f"n must be positive, got {n}")
        self.n = n
        self.base = base
        names = [f"a{i}" for i in range(1, n)] + ["x", "r", "xb"]
        self.names = tuple(names)
        self.poly_ring, *self._gens = ring(",".join(names), base.domain, grlex)
        self.symbols = {name: Symbol(name) for name in names}
        # positions inside a monomial exponent tuple
        self.r_index = n
        self.xb_index = n + 1

    def __repr__(self):
        return f"ScalarRing(n={self.n}, base={self.base})"

    def _wrap(self, poly):
        return Scalar(self, poly)

    @property
    def zero(self):
        return self._wrap(self.poly_ring.zero)

    @property
    def one(self):
        return self._wrap(self.poly_ring.one)

    def scalar(self, value):
        """Embed an integer or rational constant."""
        return self._wrap(self.poly_ring(value))

    def alpha(self, i):
        """The root a_i for 1 <= i <= n, with a_n expanded."""
        if not 1 <= i <= self.n:
            raise ValueError(f"alpha index {i} out of range for n={self.n}")
        if i == self.n:
            return expand_alpha_n(self.n, self.base)
        return self._wrap(self._gens[i - 1])

    @property
    def xi(self):
        return self._wrap(self._gens[self.n - 1])

    @property
    def r(self):
        return self._wrap(self._gens[self.r_index])

    @property
    def xi_bar(self):
        return self._wrap(self._gens[self.xb_index])

    def from_dict(self, terms):
        """Build a scalar from {exponent tuple: coefficient}."""
        return self._wrap(self.poly_ring.from_dict(dict(terms)))

    def parse(self, text):
        """Parse the canonical text form back into a scalar.

        Args:
            text (str): Text such as "xb*r^2*(a1^2*x + 3*a2)"

        Returns:
            Scalar: The parsed scalar

        Raises:
            ValueError: If the text mentions unknown symbols
        """
        expr = sympify(text, locals=self.symbols, convert_xor=True)
        unknown = {str(s) for s in expr.free_symbols} - set(self.names)
        if unknown:
            raise ValueError(f"Unknown symbols in scalar {text!r}: {sorted(unknown)}")
        return self._wrap(self.poly_ring.from_expr(expr))

    def check_same(self, other):
        if self is other:
            return
        if self.n != other.n or self.base != other.base:
            raise RingMismatchError(f"{self!r} and {other!r} are different scalar rings")


@lru_cache(maxsize=None)
def scalar_ring(n, base=INTEGERS):
    """Shared ScalarRing instance for (n, base)."""
    logger.debug("Creating scalar ring for n=%d over %s", n, base)
    return ScalarRing(n, base)


class Scalar:
    """Immutable element of the scalar algebra in canonical form."""

    __slots__ = ("ring", "poly")

    def __init__(self, scalar_ring_, poly):
        xb = scalar_ring_.xb_index
        if any(monom[xb] > 1 for monom in poly.keys()):
            poly = scalar_ring_.poly_ring.from_dict(
                {m: c for m, c in poly.items() if m[xb] <= 1}
            )
        self.ring = scalar_ring_
        self.poly = poly

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, Scalar):
            self.ring.check_same(other.ring)
            return other
        if isinstance(other, int):
            return self.ring.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Scalar(self.ring, self.poly + other.poly)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Scalar(self.ring, self.poly - other.poly)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Scalar(self.ring, -self.poly)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return scalar_mul(self, other)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return scalar_mul(other, self)

    def __pow__(self, k):
        if k < 0:
            raise ValueError("Scalars have no negative powers")
        return Scalar(self.ring, self.poly**k)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return (
            self.ring.n == other.ring.n
            and self.ring.base == other.ring.base
            and self.poly == other.poly
        )

    def __hash__(self):
        return hash((self.ring.n, self.ring.base, frozenset(self.poly.items())))

    def __bool__(self):
        return bool(self.poly)

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        from utils.formatter import format_scalar

        return format_scalar(self)

    # inspection

    @property
    def is_zero(self):
        return not self.poly

    def terms(self):
        """(exponent tuple, coefficient) pairs in descending grlex order."""
        return self.poly.terms()

    @property
    def has_r(self):
        return any(m[self.ring.r_index] for m in self.poly.keys())

    @property
    def has_xi_bar(self):
        return any(m[self.ring.xb_index] for m in self.poly.keys())

    def split_xi_bar(self):
        """Write the scalar as a + xb*b.

        Returns:
            tuple: (a, b) with both parts free of xb
        """
        xb = self.ring.xb_index
        even, odd = {}, {}
        for monom, coeff in self.poly.items():
            if monom[xb]:
                odd[monom[:xb] + (0,)] = coeff
            else:
                even[monom] = coeff
        return self.ring.from_dict(even), self.ring.from_dict(odd)

    def times_xi_bar(self):
        """Multiply an xb-free scalar by xb."""
        return self * self.ring.xi_bar

    def polynomial_degrees(self):
        """Set of (a/x degree, xb exponent, r exponent) over the monomials."""
        n = self.ring.n
        return {
            (sum(m[:n]), m[self.ring.xb_index], m[self.ring.r_index])
            for m in self.poly.keys()
        }

    def bidegree(self):
        return bidegree_of(self)

    def substitute(self, target, images):
        """Ring homomorphism into another scalar ring.

        Args:
            target (ScalarRing): Ring receiving the image
            images (list): Image Scalar of each generator, in generator order

        Returns:
            Scalar: The image of this scalar
        """
        if len(images) != len(self.ring.names):
            raise ValueError("Need one image per generator")
        source_domain = self.ring.poly_ring.domain
        target_domain = target.poly_ring.domain
        total = target.zero
        for monom, coeff in self.poly.items():
            term = Scalar(
                target, target.poly_ring.ground_new(target_domain.convert_from(coeff, source_domain))
            )
            for image, exp in zip(images, monom):
                if exp:
                    term = term * image**exp
            total = total + term
        return total


def scalar_mul(a, b):
    """Multiply two scalars.

    Only xb has odd homological degree and it squares to zero, so no sign ever
    appears inside the scalar algebra: a product containing two xb factors
    vanishes and every other factor is even.

    Args:
        a (Scalar): Left factor
        b (Scalar): Right factor

    Returns:
        Scalar: Product in canonical form

    Raises:
        RingMismatchError: If the factors belong to different rings
    """
    a.ring.check_same(b.ring)
    return Scalar(a.ring, a.poly * b.poly)


def expand_alpha_n(n, base=INTEGERS):
    """The root a_n = x - a1 - ... - a_{n-1} in the ring of rank n."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    sring = scalar_ring(n, base)
    result = sring.xi
    for i in range(1, n):
        result = result - sring.alpha(i)
    return result


def monomial_bidegree(scalar_ring_, monom):
    n = scalar_ring_.n
    d = sum(monom[:n])
    m = monom[scalar_ring_.r_index]
    e = monom[scalar_ring_.xb_index]
    return Bidegree(2 * d + e, 2 * d - 2 * m + 2 * e)


def bidegree_of(a):
    """Bidegree of a homogeneous nonzero scalar.

    Args:
        a (Scalar): The scalar

    Returns:
        Bidegree: Its unique bidegree

    Raises:
        NotHomogeneousError: If a is zero or mixes bidegrees
    """
    degrees = {monomial_bidegree(a.ring, m) for m in a.poly.keys()}
    if len(degrees) != 1:
        raise NotHomogeneousError(f"Scalar {a} has bidegrees {sorted(degrees)}")
    return degrees.pop()
