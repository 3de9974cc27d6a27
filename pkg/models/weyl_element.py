"""
Extended affine Weyl group of PGL_n.

An element (w, lambda) stands for w * t_lambda, with w a permutation of [n] in
one-line notation and lambda a coweight in Z^n modulo (1, ..., 1). Products
follow the semidirect-product law

    (w1, l1)(w2, l2) = (w1 w2, w2^-1 l1 + l2).
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import product

from models.base_model import BaseModel


def _check_n(n):
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")


def compose(first, second):
    """One-line notation of first * second (second applied first)."""
    return tuple(first[j - 1] for j in second)


def invert(perm):
    inverse = [0] * len(perm)
    for i, image in enumerate(perm, start=1):
        inverse[image - 1] = i
    return tuple(inverse)


@dataclass(frozen=True)
class ExtAffineElement(BaseModel):
    """w * t_lambda; the coweight is stored with its minimum entry zero."""

    n: int
    perm: tuple
    coweight: tuple

    def __post_init__(self):
        _check_n(self.n)
        perm = tuple(int(p) for p in self.perm)
        if sorted(perm) != list(range(1, self.n + 1)):
            raise ValueError(f"{perm} is not a permutation of [1..{self.n}]")
        coweight = tuple(int(c) for c in self.coweight)
        if len(coweight) != self.n:
            raise ValueError(f"Coweight {coweight} does not have {self.n} entries")
        low = min(coweight)
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "coweight", tuple(c - low for c in coweight))

    # constructors

    @classmethod
    def identity(cls, n):
        return cls(n, tuple(range(1, n + 1)), (0,) * n)

    @classmethod
    def translation(cls, n, coweight):
        return cls(n, tuple(range(1, n + 1)), tuple(coweight))

    @classmethod
    def fundamental_coweight(cls, n, i):
        """t_{e_i}, the translation by the i-th minuscule coweight."""
        if not 1 <= i <= n:
            raise ValueError(f"Index {i} out of range [1..{n}]")
        return cls.translation(n, tuple(1 if j == i else 0 for j in range(1, n + 1)))

    @classmethod
    def simple_reflection(cls, n, i):
        """s_i for 1 <= i < n, and the affine s_n = s_{alpha0} t_{-alpha0}.

        Raises:
            ValueError: If i is outside [1..n] or n = 1 (no simple reflections)
        """
        if n < 2:
            raise ValueError("PGL_1 has no simple reflections")
        if not 1 <= i <= n:
            raise ValueError(f"Simple reflection index {i} out of range [1..{n}]")
        perm = list(range(1, n + 1))
        if i < n:
            perm[i - 1], perm[i] = perm[i], perm[i - 1]
            return cls(n, tuple(perm), (0,) * n)
        perm[0], perm[-1] = perm[-1], perm[0]
        coweight = [0] * n
        coweight[0], coweight[-1] = -1, 1
        return cls(n, tuple(perm), tuple(coweight))

    @classmethod
    def omega(cls, n):
        """omega = s_1 s_2 ... s_{n-1} t_{(0,...,0,1)}, of length zero."""
        cycle = tuple(range(2, n + 1)) + (1,)
        return cls(n, cycle, (0,) * (n - 1) + (1,))

    # group law

    def act(self, coweight):
        """w . lambda, with (w . lambda)_{w(i)} = lambda_i."""
        result = [0] * self.n
        for i, image in enumerate(self.perm):
            result[image - 1] = coweight[i]
        return tuple(result)

    def _act_inverse(self, coweight):
        return tuple(coweight[image - 1] for image in self.perm)

    def __mul__(self, other):
        if not isinstance(other, ExtAffineElement):
            return NotImplemented
        if other.n != self.n:
            raise ValueError(f"Cannot multiply elements for n={self.n} and n={other.n}")
        moved = other._act_inverse(self.coweight)
        return ExtAffineElement(
            self.n,
            compose(self.perm, other.perm),
            tuple(a + b for a, b in zip(moved, other.coweight)),
        )

    def inverse(self):
        return ExtAffineElement(self.n, invert(self.perm), tuple(-c for c in self.act(self.coweight)))

    def __pow__(self, exponent):
        base = self if exponent >= 0 else self.inverse()
        result = ExtAffineElement.identity(self.n)
        for _ in range(abs(exponent)):
            result = result * base
        return result

    @property
    def is_identity(self):
        return self == ExtAffineElement.identity(self.n)

    @property
    def omega_power(self):
        """m with self * omega^-m in the affine Weyl group: the coweight sum mod n."""
        return sum(self.coweight) % self.n

    @cached_property
    def length(self):
        """Number of affine inversions of w t_lambda, read as t_mu w with mu = w . lambda.

        A positive root e_i - e_j contributes |mu_i - mu_j| when w^-1 keeps it
        positive and |mu_i - mu_j - 1| when w^-1 makes it negative. Elements
        of length zero are exactly the powers of omega.
        """
        mu = self.act(self.coweight)
        position = invert(self.perm)
        total = 0
        for i in range(self.n):
            for j in range(i + 1, self.n):
                flip = 1 if position[i] > position[j] else 0
                total += abs(mu[i] - mu[j] - flip)
        return total

    def to_dict(self):
        return {"perm": list(self.perm), "coweight": list(self.coweight), "omega": self.omega_power}

    def __str__(self):
        perm = "".join(str(p) for p in self.perm) if self.n < 10 else ",".join(map(str, self.perm))
        return f"[{perm}; t({','.join(map(str, self.coweight))})]"


@dataclass(frozen=True)
class ReducedWord(BaseModel):
    """s_{i1} ... s_{ik} omega^m; letters need not be reduced until checked."""

    n: int
    letters: tuple = ()
    omega_power: int = 0

    def __post_init__(self):
        _check_n(self.n)
        letters = tuple(int(i) for i in self.letters)
        if any(not 1 <= i <= self.n for i in letters):
            raise ValueError(f"Letters {letters} not in [1..{self.n}]")
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "omega_power", self.omega_power % self.n)

    def __len__(self):
        return len(self.letters)

    def element(self):
        n = self.n
        result = ExtAffineElement.identity(n)
        for i in self.letters:
            result = result * ExtAffineElement.simple_reflection(n, i)
        return result * ExtAffineElement.omega(n) ** self.omega_power

    @property
    def is_reduced(self):
        return self.element().length == len(self.letters)

    def subexpressions(self):
        """Every subword, the omega power kept, in binary-mask order."""
        for mask in product((False, True), repeat=len(self.letters)):
            kept = tuple(i for i, keep in zip(self.letters, mask) if keep)
            yield ReducedWord(self.n, kept, self.omega_power)

    def to_dict(self):
        return {"letters": list(self.letters), "omega": self.omega_power}

    def __str__(self):
        parts = [f"s{i}" for i in self.letters]
        if self.omega_power == 1:
            parts.append("ω")
        elif self.omega_power:
            parts.append(f"ω^{self.omega_power}")
        return " ".join(parts) or "e"


def reduced_word(x):
    """A reduced word for x, found by stripping left descents.

    Returns:
        ReducedWord: Letters s_{i1} ... s_{ik} and the omega power of x
    """
    n = x.n
    letters = []
    current = x
    while current.length:
        for i in range(1, n + 1):
            candidate = ExtAffineElement.simple_reflection(n, i) * current
            if candidate.length < current.length:
                letters.append(i)
                current = candidate
                break
        else:
            raise ValueError(f"{current} has positive length but no left descent")
    word = ReducedWord(n, tuple(letters), x.omega_power)
    if current != ExtAffineElement.omega(n) ** word.omega_power:
        raise ValueError(f"Length-zero remainder {current} is not a power of omega")
    return word
