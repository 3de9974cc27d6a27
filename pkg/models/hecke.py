"""
Iwahori-Hecke algebra in the standard basis {T_w}.

Coefficients are polynomials in q over the integers, and the quadratic
relation is (T_s - q)(T_s + 1) = 0.
"""

from sympy.polys.domains import ZZ
from sympy.polys.rings import ring

from models.base_model import BaseModel
from models.weyl_element import ExtAffineElement

Q_RING, q = ring("q", ZZ)


class HeckeElement(BaseModel):
    """A finitely supported sum of c_w T_w.

    Args:
        n (int): Rank of the underlying group
        terms (dict, optional): {ExtAffineElement: coefficient}
    """

    def __init__(self, n, terms=None):
        self.n = n
        self.terms = {}
        for element, coefficient in (terms or {}).items():
            self._add_term(element, Q_RING(coefficient))

    def _add_term(self, element, coefficient):
        if element.n != self.n:
            raise ValueError(f"Element for n={element.n} in a Hecke algebra for n={self.n}")
        total = self.terms.get(element, Q_RING.zero) + coefficient
        if total:
            self.terms[element] = total
        else:
            self.terms.pop(element, None)

    @classmethod
    def basis(cls, element, coefficient=1):
        return cls(element.n, {element: coefficient})

    @classmethod
    def one(cls, n):
        return cls.basis(ExtAffineElement.identity(n))

    def coefficient(self, element):
        return self.terms.get(element, Q_RING.zero)

    def __add__(self, other):
        result = HeckeElement(self.n, self.terms)
        for element, coefficient in other.terms.items():
            result._add_term(element, coefficient)
        return result

    def __eq__(self, other):
        return isinstance(other, HeckeElement) and self.n == other.n and self.terms == other.terms

    __hash__ = None

    def left_multiply(self, i):
        """T_{s_i} * self.

        T_s T_w = T_{sw} when l(sw) > l(w), and (q - 1) T_w + q T_{sw} otherwise.
        """
        s = ExtAffineElement.simple_reflection(self.n, i)
        result = HeckeElement(self.n)
        for element, coefficient in self.terms.items():
            moved = s * element
            if moved.length > element.length:
                result._add_term(moved, coefficient)
            else:
                result._add_term(element, (q - 1) * coefficient)
                result._add_term(moved, q * coefficient)
        return result

    def __len__(self):
        return len(self.terms)

    def to_dict(self):
        return {
            "terms": [
                {"element": element.to_dict(), "coefficient": str(coefficient.as_expr())}
                for element, coefficient in sorted(
                    self.terms.items(), key=lambda e: (e[0].length, e[0].perm, e[0].coweight)
                )
            ]
        }

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c.as_expr()}) T{w}" for w, c in self.terms.items())
