"""
Outcome of a single verified statement.
"""

from dataclasses import dataclass

from models.base_model import BaseModel

PASS = "pass"
FAIL = "fail"


@dataclass(frozen=True)
class CheckResult(BaseModel):
    """One line of a certificate: a statement id and whether it held."""

    statement: str
    status: str
    lhs: str = ""
    rhs: str = ""
    detail: str = ""

    @classmethod
    def from_bool(cls, statement, ok, detail=""):
        return cls(statement, PASS if ok else FAIL, detail=detail)

    @classmethod
    def compare(cls, statement, lhs, rhs):
        """Compare two matrix morphisms and record the first differing cell.

        Args:
            statement (str): Statement identifier
            lhs (MatrixMorphism): Reduced left-hand side
            rhs (MatrixMorphism): Reduced right-hand side

        Returns:
            CheckResult: pass, or fail with both sides of the first bad cell
        """
        diff = lhs.first_difference(rhs)
        if diff is None:
            return cls(statement, PASS)
        if diff[0] in ("shape", "strata"):
            return cls(statement, FAIL, str(diff[1]), str(diff[2]), detail=f"{diff[0]} mismatch")
        row, col, mine, theirs = diff
        return cls(statement, FAIL, str(mine), str(theirs), detail=f"cell ({row}, {col})")

    @property
    def passed(self):
        return self.status == PASS

    def to_dict(self):
        data = {"statement": self.statement, "status": self.status}
        if not self.passed:
            data.update({"lhs": self.lhs, "rhs": self.rhs, "detail": self.detail})
        return data

    def __str__(self):
        if self.passed:
            return f"  PASS  {self.statement}"
        return f"  FAIL  {self.statement}  {self.detail}: {self.lhs} != {self.rhs}"
