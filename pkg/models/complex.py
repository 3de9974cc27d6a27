"""
Differential complexes of graded parity objects and their constructions.
"""

import logging
from enum import Enum

from models.base_model import BaseModel
from models.check_result import FAIL, CheckResult
from models.errors import DegreeError, RegimeError
from models.graded_object import GradedObject, Summand
from models.matrix import MatrixMorphism
from models.scalar import scalar_ring
from models.subset import Subset

logger = logging.getLogger(__name__)


class Regime(Enum):
    """Which square of the differential is prescribed."""

    GM = "Gm"  # d^2 = 0
    MIX = "mix"  # d^2 + kappa(d) = 0
    MON = "mon"  # d^2 = r xi id


class DifferentialComplex(BaseModel):
    """A graded object with a bidegree-(1,0) matrix differential in one regime."""

    def __init__(self, obj, differential, regime, name="C"):
        if differential.source.strata != obj.strata or differential.target.strata != obj.strata:
            raise ValueError("The differential must be an endomorphism of the object")
        self.object = obj
        self.differential = differential.retarget(obj, obj)
        self.regime = Regime(regime)
        self.name = name

    @property
    def n(self):
        return self.object.n

    @property
    def sring(self):
        return self.differential.sring

    def __len__(self):
        return len(self.object)

    def renamed(self, name):
        return DifferentialComplex(self.object, self.differential, self.regime, name)

    def canonical(self):
        """Same complex with summands in canonical order."""
        order = self.object.canonical_order()
        obj = self.object.canonical()
        delta = self.differential.permuted(order, order, obj, obj)
        return DifferentialComplex(obj, delta, self.regime, self.name)

    def restrict_to(self, stratum):
        """Summands supported on one stratum, e.g. the open stratum [n]."""
        return [self.object[i] for i in self.object.restrict_to(stratum)]

    def to_dict(self):
        canon = self.canonical()
        data = canon.differential.to_dict()
        return {
            "name": self.name,
            "n": self.n,
            "regime": self.regime.value,
            "summands": canon.object.to_dict(),
            "entries": data["entries"],
        }

    def __repr__(self):
        return f"DifferentialComplex({self.name}, regime={self.regime.value}, {len(self)} summands)"


def validate(complex_, ledger=None, statement=None):
    """Check degrees and the regime's differential condition.

    Args:
        complex_ (DifferentialComplex): Complex to validate
        ledger (UsageLedger, optional): Receives unit-sum uses found in d^2
        statement (str, optional): Statement id for the result

    Returns:
        CheckResult: pass, or the first failing entry or cell with both sides
    """
    statement = statement or f"validate:{complex_.name}"
    delta = complex_.differential
    bad = delta.bidegree_violations((1, 0))
    if bad:
        row, col, found = bad[0]
        return CheckResult(statement, FAIL, str(found), "(1, 0)", detail=f"bidegree of entry ({row}, {col})")

    regime = complex_.regime
    if regime is Regime.GM and (delta.has_r or delta.has_xi_bar):
        return CheckResult(statement, FAIL, detail="Gm differential may not contain r or xb")
    if regime is Regime.MIX and delta.has_r:
        return CheckResult(statement, FAIL, detail="mix differential may not contain r")
    if regime is Regime.MON and delta.has_xi_bar:
        return CheckResult(statement, FAIL, detail="mon differential may not contain xb")

    square = delta @ delta
    if ledger is not None:
        square.record_usage(ledger)
    sring = complex_.sring or scalar_ring(complex_.n)
    if regime is Regime.GM:
        return CheckResult.compare(statement, square, MatrixMorphism.zero(delta.source, delta.target, sring))
    if regime is Regime.MIX:
        return CheckResult.compare(
            statement, square + kappa(delta), MatrixMorphism.zero(delta.source, delta.target, sring)
        )
    target = MatrixMorphism.scalar_map(delta.source, delta.target, sring.r * sring.xi)
    return CheckResult.compare(statement, square, target)


def kappa(matrix):
    """Entrywise kappa(a + xb*b) = xi*b; raises RegimeError when r is present."""
    return matrix.kappa()


def shift(complex_, m=1):
    """C[m]: every summand shifted by m, differential multiplied by (-1)^m."""
    obj = complex_.object.shift(m)
    delta = complex_.differential.retarget(obj, obj)
    if m % 2:
        delta = -delta
    return DifferentialComplex(obj, delta, complex_.regime, f"{complex_.name}[{m}]")


def twist(complex_, k=1):
    """C<k>: twists moved by k, differential entries unchanged."""
    obj = complex_.object.twist(k)
    return DifferentialComplex(
        obj, complex_.differential.retarget(obj, obj), complex_.regime, f"{complex_.name}<{k}>"
    )


def is_chain_map(phi, source, target):
    """phi o d_source == d_target o phi, after normal-form reduction."""
    return chain_map_check("chain-map", phi, source, target).passed


def chain_map_check(statement, phi, source, target, ledger=None):
    """CheckResult version of is_chain_map that also validates bidegree (0,0)."""
    bad = phi.bidegree_violations((0, 0))
    if bad:
        row, col, found = bad[0]
        return CheckResult(statement, FAIL, str(found), "(0, 0)", detail=f"bidegree of entry ({row}, {col})")
    d_source = source.differential.retarget(phi.source, phi.source)
    d_target = target.differential.retarget(phi.target, phi.target)
    lhs = phi @ d_source
    rhs = d_target @ phi
    if ledger is not None:
        lhs.record_usage(ledger)
        rhs.record_usage(ledger)
    return CheckResult.compare(statement, lhs, rhs)


def homotopy_check(delta, homotopy, target, statement="homotopy", ledger=None):
    """Verify d H + H d == target exactly.

    Args:
        delta (MatrixMorphism): Differential of the complex
        homotopy (MatrixMorphism): H of bidegree (-1, 0)
        target (MatrixMorphism): Expected value of d H + H d

    Returns:
        CheckResult: Outcome

    Raises:
        DegreeError: If H does not have bidegree (-1, 0)
    """
    bad = homotopy.bidegree_violations((-1, 0))
    if bad:
        raise DegreeError(f"Homotopy entry {bad[0][:2]} has bidegree {bad[0][2]}, expected (-1, 0)")
    d_out = delta.retarget(homotopy.target, homotopy.target)
    d_in = delta.retarget(homotopy.source, homotopy.source)
    lhs = d_out @ homotopy + homotopy @ d_in
    if ledger is not None:
        lhs.record_usage(ledger)
    return CheckResult.compare(statement, lhs, target)


def cone(phi, source, target, name=None, check=True):
    """Cone of a chain map phi: X -> Y.

    Args:
        phi (MatrixMorphism): Chain map of bidegree (0, 0)
        source (DifferentialComplex): X
        target (DifferentialComplex): Y
        check (bool): Verify that phi is a chain map first

    Returns:
        DifferentialComplex: Y + X[1] with differential [[d_Y, phi], [0, -d_X]]

    Raises:
        ValueError: If phi is not a chain map
        RegimeError: If X and Y are in different regimes
    """
    if source.regime is not target.regime:
        raise RegimeError("Cone of a map between complexes of different regimes")
    if check:
        result = chain_map_check("cone:chain-map", phi, source, target)
        if not result.passed:
            raise ValueError(f"Cannot take the cone of a non-chain map: {result}")
    sring = phi.sring or source.sring or target.sring
    shifted = shift(source, 1)
    delta = MatrixMorphism.from_blocks(
        [
            [target.differential, phi.retarget(shifted.object, target.object)],
            [None, shifted.differential],
        ],
        [target.object, shifted.object],
        [target.object, shifted.object],
        sring,
    )
    return DifferentialComplex(
        delta.source, delta, target.regime, name or f"Cone({source.name}->{target.name})"
    )


def mon(complex_, name=None):
    """Mon(C) for C in regime mix with differential a + xb*b.

    A complex in regime Gm is read as mix with b = 0.

    Returns:
        DifferentialComplex: C + C<-2>[1] with [[a, r + b], [xi, -a]], regime mon

    Raises:
        RegimeError: If the input is in regime mon or contains r
    """
    if complex_.regime not in (Regime.MIX, Regime.GM):
        raise RegimeError("mon() takes a complex in regime mix or Gm")
    if complex_.differential.has_r:
        raise RegimeError("mon() input may not contain r")
    sring = complex_.sring or scalar_ring(complex_.n)
    top = complex_.object
    bottom = top.twist(-2).shift(1)
    a, b = complex_.differential.split_xi_bar()
    up = MatrixMorphism.scalar_map(bottom, top, sring.r) + b.retarget(bottom, top)
    down = MatrixMorphism.scalar_map(top, bottom, sring.xi)
    delta = MatrixMorphism.from_blocks(
        [[a, up], [down, -a.retarget(bottom, bottom)]],
        [top, bottom],
        [top, bottom],
        sring,
    )
    return DifferentialComplex(delta.source, delta, Regime.MON, name or f"Mon({complex_.name})")


def _embed_images(target_ring, first_factor):
    """Generator images for the two tensor factors of affine n-space."""
    n = target_ring.n
    if first_factor:
        # x' = a'_1 -> a_1
        return [target_ring.alpha(1), target_ring.r, target_ring.xi_bar]
    images = [target_ring.alpha(i + 1) for i in range(1, n - 1)]
    images.append(target_ring.xi - target_ring.alpha(1))
    return images + [target_ring.r, target_ring.xi_bar]


def box_product(first, second, koszul=True, name=None):
    """External product of a complex on A^1 with a complex on A^(n-1).

    Summands are (I' u (I''+1), t'+t'', h'+h''); the differential is
    d' x id + (-1)^{p'} id x d''.

    Args:
        first (DifferentialComplex): Complex on A^1
        second (DifferentialComplex): Complex on A^(n-1)
        koszul (bool): Apply the (-1)^{p'} sign; False gives the sign-free negative control

    Returns:
        DifferentialComplex: Complex on A^n in regime Gm

    Raises:
        RegimeError: If either factor is not in regime Gm
    """
    if first.regime is not Regime.GM or second.regime is not Regime.GM:
        raise RegimeError("box_product takes two complexes in regime Gm")
    if first.n != 1:
        raise ValueError("The first factor must live on A^1")
    n = second.n + 1
    base = (first.sring or second.sring or scalar_ring(1)).base
    ring_n = scalar_ring(n, base)
    first_images = _embed_images(ring_n, True)
    second_images = _embed_images(ring_n, False)

    size2 = len(second.object)
    summands = []
    for s1 in first.object:
        for s2 in second.object:
            members = s1.stratum.members + tuple(i + 1 for i in s2.stratum.members)
            summands.append(
                Summand(Subset(n, members), s1.twist + s2.twist, s1.shift + s2.shift)
            )
    obj = GradedObject(n, summands)

    entries = {}

    def add(key, value):
        entries[key] = entries[key] + value if key in entries else value

    for (k1, j1), value in first.differential.entries.items():
        image = value.substitute(ring_n, first_images)
        for l2 in range(size2):
            add((k1 * size2 + l2, j1 * size2 + l2), image)
    for j1, s1 in enumerate(first.object):
        sign = -1 if (koszul and s1.position % 2) else 1
        for (k2, l2), value in second.differential.entries.items():
            image = value.substitute(ring_n, second_images)
            add((j1 * size2 + k2, j1 * size2 + l2), image if sign > 0 else -image)

    delta = MatrixMorphism(obj, obj, entries, sring=ring_n)
    return DifferentialComplex(obj, delta, Regime.GM, name or f"({first.name})x({second.name})")
