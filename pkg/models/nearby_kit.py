"""
Objects and maps of the two rounds of direct sums on affine n-space.

Level objects: the circle sums O(k) = sum_{|I|=k} E(I) for 0 <= k <= n and the
Jordan sums J(i) = O(i)<-n+i+1> + ... + O(i)<n-i-1> for 0 <= i <= n-1. Any
level outside these ranges is the zero object.
"""

import logging
from dataclasses import dataclass

from models.graded_object import GradedObject, Summand
from models.matrix import MatrixMorphism
from models.subset import Subset

logger = logging.getLogger(__name__)


def koszul_sign(stratum, i):
    """(-1)^{#{j < i : j not in I}}, the sign of the letter at index i on E(I)."""
    count = sum(1 for j in range(1, i) if j not in stratum)
    return -1 if count % 2 else 1


def circle_object(n, k, twist=0, shift=0):
    """O(k): every E(I) with |I| = k, in lexicographic order."""
    if not 0 <= k <= n:
        return GradedObject.zero(n)
    return GradedObject(n, (Summand(s, twist, shift) for s in Subset.all_subsets(n, k)))


def jordan_copies(n, i):
    """The copies O(i)<-n+i-1+2c>, c = 1..n-i, making up J(i)."""
    if not 0 <= i <= n - 1:
        return []
    return [circle_object(n, i, twist=-n + i - 1 + 2 * c) for c in range(1, n - i + 1)]


def jordan_object(n, i):
    return GradedObject.direct_sum(n, *jordan_copies(n, i))


def _identity(source, target, sring):
    return MatrixMorphism.scalar_map(source, target, sring.one)


def _power(sring, k):
    return sring.r**k


def place(blocks, row_objects, col_objects, sring):
    """Block matrix from a sparse {(block_row, block_col): matrix} placement."""
    grid = [[blocks.get((r, c)) for c in range(len(col_objects))] for r in range(len(row_objects))]
    return MatrixMorphism.from_blocks(grid, row_objects, col_objects, sring)


def build_eps_eta(sring, k):
    """eps: O(k) -> O(k-1) and eta: O(k-1) -> O(k) with the standard signs.

    Args:
        sring (ScalarRing): Ring of rank n
        k (int): Level; out-of-range levels give empty maps

    Returns:
        tuple: (eps, eta) as MatrixMorphism
    """
    n = sring.n
    upper = circle_object(n, k)
    lower = circle_object(n, k - 1)
    lower_index = {s.stratum: j for j, s in enumerate(lower)}
    eps, eta = {}, {}
    for col, summand in enumerate(upper):
        stratum = summand.stratum
        for i in stratum:
            row = lower_index[stratum.remove(i)]
            value = sring.scalar(koszul_sign(stratum, i))
            eps[(row, col)] = value
            eta[(col, row)] = value
    return (
        MatrixMorphism(upper, lower, eps, sring=sring),
        MatrixMorphism(lower, upper, eta, sring=sring),
    )


def build_jordan(sring, i):
    """J(i) and its nilpotent N with identities on the superdiagonal.

    Returns:
        tuple: (object, N) with N^{n-i} = 0
    """
    n = sring.n
    copies = jordan_copies(n, i)
    blocks = {(c, c + 1): _identity(copies[c + 1], copies[c], sring) for c in range(len(copies) - 1)}
    return jordan_object(n, i), place(blocks, copies, copies, sring)


def build_underlined(sring, i, eps_i, eta_i):
    """Underlined eps: J(i) -> J(i-1) and eta: J(i-1) -> J(i), for 1 <= i <= n."""
    n = sring.n
    if not 1 <= i <= n:
        raise ValueError(f"underlined maps need 1 <= i <= {n}, got {i}")
    upper = jordan_copies(n, i)
    lower = jordan_copies(n, i - 1)
    eps_blocks, eta_blocks = {}, {}
    for c in range(len(upper)):
        eps_blocks[(c, c)] = eps_i.retarget(upper[c], lower[c])
        eta_blocks[(c, c + 1)] = eta_i.retarget(lower[c + 1], upper[c])
    return place(eps_blocks, lower, upper, sring), place(eta_blocks, upper, lower, sring)


@dataclass
class InterfaceMaps:
    """The seven maps joining O(i) to J(i) and J(i-1)."""

    iota_l: MatrixMorphism
    iota_r: MatrixMorphism
    eps_rt: MatrixMorphism
    rho: MatrixMorphism
    p_l: MatrixMorphism
    p_r: MatrixMorphism
    eta_lt: MatrixMorphism


def build_interface_maps(sring, i, eps_i, eta_i):
    """Interface maps at level i, for 0 <= i <= n.

    iota_l = [id; r; ...; r^{m-1}], iota_r = [0; ...; id], eps_rt = [0; ...; eps],
    rho = r^m, p_l = [id 0 ... 0], p_r = [r^{m-1} ... r id], eta_lt = [eta 0 ... 0],
    where m = n - i is the number of copies in J(i).
    """
    n = sring.n
    level = circle_object(n, i)
    copies = jordan_copies(n, i)
    below = jordan_copies(n, i - 1)
    m = len(copies)
    iota_l = place(
        {(c, 0): MatrixMorphism.scalar_map(level, copies[c], _power(sring, c)) for c in range(m)},
        copies, [level], sring,
    )
    iota_r = place({(m - 1, 0): _identity(level, copies[-1], sring)} if m else {}, copies, [level], sring)
    eps_rt = place({(m, 0): eps_i.retarget(level, below[m])} if below else {}, below, [level], sring)
    rho = MatrixMorphism.scalar_map(level, level, _power(sring, n - i))
    p_l = place({(0, 0): _identity(copies[0], level, sring)} if m else {}, [level], copies, sring)
    p_r = place(
        {(0, c): MatrixMorphism.scalar_map(copies[c], level, _power(sring, m - 1 - c)) for c in range(m)},
        [level], copies, sring,
    )
    eta_lt = place({(0, 0): eta_i.retarget(below[0], level)} if below else {}, [level], below, sring)
    return InterfaceMaps(iota_l, iota_r, eps_rt, rho, p_l, p_r, eta_lt)


def build_h(sring, i):
    """Lower-triangular h on J(i): entry (a, b) = r^{a-b-1} for a > b."""
    copies = jordan_copies(sring.n, i)
    blocks = {
        (a, b): MatrixMorphism.scalar_map(copies[b], copies[a], _power(sring, a - b - 1))
        for a in range(len(copies))
        for b in range(a)
    }
    return place(blocks, copies, copies, sring)


class NearbyKit:
    """Every object and map of both rounds of direct sums for one n.

    Level-indexed lists run over 0..n+1 (circle maps) or 0..n (Jordan maps);
    the bold maps live on E_left = sum O(k)<k-n>, E_right = sum O(k)<n-k> and
    E_diamond = J(0) + ... + J(n-1).
    """

    def __init__(self, sring):
        self.sring = sring
        self.n = n = sring.n
        logger.debug("Building nearby kit for n=%d", n)

        self.circle = [circle_object(n, k) for k in range(n + 1)]
        self.eps, self.eta = {}, {}
        for k in range(0, n + 2):
            self.eps[k], self.eta[k] = build_eps_eta(sring, k)

        self.jordan, self.N, self.eps_r, self.eta_r, self.interface, self.h = {}, {}, {}, {}, {}, {}
        for i in range(0, n + 1):
            self.jordan[i], self.N[i] = build_jordan(sring, i)
            if i >= 1:
                self.eps_r[i], self.eta_r[i] = build_underlined(sring, i, self.eps[i], self.eta[i])
            self.interface[i] = build_interface_maps(sring, i, self.eps[i], self.eta[i])
            self.h[i] = build_h(sring, i)

        self._build_bold()

    def circle_map(self, k):
        return self.eps.get(k), self.eta.get(k)

    def _build_bold(self):
        n, sring = self.n, self.sring
        self.left_blocks = [circle_object(n, k, twist=k - n) for k in range(n + 1)]
        self.right_blocks = [circle_object(n, k, twist=n - k) for k in range(n + 1)]
        self.diamond_blocks = [self.jordan[i] for i in range(n)]
        self.E_left = GradedObject.direct_sum(n, *self.left_blocks)
        self.E_right = GradedObject.direct_sum(n, *self.right_blocks)
        self.E_diamond = GradedObject.direct_sum(n, *self.diamond_blocks)

        L, R, D = self.left_blocks, self.right_blocks, self.diamond_blocks
        rng = range(n + 1)
        self.b_eps = place({(k - 1, k): self.eps[k] for k in range(1, n + 1)}, L, L, sring)
        self.b_eta = place({(k, k - 1): self.eta[k] for k in range(1, n + 1)}, L, L, sring)
        self.b_N = place({(i, i): self.N[i] for i in range(n)}, D, D, sring)
        self.b_eps_r = place({(i - 1, i): self.eps_r[i] for i in range(1, n)}, D, D, sring)
        self.b_eta_r = place({(i, i - 1): self.eta_r[i] for i in range(1, n)}, D, D, sring)
        self.b_iota_l = place({(i, i): self.interface[i].iota_l for i in range(n)}, D, L, sring)
        self.b_iota_r = place({(i, i): self.interface[i].iota_r for i in range(n)}, D, R, sring)
        self.b_eps_rt = place({(i, i + 1): self.interface[i + 1].eps_rt for i in range(n)}, D, R, sring)
        self.b_rho = place({(k, k): self.interface[k].rho for k in rng}, R, L, sring)
        self.b_p_l = place({(i, i): self.interface[i].p_l for i in range(n)}, L, D, sring)
        self.b_p_r = place({(i, i): self.interface[i].p_r for i in range(n)}, R, D, sring)
        self.b_eta_lt = place({(i + 1, i): self.interface[i + 1].eta_lt for i in range(n)}, L, D, sring)
        self.b_h = place({(i, i): self.h[i] for i in range(n)}, D, D, sring)
        # projections onto the top level O(n)
        self.g = place({(n, n): _identity(R[n], L[n], sring)}, L, R, sring)
        self.q_l = place({(n, n): _identity(L[n], L[n], sring)}, L, L, sring)
        self.q_r = place({(n, n): _identity(R[n], R[n], sring)}, R, R, sring)

    def on_right(self, matrix):
        """The same E_left matrix read on E_right."""
        return matrix.retarget(self.E_right, self.E_right)

    def identity(self, obj):
        return MatrixMorphism.identity(obj, self.sring)
