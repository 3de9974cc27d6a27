"""
Geometry controller.
Exact checks on the open chart u of the global Schubert variety for the first
fundamental coweight of PGL_n.
"""

import logging
from math import prod

from sympy import Integer, Poly, cancel, expand, symbols

from models.chart import DiagonalMap, ProjVector
from models.check_result import CheckResult
from utils.worker_pool import run_statements

logger = logging.getLogger(__name__)


class GeometryController:
    """Controller for the chart u: A^n -> global Schubert variety.

    Coordinates x_1..x_n; torus elements are (diag(y_1..y_n), z) with the y_i
    and z kept as indeterminates.
    """

    def __init__(self, n, workers=None):
        if n < 1:
            raise ValueError(f"n must be positive, got {n}")
        self.n = n
        self.workers = workers
        self.x = symbols(f"x1:{n + 1}")
        self.y = symbols(f"y1:{n + 1}")
        self.z = symbols("z")

    def _var(self, j):
        return self.x[j - 1]

    def p_poly(self, j, k):
        """Product of x_j, x_{j+1}, ... around the circle up to x_k.

        The full product of all n variables is replaced by 1, and so is the
        empty run k = j - 1.
        """
        n = self.n
        if not (1 <= j <= n and 1 <= k <= n):
            raise ValueError(f"p_({j},{k}) needs 1 <= j, k <= {n}")
        if k - j in (-1, n - 1):
            return Integer(1)
        if j <= k:
            run = range(j, k + 1)
        else:
            run = list(range(j, n + 1)) + list(range(1, k + 1))
        return prod((self._var(i) for i in run), start=Integer(1))

    @property
    def product(self):
        return prod(self.x, start=Integer(1))

    def u_line(self, k):
        """u_k = [p_{k,n} : p_{k,1} : ... : p_{k,n-1}]."""
        n = self.n
        return ProjVector((self.p_poly(k, n),) + tuple(self.p_poly(k, m) for m in range(1, n)))

    def u(self):
        """(x_1 ... x_n, u_1, ..., u_n)."""
        return (self.product,) + tuple(self.u_line(k) for k in range(1, self.n + 1))

    def v(self, point):
        """(a_12/a_11, a_23/a_22, ..., a_n1/a_nn) on a point (y, L_1, ..., L_n).

        For n = 1 there are no ratios and the coordinate is y itself.
        """
        y, lines = point[0], point[1:]
        n = self.n
        if n == 1:
            return (y,)
        return tuple(cancel(lines[i - 1][i % n + 1] / lines[i - 1][i]) for i in range(1, n + 1))

    def f(self, point):
        return point[0]

    # chart identities

    def _membership_failure(self):
        n = self.n
        lines = self.u()[1:]
        for i in range(1, n + 1):
            moved = DiagonalMap(n, i, self.product).apply(lines[i - 1])
            failure = moved.first_nonproportional(lines[i % n])
            if failure is not None:
                return i, failure
        return None

    def chart_membership_check(self):
        """g_i(x_1...x_n) u_i lies in u_{i+1} for every i, with u_{n+1} = u_1."""
        failure = self._membership_failure()
        if failure is not None:
            i, (columns, minor) = failure
            logger.warning("g_%d u_%d not in u_%d: minor %s = %s", i, i, i % self.n + 1, columns, minor)
        return failure is None

    def inverse_check(self):
        """v(u(x)) = x as rational functions."""
        recovered = self.v(self.u())
        mismatches = [i for i, (a, b) in enumerate(zip(recovered, self.x), 1) if expand(a - b) != 0]
        if mismatches:
            logger.warning("v(u(x)) differs from x in coordinates %s", mismatches)
        return not mismatches

    def composite_check(self):
        """f(u(x)) = x_1 ... x_n."""
        return expand(self.f(self.u()) - self.product) == 0

    def characters(self):
        """alpha_i = y_{i+1}/y_i for i < n and alpha_n = z y_1 / y_n."""
        n, y = self.n, self.y
        alphas = [y[i] / y[i - 1] for i in range(1, n)]
        alphas.append(self.z * y[0] / y[n - 1])
        return alphas

    def act_on_line(self, k, line, y=None, z=None):
        """(diag(y), z) on L_k: diag(y) g_1(z) ... g_{k-1}(z)."""
        y = self.y if y is None else y
        z = self.z if z is None else z
        return line.scale(tuple(y[m - 1] * (z if m < k else 1) for m in range(1, self.n + 1)))

    def equivariance_failure(self, y=None, z=None):
        """First line k where u(t.x) is not proportional to t.u(x), or None."""
        y = self.y if y is None else y
        z = self.z if z is None else z
        alphas = [a.subs(dict(zip(self.y, y)), simultaneous=True).subs(self.z, z) for a in self.characters()]
        scaled = {xi: alpha * xi for xi, alpha in zip(self.x, alphas)}
        for k in range(1, self.n + 1):
            line = self.u_line(k)
            if not line.substitute(scaled).proportional(self.act_on_line(k, line, y, z)):
                return k
        return None

    def equivariance_check(self):
        failure = self.equivariance_failure()
        if failure is not None:
            logger.warning("u is not equivariant on line %d", failure)
        return failure is None

    def identity_action_check(self):
        """The identity torus element fixes u(x) exactly."""
        ones = (Integer(1),) * self.n
        weights = [a.subs(dict(zip(self.y, ones)), simultaneous=True).subs(self.z, 1) for a in self.characters()]
        scaled = {xi: a * xi for xi, a in zip(self.x, weights)}
        return all(
            self.u_line(k).substitute(scaled) == self.act_on_line(k, self.u_line(k), ones, Integer(1))
            for k in range(1, self.n + 1)
        )

    def f_equivariance_check(self):
        """f(t.x) = xi(t) f(x), with xi(t) = z the product of all characters."""
        weighted = prod((a * xi for a, xi in zip(self.characters(), self.x)), start=Integer(1))
        return cancel(weighted - self.z * self.product) == 0

    def unit_coordinate_check(self):
        """u_k has the constant 1 in coordinate k and nowhere else."""
        for k in range(1, self.n + 1):
            ones = [m for m, c in enumerate(self.u_line(k).coords, 1) if c == 1]
            if ones != [k]:
                return False
        return True

    def degree_check(self):
        """Every p_{j,k} has total degree at most n - 1; the full product never occurs."""
        n = self.n
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                degree = Poly(self.p_poly(j, k), *self.x).total_degree()
                if degree > n - 1:
                    return False
        return True

    # statements

    def statements(self):
        def membership():
            failure = self._membership_failure()
            if failure is None:
                return CheckResult.from_bool("chart:membership", True)
            i, (columns, minor) = failure
            return CheckResult.from_bool("chart:membership", False, detail=f"i={i} minor{columns}={minor}")

        def equivariance():
            failure = self.equivariance_failure()
            return CheckResult.from_bool(
                "chart:equivariance", failure is None, detail="" if failure is None else f"line {failure}"
            )

        return [
            ("chart:membership", membership),
            ("chart:inverse", self.inverse_check),
            ("chart:f-of-u", self.composite_check),
            ("chart:unit-coordinates", self.unit_coordinate_check),
            ("chart:degrees", self.degree_check),
            ("chart:equivariance", equivariance),
            ("chart:identity-action", self.identity_action_check),
            ("chart:f-equivariance", self.f_equivariance_check),
        ]

    def verify(self, workers=None):
        logger.info("Verifying the chart for n=%d", self.n)
        return run_statements(self.statements(), workers or self.workers)

    def report(self):
        point = self.u()
        return {
            "n": self.n,
            "f": str(point[0]),
            "lines": [line.to_dict() for line in point[1:]],
        }
