"""
Nearby controller.
Builds the pushforward complexes, the object Z and the comparison maps, and
runs the identity suites that certify Mon(Z)<1> ~ i_*i^*j_*J(E).
"""

import logging
from functools import cached_property

from models.check_result import FAIL, CheckResult
from models.complex import (
    DifferentialComplex,
    Regime,
    box_product,
    chain_map_check,
    cone,
    homotopy_check,
    mon,
    twist,
    validate,
)
from models.errors import VerificationError
from models.matrix import MatrixMorphism
from models.morphism import UsageLedger
from models.nearby_kit import NearbyKit, build_eps_eta, build_interface_maps, build_jordan
from models.scalar import scalar_ring
from models.subset import Subset
from utils.worker_pool import run_statements

logger = logging.getLogger(__name__)

LEMMA_SUITES = [
    "epsilon0",
    "epsilon1",
    "epsilon2",
    "epsilon3",
    "Brho",
    "bunch1",
    "bunch2",
    "Bunch1",
    "Bunch2",
    "h",
    "bold-h",
]

# suites whose unit-sum uses must stay within |I| <= n-2
RESTRICTED_SUITES = ("epsilon1", "epsilon3")


def _pair_statement(statement, build, ledger):
    """(statement, thunk) comparing the two sides returned by build(); rhs None means zero."""

    def thunk():
        lhs, rhs = build()
        if rhs is None:
            rhs = MatrixMorphism.zero(lhs.source, lhs.target, lhs.sring)
        if ledger is not None:
            lhs.record_usage(ledger)
            rhs.record_usage(ledger)
        return CheckResult.compare(statement, lhs, rhs)

    return statement, thunk


class NearbyController:
    """Controller for the nearby-cycles constructions on affine n-space."""

    def __init__(self, sring, workers=None):
        """Initialize controller for one scalar ring.

        Args:
            sring (ScalarRing): Ring of rank n; fixes n and the base ring
            workers (int, optional): Worker threads for the statement pool
        """
        self.sring = sring
        self.n = sring.n
        self.workers = workers

    @cached_property
    def kit(self):
        return NearbyKit(self.sring)

    # construction

    def build_eps_eta(self, k):
        return build_eps_eta(self.sring, k)

    def build_jordan(self, i):
        return build_jordan(self.sring, i)

    def build_interface_maps(self, i):
        kit = self.kit
        return build_interface_maps(self.sring, i, kit.eps[i], kit.eta[i])

    def build_bold(self):
        return self.kit

    def _r(self, matrix):
        return matrix.scaled(self.sring.r)

    def _xi(self, matrix):
        return matrix.scaled(self.sring.xi)

    def build_pushforwards(self):
        """The five pushforward complexes.

        Returns:
            dict: j_!E, j_*E (regime Gm), j_!J, j_*J and i_*i^*j_*J (regime mon)
        """
        return dict(self._pushforwards)

    @cached_property
    def _pushforwards(self):
        kit = self.kit
        eps_l, eta_l = kit.b_eps, kit.b_eta
        eps_r, eta_r = kit.on_right(eps_l), kit.on_right(eta_l)
        lower_shriek = DifferentialComplex(kit.E_left, eps_l, Regime.GM, "j_!E")
        lower_star = DifferentialComplex(kit.E_right, eta_r, Regime.GM, "j_*E")
        shriek_j = DifferentialComplex(kit.E_left, eps_l + self._r(eta_l), Regime.MON, "j_!J")
        star_j = DifferentialComplex(kit.E_right, eta_r + self._r(eps_r), Regime.MON, "j_*J")
        restricted = cone(kit.b_rho, shriek_j, star_j, name="i_*i^*j_*J")
        return {
            "j_!E": lower_shriek,
            "j_*E": lower_star,
            "j_!J": shriek_j,
            "j_*J": star_j,
            "i_*i^*j_*J": restricted,
        }

    def open_restriction_check(self, complex_):
        """Restriction to the open stratum is E([n]) alone, at twist 0 and shift 0."""
        full = Subset.full(self.n)
        summands = complex_.restrict_to(full)
        ok = len(summands) == 1 and summands[0].twist == 0 and summands[0].shift == 0
        return CheckResult.from_bool(
            f"pushforwards:open-restriction:{complex_.name}",
            ok,
            detail="" if ok else f"found {[str(s) for s in summands]}",
        )

    def build_Z(self, ledger=None):
        """Z = (E_diamond, eps_r + eta_r - xb*N) in regime mix.

        Raises:
            VerificationError: If d^2 + kappa(d) = 0 fails
        """
        kit = self.kit
        delta = kit.b_eps_r + kit.b_eta_r - kit.b_N.scaled(self.sring.xi_bar)
        z = DifferentialComplex(kit.E_diamond, delta, Regime.MIX, "Z")
        result = validate(z, ledger, statement="Z:validate")
        if not result.passed:
            raise VerificationError(result.statement, result.lhs, result.rhs)
        logger.debug("Built Z for n=%d with %d summands", self.n, len(z))
        return z

    # lemma suites

    def _level_equations(self, suite):
        """(name, first level, levels trimmed at the top, builder) for the per-level suites."""
        kit = self.kit
        eps, eta, N = kit.eps, kit.eta, kit.N
        er, hr, face, h = kit.eps_r, kit.eta_r, kit.interface, kit.h
        r, xi = self._r, self._xi

        def ident(obj):
            return MatrixMorphism.identity(obj, self.sring)

        if suite == "epsilon0":
            return [
                ("eps-squared", 0, 0, lambda i: (eps[i] @ eps[i + 1], None)),
                ("eta-squared", 0, 0, lambda i: (eta[i + 1] @ eta[i], None)),
                (
                    "unit",
                    0,
                    0,
                    lambda i: (eps[i + 1] @ eta[i + 1] + eta[i] @ eps[i], xi(ident(kit.circle[i]))),
                ),
            ]
        if suite == "epsilon1":
            return [
                ("eps-squared", 1, 0, lambda i: (er[i - 1] @ er[i], None)),
                ("eta-squared", 1, 0, lambda i: (hr[i] @ hr[i - 1], None)),
                ("eps-commutes", 1, 0, lambda i: (er[i] @ N[i], N[i - 1] @ er[i])),
                ("eta-commutes", 1, 0, lambda i: (hr[i] @ N[i - 1], N[i] @ hr[i])),
                ("unit", 0, 1, lambda i: (er[i + 1] @ hr[i + 1] + hr[i] @ er[i], xi(N[i]))),
            ]
        if suite == "bunch1":
            return [
                ("eps-rt-eps", 0, 0, lambda i: (face[i].eps_rt @ eps[i + 1], None)),
                ("eps-r-eps-rt", 0, 1, lambda i: (er[i] @ face[i + 1].eps_rt, None)),
                ("iota-r-eps", 0, 1, lambda i: (face[i].iota_r @ eps[i + 1], face[i + 1].eps_rt)),
                ("iota-r-eta", 1, 0, lambda i: (face[i].iota_r @ eta[i], hr[i] @ face[i - 1].iota_r)),
                (
                    "iota-rho",
                    0,
                    0,
                    lambda i: (face[i].iota_r @ face[i].rho + N[i] @ face[i].iota_l, r(face[i].iota_l)),
                ),
                (
                    "eps-rt-eta",
                    0,
                    1,
                    lambda i: (
                        face[i + 1].eps_rt @ eta[i + 1] + hr[i] @ face[i].eps_rt,
                        xi(face[i].iota_r),
                    ),
                ),
                ("eps-r-iota-r", 1, 0, lambda i: (er[i] @ face[i].iota_r, N[i - 1] @ face[i].eps_rt)),
                ("iota-l-eta", 1, 0, lambda i: (r(face[i].iota_l @ eta[i]), hr[i] @ face[i - 1].iota_l)),
                (
                    "eps-rt-rho",
                    1,
                    0,
                    lambda i: (
                        face[i].eps_rt @ face[i].rho + er[i] @ face[i].iota_l,
                        face[i - 1].iota_l @ eps[i],
                    ),
                ),
            ]
        if suite == "bunch2":
            return [
                ("eta-lt-eta-r", 1, 0, lambda i: (face[i].eta_lt @ hr[i - 1], None)),
                ("eta-eta-lt", 0, 0, lambda i: (eta[i + 1] @ face[i].eta_lt, None)),
                ("eta-lt", 1, 0, lambda i: (face[i].eta_lt, eta[i] @ face[i - 1].p_l)),
                ("p-l-eps-r", 1, 0, lambda i: (face[i - 1].p_l @ er[i], eps[i] @ face[i].p_l)),
                (
                    "p-r-N",
                    0,
                    0,
                    lambda i: (face[i].p_r @ N[i] + face[i].rho @ face[i].p_l, r(face[i].p_r)),
                ),
                (
                    "eta-lt-eps-r",
                    0,
                    1,
                    lambda i: (
                        face[i].eta_lt @ er[i] + eps[i + 1] @ face[i + 1].eta_lt,
                        xi(face[i].p_l),
                    ),
                ),
                ("eta-lt-N", 1, 0, lambda i: (face[i].eta_lt @ N[i - 1], face[i].p_l @ hr[i])),
                ("p-r-eps-r", 1, 0, lambda i: (face[i - 1].p_r @ er[i], r(eps[i] @ face[i].p_r))),
                (
                    "p-r-eta-r",
                    1,
                    0,
                    lambda i: (
                        face[i].p_r @ hr[i] + face[i].rho @ face[i].eta_lt,
                        eta[i] @ face[i - 1].p_r,
                    ),
                ),
            ]
        if suite == "h":
            return [
                (
                    "r-minus-N",
                    0,
                    1,
                    lambda i: (r(h[i]) - N[i] @ h[i], face[i].iota_r @ face[i].p_r - ident(kit.jordan[i])),
                ),
                (
                    "r-minus-N-right",
                    0,
                    1,
                    lambda i: (r(h[i]) - h[i] @ N[i], face[i].iota_l @ face[i].p_l - ident(kit.jordan[i])),
                ),
                ("eps", 1, 1, lambda i: (h[i - 1] @ er[i] - er[i] @ h[i], face[i].eps_rt @ face[i].p_r)),
                ("eta", 1, 1, lambda i: (h[i] @ hr[i] - hr[i] @ h[i - 1], -(face[i].iota_l @ face[i].eta_lt))),
            ]
        raise ValueError(f"Unknown per-level suite {suite!r}")

    def _bold_equations(self, suite):
        """(name, builder) pairs for the suites on the bold maps."""
        kit = self.kit
        r, xi = self._r, self._xi
        eps_l, eta_l = kit.b_eps, kit.b_eta
        eps_r, eta_r = kit.on_right(eps_l), kit.on_right(eta_l)
        b_er, b_hr, b_N = kit.b_eps_r, kit.b_eta_r, kit.b_N
        iota_l, iota_r, eps_rt = kit.b_iota_l, kit.b_iota_r, kit.b_eps_rt
        rho, p_l, p_r, eta_lt = kit.b_rho, kit.b_p_l, kit.b_p_r, kit.b_eta_lt

        def ident(obj):
            return MatrixMorphism.identity(obj, self.sring)

        if suite == "epsilon2":
            return [
                ("eps-squared-left", lambda: (eps_l @ eps_l, None)),
                ("eta-squared-left", lambda: (eta_l @ eta_l, None)),
                ("unit-left", lambda: (eps_l @ eta_l + eta_l @ eps_l, xi(ident(kit.E_left)))),
                ("eps-squared-right", lambda: (eps_r @ eps_r, None)),
                ("eta-squared-right", lambda: (eta_r @ eta_r, None)),
                ("unit-right", lambda: (eps_r @ eta_r + eta_r @ eps_r, xi(ident(kit.E_right)))),
            ]
        if suite == "epsilon3":
            return [
                ("eps-squared", lambda: (b_er @ b_er, None)),
                ("eta-squared", lambda: (b_hr @ b_hr, None)),
                ("eps-commutes", lambda: (b_er @ b_N, b_N @ b_er)),
                ("eta-commutes", lambda: (b_hr @ b_N, b_N @ b_hr)),
                ("unit", lambda: (b_er @ b_hr + b_hr @ b_er, xi(b_N))),
            ]
        if suite == "Brho":
            return [
                ("rho-eps", lambda: (rho @ eps_l, r(eps_r @ rho))),
                ("eta-rho", lambda: (eta_r @ rho, r(rho @ eta_l))),
            ]
        if suite == "Bunch1":
            return [
                ("eps-rt-eps", lambda: (eps_rt @ eps_r, None)),
                ("eps-r-eps-rt", lambda: (b_er @ eps_rt, None)),
                ("iota-r-eps", lambda: (iota_r @ eps_r, eps_rt)),
                ("iota-r-eta", lambda: (iota_r @ eta_r, b_hr @ iota_r)),
                ("iota-rho", lambda: (iota_r @ rho + b_N @ iota_l, r(iota_l))),
                ("eps-rt-eta", lambda: (eps_rt @ eta_r + b_hr @ eps_rt, xi(iota_r))),
                ("eps-r-iota-r", lambda: (b_er @ iota_r, b_N @ eps_rt)),
                ("iota-l-eta", lambda: (r(iota_l @ eta_l), b_hr @ iota_l)),
                ("eps-rt-rho", lambda: (eps_rt @ rho + b_er @ iota_l, iota_l @ eps_l)),
            ]
        if suite == "Bunch2":
            return [
                ("eta-lt-eta-r", lambda: (eta_lt @ b_hr, None)),
                ("eta-eta-lt", lambda: (eta_l @ eta_lt, None)),
                ("eta-lt", lambda: (eta_lt, eta_l @ p_l)),
                ("p-l-eps-r", lambda: (p_l @ b_er, eps_l @ p_l)),
                ("p-r-N", lambda: (p_r @ b_N + rho @ p_l, r(p_r))),
                ("eta-lt-eps-r", lambda: (eta_lt @ b_er + eps_l @ eta_lt, xi(p_l))),
                ("eta-lt-N", lambda: (eta_lt @ b_N, p_l @ b_hr)),
                ("p-r-eps-r", lambda: (p_r @ b_er, r(eps_r @ p_r))),
                ("p-r-eta-r", lambda: (p_r @ b_hr + rho @ eta_lt, eta_r @ p_r)),
            ]
        if suite == "bold-h":
            b_h = kit.b_h
            one = ident(kit.E_diamond)
            return [
                ("r-minus-N", lambda: (r(b_h) - b_N @ b_h, iota_r @ p_r - one)),
                ("r-minus-N-right", lambda: (r(b_h) - b_h @ b_N, iota_l @ p_l - one)),
                ("eps", lambda: (b_h @ b_er - b_er @ b_h, eps_rt @ p_r)),
                ("eta", lambda: (b_h @ b_hr - b_hr @ b_h, -(iota_l @ eta_lt))),
            ]
        raise ValueError(f"Unknown bold suite {suite!r}")

    def lemma_statements(self, suite, ledger=None):
        """Statements of one lemma suite as (statement_id, thunk) pairs."""
        if suite not in LEMMA_SUITES:
            raise ValueError(f"Unknown lemma suite {suite!r}; choose from {LEMMA_SUITES}")
        statements = []
        if suite in ("epsilon0", "epsilon1", "bunch1", "bunch2", "h"):
            for name, first, trim, build in self._level_equations(suite):
                for i in range(first, self.n + 1 - trim):
                    statements.append(
                        _pair_statement(f"{suite}:{name}[{i}]", lambda b=build, i=i: b(i), ledger)
                    )
        else:
            for name, build in self._bold_equations(suite):
                statements.append(_pair_statement(f"{suite}:{name}", build, ledger))
        return statements

    def verify_lemmas(self, suites=None, ledger=None, restricted_ledger=None):
        """Run the lemma suites.

        Args:
            suites (list, optional): Suite names; all of LEMMA_SUITES by default
            ledger (UsageLedger, optional): Receives unit-sum uses of the other suites
            restricted_ledger (UsageLedger, optional): Receives the uses of RESTRICTED_SUITES

        Returns:
            list: CheckResult per statement
        """
        kit = self.kit  # built once before the pool starts
        logger.info("Verifying lemma suites for n=%d", kit.n)
        statements = []
        for suite in suites or LEMMA_SUITES:
            target = restricted_ledger if suite in RESTRICTED_SUITES else ledger
            statements.extend(self.lemma_statements(suite, target))
        return run_statements(statements, self.workers)

    # pushforwards and the Mon(j_!E) comparison

    def pushforward_statements(self, ledger=None):
        pushforwards = self.build_pushforwards()
        statements = [
            (f"pushforwards:validate:{name}", lambda c=c: validate(c, ledger, f"pushforwards:validate:{c.name}"))
            for name, c in pushforwards.items()
        ]
        statements.append(
            (
                "pushforwards:rho-chain-map",
                lambda: chain_map_check(
                    "pushforwards:rho-chain-map", self.kit.b_rho, pushforwards["j_!J"], pushforwards["j_*J"], ledger
                ),
            )
        )
        for name in ("j_!E", "j_*E"):
            statements.append(
                (f"pushforwards:open-restriction:{name}", lambda c=pushforwards[name]: self.open_restriction_check(c))
            )
        return statements

    def verify_pushforwards(self, ledger=None):
        return run_statements(self.pushforward_statements(ledger), self.workers)

    def build_shriek_mon(self):
        """G = Cone(r: j_!J<-2> -> j_!J), Mon(j_!E) and the two comparison maps f, f_bar."""
        kit, sring = self.kit, self.sring
        pushforwards = self.build_pushforwards()
        shriek_j = pushforwards["j_!J"]
        shifted_down = twist(shriek_j, -2)
        r_map = MatrixMorphism.scalar_map(shifted_down.object, shriek_j.object, sring.r)
        g_complex = cone(r_map, shifted_down, shriek_j, name="G")
        mon_complex = mon(pushforwards["j_!E"], name="Mon(j_!E)")
        top = kit.E_left
        bottom = top.twist(-2).shift(1)
        one_top = MatrixMorphism.identity(top, sring)
        one_bottom = MatrixMorphism.identity(bottom, sring)
        eta_down = kit.b_eta.retarget(top, bottom)
        f = MatrixMorphism.from_blocks([[one_top, None], [eta_down, one_bottom]], [top, bottom], [top, bottom], sring)
        f_bar = MatrixMorphism.from_blocks(
            [[one_top, None], [-eta_down, one_bottom]], [top, bottom], [top, bottom], sring
        )
        return g_complex, mon_complex, f, f_bar

    def verify_shriek_mon(self, ledger=None):
        """Certify G ~ Mon(j_!E): f and f_bar are chain maps and mutually inverse."""
        logger.info("Verifying G ~ Mon(j_!E) for n=%d", self.n)
        g_complex, mon_complex, f, f_bar = self.build_shriek_mon()
        one = MatrixMorphism.identity(g_complex.object, self.sring)
        statements = [
            ("shriek-mon:validate:G", lambda: validate(g_complex, ledger, "shriek-mon:validate:G")),
            ("shriek-mon:validate:Mon", lambda: validate(mon_complex, ledger, "shriek-mon:validate:Mon")),
            ("shriek-mon:f-chain-map", lambda: chain_map_check("shriek-mon:f-chain-map", f, g_complex, mon_complex, ledger)),
            (
                "shriek-mon:f-bar-chain-map",
                lambda: chain_map_check("shriek-mon:f-bar-chain-map", f_bar, mon_complex, g_complex, ledger),
            ),
            ("shriek-mon:f-f-bar", lambda: CheckResult.compare("shriek-mon:f-f-bar", f @ f_bar, one)),
            ("shriek-mon:f-bar-f", lambda: CheckResult.compare("shriek-mon:f-bar-f", f_bar @ f, one)),
        ]
        return run_statements(statements, self.workers)

    # the comparison with Mon(Z)

    def build_comparison(self, ledger=None):
        """The complexes and maps of the equivalence i_*i^*j_*J ~ Mon(Z)<1>.

        Returns:
            dict: complexes "cone", "Z", "Mon(Z)", "Mon(Z)<1>", and maps "iota", "p"
        """
        kit, sring = self.kit, self.sring
        restricted = self.build_pushforwards()["i_*i^*j_*J"]
        z = self.build_Z(ledger)
        mon_z = mon(z, name="Mon(Z)")
        mon_z1 = twist(mon_z, 1)
        d_top = kit.E_diamond.twist(1)
        d_bottom = kit.E_diamond.twist(-1).shift(1)
        right = kit.E_right
        left = kit.E_left.shift(1)
        iota = MatrixMorphism.from_blocks(
            [
                [kit.b_iota_r.retarget(right, d_top), None],
                [kit.b_eps_rt.retarget(right, d_bottom), kit.b_iota_l.retarget(left, d_bottom)],
            ],
            [d_top, d_bottom],
            [right, left],
            sring,
        )
        p = MatrixMorphism.from_blocks(
            [
                [kit.b_p_r.retarget(d_top, right), None],
                [-kit.b_eta_lt.retarget(d_top, left), kit.b_p_l.retarget(d_bottom, left)],
            ],
            [right, left],
            [d_top, d_bottom],
            sring,
        )
        return {"cone": restricted, "Z": z, "Mon(Z)": mon_z, "Mon(Z)<1>": mon_z1, "iota": iota, "p": p}

    def _blockwise(self, statement, lhs, rhs, row_sizes, col_sizes):
        """Per-block comparison of two block matrices, e.g. the expansion of a chain-map identity."""
        results = []
        row_start = 0
        for a, rows in enumerate(row_sizes):
            col_start = 0
            for b, cols in enumerate(col_sizes):
                row_range = range(row_start, row_start + rows)
                col_range = range(col_start, col_start + cols)
                results.append(
                    CheckResult.compare(
                        f"{statement}[{a},{b}]", lhs.block(row_range, col_range), rhs.block(row_range, col_range)
                    )
                )
                col_start += cols
            row_start += rows
        return results

    def theorem_statements(self, ledger=None):
        kit, sring = self.kit, self.sring
        parts = self.build_comparison(ledger)
        restricted, mon_z, mon_z1 = parts["cone"], parts["Mon(Z)"], parts["Mon(Z)<1>"]
        iota, p = parts["iota"], parts["p"]
        pushforwards = self.build_pushforwards()

        right, left = kit.E_right, kit.E_left.shift(1)
        cone_one = MatrixMorphism.identity(restricted.object, sring)
        mon_one = MatrixMorphism.identity(mon_z1.object, sring)
        homotopy_cone = MatrixMorphism.from_blocks(
            [[None, None], [kit.g.retarget(right, left), None]], [right, left], [right, left], sring
        )
        d_top = kit.E_diamond.twist(1)
        d_bottom = kit.E_diamond.twist(-1).shift(1)
        homotopy_mon = MatrixMorphism.from_blocks(
            [[None, None], [kit.b_h.retarget(d_top, d_bottom), None]], [d_top, d_bottom], [d_top, d_bottom], sring
        )

        # null-homotopy of diag(r - N, r - N): Mon(Z) -> Mon(Z)<2>
        mon_z2 = twist(mon_z, 2)
        src_top, src_bottom = kit.E_diamond, kit.E_diamond.twist(-2).shift(1)
        dst_top, dst_bottom = kit.E_diamond.twist(2), kit.E_diamond.shift(1)
        r_minus_n = MatrixMorphism.identity(kit.E_diamond, sring, sring.r) - kit.b_N
        diag = MatrixMorphism.from_blocks(
            [[r_minus_n.retarget(src_top, dst_top), None], [None, r_minus_n.retarget(src_bottom, dst_bottom)]],
            [dst_top, dst_bottom],
            [src_top, src_bottom],
            sring,
        )
        null = MatrixMorphism.from_blocks(
            [[None, None], [MatrixMorphism.identity(kit.E_diamond, sring).retarget(src_top, dst_bottom), None]],
            [dst_top, dst_bottom],
            [src_top, src_bottom],
            sring,
        )

        d_cone, d_mon1 = restricted.differential, mon_z1.differential
        right_sizes = (len(right), len(left))
        mon_sizes = (len(d_top), len(d_bottom))
        statements = [
            ("theorem:validate:Mon(Z)", lambda: validate(mon_z, ledger, "theorem:validate:Mon(Z)")),
            (
                "theorem:rho-chain-map",
                lambda: chain_map_check(
                    "theorem:rho-chain-map", kit.b_rho, pushforwards["j_!J"], pushforwards["j_*J"], ledger
                ),
            ),
            ("theorem:iota-chain-map", lambda: chain_map_check("theorem:iota-chain-map", iota, restricted, mon_z1, ledger)),
            ("theorem:p-chain-map", lambda: chain_map_check("theorem:p-chain-map", p, mon_z1, restricted, ledger)),
            ("theorem:null-chain-map", lambda: chain_map_check("theorem:null-chain-map", diag, mon_z, mon_z2, ledger)),
            (
                "theorem:homotopy-cone",
                lambda: homotopy_check(d_cone, homotopy_cone, cone_one - p @ iota, "theorem:homotopy-cone", ledger),
            ),
            (
                "theorem:homotopy-mon",
                lambda: homotopy_check(d_mon1, homotopy_mon, iota @ p - mon_one, "theorem:homotopy-mon", ledger),
            ),
            (
                "theorem:null-homotopy",
                lambda: homotopy_check(mon_z.differential, null, diag, "theorem:null-homotopy", ledger),
            ),
        ]
        statements.extend(self._auxiliary_statements(ledger))

        def expansion(statement, phi, d_source, d_target, row_sizes, col_sizes):
            source_d = d_source.retarget(phi.source, phi.source)
            target_d = d_target.retarget(phi.target, phi.target)
            return lambda: self._blockwise(statement, phi @ source_d, target_d @ phi, row_sizes, col_sizes)

        statements.append(
            ("theorem:iota-expansion", expansion("theorem:iota-expansion", iota, d_cone, d_mon1, mon_sizes, right_sizes))
        )
        statements.append(
            ("theorem:p-expansion", expansion("theorem:p-expansion", p, d_mon1, d_cone, right_sizes, mon_sizes))
        )
        return statements

    def _auxiliary_statements(self, ledger=None):
        kit, sring = self.kit, self.sring
        eps_l, eta_l = kit.b_eps, kit.b_eta
        eps_r, eta_r = kit.on_right(eps_l), kit.on_right(eta_l)
        one_l = MatrixMorphism.identity(kit.E_left, sring)
        one_r = MatrixMorphism.identity(kit.E_right, sring)
        pairs = [
            ("aux:q-left", lambda: (kit.q_l, one_l - kit.b_p_l @ kit.b_iota_l)),
            ("aux:q-right", lambda: (kit.q_r, one_r - kit.b_p_r @ kit.b_iota_r)),
            ("aux:g-rho", lambda: (kit.g @ kit.b_rho, kit.q_l)),
            ("aux:rho-g", lambda: (kit.b_rho @ kit.g, kit.q_r)),
            ("aux:g-eps", lambda: (kit.g @ eps_r, None)),
            ("aux:eta-g", lambda: (eta_l @ kit.g, None)),
            (
                "aux:g-eta",
                lambda: (kit.g @ eta_r - eps_l @ kit.g, kit.b_eta_lt @ kit.b_iota_r - kit.b_p_l @ kit.b_eps_rt),
            ),
        ]
        return [_pair_statement(statement, build, ledger) for statement, build in pairs]

    def verify_theorem_nearby(self, ledger=None):
        """Certify Mon(Z)<1> ~ i_*i^*j_*J(E) with monodromy bN.

        Returns:
            list: CheckResult per statement; the expansion statements contribute one result per block
        """
        logger.info("Verifying the nearby-cycles equivalence for n=%d", self.n)
        try:
            statements = self.theorem_statements(ledger)
        except VerificationError as e:
            return [CheckResult(e.statement, FAIL, e.lhs, e.rhs, detail="construction failed")]
        results = []
        for statement, thunk in statements:
            if statement.endswith("-expansion"):
                results.extend(thunk())
        flat = [(s, t) for s, t in statements if not s.endswith("-expansion")]
        return run_statements(flat, self.workers) + results

    # recursion

    def build_recursive(self, koszul=True):
        """j_!E on A^1 boxed with j_!E on A^(n-1), in canonical order."""
        if self.n < 2:
            raise ValueError("The recursion needs n >= 2")
        base = self.sring.base
        first = NearbyController(scalar_ring(1, base)).build_pushforwards()["j_!E"]
        second = NearbyController(scalar_ring(self.n - 1, base)).build_pushforwards()["j_!E"]
        return box_product(first, second, koszul=koszul).canonical()

    def verify_recursion(self, koszul=True):
        """Whether the box product equals j_!E exactly after canonical ordering."""
        product = self.build_recursive(koszul)
        direct = self.build_pushforwards()["j_!E"].canonical()
        if product.object != direct.object:
            logger.warning("Recursive object differs from j_!E for n=%d", self.n)
            return False
        return product.differential.equals(direct.differential.retarget(product.object, product.object))

    def recursion_statements(self):
        def negative_control():
            broken = validate(self.build_recursive(koszul=False), statement="recursion:negative-control")
            return CheckResult.from_bool(
                "recursion:negative-control", not broken.passed, detail="sign-free product has d^2 = 0"
            )

        return [
            ("recursion:box-product", lambda: self.verify_recursion()),
            ("recursion:negative-control", negative_control),
        ]

    # usage

    def usage_report(self, enforce=False):
        """Unit-sum uses made by Z's validation and the underlined lemma suites.

        Args:
            enforce (bool): Treat |I| > n-2 as a failure (global mode)

        Returns:
            dict: ledger, max size, bound and the bound check
        """
        ledger = UsageLedger()
        self.build_Z(ledger)
        results = self.verify_lemmas(RESTRICTED_SUITES, restricted_ledger=ledger)
        max_size = ledger.max_size()
        bound = self.n - 2
        within = max_size is None or self.n < 2 or max_size <= bound
        if not within:
            logger.warning("Unit-sum used on |I| = %d > %d for n=%d", max_size, bound, self.n)
        check = CheckResult.from_bool(
            "usage:bound",
            within or not enforce,
            detail=f"max |I| = {max_size}, bound {bound}",
        )
        return {
            "n": self.n,
            "max_size": max_size,
            "bound": bound,
            "within_bound": within,
            "subsets": [s.to_dict() for s in ledger.subsets()],
            "ledger": ledger,
            "results": results + [check],
        }

    def summary(self):
        kit = self.kit
        return {
            "n": self.n,
            "E_left": len(kit.E_left),
            "E_right": len(kit.E_right),
            "E_diamond": len(kit.E_diamond),
            "jordan": {i: len(kit.jordan[i]) for i in range(self.n + 1)},
        }
