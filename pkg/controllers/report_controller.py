"""
Report controller.
Dispatches verification suites and assembles certificates, tables and
rendered complexes for output.
"""

import logging
from functools import cached_property

from config import SUITES
from controllers.geometry_controller import GeometryController
from controllers.monodromy_controller import MonodromyController
from controllers.nearby_controller import NearbyController
from controllers.weyl_controller import WeylController
from models.complex import twist
from models.morphism import NormalMorphism, UsageLedger, block_unit_sum_check, compose, unit_sum_check
from models.scalar import bidegree_of
from models.subset import Subset, acceptable_orders, block_decomposition, is_acceptable
from utils.export_utils import export_certificate_pdf, export_json, export_table
from utils.formatter import format_scalar, parse_scalar
from utils.latex_renderer import render_latex
from utils.worker_pool import run_statements

logger = logging.getLogger(__name__)


class ReportController:
    """Controller for whole verification runs on one scalar ring."""

    def __init__(self, sring, mode="affine", workers=None):
        """Initialize controller.

        Args:
            sring (ScalarRing): Ring of rank n
            mode (str): "affine", or "global" to enforce the |I| <= n-2 ledger bound
            workers (int, optional): Worker threads for the statement pool
        """
        self.sring = sring
        self.n = sring.n
        self.mode = mode
        self.workers = workers
        self.ledger = UsageLedger()

    @cached_property
    def nearby(self):
        return NearbyController(self.sring, self.workers)

    @cached_property
    def monodromy(self):
        return MonodromyController(self.nearby)

    @cached_property
    def weyl(self):
        return WeylController(self.n, self.workers)

    @cached_property
    def geometry(self):
        return GeometryController(self.n, self.workers)

    # small suites on the scalar algebra and the strata

    def scalar_statements(self):
        sring = self.sring
        roots = [sring.alpha(i) for i in range(1, self.n + 1)]
        samples = roots + [sring.xi, sring.r * sring.xi - sring.xi_bar, sring.xi_bar * sring.r**2 * (roots[0] + 3)]

        def alpha_sum():
            total = sring.zero
            for root in roots:
                total = total + root
            return total == sring.xi

        return [
            ("scalars:xi-bar-square", lambda: (sring.xi_bar * sring.xi_bar).is_zero),
            ("scalars:alpha-sum", alpha_sum),
            (
                "scalars:bidegree-additive",
                lambda: bidegree_of(sring.xi * sring.r) == bidegree_of(sring.xi) + bidegree_of(sring.r),
            ),
            (
                "scalars:text-round-trip",
                lambda: all(parse_scalar(format_scalar(s), sring) == s for s in samples),
            ),
        ]

    def strata_statements(self):
        n, sring = self.n, self.sring
        statements = []
        for subset in Subset.all_subsets(n):
            if not subset.is_proper:
                continue
            statements.append(
                (
                    f"strata:acceptable{subset}",
                    lambda s=subset: all(is_acceptable(o, s) for o in acceptable_orders(s)),
                )
            )
            if len(subset) > n - 2:
                continue
            blocks = block_decomposition(subset)
            statements.append(
                (
                    f"strata:blocks{subset}",
                    lambda s=subset, bs=blocks: set().union(*(b.core for b in bs)) == set(s.members)
                    and sorted(b.tail for b in bs) == list(s.complement().members),
                )
            )
            for block in blocks:
                if block.core and not any(o[: len(block.core)] == block.core for o in acceptable_orders(subset)):
                    continue
                statements.append(
                    (
                        f"strata:block-unit-sum{subset}{block}",
                        lambda b=block, s=subset: block_unit_sum_check(b, s, sring),
                    )
                )
        return statements

    def morphcalc_statements(self, ledger=None):
        sring = self.sring
        ledger = ledger if ledger is not None else self.ledger
        statements = []
        for subset in Subset.all_subsets(self.n):
            statements.append(
                (f"morphcalc:unit-sum{subset}", lambda s=subset: unit_sum_check(s, ledger, sring))
            )
            for i in range(1, self.n + 1):
                other = subset.remove(i) if i in subset else subset.add(i)

                def pair(s=subset, o=other, i=i):
                    there = NormalMorphism.generator(s, o, sring)
                    back = NormalMorphism.generator(o, s, sring)
                    return compose(back, there).scalar == sring.alpha(i)

                statements.append((f"morphcalc:pair{subset}[{i}]", pair))
        return statements

    # dispatch

    def run_suite(self, suite):
        """Run one named suite.

        Returns:
            list: CheckResult per statement

        Raises:
            ValueError: If the suite name is unknown
        """
        if suite not in SUITES:
            raise ValueError(f"Unknown suite {suite!r}; choose from {SUITES}")
        logger.info("Running suite %s for n=%d", suite, self.n)
        nearby = self.nearby
        if suite == "scalars":
            return run_statements(self.scalar_statements(), self.workers)
        if suite == "strata":
            return run_statements(self.strata_statements(), self.workers)
        if suite == "morphcalc":
            return run_statements(self.morphcalc_statements(), self.workers)
        if suite == "lemmas":
            return nearby.verify_lemmas(ledger=self.ledger, restricted_ledger=UsageLedger())
        if suite == "pushforwards":
            return nearby.verify_pushforwards(self.ledger)
        if suite == "shriek-mon":
            return nearby.verify_shriek_mon(self.ledger)
        if suite == "theorem":
            return nearby.verify_theorem_nearby(self.ledger)
        if suite == "recursion":
            if self.n < 2:
                return []
            return run_statements(nearby.recursion_statements(), self.workers)
        if suite == "usage":
            return self.usage()["results"]
        if suite == "monodromy":
            return self.monodromy.verify(workers=self.workers)
        if suite == "weyl":
            return self.weyl.verify()
        return self.geometry.verify()

    def verify(self, suites=None):
        """Run the given suites (all by default) into a certificate.

        Returns:
            dict: n, ring, mode, per-suite results, failure count and passed flag
        """
        results = {}
        for suite in suites or SUITES:
            results[suite] = self.run_suite(suite)
        failed = sum(1 for rs in results.values() for r in rs if not r.passed)
        if failed:
            logger.warning("%d statement(s) failed for n=%d", failed, self.n)
        return {
            "n": self.n,
            "ring": str(self.sring.base),
            "mode": self.mode,
            "suites": results,
            "failed": failed,
            "passed": failed == 0,
        }

    # outputs of the other commands

    def psi(self):
        """Psi = Z<-1>, the nearby cycles of the constant object on the generic fiber."""
        return twist(self.nearby.build_Z(), -1).renamed("Psi")

    def grm(self):
        monodromy = self.monodromy
        table = monodromy.associated_graded()
        return {
            "n": self.n,
            "gr": table,
            "psi": monodromy.psi_table(table),
            "closed_form": monodromy.closed_form(),
            "matches_closed_form": table == monodromy.closed_form(),
        }

    def usage(self):
        return self.nearby.usage_report(enforce=self.mode == "global")

    # serialization and export

    @staticmethod
    def certificate_to_dict(certificate):
        data = dict(certificate)
        data["suites"] = {name: [r.to_dict() for r in rs] for name, rs in certificate["suites"].items()}
        return data

    @staticmethod
    def certificate_text(certificate):
        lines = [f"n = {certificate['n']}, ring {certificate['ring']}, mode {certificate['mode']}"]
        for name, results in certificate["suites"].items():
            passed = sum(1 for r in results if r.passed)
            lines.append(f"[{name}] {passed}/{len(results)}")
            lines.extend(str(r) for r in results if not r.passed)
        lines.append("PASS" if certificate["passed"] else f"FAIL ({certificate['failed']} failed)")
        return "\n".join(lines)

    def render(self, complex_, fmt):
        if fmt == "latex":
            return render_latex(complex_)
        if fmt == "json":
            return complex_.to_json(indent=2)
        canon = complex_.canonical()
        lines = [f"{complex_.name} ({complex_.regime.value}, {len(complex_)} summands)", f"  {canon.object}"]
        for entry in canon.differential.to_dict()["entries"]:
            lines.append(f"  d[{entry['row']},{entry['col']}] = {entry['word'] or 'id'} @ ({entry['scalar']})")
        return "\n".join(lines)

    def export_certificate(self, certificate, filename=None, directory=None):
        """Write the certificate as JSON and, when reportlab is present, as PDF.

        Returns:
            list: Paths written
        """
        filename = filename or f"certificate_n{self.n}"
        data = self.certificate_to_dict(certificate)
        paths = [export_json(data, filename, directory)]
        pdf = export_certificate_pdf(data, filename, directory)
        if pdf:
            paths.append(pdf)
        return paths

    def export_tables(self, tables=None, directory=None):
        tables = tables or self.grm()
        return [
            export_table(tables["gr"], f"gr_n{self.n}", directory=directory),
            export_table(tables["psi"], f"psi_n{self.n}", directory=directory),
        ]
