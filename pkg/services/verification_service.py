"""
Verification driver: cross-checks between the generating functions, the
enumeration oracles and published coefficient tables
"""
from math import factorial
from typing import Callable, Dict, Iterable, List, Optional

import structlog

from core.exceptions import GenusCountingError, InvalidInputError
from models.kappa import KappaMonomial, KappaPolynomial
from models.kappa_spec import BivariateCumulantSpec, KappaSpec, SpecializedValue
from models.schemas import CheckResult, VerificationReport
from models.series import LaurentSeries
from services import reference_data
from services.counting_service import moments_from_table, stirling_and_bell
from services.cumulant_curve import generic_curve
from services.cylinder_service import cylinder_series, m2_coefficient, m2_coefficients, overcount_series
from services.enumeration_service import EnumerationService, annular_oracle
from services.moment_service import MomentService
from services.partition_genfun import faa_di_bruno_m1, m_coefficients, three_block_m1
from services.permutation_genfun import (
    alpha_coefficients,
    planar_inverse_check,
    planar_moment_lagrange,
    w_per_genus,
    w_per_hbar,
)

logger = structlog.get_logger(__name__)

# Scale of each check when no size is requested; each is the full size of its check
DEFAULT_SCALE: Dict[str, int] = {
    "factorial-sum": 9,
    "stirling1-sum": 9,
    "bell-sum": 7,
    "stirling2-sum": 7,
    "harer-zagier-sum": 10,
    "perm-oracle": 9,
    "part-oracle": 10,
    "two-form": 12,
    "specialized-series": 0,
    "closed-counts": 10,
    "moment-tables": 0,
    "cylinder-routes": 8,
    "cylinder-oracle": 7,
    "typo-guard": 0,
    "planar-inverse": 8,
}

CHECK_NAMES = tuple(DEFAULT_SCALE)


class _Collector:
    """Accumulates case outcomes for one check"""

    def __init__(self, name: str):
        self.name = name
        self.cases = 0
        self.failures: List[str] = []

    def expect(self, label: str, expected, actual) -> None:
        self.cases += 1
        if expected != actual:
            self.failures.append(f"{label}: expected {_show(expected)}, got {_show(actual)}")

    def expect_true(self, label: str, condition: bool) -> None:
        self.cases += 1
        if not condition:
            self.failures.append(f"{label}: failed")

    def result(self) -> CheckResult:
        return CheckResult(name=self.name, passed=not self.failures, cases=self.cases, failures=self.failures)


def _show(value) -> str:
    if hasattr(value, "render"):
        return value.render()
    return str(value)


def _double_factorial(n: int) -> int:
    result = 1
    while n > 1:
        result *= n
        n -= 2
    return result


class VerificationService:
    """Runs named verification checks and assembles a report"""

    def __init__(self, moments: Optional[MomentService] = None, enumeration: Optional[EnumerationService] = None):
        self.moments = moments or MomentService()
        self.enumeration = enumeration or EnumerationService()
        self._checks: Dict[str, Callable[[_Collector, int], None]] = {
            "factorial-sum": self._factorial_sum,
            "stirling1-sum": self._stirling1_sum,
            "bell-sum": self._bell_sum,
            "stirling2-sum": self._stirling2_sum,
            "harer-zagier-sum": self._harer_zagier_sum,
            "perm-oracle": self._perm_oracle,
            "part-oracle": self._part_oracle,
            "two-form": self._two_form,
            "specialized-series": self._specialized_series,
            "closed-counts": self._closed_counts,
            "moment-tables": self._moment_tables,
            "cylinder-routes": self._cylinder_routes,
            "cylinder-oracle": self._cylinder_oracle,
            "typo-guard": self._typo_guard,
            "planar-inverse": self._planar_inverse,
        }

    def run(self, checks: Optional[Iterable[str]] = None, scale: Optional[int] = None) -> VerificationReport:
        """
        Run checks in the given order (all checks by default)

        Args:
            checks: Check names
            scale: Size parameter overriding each check's default

        Returns:
            VerificationReport: Per-check outcome; passed only if every check passed

        Raises:
            InvalidInputError: On an unknown check name
        """
        names = list(checks) if checks else list(CHECK_NAMES)
        unknown = [name for name in names if name not in self._checks]
        if unknown:
            raise InvalidInputError(f"Unknown checks: {', '.join(unknown)}", field="checks")
        results = [self.run_check(name, scale) for name in names]
        report = VerificationReport(passed=all(r.passed for r in results), checks=results)
        logger.info("verification finished", passed=report.passed, checks=len(results))
        return report

    def run_check(self, name: str, scale: Optional[int] = None) -> CheckResult:
        collector = _Collector(name)
        size = DEFAULT_SCALE[name] if scale is None else scale
        try:
            self._checks[name](collector, size)
        except GenusCountingError as e:
            collector.failures.append(f"error: {e.message}")
        result = collector.result()
        log = logger.info if result.passed else logger.warning
        log("check finished", check=name, passed=result.passed, cases=result.cases, failures=len(result.failures))
        return result

    # Coefficientwise sums at hbar = 1

    def _totals(self, kind: str, preset: str, n_max: int) -> List[str]:
        return [row.total for row in self.moments.hbar_table(kind, KappaSpec.of(preset), n_max)]

    def _factorial_sum(self, c: _Collector, n_max: int) -> None:
        for n, total in enumerate(self._totals("permutation", "factorials", n_max)):
            c.expect(f"n={n}", str(factorial(n)), total)

    def _stirling1_sum(self, c: _Collector, n_max: int) -> None:
        tables = stirling_and_bell(n_max)
        for n, total in enumerate(self._totals("permutation", "stirling1", n_max)):
            expected = SpecializedValue(tuple(abs(tables.s(n, k)) for k in range(n + 1)))
            c.expect(f"n={n}", expected.render(), total)

    def _bell_sum(self, c: _Collector, n_max: int) -> None:
        tables = stirling_and_bell(n_max)
        for n, total in enumerate(self._totals("partition", "bell", n_max)):
            c.expect(f"n={n}", str(tables.bell[n]), total)

    def _stirling2_sum(self, c: _Collector, n_max: int) -> None:
        tables = stirling_and_bell(n_max)
        for n, total in enumerate(self._totals("partition", "stirling2", n_max)):
            expected = SpecializedValue(tuple(tables.S(n, k) for k in range(n + 1)))
            c.expect(f"n={n}", expected.render(), total)

    def _harer_zagier_sum(self, c: _Collector, n_max: int) -> None:
        for n, total in enumerate(self._totals("permutation", "harer-zagier", n_max)):
            expected = _double_factorial(n - 1) if n % 2 == 0 else 0
            c.expect(f"n={n}", str(expected), total)

    # Enumeration oracles

    def _perm_oracle(self, c: _Collector, n_max: int) -> None:
        tables = {n: self.enumeration.get_genus_table(n, "permutation") for n in range(1, n_max + 1)}
        for g in range((n_max - 1) // 2 + 1):
            alphas = alpha_coefficients(g, tables)
            for n, table in tables.items():
                c.expect(f"g={g} n={n}", moments_from_table(table, g), alphas[n])

    def _part_oracle(self, c: _Collector, n_max: int) -> None:
        tables = {n: self.enumeration.get_genus_table(n, "partition") for n in range(1, n_max + 1)}
        for g in range(3):
            polys = self.moments.moment_polynomials("partition", g, tables)
            for n, table in tables.items():
                c.expect(f"g={g} n={n}", moments_from_table(table, g), polys[n])
        for n, table in tables.items():
            if n <= 7:
                c.expect(f"max genus n={n}", True, table.max_genus <= 2)

    def _two_form(self, c: _Collector, order: int) -> None:
        curve = generic_curve(order, order)
        graded = w_per_hbar(3, curve.X, curve=curve)
        for g in range(4):
            direct = w_per_genus(g, curve.X, curve=curve)
            c.expect_true(f"g={g}", graded[g].agrees_with(direct))

    # Published tables

    def _specialized_series(self, c: _Collector, _: int) -> None:
        for preset, by_kind in reference_data.SPECIALIZED_SERIES.items():
            spec = KappaSpec.of(preset)
            for kind, by_genus in by_kind.items():
                for g, (start, expected) in by_genus.items():
                    values = self.moments.specialized_series(kind, g, spec, start + len(expected) - 1)
                    for offset, text in enumerate(expected):
                        n = start + offset
                        c.expect(f"{preset} {kind} g={g} n={n}", text, values[n].render())

    def _closed_counts(self, c: _Collector, n_max: int) -> None:
        for (p, k), count in reference_data.FAA_DI_BRUNO_ANCHORS.items():
            c.expect(f"faa_di_bruno_m1({p},{k})", count, faa_di_bruno_m1(p, k))
        for sizes, count in reference_data.THREE_BLOCK_ANCHORS.items():
            c.expect(f"three_block_m1{sizes}", count, three_block_m1(*sizes))
        if n_max < 4:
            return
        polys = m_coefficients(1, range(4, n_max + 1))
        for p in range(2, n_max // 2 + 1):
            for k in range(2, n_max // p + 1):
                monomial = KappaMonomial.kappa(p, k)
                c.expect(f"k{p}^{k}", polys[p * k].coefficient(monomial), faa_di_bruno_m1(p, k))
        for r in range(1, n_max + 1):
            for p in range(r + 1, n_max + 1):
                for q in range(p + 1, n_max - r - p + 1):
                    monomial = KappaMonomial.build({r: 1, p: 1, q: 1})
                    c.expect(f"k{r}*k{p}*k{q}", polys[r + p + q].coefficient(monomial), three_block_m1(r, p, q))

    def _moment_tables(self, c: _Collector, _: int) -> None:
        for g in sorted({g for g, _ in reference_data.PERMUTATION_MOMENTS}):
            entries = {n: text for (h, n), text in reference_data.PERMUTATION_MOMENTS.items() if h == g}
            computed = alpha_coefficients(g, entries)
            for n, text in entries.items():
                c.expect(f"alpha g={g} n={n}", KappaPolynomial.parse(text), computed[n])
        for g in sorted({g for g, _ in reference_data.PARTITION_MOMENTS}):
            entries = {n: text for (h, n), text in reference_data.PARTITION_MOMENTS.items() if h == g}
            computed = m_coefficients(g, entries)
            for n, text in entries.items():
                c.expect(f"m g={g} n={n}", KappaPolynomial.parse(text), computed[n])
        computed = m2_coefficients("part", reference_data.CYLINDER_MOMENTS)
        for pair, text in reference_data.CYLINDER_MOMENTS.items():
            c.expect(f"cylinder {pair}", KappaPolynomial.parse(text), computed[pair])

    # Cylinder

    def _cylinder_routes(self, c: _Collector, order: int) -> None:
        spec = BivariateCumulantSpec.generic(order, order)
        by_operator = cylinder_series("part", spec, order, order, route="operator")
        by_substitution = cylinder_series("part", spec, order, order, route="substitution")
        c.expect_true("w2_part routes", by_operator.agrees_with(by_substitution))
        c.expect_true(
            "overcount forms",
            overcount_series(spec, "coefficients").agrees_with(overcount_series(spec, "operator")),
        )
        c.expect_true("w2_part symmetry", by_operator.agrees_with(by_operator.swap()))
        pairs = [(i, j) for i in range(1, order) for j in range(1, order - i + 1)]
        polys = m2_coefficients("part", pairs)
        for i, j in pairs:
            c.expect(f"m({i},{j}) = m({j},{i})", polys[(i, j)], polys[(j, i)])
            weights = polys[(i, j)].weights()
            c.expect(f"weight m({i},{j})", {i + j}, weights)

    def _cylinder_oracle(self, c: _Collector, n_max: int) -> None:
        pairs = [(i, j) for i in range(1, n_max) for j in range(1, n_max - i + 1)]
        for kind in ("perm", "part"):
            polys = m2_coefficients(kind, pairs, second_order_zero=True)
            for i, j in pairs:
                c.expect(f"{kind} ({i},{j})", annular_oracle(i, j, kind), polys[(i, j)])

    def _typo_guard(self, c: _Collector, _: int) -> None:
        poly = m2_coefficient("perm", 1, 3)
        c.expect("coefficient of k1^2*k1_1 in m(1,3)", 3, poly.coefficient("k1^2*k1_1"))

    def _planar_inverse(self, c: _Collector, n_max: int) -> None:
        alphas = alpha_coefficients(0, range(n_max + 1))
        for n in range(n_max + 1):
            c.expect(f"lagrange n={n}", alphas[n], planar_moment_lagrange(n))
        composed = planar_inverse_check(n_max)
        c.expect_true("X(W0(x)) = x", composed.agrees_with(LaurentSeries.monomial(-1, 1, composed.trunc)))
