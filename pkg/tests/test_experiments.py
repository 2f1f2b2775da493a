"""Tests for experiment orchestration shared by the CLI and the HTTP API."""

import math

import pytest

from compop.dirichlet.poly import poly
from compop.errors import LabError, NOT_CONVERGED
from compop.services import experiments
from compop.symbols import LinearSymbol, RestrictedRangeLift, Symbol, bohr_lift

DIAGONAL = Symbol(1, poly({1: 1.0}))
SEVEN_QUARTERS = LinearSymbol(1.75, ((2, -0.25),))
EDGE_D2 = LinearSymbol(1.5, ((2, -0.5), (3, -0.5)))
UNDECIDABLE = Symbol(0, poly({1: 1.0, 2: -0.3, 4: 0.3}))


class TestLowerBound:
    def test_chain_for_translations(self):
        report = experiments.run_lowerbound(DIAGONAL, [1, 2, 4])
        assert report.construction == "chain"
        assert report.d == 1
        for row in report.rows:
            assert row.lower_bound <= 1 / row.n + 1e-9
            assert row.normalized == row.lower_bound
            assert row.preimages == row.n

    def test_grid_for_edge_symbol(self):
        report = experiments.run_lowerbound(EDGE_D2, [3, 4])
        assert report.construction == "grid"
        assert report.d == 2
        for row in report.rows:
            assert row.normalized == pytest.approx(row.lower_bound * math.sqrt(row.n))
            assert row.preimages == row.n**2
            assert row.nu >= 1

    def test_general_form_of_linear_symbol(self):
        report = experiments.run_lowerbound(EDGE_D2.to_symbol(), [3])
        assert report.construction == "grid"

    def test_complex_symbol_reduced_first(self):
        sym = LinearSymbol(1.0 + 2j, ((2, 0.5j),))
        reduced = experiments.run_lowerbound(LinearSymbol(1.0, ((2, -0.5),)), [4])
        report = experiments.run_lowerbound(sym, [4])
        assert report.rows[0].lower_bound == reduced.rows[0].lower_bound

    def test_restricted_chain(self):
        report = experiments.run_lowerbound(RestrictedRangeLift(1.0), [2, 3])
        assert report.construction == "restricted"
        assert [row.nu for row in report.rows] == [None, None]

    def test_no_construction(self):
        with pytest.raises(LabError) as exc:
            experiments.run_lowerbound(UNDECIDABLE, [2])
        assert exc.value.code == "PRECONDITION_FAILED"


class TestCarleson:
    def test_lift_selection(self):
        assert experiments.lift_for(SEVEN_QUARTERS) == bohr_lift(SEVEN_QUARTERS)
        lift = RestrictedRangeLift(1.0)
        assert experiments.lift_for(lift) is lift

    def test_lift_needs_linear(self):
        with pytest.raises(LabError):
            experiments.lift_for(DIAGONAL)

    def test_restricted_profile(self):
        profile = experiments.run_carleson(RestrictedRangeLift(1.0), [0.1], samples=10_000, seed=4)
        assert profile.max_masses == [0.0]
        assert profile.seed == 4


class TestSymbols:
    def test_fixed_point_report(self):
        report = experiments.run_fixed_point(SEVEN_QUARTERS)
        alpha = report.alpha.to_complex()
        assert abs(SEVEN_QUARTERS(alpha) - alpha) <= 1e-12
        assert report.alpha.im == 0.0
        assert report.cross_checked

    def test_validate_passthrough(self):
        assert experiments.run_validate(UNDECIDABLE).verdict == "undecidable"


class TestSelfTest:
    def test_all_checks_pass(self):
        checks = experiments.run_selftest()
        assert [c.name for c in checks] == list(experiments.SELF_CHECKS)
        failed = [c for c in checks if not c.passed]
        assert failed == []

    def test_lab_error_becomes_failure(self):
        def broken():
            raise LabError(NOT_CONVERGED, 500, "stalled")

        check = experiments._check("broken", broken)
        assert not check.passed
        assert check.detail == "NOT_CONVERGED: stalled"
