"""Tests for the truncated operator: columns, assembly, spectra, fits."""

import math

import numpy as np
import pytest
from scipy.special import i0

from compop.carleson.blaschke import compact_range_rate
from compop.dirichlet.poly import poly
from compop.dirichlet.zeta import zeta_real
from compop.errors import LabError
from compop.operators import (
    TruncatedOperator,
    approximation_numbers,
    assemble,
    column,
    compression_report,
    decay_fit,
    default_window,
    eigenvalues,
    hs_norm_sq,
    power_lower_bounds,
    schatten_partial_sums,
    square_compression,
    weyl_check,
    weyl_lower_bounds,
)
from compop.services.settings import update_settings
from compop.symbols import LinearSymbol, Symbol, bohr_lift, fixed_point, reduce_to_real

DIAGONAL = Symbol(1, poly({1: 1.0}))
CONSTANT_TWO = Symbol(0, poly({1: 2.0}))
SEVEN_QUARTERS = LinearSymbol(1.75, ((2, -0.25),))
EDGE_D2 = LinearSymbol(1.5, ((2, -0.5), (3, -0.5)))


def _operator(matrix: np.ndarray) -> TruncatedOperator:
    rows, cols = matrix.shape
    return TruncatedOperator(
        n_columns=cols,
        rows=tuple(range(1, rows + 1)),
        entries=matrix,
        row_tolerance=1e-12,
        column_deficits=np.zeros(cols),
    )


# ---------------------------------------------------------------------------
# Columns and assembly
# ---------------------------------------------------------------------------


class TestColumn:
    def test_first_column_is_constant_one(self):
        assert column(EDGE_D2, 1).terms == {1: 1 + 0j}

    def test_diagonal_column(self):
        col = column(Symbol(1, poly({1: 0.5})), 6)
        assert col.support == [6]
        assert col[6] == pytest.approx(6**-0.5, rel=1e-15)

    def test_exponential_coefficients(self):
        col = column(LinearSymbol(1.5, ((2, -0.5),)), 2)
        assert col[1].real == pytest.approx(0.3535534, abs=1e-7)
        assert col[2].real == pytest.approx(2**-1.5 * math.log(2) / 2, rel=1e-12)
        assert col[2].real == pytest.approx(0.1225323, abs=1e-7)
        x = math.log(2) / 2
        for k in range(8):
            expected = 2**-1.5 * x**k / math.factorial(k)
            assert col[2**k].real == pytest.approx(expected, rel=1e-12)

    def test_rows_below_tolerance_dropped(self):
        fine = column(SEVEN_QUARTERS, 5, row_tolerance=1e-14)
        coarse = column(SEVEN_QUARTERS, 5, row_tolerance=1e-4)
        assert len(coarse) < len(fine)
        norm = fine.norm2
        assert all(abs(c) >= 1e-4 * norm * (1 - 1e-6) for c in coarse.terms.values())

    def test_invalid_index(self):
        with pytest.raises(LabError) as exc:
            column(EDGE_D2, 0)
        assert exc.value.code == "VALIDATION_ERROR"


class TestAssemble:
    def test_diagonal(self):
        op = assemble(DIAGONAL, 4)
        assert op.rows == (1, 2, 3, 4)
        np.testing.assert_allclose(op.entries, np.diag([1, 1 / 2, 1 / 3, 1 / 4]), rtol=1e-15)

    def test_constant_symbol(self):
        op = assemble(CONSTANT_TWO, 3)
        assert op.rows == (1,)
        np.testing.assert_allclose(op.entries, [[1, 0.25, 1 / 9]], rtol=1e-15)
        assert op.entry(1, 2) == pytest.approx(0.25)
        assert op.entry(7, 2) == 0

    def test_rows_sorted_and_deficits_small(self):
        op = assemble(EDGE_D2, 20)
        assert list(op.rows) == sorted(op.rows)
        assert op.shape == (len(op.rows), 20)
        assert float(op.column_deficits.max()) < 1e-16

    def test_complex_symbol_gives_complex_entries(self):
        op = assemble(LinearSymbol(2.0, ((2, 0.5j),)), 5)
        assert np.iscomplexobj(op.entries)

    def test_unbounded_rejected(self):
        with pytest.raises(LabError) as exc:
            assemble(LinearSymbol(1.0, ((2, -0.7),)), 10)
        assert exc.value.code == "UNBOUNDED_SYMBOL"

    def test_undecidable_allowed(self):
        op = assemble(Symbol(0, poly({1: 1.0, 2: -0.3, 4: 0.3})), 8)
        assert op.n_columns == 8

    def test_column_cap(self):
        update_settings({"max_columns": 16})
        with pytest.raises(LabError) as exc:
            assemble(DIAGONAL, 17)
        assert exc.value.code == "MATRIX_TOO_LARGE"
        assert "17" in exc.value.detail

    def test_row_cap(self):
        update_settings({"max_rows": 5})
        with pytest.raises(LabError) as exc:
            assemble(EDGE_D2, 10)
        assert exc.value.code == "MATRIX_TOO_LARGE"
        assert "row_tolerance" in exc.value.detail

    def test_workers_do_not_change_result(self):
        serial = assemble(EDGE_D2, 30, workers=1)
        threaded = assemble(EDGE_D2, 30, workers=4)
        assert serial.rows == threaded.rows
        assert np.array_equal(serial.entries, threaded.entries)

    def test_square_compression(self):
        op = assemble(SEVEN_QUARTERS, 8)
        square = square_compression(op)
        assert square.shape == (8, 8)
        for m in range(1, 9):
            for n in range(1, 9):
                assert square[n - 1, m - 1] == op.entry(n, m)


# ---------------------------------------------------------------------------
# Singular values and eigenvalues
# ---------------------------------------------------------------------------


class TestApproximationNumbers:
    def test_diagonal_exactness(self):
        values = approximation_numbers(assemble(DIAGONAL, 200))
        np.testing.assert_allclose(values, 1.0 / np.arange(1, 201), rtol=0, atol=1e-10)

    def test_rank_one_norm(self):
        update_settings({"max_columns": 10_000})
        values = approximation_numbers(assemble(CONSTANT_TWO, 10_000), 2)
        assert values[0] == pytest.approx(math.sqrt(zeta_real(4.0)), abs=1e-6)
        assert values[1] <= 1e-12

    def test_zero_matrix(self):
        values = approximation_numbers(_operator(np.zeros((3, 3))))
        assert values.tolist() == [0.0, 0.0, 0.0]

    def test_descending_nonnegative(self):
        values = approximation_numbers(assemble(EDGE_D2, 40))
        assert np.all(values >= 0)
        assert np.all(np.diff(values) <= 0)

    def test_count_out_of_range(self):
        with pytest.raises(LabError):
            approximation_numbers(assemble(DIAGONAL, 5), 6)

    @pytest.mark.parametrize("N", [50, 100])
    def test_compression_monotone(self, N):
        coarse = approximation_numbers(assemble(EDGE_D2, N))
        fine = approximation_numbers(assemble(EDGE_D2, 2 * N), N)
        assert np.all(fine >= coarse - 1e-12)

    def test_unitary_reduction(self):
        rng = np.random.default_rng(2024)
        for _ in range(20):
            radii = rng.uniform(0.05, 0.5, size=2)
            phases = rng.uniform(0, 2 * np.pi, size=2)
            coeffs = radii * np.exp(1j * phases)
            c1 = complex(rng.uniform(1.5, 2.5), rng.uniform(-3, 3))
            sym = LinearSymbol(c1, ((2, complex(coeffs[0])), (3, complex(coeffs[1]))))
            a = approximation_numbers(assemble(sym, 30))
            b = approximation_numbers(assemble(reduce_to_real(sym), 30))
            np.testing.assert_allclose(a, b, rtol=0, atol=1e-9)


class TestEigenvalues:
    def test_diagonal(self):
        lam = eigenvalues(assemble(DIAGONAL, 50))
        np.testing.assert_allclose(lam, 1.0 / np.arange(1, 51), atol=1e-12)

    def test_constant(self):
        lam = eigenvalues(assemble(CONSTANT_TWO, 10), 2)
        assert lam[0] == pytest.approx(1.0)
        assert abs(lam[1]) < 1e-14

    def test_powers_of_fixed_point_derivative(self):
        fp = fixed_point(SEVEN_QUARTERS)
        lam = eigenvalues(assemble(SEVEN_QUARTERS, 256), 5)
        expected = [fp.derivative**k for k in range(5)]
        for got, want in zip(lam, expected):
            assert abs(got - want) <= 1e-6


class TestWeyl:
    def test_diagonal_equality(self):
        check = weyl_check(assemble(DIAGONAL, 20), 20)
        assert check.holds
        assert abs(check.margin) < 1e-12

    def test_seven_quarters(self):
        check = weyl_check(assemble(SEVEN_QUARTERS, 64), 20)
        assert check.holds
        assert check.n_max == 20

    def test_random_matrices(self):
        rng = np.random.default_rng(8)
        for _ in range(25):
            matrix = 0.3 * (rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6)))
            assert weyl_check(_operator(matrix), 6).holds

    def test_d2_compression(self):
        assert weyl_check(assemble(EDGE_D2, 40), 40).holds


# ---------------------------------------------------------------------------
# Hilbert–Schmidt and Schatten quantities
# ---------------------------------------------------------------------------


class TestHilbertSchmidt:
    def test_diagonal(self):
        hs = hs_norm_sq(DIAGONAL, 200)
        m = np.arange(1, 201, dtype=float)
        assert hs.value == pytest.approx(math.fsum(m**-2), rel=1e-13)
        assert hs.value < math.pi**2 / 6
        assert not hs.divergent_looking

    def test_constant(self):
        hs = hs_norm_sq(CONSTANT_TWO, 100)
        assert hs.value == pytest.approx(zeta_real(4.0), abs=1e-5)
        assert not hs.divergent_looking

    def test_partial_sums_nondecreasing(self):
        hs = hs_norm_sq(EDGE_D2, 60)
        assert np.all(np.diff(hs.partial_sums) >= 0)

    def test_edge_d1_looks_divergent(self):
        hs = hs_norm_sq(LinearSymbol(1.0, ((2, -0.5),)), 200)
        # ‖m^{-φ}‖² = m^{-2}·I₀(log m) for φ = 1 − 2^{-s}/2
        m = np.arange(1, 201, dtype=float)
        np.testing.assert_allclose(hs.partial_sums, np.cumsum(m**-2 * i0(np.log(m))), rtol=1e-9)
        assert hs.divergent_looking

    def test_short_run_has_value_without_trend(self):
        hs = hs_norm_sq(DIAGONAL, 10)
        m = np.arange(1, 11, dtype=float)
        assert hs.value == pytest.approx(math.fsum(m**-2), rel=1e-13)
        assert len(hs.partial_sums) == 10
        assert math.isnan(hs.alpha) and math.isnan(hs.beta)
        assert not hs.divergent_looking

    def test_short_run_edge_matches_column_norms(self):
        hs = hs_norm_sq(LinearSymbol(1.0, ((2, -0.5),)), 5)
        m = np.arange(1, 6, dtype=float)
        np.testing.assert_allclose(hs.partial_sums, np.cumsum(m**-2 * i0(np.log(m))), rtol=1e-9)

    def test_empty_run_rejected(self):
        with pytest.raises(LabError):
            hs_norm_sq(DIAGONAL, 0)

    def test_schatten_partial_sums(self):
        sums = schatten_partial_sums([1.0, 0.5, 0.25], 2)
        np.testing.assert_allclose(sums, [1.0, 1.25, 1.3125])
        with pytest.raises(LabError):
            schatten_partial_sums([1.0], 0)


class TestSpectralLowerBounds:
    def test_weyl_lower_bounds(self):
        bounds = weyl_lower_bounds(2.0, 0.5, 3)
        np.testing.assert_allclose(bounds, [0.5**3 / 2, 0.5**5 / 2, 0.5**7 / 2])

    def test_weyl_lower_bounds_below_computed(self):
        op = assemble(SEVEN_QUARTERS, 128)
        values = approximation_numbers(op, 6)
        lam = fixed_point(SEVEN_QUARTERS).derivative
        assert np.all(weyl_lower_bounds(values[0], lam, 6) <= values * (1 + 1e-9))

    def test_needs_modulus_below_one(self):
        with pytest.raises(LabError) as exc:
            weyl_lower_bounds(1.0, 1.0, 3)
        assert exc.value.code == "PRECONDITION_FAILED"

    def test_power_lower_bounds(self):
        bounds = power_lower_bounds(1.0, 1.0, 2, N=2)
        np.testing.assert_allclose(bounds, [2.0**-2, 4.0**-2])


# ---------------------------------------------------------------------------
# Fits
# ---------------------------------------------------------------------------


class TestDecayFit:
    def test_default_window(self):
        assert default_window(100) == (10, 50)
        assert default_window(1000) == (50, 500)
        assert default_window(12) == (2, 12)

    def test_exact_power_law(self):
        fits = decay_fit(1.0 / np.arange(1, 101))
        assert fits.power_plain.alpha == pytest.approx(-1.0, abs=1e-12)
        assert fits.power_plain.residual < 1e-10
        assert fits.power.alpha == pytest.approx(-1.0, abs=1e-9)
        assert fits.power.beta == pytest.approx(0.0, abs=1e-9)
        assert fits.power.residual < 1e-10

    def test_exact_geometric(self):
        fits = decay_fit(2.0 ** -np.arange(1, 61, dtype=float))
        assert fits.geometric.log_r == pytest.approx(-math.log(2), abs=1e-12)
        assert fits.geometric.residual < 1e-10
        assert fits.window == (10, 30)

    def test_window_validation(self):
        values = 1.0 / np.arange(1, 21)
        with pytest.raises(LabError):
            decay_fit(values, (1, 10))
        with pytest.raises(LabError):
            decay_fit(values, (5, 21))
        with pytest.raises(LabError, match="noise floor"):
            decay_fit(values, (2, 4))

    def test_noise_floor_values_skipped(self):
        values = np.concatenate([2.0 ** -np.arange(1, 11, dtype=float), np.zeros(10)])
        fits = decay_fit(values, (2, 20))
        assert fits.points_used == 9
        assert fits.geometric.log_r == pytest.approx(-math.log(2), abs=1e-12)

    def test_geometric_rate_of_compact_range(self):
        values = approximation_numbers(assemble(SEVEN_QUARTERS, 256), 40)
        fits = decay_fit(values, (5, 40))
        rate = compact_range_rate(bohr_lift(SEVEN_QUARTERS), 1.75, 1.5)
        assert rate == pytest.approx(0.2, abs=1e-9)
        assert fits.geometric.log_r <= math.log(rate) + 0.05


class TestCompressionReport:
    def test_diagonal_report(self):
        report = compression_report(DIAGONAL, 64)
        assert report.n_columns == 64
        assert report.n_rows == 64
        assert len(report.singular_values) == 64
        assert report.window == (10, 32)
        assert report.fits.power_plain.alpha == pytest.approx(-1.0, abs=1e-9)
        assert max(report.convergence) < 1e-12
        assert report.eigenvalue_moduli[0] == pytest.approx(1.0)
        assert report.column_deficit_max == 0.0

    def test_convergence_skipped_at_cap(self):
        update_settings({"max_columns": 64})
        report = compression_report(DIAGONAL, 64)
        assert report.convergence == []

    def test_short_run_has_no_fit(self):
        report = compression_report(CONSTANT_TWO, 8)
        assert report.fits is None
        assert report.singular_values[1] < 1e-12
