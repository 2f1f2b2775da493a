"""Tests for reproducing kernels, Gram matrices and the pencil lower bound."""

import math

import numpy as np
import pytest

from compop.dirichlet.poly import poly
from compop.dirichlet.zeta import zeta_real
from compop.errors import LabError
from compop.kernels import (
    HalfPlanePoint,
    PointConfiguration,
    PolydiscPoint,
    bernstein_lower_bound,
    boundary_grid,
    config_to_dict,
    horizontal_chain,
    kernel_inner,
    make_configuration,
    restricted_range_chain,
)
from compop.kernels.bounds import preimage_gram, target_gram
from compop.kernels.constructions import centered_indices
from compop.kernels.inner import halfplane_gram, polydisc_gram, zeta_many, zeta_regular_many
from compop.services.settings import get_settings
from compop.symbols import LinearSymbol, Symbol

DIAGONAL = Symbol(1, poly({1: 1.0}))
EDGE_D1 = LinearSymbol(1.5, ((2, -1.0),))
EDGE_D2 = LinearSymbol(1.5, ((2, -0.5), (3, -0.5)))
EDGE_D3 = LinearSymbol(1.5, ((2, -1 / 3), (3, -1 / 3), (5, -1 / 3)))


class _Identity:
    def evaluate_many(self, z):
        return np.asarray(z, dtype=complex)


# ---------------------------------------------------------------------------
# Kernels
# ---------------------------------------------------------------------------


class TestKernelPoints:
    def test_half_plane_norm(self):
        assert HalfPlanePoint(1.0).norm_sq == pytest.approx(math.pi**2 / 6, rel=1e-12)

    def test_half_plane_domain(self):
        with pytest.raises(LabError):
            HalfPlanePoint(0.5)

    def test_polydisc_norm(self):
        assert PolydiscPoint((0.0,), (2,)).norm_sq == 1.0
        assert PolydiscPoint((0.5, 0.5j), (2, 3)).norm_sq == pytest.approx(16 / 9)

    def test_polydisc_domain(self):
        with pytest.raises(LabError):
            PolydiscPoint((1.0,), (2,))
        with pytest.raises(LabError):
            PolydiscPoint((0.1, 0.2), (2,))

    def test_inner_products(self):
        assert kernel_inner(HalfPlanePoint(1.0), HalfPlanePoint(1.0)).real == pytest.approx(
            math.pi**2 / 6, rel=1e-12
        )
        assert kernel_inner(PolydiscPoint((0.0,), (2,)), PolydiscPoint((0.3,), (2,))) == 1
        assert kernel_inner(PolydiscPoint((0.5,), (2,)), PolydiscPoint((0.5,), (2,))).real == pytest.approx(4 / 3)

    def test_inner_product_conjugate_symmetry(self):
        a, b = HalfPlanePoint(1.0 + 1j), HalfPlanePoint(2.0 - 0.5j)
        assert kernel_inner(a, b) == pytest.approx(kernel_inner(b, a).conjugate(), rel=1e-12)

    def test_mixed_variants_rejected(self):
        with pytest.raises(LabError):
            kernel_inner(HalfPlanePoint(1.0), PolydiscPoint((0.1,), (2,)))
        with pytest.raises(LabError):
            kernel_inner(PolydiscPoint((0.1,), (2,)), PolydiscPoint((0.1,), (3,)))


class TestZetaMany:
    def test_real_values(self):
        values = zeta_many(np.array([2.0, 4.0]))
        np.testing.assert_allclose(values, [math.pi**2 / 6, math.pi**4 / 90], rtol=1e-12)

    def test_off_axis_against_direct_sum(self):
        z = 3 + 2j
        n = np.arange(1, 10**6 + 1, dtype=float)
        M = 10**6
        direct = np.sum(np.exp(-z * np.log(n))) + M ** (1 - z) / (z - 1) - M ** (-z) / 2
        assert abs(zeta_many(np.array([z]))[0] - direct) < 1e-10

    def test_conjugate(self):
        z = np.array([1.5 + 4j, 2.5 - 1j])
        np.testing.assert_allclose(zeta_many(np.conj(z)), np.conj(zeta_many(z)), rtol=1e-13)

    def test_shape_preserved(self):
        assert zeta_many(np.full((2, 3), 2.0)).shape == (2, 3)
        assert zeta_many(np.array([])).shape == (0,)

    def test_pole(self):
        with pytest.raises(LabError, match="pole"):
            zeta_many(np.array([1.0 + 2j]))


class TestZetaRegular:
    def test_real_values(self):
        values = zeta_regular_many(np.array([0.5, 2.0, 9.0]))
        expected = [zeta_real(1.5) - 2.0, zeta_real(3.0) - 0.5, zeta_real(10.0) - 1 / 9]
        np.testing.assert_allclose(values.real, expected, rtol=1e-11)

    def test_euler_constant_near_pole(self):
        value = zeta_regular_many(np.array([1e-9]))[0]
        assert value.real == pytest.approx(0.5772156649015329, abs=1e-8)

    def test_off_axis_matches_zeta_many(self):
        x = np.array([0.3 + 2j, 1.5 - 20j, 0.05 + 45j])
        np.testing.assert_allclose(zeta_regular_many(x), zeta_many(1 + x) - 1 / x, rtol=1e-9)

    def test_needs_right_half_plane(self):
        with pytest.raises(LabError):
            zeta_regular_many(np.array([0.0 + 1j]))


class TestGrams:
    def test_halfplane_hermitian(self):
        x = np.array([1.0, 1.5 + 1j, 2.0 - 3j])
        G = halfplane_gram(x, x)
        np.testing.assert_allclose(G, G.conj().T, rtol=1e-12)

    def test_polydisc_entries(self):
        x = np.array([[0.5], [0.25j]])
        G = polydisc_gram(x, x)
        assert G[0, 1] == pytest.approx(1 / (1 - 0.5 * np.conj(0.25j)))
        assert G[0, 0] == pytest.approx(4 / 3)

    def test_target_gram_diagonal(self):
        config = horizontal_chain(DIAGONAL, 3, 1.0)
        A = target_gram(config)
        np.testing.assert_allclose(np.diag(A).real, zeta_real(4.0), rtol=1e-12)


# ---------------------------------------------------------------------------
# Configurations
# ---------------------------------------------------------------------------


class TestMakeConfiguration:
    def test_accepts_identity(self):
        config = make_configuration(np.array([1.0, 2.0]), [np.array([1.0]), np.array([2.0])], "half-plane", _Identity())
        assert config.n == 2
        assert config.preimage_count == 2
        assert config.residual == 0.0

    def test_targets_in_half_plane(self):
        with pytest.raises(LabError) as exc:
            make_configuration(np.array([0.5]), [np.array([0.75])], "half-plane", _Identity())
        assert exc.value.code == "PRECONDITION_FAILED"

    def test_distinct_targets(self):
        with pytest.raises(LabError, match="distinct"):
            make_configuration(np.array([1.0, 1.0]), [np.array([1.0]), np.array([1.0])], "half-plane", _Identity())

    def test_preimage_mismatch(self):
        with pytest.raises(LabError, match="miss"):
            make_configuration(np.array([1.0]), [np.array([1.5])], "half-plane", _Identity())

    def test_polydisc_shape(self):
        with pytest.raises(LabError, match="shape"):
            make_configuration(np.array([1.0]), [np.array([0.5])], "polydisc", _Identity(), q=(2,))


# ---------------------------------------------------------------------------
# Lower bounds
# ---------------------------------------------------------------------------


class TestBernsteinLowerBound:
    def test_single_point_formula(self):
        config = horizontal_chain(DIAGONAL, 1, 1.0)
        bound = bernstein_lower_bound(config)
        assert bound.value == pytest.approx(math.sqrt(zeta_real(4.0) / zeta_real(2.0)), rel=1e-10)
        assert bound.jitter == 0.0

    @pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
    def test_diagonal_chain_below_true_value(self, n):
        bound = bernstein_lower_bound(horizontal_chain(DIAGONAL, n, 1.0))
        assert 0 < bound.value <= 1 / n + 1e-9

    def test_degenerate_preimages(self):
        config = PointConfiguration(
            targets=np.array([2.0, 3.0], dtype=complex),
            preimages=(np.array([1.0 + 0j]), np.array([1.0 + 0j])),
            variant="half-plane",
        )
        with pytest.raises(LabError) as exc:
            bernstein_lower_bound(config)
        assert exc.value.code == "DEGENERATE_SYSTEM"

    def test_grouped_preimage_gram(self):
        config = boundary_grid(EDGE_D2, 3)
        B = preimage_gram(config)
        np.testing.assert_allclose(B, B.conj().T, atol=1e-12)
        assert np.all(np.linalg.eigvalsh(B) > 0)

    def test_grid_bound_positive(self):
        bound = bernstein_lower_bound(boundary_grid(EDGE_D2, 4))
        assert 0 < bound.value < np.inf

    def test_restricted_chain(self):
        bound = bernstein_lower_bound(restricted_range_chain(1.0, 4))
        assert 0 < bound.value < np.inf


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------


class TestCenteredIndices:
    def test_values(self):
        assert centered_indices(1).tolist() == [0]
        assert centered_indices(2).tolist() == [0, 1]
        assert centered_indices(5).tolist() == [-2, -1, 0, 1, 2]


class TestBoundaryGrid:
    def test_small_d1_grid(self):
        config = boundary_grid(EDGE_D1, 2)
        assert config.params["nu"] == 1.0
        np.testing.assert_allclose(config.targets, [0.75, 0.75 + 0.25j], atol=1e-15)
        firsts = [group[0, 0] for group in config.preimages]
        np.testing.assert_allclose(firsts, [0.75, 0.75 - 0.25j], atol=1e-15)
        assert np.max(np.abs(firsts)) < 1 - 2**-2 / 2

    def test_d1_first_coordinate_spacing(self):
        n = 6
        sym = LinearSymbol(1.5, ((2, -1.0),))
        config = boundary_grid(sym, n)
        firsts = np.array([group[0, 0] for group in config.preimages])
        gaps = np.abs(np.diff(firsts))
        np.testing.assert_allclose(gaps, n**-2, rtol=1e-12)

    def test_d2_grid(self):
        n = 4
        config = boundary_grid(EDGE_D2, n)
        assert config.n == n
        assert config.q == (2, 3)
        assert config.preimage_count == n * n
        assert all(np.all(np.abs(group) < 1 - n**-2 / 2) for group in config.preimages)
        np.testing.assert_allclose(np.abs(config.preimages[0][:, 1]), 1 - n**-2, rtol=1e-14)
        assert config.residual <= 1e-10
        np.testing.assert_allclose(config.targets.real, 0.5 + config.params["nu"] / n**2)

    def test_budget_subsamples_lattice(self):
        config = boundary_grid(EDGE_D3, 4, budget=5)
        assert config.params["preimages_per_target"] == 5
        assert config.params["lattice_size"] == 16
        assert all(len(group) == 5 for group in config.preimages)

    def test_default_budget_from_settings(self):
        assert boundary_grid(EDGE_D2, 3).params["preimages_per_target"] <= get_settings().preimage_budget

    def test_coarse_d2_grid_does_not_converge(self):
        with pytest.raises(LabError) as exc:
            boundary_grid(EDGE_D2, 2)
        assert exc.value.code == "NOT_CONVERGED"

    def test_needs_real_form(self):
        with pytest.raises(LabError) as exc:
            boundary_grid(LinearSymbol(1.5, ((2, 0.5j), (3, -0.5))), 4)
        assert exc.value.code == "PRECONDITION_FAILED"

    def test_needs_edge_kappa(self):
        with pytest.raises(LabError, match="kappa"):
            boundary_grid(LinearSymbol(2.0, ((2, -0.5),)), 4)

    def test_needs_n_at_least_two(self):
        with pytest.raises(LabError):
            boundary_grid(EDGE_D1, 1)


class TestChains:
    def test_horizontal_chain_geometry(self):
        config = horizontal_chain(DIAGONAL, 4, 1.0)
        assert config.params["spacing"] == 3.0
        pre = np.concatenate(config.preimages)
        np.testing.assert_allclose(pre, 1.0 + 3j * np.array([-1, 0, 1, 2]))
        np.testing.assert_allclose(config.targets, pre + 1)
        assert config.params["chain_factor"] == pytest.approx(math.sqrt(zeta_real(4.0) / zeta_real(2.0)))

    def test_horizontal_chain_preconditions(self):
        with pytest.raises(LabError):
            horizontal_chain(Symbol(0, poly({1: 2.0})), 3, 1.0)
        with pytest.raises(LabError):
            horizontal_chain(DIAGONAL, 3, 0.5)

    def test_restricted_chain_geometry(self):
        config = restricted_range_chain(1.0, 3)
        z = np.array([group[0, 0] for group in config.preimages])
        np.testing.assert_allclose(np.abs(z), math.exp(-1 / 9))
        assert np.all(config.targets.real > 0.5)

    def test_restricted_chain_preconditions(self):
        with pytest.raises(LabError):
            restricted_range_chain(0.5, 3)
        with pytest.raises(LabError):
            restricted_range_chain(1.0, 0)


class TestConfigToDict:
    def test_half_plane(self):
        data = config_to_dict(horizontal_chain(DIAGONAL, 2, 1.0))
        assert data["variant"] == "half-plane"
        assert data["targets"][0] == [2.0, 0.0]
        assert data["preimages"][0] == [[1.0, 0.0]]
        assert len(data["weights"]) == 2

    def test_polydisc(self):
        data = config_to_dict(boundary_grid(EDGE_D2, 3))
        assert data["q"] == [2, 3]
        assert len(data["preimages"][0][0]) == 2
        assert data["params"]["nu"] >= 1
