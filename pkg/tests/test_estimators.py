import numpy as np
import pytest

from qtomo.estimators import (
    constrained_estimate,
    minimal_estimate,
    project_nonneg_simplex,
    qubit_constrain_bloch,
    standard_estimate,
    three_direction_estimate,
    unconstrained_estimate,
)
from qtomo.linalg import InvariantError, hermitian_eig, hs_distance, is_psd
from qtomo.measurement import (
    TETRAHEDRON,
    MeasurementPlan,
    minimal_povm,
    outcome_probabilities,
    sample_plan_counts,
    standard_povm,
    stream_rng,
)
from qtomo.states import bloch_to_matrix, matrix_to_bloch, random_density

from oracles import (
    project_simplex_bisect,
    project_simplex_sort,
    random_ball_point,
    random_trace_one_hermitian,
    random_unit_rows,
)


def expected_counts(plan: MeasurementPlan, rho) -> dict:
    """Fractional count table equal to r times the outcome distribution."""
    return {
        key: plan.repetitions * outcome_probabilities(plan.observables[key], rho)
        for key in plan.keys
    }


class TestUnconstrainedEstimate:
    def test_single_shot_worked_example(self):
        # One shot each: Z lands on 0, X on +1, Y on +1.
        plan = MeasurementPlan(2, 1)
        counts = {("z", 1): [0, 1], ("x", 1, 2): [1, 0], ("y", 1, 2): [1, 0]}
        phi = unconstrained_estimate(plan, counts)
        expect = np.array([[0.0, 0.5 + 0.5j], [0.5 - 0.5j, 1.0]])
        assert np.abs(phi - expect).max() == 0.0
        assert not is_psd(phi)

    @pytest.mark.parametrize("dim", [2, 3, 4])
    def test_expected_counts_reproduce_state(self, dim):
        rng = np.random.default_rng(200 + dim)
        rho = random_density(dim, rng)
        plan = MeasurementPlan(dim, 10)
        phi = unconstrained_estimate(plan, expected_counts(plan, rho))
        assert np.abs(phi - rho).max() < 1e-12

    @pytest.mark.parametrize("dim", [2, 3])
    def test_sampled_counts_give_trace_one_hermitian(self, dim):
        rho = random_density(dim, np.random.default_rng(210 + dim))
        plan = MeasurementPlan(dim, 7)
        for trial in range(20):
            counts = sample_plan_counts(plan, rho, stream_rng(33, trial))
            phi = unconstrained_estimate(plan, counts)
            assert np.abs(phi - phi.conj().T).max() == 0.0
            assert np.trace(phi).real == pytest.approx(1.0, abs=1e-12)

    def test_missing_observable(self):
        plan = MeasurementPlan(2, 1)
        with pytest.raises(InvariantError, match="missing"):
            unconstrained_estimate(plan, {("z", 1): [0, 1], ("x", 1, 2): [1, 0]})

    def test_inconsistent_totals(self):
        plan = MeasurementPlan(2, 2)
        counts = {("z", 1): [1, 1], ("x", 1, 2): [1, 0], ("y", 1, 2): [2, 0]}
        with pytest.raises(InvariantError, match="sum"):
            unconstrained_estimate(plan, counts)

    def test_negative_counts(self):
        plan = MeasurementPlan(2, 1)
        counts = {("z", 1): [2, -1], ("x", 1, 2): [1, 0], ("y", 1, 2): [1, 0]}
        with pytest.raises(InvariantError, match="nonnegative"):
            unconstrained_estimate(plan, counts)


class TestSimplexProjection:
    def test_first_worked_example(self):
        projected, steps = project_nonneg_simplex([0.5, -0.5, 1.0])
        assert np.abs(projected - [0.25, 0.0, 0.75]).max() < 1e-15
        assert steps == 1

    def test_second_worked_example_needs_two_sweeps(self):
        projected, steps = project_nonneg_simplex([1 / 6, -1 / 2, 8 / 6])
        assert np.abs(projected - [0.0, 0.0, 1.0]).max() < 1e-15
        assert steps == 2

    def test_nonnegative_input_unchanged(self):
        x = np.array([0.2, 0.3, 0.5])
        projected, steps = project_nonneg_simplex(x)
        assert np.array_equal(projected, x)
        assert steps == 0

    @pytest.mark.parametrize("dim", [2, 3, 4, 6, 8])
    def test_matches_sort_and_bisection_oracles(self, dim):
        rng = np.random.default_rng(300 + dim)
        for _ in range(200):
            x = rng.standard_normal(dim)
            x += (1.0 - x.sum()) / dim
            projected, steps = project_nonneg_simplex(x)
            assert steps <= dim - 1
            assert np.abs(projected - project_simplex_sort(x)).max() < 1e-12
            assert np.abs(projected - project_simplex_bisect(x)).max() < 1e-10
            assert projected.min() >= 0.0
            assert projected.sum() == pytest.approx(1.0, abs=1e-12)

    def test_clipped_entries_are_exact_zeros(self):
        projected, _ = project_nonneg_simplex([1.2, -0.1, -0.1])
        assert projected[1] == 0.0 and projected[2] == 0.0

    def test_unit_sum_required(self):
        with pytest.raises(InvariantError):
            project_nonneg_simplex([0.5, 0.6])

    def test_minimizer_property(self):
        # The projection is the closest simplex point: no random simplex
        # point may be closer.
        rng = np.random.default_rng(301)
        for _ in range(50):
            x = rng.standard_normal(5)
            x += (1.0 - x.sum()) / 5
            projected, _ = project_nonneg_simplex(x)
            best = np.linalg.norm(x - projected)
            for _ in range(40):
                candidate = rng.dirichlet(np.ones(5))
                assert best <= np.linalg.norm(x - candidate) + 1e-12


class TestConstrainedEstimate:
    def test_density_input_returned_unchanged(self):
        rho = random_density(3, np.random.default_rng(42))
        out, steps = constrained_estimate(rho)
        assert steps == 0
        assert np.array_equal(out, rho)

    def test_diagonal_example(self):
        out, steps = constrained_estimate(np.diag([0.5, -0.5, 1.0]))
        assert np.abs(out - np.diag([0.25, 0.0, 0.75])).max() < 1e-15
        assert steps == 1

    @pytest.mark.parametrize("dim", [2, 3, 4, 5])
    def test_matches_eigenbasis_sort_oracle(self, dim):
        rng = np.random.default_rng(400 + dim)
        for _ in range(40):
            h = random_trace_one_hermitian(dim, rng)
            out, _ = constrained_estimate(h)
            w, u = hermitian_eig(h)
            oracle = (u * project_simplex_sort(w)) @ u.conj().T
            assert np.abs(out - oracle).max() < 1e-10

    @pytest.mark.parametrize("dim", [2, 3, 4])
    def test_output_is_density_and_optimal(self, dim):
        rng = np.random.default_rng(410 + dim)
        for _ in range(20):
            h = random_trace_one_hermitian(dim, rng)
            out, steps = constrained_estimate(h)
            assert is_psd(out, tol=1e-12)
            assert np.trace(out).real == pytest.approx(1.0, abs=1e-12)
            assert 0 <= steps <= dim - 1
            best = hs_distance(h, out)
            for _ in range(30):
                other = random_density(dim, rng)
                assert best <= hs_distance(h, other) + 1e-10

    def test_qubit_matches_radial_bloch_projection(self):
        rng = np.random.default_rng(420)
        for _ in range(50):
            theta = rng.standard_normal(3)
            theta *= rng.uniform(1.01, 2.5) / np.linalg.norm(theta)
            out, steps = constrained_estimate(bloch_to_matrix(theta))
            expect = bloch_to_matrix(qubit_constrain_bloch(theta))
            assert np.abs(out - expect).max() < 1e-12
            assert steps == 1

    def test_trace_validated(self):
        with pytest.raises(InvariantError):
            constrained_estimate(np.diag([1.0, 1.0]))

    def test_hermiticity_validated(self):
        with pytest.raises(InvariantError):
            constrained_estimate(np.array([[0.5, 0.4], [0.1, 0.5]]))


class TestQubitConstrainBloch:
    def test_inside_ball_unchanged(self):
        t = np.array([0.1, -0.2, 0.3])
        assert np.array_equal(qubit_constrain_bloch(t), t)

    def test_boundary_unchanged(self):
        t = np.array([0.0, 1.0, 0.0])
        assert np.array_equal(qubit_constrain_bloch(t), t)

    def test_outside_rescaled_to_unit(self):
        out = qubit_constrain_bloch([3.0, 0.0, 4.0])
        assert np.abs(out - [0.6, 0.0, 0.8]).max() < 1e-15

    def test_shape_validated(self):
        with pytest.raises(InvariantError):
            qubit_constrain_bloch([1.0, 2.0])


class TestThreeDirectionEstimate:
    def test_identity_directions(self):
        nu = np.array([0.8, 0.5, 0.3])
        est = three_direction_estimate(nu, np.eye(3))
        assert np.abs(est - (2 * nu - 1)).max() < 1e-15

    def test_forward_map_round_trip(self):
        rng = np.random.default_rng(500)
        for _ in range(50):
            t = random_unit_rows(rng)
            theta = random_ball_point(rng)
            nu = 0.5 * (1.0 + t @ theta)
            assert np.abs(three_direction_estimate(nu, t) - theta).max() < 1e-10

    def test_input_validation(self):
        with pytest.raises(InvariantError):
            three_direction_estimate([0.5, 0.5], np.eye(3))
        with pytest.raises(InvariantError):
            three_direction_estimate([1.5, 0.5, 0.5], np.eye(3))
        with pytest.raises(InvariantError):
            three_direction_estimate([0.5, 0.5, 0.5], 2 * np.eye(3))
        singular = np.array([[1.0, 0, 0], [1.0, 0, 0], [0, 0, 1.0]])
        with pytest.raises(InvariantError):
            three_direction_estimate([0.5, 0.5, 0.5], singular)


class TestPovmEstimates:
    def test_standard_estimate_formula(self):
        counts = np.array([30, 10, 20, 10, 20, 10])
        nu = counts / 100
        expect = 3 * (nu[:3] - nu[3:])
        assert np.abs(standard_estimate(counts) - expect).max() < 1e-15

    def test_standard_unbiased_at_expected_counts(self):
        rng = np.random.default_rng(510)
        for _ in range(25):
            theta = random_ball_point(rng)
            probs = outcome_probabilities(standard_povm(), bloch_to_matrix(theta))
            assert np.abs(standard_estimate(1000 * probs) - theta).max() < 1e-12

    def test_minimal_unbiased_at_expected_counts(self):
        rng = np.random.default_rng(511)
        for _ in range(25):
            theta = random_ball_point(rng)
            probs = outcome_probabilities(minimal_povm(), bloch_to_matrix(theta))
            assert np.abs(minimal_estimate(1000 * probs) - theta).max() < 1e-12

    def test_minimal_estimate_formula(self):
        counts = np.array([4, 3, 2, 1])
        expect = 3.0 * TETRAHEDRON.T @ (counts / 10)
        assert np.abs(minimal_estimate(counts) - expect).max() < 1e-15

    def test_estimates_give_trace_one_hermitian(self):
        rng = stream_rng(77, 0)
        counts = rng.multinomial(60, np.ones(6) / 6)
        theta = standard_estimate(counts)
        m = bloch_to_matrix(theta)
        assert np.trace(m).real == pytest.approx(1.0, abs=1e-14)
        assert np.abs(matrix_to_bloch(m) - theta).max() < 1e-14

    def test_count_validation(self):
        with pytest.raises(InvariantError):
            standard_estimate([1, 2, 3, 4])
        with pytest.raises(InvariantError):
            minimal_estimate([0, 0, 0, 0])
        with pytest.raises(InvariantError):
            minimal_estimate([-1, 1, 1, 1])
