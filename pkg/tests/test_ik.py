import numpy as np
import pytest

from nlarm.arm import build_px100, fk_space
from nlarm.ik import (IKParams, TargetError, decompose_pose, ik_newton_raphson,
                      pseudoinverse, reachable_target, wrap_angle)
from nlarm.se3 import Transform, se3_log


@pytest.fixture(scope="module")
def model():
    return build_px100()


class TestPseudoinverse:
    def test_orthonormal_columns_give_transpose(self):
        j = np.zeros((6, 4))
        j[:4, :4] = np.eye(4)
        assert np.allclose(pseudoinverse(j), j.T, atol=1e-12)

    def test_left_inverse_for_full_column_rank(self):
        rng = np.random.default_rng(31)
        for _ in range(20):
            j = rng.normal(size=(6, 4))
            assert np.allclose(pseudoinverse(j) @ j, np.eye(4), atol=1e-9)

    def test_penrose_conditions_rank_deficient(self):
        rng = np.random.default_rng(32)
        for _ in range(20):
            # rank-2 by construction
            j = rng.normal(size=(6, 2)) @ rng.normal(size=(2, 4))
            p = pseudoinverse(j)
            assert np.allclose(j @ p @ j, j, atol=1e-8)
            assert np.allclose(p @ j @ p, p, atol=1e-8)
            assert np.allclose((j @ p).T, j @ p, atol=1e-8)
            assert np.allclose((p @ j).T, p @ j, atol=1e-8)

    def test_no_nan_for_finite_input(self):
        rng = np.random.default_rng(33)
        for scale in (1e-12, 1.0, 1e12):
            p = pseudoinverse(rng.normal(size=(6, 4)) * scale)
            assert np.all(np.isfinite(p))
        assert np.all(np.isfinite(pseudoinverse(np.zeros((6, 4)))))


def test_wrap_angle():
    assert np.allclose(wrap_angle([0, np.pi, -np.pi, 3 * np.pi, -2.5 * np.pi]),
                       [0, np.pi, np.pi, np.pi, -0.5 * np.pi])
    q = np.array([0.3, -2.9, 1.1, 2.2])
    assert np.array_equal(wrap_angle(q), q)


class TestNewtonRaphson:
    def test_home_pose_fixed_point(self, model):
        result = ik_newton_raphson(model, model.home, [0.05] * 4)
        assert result.converged
        assert np.all(np.abs(result.q) < 1e-3)

    def test_round_trip_500_random_targets(self, model):
        rng = np.random.default_rng(40)
        params = IKParams()
        converged = 0
        for _ in range(500):
            q_star = np.array([rng.uniform(lo, hi) for lo, hi in model.joint_limits])
            target = fk_space(model, q_star)
            q0 = q_star + rng.uniform(-0.3, 0.3, 4)
            result = ik_newton_raphson(model, target, q0, params)
            if result.converged:
                converged += 1
                err = se3_log(fk_space(model, result.q).inverse() @ target)
                assert np.linalg.norm(err[:3]) <= params.eps_omega
                assert np.linalg.norm(err[3:]) <= params.eps_v
                # converged flag implies the residual invariant
                assert result.error_omega <= params.eps_omega
                assert result.error_v <= params.eps_v
        assert converged >= 475  # >= 95%

    def test_unreachable_orientation_reports_non_convergence(self, model):
        # roll about x is outside the arm's yaw-pitch rotation family
        roll = 0.5
        rx = np.array([[1, 0, 0],
                       [0, np.cos(roll), -np.sin(roll)],
                       [0, np.sin(roll), np.cos(roll)]])
        target = Transform(rx @ model.home.rotation, model.home.position)
        result = ik_newton_raphson(model, target, np.zeros(4))
        assert not result.converged
        assert result.iterations == IKParams().max_iter
        assert np.all(np.isfinite(result.final_error))

    def test_grid_scan_confirms_no_4dof_solution_for_rolled_target(self, model):
        # coarse exhaustive scan: the rotation family Rz(yaw)Ry(pitch) never
        # gets near a rolled target
        roll = 0.5
        rx = np.array([[1, 0, 0],
                       [0, np.cos(roll), -np.sin(roll)],
                       [0, np.sin(roll), np.cos(roll)]])
        target_rot = rx @ model.home.rotation
        best = np.inf
        for q1 in np.linspace(-np.pi, np.pi, 25):
            for pitch in np.linspace(-2 * np.pi, 2 * np.pi, 97):
                c1, s1 = np.cos(q1), np.sin(q1)
                cp, sp = np.cos(pitch), np.sin(pitch)
                r = np.array([[c1, -s1, 0], [s1, c1, 0], [0, 0, 1]]) @ \
                    np.array([[cp, 0, sp], [0, 1, 0], [-sp, 0, cp]])
                cos_ang = np.clip((np.trace(r.T @ target_rot) - 1) / 2, -1, 1)
                best = min(best, np.arccos(cos_ang))
        assert best > 0.2  # no orientation in the family comes close

    def test_determinism(self, model):
        rng = np.random.default_rng(41)
        q_star = rng.uniform(-1, 1, 4)
        target = fk_space(model, q_star)
        q0 = q_star + 0.2
        a = ik_newton_raphson(model, target, q0)
        b = ik_newton_raphson(model, target, q0)
        assert a.iterations == b.iterations
        assert np.array_equal(a.q, b.q)

    def test_angles_wrapped(self, model):
        result = ik_newton_raphson(model, model.home, [2 * np.pi + 0.05, 0.05, 0.05, 0.05])
        assert np.all(result.q > -np.pi) and np.all(result.q <= np.pi)


class TestReachableTarget:
    def test_home_parameters_reproduce_home(self, model):
        t = reachable_target([0.22105, 0, 0.18945], 0.0)
        assert np.allclose(t.as_matrix(), model.home.as_matrix(), atol=1e-15)

    def test_yaw_from_atan2(self):
        t = reachable_target([0, 0.2, 0.15], 0.0)
        expected = np.array([[0, -1, 0], [1, 0, 0], [0, 0, 1]], dtype=float)
        assert np.allclose(t.rotation, expected, atol=1e-12)

    def test_on_axis_rejected(self):
        with pytest.raises(TargetError):
            reachable_target([0, 0, 0.2], 0.0)

    def test_fk_decomposition_round_trip(self, model):
        # restrict to configurations keeping the wrist in front of the base
        # axis, where the (position, pitch) decomposition is well defined
        rng = np.random.default_rng(42)
        count = 0
        while count < 100:
            q = np.concatenate([[rng.uniform(-np.pi, np.pi)],
                                rng.uniform(-0.8, 0.8, 3)])
            pose = fk_space(model, q)
            if np.hypot(*pose.position[:2]) < 0.05:
                continue
            if np.cos(np.arctan2(pose.position[1], pose.position[0]) - q[0]) <= 0.1:
                continue
            count += 1
            pos, pitch = decompose_pose(pose)
            rebuilt = reachable_target(pos, pitch)
            assert np.allclose(rebuilt.rotation, pose.rotation, atol=1e-9)
            assert np.allclose(rebuilt.position, pose.position, atol=1e-12)
