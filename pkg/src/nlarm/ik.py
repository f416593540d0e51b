"""Newton-Raphson inverse kinematics in the body frame.

The update is q <- q + pinv(J_b) V_b with V_b = log(T_sb(q)^-1 T_sd);
convergence is tested separately on the angular and linear parts of V_b
because they carry different units. Joint limits are not enforced here;
the executor validates afterward.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .arm import ArmModel, body_jacobian, fk_space
from .se3 import Transform, se3_log


class IKDivergenceError(RuntimeError):
    """Raised when an iterate becomes non-finite."""

    def __init__(self, iteration: int):
        super().__init__(f"non-finite iterate at iteration {iteration}")
        self.iteration = iteration


class TargetError(ValueError):
    """Raised for degenerate target parameters (e.g. position on the base axis)."""


@dataclass(frozen=True)
class IKParams:
    eps_omega: float = 1e-3   # rad, threshold on |V_b| angular part
    eps_v: float = 1e-4       # m, threshold on |V_b| linear part
    max_iter: int = 100
    sv_cutoff: float = 1e-6   # relative singular-value cutoff for the pseudoinverse
    step_scale: float = 1.0

    def __post_init__(self):
        if not (self.eps_omega > 0 and self.eps_v > 0 and self.sv_cutoff > 0
                and self.step_scale > 0 and self.max_iter >= 1):
            raise ValueError("IK parameters must be positive with max_iter >= 1")


@dataclass(frozen=True)
class IKResult:
    q: np.ndarray
    converged: bool
    iterations: int
    final_error: np.ndarray  # residual body twist (omega, v)

    @property
    def error_omega(self) -> float:
        return float(np.linalg.norm(self.final_error[:3]))

    @property
    def error_v(self) -> float:
        return float(np.linalg.norm(self.final_error[3:]))


def pseudoinverse(jac, sv_cutoff: float = 1e-6) -> np.ndarray:
    """Moore-Penrose pseudoinverse; singular values below sv_cutoff * sigma_max
    are treated as zero."""
    jac = np.asarray(jac, dtype=float)
    u, s, vt = np.linalg.svd(jac, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return jac.T * 0.0
    inv = np.where(s >= sv_cutoff * s[0], 1.0 / np.where(s > 0, s, 1.0), 0.0)
    return (vt.T * inv) @ u.T


def wrap_angle(q) -> np.ndarray:
    """Wrap each angle to (-pi, pi]; in-range values pass through unchanged."""
    q = np.asarray(q, dtype=float)
    out_of_range = (q <= -np.pi) | (q > np.pi)
    wrapped = np.pi - np.mod(np.pi - q, 2.0 * np.pi)
    return np.where(out_of_range, wrapped, q)


def error_twist(model: ArmModel, t_sd: Transform, q) -> np.ndarray:
    return se3_log(fk_space(model, q).inverse() @ t_sd)


def ik_newton_raphson(model: ArmModel, t_sd: Transform, q0,
                      params: IKParams = IKParams()) -> IKResult:
    """Iterate the pseudoinverse Newton step until both error norms pass."""
    q = wrap_angle(np.asarray(q0, dtype=float))
    v_b = error_twist(model, t_sd, q)
    for i in range(params.max_iter):
        if np.linalg.norm(v_b[:3]) <= params.eps_omega and \
           np.linalg.norm(v_b[3:]) <= params.eps_v:
            return IKResult(q, True, i, v_b)
        j_b = body_jacobian(model, q)
        q = wrap_angle(q + params.step_scale * (pseudoinverse(j_b, params.sv_cutoff) @ v_b))
        if not np.all(np.isfinite(q)):
            raise IKDivergenceError(i + 1)
        v_b = error_twist(model, t_sd, q)
    converged = bool(np.linalg.norm(v_b[:3]) <= params.eps_omega
                     and np.linalg.norm(v_b[3:]) <= params.eps_v)
    return IKResult(q, converged, params.max_iter, v_b)


def reachable_target(position, pitch: float) -> Transform:
    """Pose with yaw = atan2(y, x), the given pitch, and zero roll: the only
    orientation family the 4-DOF geometry can realize at that position."""
    p = np.asarray(position, dtype=float)
    if np.hypot(p[0], p[1]) < 1e-12:
        raise TargetError("target position lies on the base z-axis; yaw undefined")
    yaw = np.arctan2(p[1], p[0])
    cy, sy = np.cos(yaw), np.sin(yaw)
    cp, sp = np.cos(pitch), np.sin(pitch)
    rz = np.array([[cy, -sy, 0.0], [sy, cy, 0.0], [0.0, 0.0, 1.0]])
    ry = np.array([[cp, 0.0, sp], [0.0, 1.0, 0.0], [-sp, 0.0, cp]])
    return Transform(rz @ ry, p)


def decompose_pose(t: Transform) -> tuple[np.ndarray, float]:
    """(position, pitch) such that reachable_target reproduces t's rotation,
    valid for poses in the arm's yaw/pitch family with the wrist forward."""
    yaw = np.arctan2(t.position[1], t.position[0])
    cy, sy = np.cos(yaw), np.sin(yaw)
    rz = np.array([[cy, -sy, 0.0], [sy, cy, 0.0], [0.0, 0.0, 1.0]])
    ry = rz.T @ t.rotation
    pitch = float(np.arctan2(ry[0, 2], ry[0, 0]))
    return t.position.copy(), pitch
