"""PincherX-100 kinematics: screw axes, home pose, PoE forward kinematics,
space and body Jacobians.

Link lengths follow the vendor drawing of the 4-DOF arm; all frames are
right-handed with z up and x pointing along the arm at the zero position.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .se3 import Transform, adjoint, se3_exp

# meters
DEFAULT_LENGTHS = {"L1": 0.08945, "L2": 0.1, "Lm": 0.035, "L3": 0.1, "L4": 0.08605}

# radians; vendor-style ranges, configurable through ArmModel construction
DEFAULT_JOINT_LIMITS = (
    (-np.pi, np.pi),
    (-1.88, 1.98),
    (-2.14, 1.60),
    (-1.74, 2.14),
)


class ArmModelError(ValueError):
    """Invalid geometry or joint-limit definition."""


@dataclass(frozen=True)
class ArmGeometry:
    """Link lengths in meters (base column, two arm links with offset, wrist)."""

    l1: float
    l2: float
    lm: float
    l3: float
    l4: float

    def __post_init__(self):
        for name, value in vars(self).items():
            if not (value > 0.0 and np.isfinite(value)):
                raise ArmModelError(f"length {name} must be strictly positive, got {value}")

    @staticmethod
    def default() -> "ArmGeometry":
        d = DEFAULT_LENGTHS
        return ArmGeometry(d["L1"], d["L2"], d["Lm"], d["L3"], d["L4"])


@dataclass(frozen=True)
class ArmModel:
    """Space-frame screw axes (6x4), home pose M, and per-joint limits."""

    screws: np.ndarray
    home: Transform
    joint_limits: np.ndarray
    geometry: ArmGeometry

    def __post_init__(self):
        object.__setattr__(self, "screws", np.asarray(self.screws, dtype=float))
        object.__setattr__(self, "joint_limits", np.asarray(self.joint_limits, dtype=float))
        if self.screws.shape != (6, 4):
            raise ArmModelError("expected four 6-vector screw axes")
        if self.joint_limits.shape != (4, 2):
            raise ArmModelError("expected four (lo, hi) joint-limit pairs")
        if np.any(self.joint_limits[:, 0] >= self.joint_limits[:, 1]):
            raise ArmModelError("joint limits must satisfy lo < hi")

    @property
    def dof(self) -> int:
        return self.screws.shape[1]

    def within_limits(self, q, margin: float = 0.0) -> bool:
        q = np.asarray(q, dtype=float)
        return bool(np.all(q >= self.joint_limits[:, 0] - margin)
                    and np.all(q <= self.joint_limits[:, 1] + margin))

    def clamp(self, q) -> np.ndarray:
        q = np.asarray(q, dtype=float)
        return np.clip(q, self.joint_limits[:, 0], self.joint_limits[:, 1])

    def max_radius(self) -> float:
        """Upper bound on the reachable radius from the base axis."""
        g = self.geometry
        return g.l2 + g.lm + g.l3 + g.l4


def build_px100(geometry: ArmGeometry | None = None,
                joint_limits=DEFAULT_JOINT_LIMITS) -> ArmModel:
    """Build the 4-DOF model: S_i = (w_i, -w_i x p_i) at the zero position."""
    g = geometry or ArmGeometry.default()
    axes = np.array([
        [0.0, 0.0, 1.0],   # base yaw
        [0.0, 1.0, 0.0],   # shoulder
        [0.0, 1.0, 0.0],   # elbow
        [0.0, 1.0, 0.0],   # wrist
    ])
    points = np.array([
        [0.0, 0.0, 0.0],
        [0.0, 0.0, g.l1],
        [g.lm, 0.0, g.l1 + g.l2],
        [g.lm + g.l3, 0.0, g.l1 + g.l2],
    ])
    screws = np.zeros((6, 4))
    for i in range(4):
        screws[:3, i] = axes[i]
        screws[3:, i] = -np.cross(axes[i], points[i])
    home = Transform(np.eye(3), [g.lm + g.l3 + g.l4, 0.0, g.l1 + g.l2])
    return ArmModel(screws, home, np.asarray(joint_limits, dtype=float), g)


def load_model(path) -> ArmModel:
    """Load an ArmModel from JSON: {lengths:{L1,L2,Lm,L3,L4}, joint_limits:[[lo,hi]x4]}."""
    doc = json.loads(Path(path).read_text())
    lengths = doc.get("lengths", DEFAULT_LENGTHS)
    try:
        geometry = ArmGeometry(lengths["L1"], lengths["L2"], lengths["Lm"],
                               lengths["L3"], lengths["L4"])
    except KeyError as exc:
        raise ArmModelError(f"lengths document missing {exc}") from exc
    limits = doc.get("joint_limits", DEFAULT_JOINT_LIMITS)
    return build_px100(geometry, limits)


def fk_space(model: ArmModel, q) -> Transform:
    """Product of exponentials: T(q) = exp([S1]q1) ... exp([S4]q4) M."""
    q = np.asarray(q, dtype=float)
    t = Transform.identity()
    for i in range(model.dof):
        t = t @ se3_exp(model.screws[:, i], q[i])
    return t @ model.home


def space_jacobian(model: ArmModel, q) -> np.ndarray:
    """Column i is Ad(exp([S1]q1)...exp([S_{i-1}]q_{i-1})) S_i."""
    q = np.asarray(q, dtype=float)
    jac = np.zeros((6, model.dof))
    t = Transform.identity()
    for i in range(model.dof):
        jac[:, i] = adjoint(t) @ model.screws[:, i]
        t = t @ se3_exp(model.screws[:, i], q[i])
    return jac


def body_jacobian(model: ArmModel, q) -> np.ndarray:
    """J_b = Ad(T_sb^-1) J_s."""
    return adjoint(fk_space(model, q).inverse()) @ space_jacobian(model, q)
