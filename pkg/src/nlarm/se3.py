"""Rigid-body math on SE(3): skew maps, exponential/logarithm, adjoints.

Conventions: a twist is a 6-vector (omega, v) with omega first; a transform
is stored as an explicit (R, p) pair and the 4x4 homogeneous form is derived
on demand.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# Validation tolerances; tests may override via the *tol* arguments below.
ROTATION_TOL = 1e-9
ANGLE_EPS = 1e-9  # below this, use series expansions for the (log) maps


class InvalidRotationError(ValueError):
    """Raised when a matrix fails the rotation-matrix invariants."""


def skew(p) -> np.ndarray:
    """Return the 3x3 antisymmetric matrix [p] with [p] @ x == cross(p, x)."""
    x, y, z = np.asarray(p, dtype=float)
    return np.array([[0.0, -z, y],
                     [z, 0.0, -x],
                     [-y, x, 0.0]])


def unskew(m) -> np.ndarray:
    """Inverse of :func:`skew` (assumes m is antisymmetric)."""
    m = np.asarray(m, dtype=float)
    return np.array([m[2, 1], m[0, 2], m[1, 0]])


def is_rotation(r, tol: float = ROTATION_TOL) -> bool:
    r = np.asarray(r, dtype=float)
    if r.shape != (3, 3) or not np.all(np.isfinite(r)):
        return False
    if not np.allclose(r.T @ r, np.eye(3), atol=tol, rtol=0.0):
        return False
    return abs(np.linalg.det(r) - 1.0) <= tol


@dataclass(frozen=True)
class Transform:
    """Pose (R, p) in SE(3); ``rotation`` 3x3, ``position`` meters."""

    rotation: np.ndarray
    position: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "rotation", np.asarray(self.rotation, dtype=float))
        object.__setattr__(self, "position", np.asarray(self.position, dtype=float).reshape(3))

    @staticmethod
    def identity() -> "Transform":
        return Transform(np.eye(3), np.zeros(3))

    @staticmethod
    def from_matrix(m) -> "Transform":
        m = np.asarray(m, dtype=float)
        return Transform(m[:3, :3], m[:3, 3])

    def as_matrix(self) -> np.ndarray:
        m = np.eye(4)
        m[:3, :3] = self.rotation
        m[:3, 3] = self.position
        return m

    def compose(self, other: "Transform") -> "Transform":
        return Transform(self.rotation @ other.rotation,
                         self.rotation @ other.position + self.position)

    def __matmul__(self, other: "Transform") -> "Transform":
        return self.compose(other)

    def inverse(self) -> "Transform":
        rt = self.rotation.T
        return Transform(rt, -rt @ self.position)

    def apply(self, p) -> np.ndarray:
        """Map a point from the child frame into this transform's frame."""
        return self.rotation @ np.asarray(p, dtype=float) + self.position

    def is_valid(self, tol: float = ROTATION_TOL) -> bool:
        return is_rotation(self.rotation, tol) and bool(np.all(np.isfinite(self.position)))


def is_unit_screw(s, tol: float = ROTATION_TOL) -> bool:
    """True if s = (omega, v) has unit omega, or omega = 0 and unit v."""
    s = np.asarray(s, dtype=float)
    w_norm = np.linalg.norm(s[:3])
    if abs(w_norm - 1.0) <= tol:
        return True
    return bool(w_norm <= tol and abs(np.linalg.norm(s[3:]) - 1.0) <= tol)


def so3_exp(omega_theta) -> np.ndarray:
    """Rodrigues formula: rotation matrix for the exponential coordinates w*theta."""
    w = np.asarray(omega_theta, dtype=float)
    theta = np.linalg.norm(w)
    if theta < ANGLE_EPS:
        # second-order series; exact to machine precision at these angles
        k = skew(w)
        return np.eye(3) + k + 0.5 * (k @ k)
    axis = w / theta
    k = skew(axis)
    return np.eye(3) + np.sin(theta) * k + (1.0 - np.cos(theta)) * (k @ k)


def so3_log(r, tol: float = ROTATION_TOL) -> np.ndarray:
    """Exponential coordinates w*theta of a rotation matrix, |theta| <= pi."""
    r = np.asarray(r, dtype=float)
    if not is_rotation(r, tol):
        raise InvalidRotationError("matrix is not orthonormal with det +1")
    # sin and cos taken from the matrix itself; dividing by the norm of the
    # antisymmetric part avoids the precision loss of sin(arccos(.)) near pi
    w_sin = unskew(0.5 * (r - r.T))  # = sin(theta) * axis
    s = np.linalg.norm(w_sin)
    c = np.clip((np.trace(r) - 1.0) / 2.0, -1.0, 1.0)
    theta = np.arctan2(s, c)
    if theta < ANGLE_EPS:
        return w_sin  # theta/sin(theta) -> 1 at this scale
    if c > -0.999:
        return (w_sin / s) * theta
    # near pi: recover the axis from w w^T = (R_sym - c I) / (1 - c),
    # which stays well conditioned as sin(theta) -> 0
    r_sym = 0.5 * (r + r.T)
    i = int(np.argmax(np.diag(r_sym)))
    w_i = np.sqrt(max((r_sym[i, i] - c) / (1.0 - c), 0.0))
    axis = r_sym[:, i] / ((1.0 - c) * w_i)
    axis[i] = w_i
    axis = axis / np.linalg.norm(axis)
    if s > 1e-12 and np.dot(axis, w_sin) < 0.0:
        axis = -axis
    return axis * theta


def se3_exp(twist, theta: float = 1.0) -> Transform:
    """Exponential of the screw [S]*theta; accepts a raw twist with theta=1."""
    s = np.asarray(twist, dtype=float) * float(theta)
    w, v = s[:3], s[3:]
    angle = np.linalg.norm(w)
    r = so3_exp(w)
    if angle < ANGLE_EPS:
        p = v + 0.5 * np.cross(w, v)  # first-order G(theta) term
    else:
        axis = w / angle
        k = skew(axis)
        g = (np.eye(3) * angle
             + (1.0 - np.cos(angle)) * k
             + (angle - np.sin(angle)) * (k @ k))
        p = g @ (v / angle)
    return Transform(r, p)


def se3_log(t: Transform, tol: float = ROTATION_TOL) -> np.ndarray:
    """Twist (omega*theta, v*theta) with se3_exp(result) == t."""
    w = so3_log(t.rotation, tol)
    angle = np.linalg.norm(w)
    if angle < ANGLE_EPS:
        return np.concatenate([w, t.position - 0.5 * np.cross(w, t.position)])
    axis = w / angle
    k = skew(axis)
    # closed-form inverse of the translation part of the exponential
    g_inv = (np.eye(3) / angle
             - 0.5 * k
             + (1.0 / angle - 0.5 / np.tan(angle / 2.0)) * (k @ k))
    v = g_inv @ t.position
    return np.concatenate([w, v * angle])


def adjoint(t: Transform) -> np.ndarray:
    """6x6 adjoint [[R, 0], [[p]R, R]] mapping twists between frames."""
    ad = np.zeros((6, 6))
    ad[:3, :3] = t.rotation
    ad[3:, 3:] = t.rotation
    ad[3:, :3] = skew(t.position) @ t.rotation
    return ad
