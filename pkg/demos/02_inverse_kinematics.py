"""Newton-Raphson inverse kinematics demonstration.

Solves for the joint angles reaching a target pose, shows the iteration
count and residual, then demonstrates graceful failure on a target outside
the arm's orientation family.
"""

import numpy as np

from nlarm import build_px100, fk_space, ik_newton_raphson, reachable_target
from nlarm.se3 import Transform

model = build_px100()

target = reachable_target([0.16, 0.06, 0.08], pitch=0.9)
result = ik_newton_raphson(model, target, q0=np.zeros(4))
print("reachable target:", np.round(target.position, 4).tolist())
print("  converged:", result.converged, "in", result.iterations, "iterations")
print("  q =", np.round(result.q, 4).tolist())
print("  achieved position:", np.round(fk_space(model, result.q).position, 5).tolist())

# a rolled orientation cannot be realized by a yaw-pitch-only wrist
roll = 0.5
rx = np.array([[1, 0, 0],
               [0, np.cos(roll), -np.sin(roll)],
               [0, np.sin(roll), np.cos(roll)]])
bad = Transform(rx @ model.home.rotation, model.home.position)
result = ik_newton_raphson(model, bad, q0=np.zeros(4))
print("\nrolled target (infeasible for 4 DOF):")
print("  converged:", result.converged,
      f"| residual omega {result.error_omega:.3f} rad after {result.iterations} iterations")
