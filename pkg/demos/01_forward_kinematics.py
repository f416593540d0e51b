"""Forward kinematics walk-through.

Builds the 4-DOF arm model, prints its screw axes and home pose, and sweeps
the shoulder joint to show how the end effector moves.
"""

import numpy as np

from nlarm import build_px100, fk_space, space_jacobian

model = build_px100()

print("screw axes (one per column, (omega, v)):")
print(np.round(model.screws, 5))
print("\nhome pose position:", model.home.position)

print("\nshoulder sweep (q2 from -0.8 to 0.8 rad):")
for q2 in np.linspace(-0.8, 0.8, 9):
    pose = fk_space(model, [0.0, q2, 0.0, 0.0])
    x, _, z = np.round(pose.position, 4)
    print(f"  q2 = {q2:+.2f}  ->  ee at x = {x:.4f}, z = {z:.4f}")

q = np.array([0.3, -0.4, 0.5, -0.2])
print("\nspace Jacobian at q =", q.tolist())
print(np.round(space_jacobian(model, q), 4))
