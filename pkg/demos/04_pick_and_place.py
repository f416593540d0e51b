"""Language-to-motion pipeline on the demo scene.

Interprets "pick up the green cube", plans the five-step pick, executes it
tick by tick, and prints selected simulation states.
"""

import numpy as np

from nlarm import SimWorld, build_px100, interpret_rule_based
from nlarm.scene import DEMO_SCENE_PATH, detect, load_scene

objects, extrinsics = load_scene(DEMO_SCENE_PATH)
world = SimWorld(build_px100(), detect(objects, extrinsics))

command = interpret_rule_based("pick up the green cube")
print("intent:", command.to_dict())

plan = world.plan_for_intent(command)
print("plan:", [step.label for step in plan.steps])

for i, state in enumerate(world.execute(plan, rate_hz=20.0)):
    if i % 10 == 0 or state.held_object:
        ee = np.round(world.ee_position(state.q), 3)
        print(f"  t={state.t:5.2f}s  ee={ee.tolist()}  gripper={state.gripper}"
              f"  held={state.held_object}")

cube = world.objects["green-1"].position_base
print("final cube position:", np.round(cube, 3).tolist(), "(lifted off the table)")
