"""Natural-language controlled robot-arm simulator.

Layers, bottom to top: SE(3) math (`se3`), the 4-DOF arm model (`arm`),
Newton-Raphson inverse kinematics (`ik`), command interpretation
(`intent`), the simulated workspace (`scene`), motion planning and
execution (`executor`), latency statistics (`stats`), and the HTTP/CLI
shell (`service`, `cli`).
"""

from .arm import ArmGeometry, ArmModel, build_px100, body_jacobian, fk_space, load_model, space_jacobian
from .executor import ArmState, MotionPlan, PlanningError, SimWorld, plan_move, plan_pick
from .ik import IKParams, IKResult, ik_newton_raphson, pseudoinverse, reachable_target
from .intent import IntentCommand, LlmBackendConfig, evaluate_table1, interpret_llm, interpret_rule_based
from .scene import CameraExtrinsics, Detection, SceneObject, camera_to_base, detect, load_scene
from .se3 import Transform, adjoint, se3_exp, se3_log, skew
from .stats import LatencyTable, PairedTTest, paired_t_test, student_t_sf, summarize

__version__ = "0.1.0"
