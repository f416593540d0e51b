"""Command execution on the simulated arm: directional moves, pick
sequences, named poses, gripper attachment, and joint-space interpolation.

Planning is all-or-nothing: every waypoint must come from a converged IK
solve inside joint limits before any step runs, so a rejected plan leaves
the world untouched.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterator

import numpy as np

from .arm import ArmModel, fk_space
from .ik import IKParams, TargetError, decompose_pose, ik_newton_raphson, reachable_target
from .intent import IntentCommand
from .scene import Detection

# Base-frame direction convention: forward is +x (away from the base), left
# is +y, up is +z.
DIRECTION_VECTORS = {
    "forward": np.array([1.0, 0.0, 0.0]),
    "backward": np.array([-1.0, 0.0, 0.0]),
    "left": np.array([0.0, 1.0, 0.0]),
    "right": np.array([0.0, -1.0, 0.0]),
    "up": np.array([0.0, 0.0, 1.0]),
    "down": np.array([0.0, 0.0, -1.0]),
}

DEFAULT_MAGNITUDE_M = 0.05
GRASP_PITCH = np.pi / 2          # top-down grasp
APPROACH_OFFSET_M = 0.05         # above the grasp point
GRASP_DEPTH_M = 0.01             # below the cube's top face
LIFT_OFFSET_M = 0.08
ATTACH_RADIUS_M = 0.02
DEFAULT_JOINT_SPEED = 1.0        # rad/s, per joint
HOME_Q = np.zeros(4)
SLEEP_Q = np.array([0.0, -1.80, 1.55, 0.8])


class PlanningError(RuntimeError):
    """A requested motion cannot be realized; the arm state is unchanged."""


@dataclass(frozen=True)
class ArmState:
    q: np.ndarray
    gripper: str = "open"           # open | closed
    held_object: str | None = None
    t: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "q", np.asarray(self.q, dtype=float).reshape(4))
        if self.gripper not in ("open", "closed"):
            raise ValueError(f"bad gripper state {self.gripper!r}")
        if self.held_object is not None and self.gripper != "closed":
            raise ValueError("held_object requires a closed gripper")


@dataclass(frozen=True)
class PlanStep:
    kind: str                       # move_to | gripper | dwell
    label: str
    q_target: np.ndarray | None = None
    gripper: str | None = None
    seconds: float = 0.0


@dataclass(frozen=True)
class MotionPlan:
    steps: tuple[PlanStep, ...]
    description: str = ""

    def __len__(self):
        return len(self.steps)


def _solve_waypoint(model: ArmModel, target, q_seed, params: IKParams,
                    label: str) -> np.ndarray:
    result = ik_newton_raphson(model, target, q_seed, params)
    if not result.converged:
        raise PlanningError(
            f"{label}: IK did not converge on target position "
            f"{np.round(target.position, 4).tolist()} "
            f"(residual omega {result.error_omega:.2e} rad, v {result.error_v:.2e} m)")
    if not model.within_limits(result.q, margin=1e-9):
        violating = [i + 1 for i in range(4)
                     if not (model.joint_limits[i, 0] <= result.q[i] <= model.joint_limits[i, 1])]
        raise PlanningError(f"{label}: joint limits violated at joints {violating}")
    return model.clamp(result.q)


def plan_move(state: ArmState, direction: str, magnitude_m: float,
              model: ArmModel, params: IKParams = IKParams()) -> MotionPlan:
    """Single-waypoint plan translating the end effector along a base-frame
    axis while preserving the current pitch."""
    if direction not in DIRECTION_VECTORS:
        raise PlanningError(f"unknown direction {direction!r}")
    if not magnitude_m > 0:
        raise PlanningError("magnitude must be positive")
    current = fk_space(model, state.q)
    _, pitch = decompose_pose(current)
    target_pos = current.position + magnitude_m * DIRECTION_VECTORS[direction]
    try:
        target = reachable_target(target_pos, pitch)
    except TargetError as exc:
        raise PlanningError(str(exc)) from exc
    q_target = _solve_waypoint(model, target, state.q, params, f"move {direction}")
    return MotionPlan((PlanStep("move_to", f"move {direction} {magnitude_m:g} m",
                                q_target=q_target),),
                      description=f"move {direction}")


def plan_named_pose(state: ArmState, pose: str, model: ArmModel) -> MotionPlan:
    q = {"home": HOME_Q, "sleep": SLEEP_Q}.get(pose)
    if q is None:
        raise PlanningError(f"unknown pose {pose!r}")
    if not model.within_limits(q):
        raise PlanningError(f"{pose} pose violates joint limits")
    return MotionPlan((PlanStep("move_to", pose, q_target=np.array(q)),),
                      description=pose)


def grasp_point(detection: Detection) -> np.ndarray:
    """Top-center of the cube, dipped slightly below the top face."""
    top = detection.position_base + np.array([0.0, 0.0, detection.size_m / 2.0])
    return top - np.array([0.0, 0.0, GRASP_DEPTH_M])


def plan_pick(state: ArmState, detection: Detection, model: ArmModel,
              params: IKParams = IKParams()) -> MotionPlan:
    """Open, approach from above, descend, close, lift. Any non-convergent
    leg rejects the whole plan."""
    if np.hypot(*detection.position_base[:2]) < 1e-6:
        raise PlanningError(f"object {detection.object_id!r} sits on the base axis")
    grasp = grasp_point(detection)
    approach = grasp + np.array([0.0, 0.0, APPROACH_OFFSET_M])
    lift = grasp + np.array([0.0, 0.0, LIFT_OFFSET_M])
    steps = [PlanStep("gripper", "open gripper", gripper="open")]
    q_seed = state.q
    for label, pos in [("approach", approach), ("grasp", grasp)]:
        try:
            target = reachable_target(pos, GRASP_PITCH)
        except TargetError as exc:
            raise PlanningError(str(exc)) from exc
        q_seed = _solve_waypoint(model, target, q_seed, params,
                                 f"pick {detection.object_id} {label}")
        steps.append(PlanStep("move_to", f"{label} {detection.object_id}",
                              q_target=q_seed))
    steps.append(PlanStep("gripper", f"grasp {detection.object_id}", gripper="closed"))
    q_lift = _solve_waypoint(model, reachable_target(lift, GRASP_PITCH), q_seed,
                             params, f"pick {detection.object_id} lift")
    steps.append(PlanStep("move_to", f"lift {detection.object_id}", q_target=q_lift))
    return MotionPlan(tuple(steps), description=f"pick {detection.object_id}")


class SimWorld:
    """Mutable simulation: arm state plus base-frame object positions.

    Single-writer by design; `execute` is the only mutator and runs one
    plan at a time. `snapshot` values are immutable.
    """

    def __init__(self, model: ArmModel, detections: list[Detection],
                 params: IKParams = IKParams(),
                 joint_speed: float = DEFAULT_JOINT_SPEED):
        self.model = model
        self.params = params
        self.joint_speed = joint_speed
        self.state = ArmState(q=HOME_Q.copy())
        self.objects = {d.object_id: Detection(d.object_id, d.color,
                                               d.position_base.copy(), d.size_m)
                        for d in detections}
        self._held_offset: np.ndarray | None = None
        self._stop_requested = False

    # -- planning ---------------------------------------------------------

    def plan_for_intent(self, command: IntentCommand) -> MotionPlan:
        if command.action == "move":
            magnitude = command.magnitude_m or DEFAULT_MAGNITUDE_M
            return plan_move(self.state, command.direction, magnitude,
                             self.model, self.params)
        if command.action == "pick_up":
            return self.plan_pick_color(command.color)
        if command.action in ("home", "sleep"):
            return plan_named_pose(self.state, command.action, self.model)
        if command.action == "place":
            return MotionPlan((PlanStep("gripper", "release", gripper="open"),),
                              description="place")
        if command.action == "stop":
            return MotionPlan((), description="stop")
        raise PlanningError(f"cannot plan for action {command.action!r}"
                            + (": please rephrase" if command.action == "clarify" else ""))

    def plan_pick_color(self, color: str) -> MotionPlan:
        matches = [d for d in self.objects.values() if d.color == color]
        if not matches:
            raise PlanningError(f"no {color} object in the scene")
        ee = fk_space(self.model, self.state.q).position
        # nearest-first when several objects share the color
        matches.sort(key=lambda d: float(np.linalg.norm(d.position_base - ee)))
        return plan_pick(self.state, matches[0], self.model, self.params)

    # -- execution --------------------------------------------------------

    def request_stop(self):
        self._stop_requested = True

    def ee_position(self, q=None) -> np.ndarray:
        return fk_space(self.model, self.state.q if q is None else q).position

    def _advance_object(self, state: ArmState) -> ArmState:
        if state.held_object is not None and self._held_offset is not None:
            held = self.objects[state.held_object]
            pos = self.ee_position(state.q) + self._held_offset
            self.objects[state.held_object] = replace(held, position_base=pos)
        return state

    def _close_gripper(self, state: ArmState) -> ArmState:
        ee = self.ee_position(state.q)
        for obj in sorted(self.objects.values(), key=lambda d: d.object_id):
            gp = grasp_point(obj)
            if np.linalg.norm(gp - ee) <= ATTACH_RADIUS_M:
                self._held_offset = obj.position_base - ee
                return replace(state, gripper="closed", held_object=obj.object_id)
        return replace(state, gripper="closed")

    def execute(self, plan: MotionPlan, rate_hz: float = 20.0) -> Iterator[ArmState]:
        """Run the plan tick by tick, yielding a state per tick. Joint-space
        linear interpolation at a fixed per-joint speed; a stop request
        preempts at the next tick."""
        dt = 1.0 / rate_hz
        self._stop_requested = False
        emitted = False
        for step in plan.steps:
            if self._stop_requested:
                break
            if step.kind == "gripper":
                if step.gripper == "closed":
                    state = self._close_gripper(self.state)
                else:
                    state = replace(self.state, gripper="open", held_object=None)
                    self._held_offset = None
                self.state = replace(state, t=state.t + dt)
                emitted = True
                yield self.state
            elif step.kind == "dwell":
                ticks = max(1, int(round(step.seconds * rate_hz)))
                for _ in range(ticks):
                    if self._stop_requested:
                        break
                    self.state = replace(self.state, t=self.state.t + dt)
                    emitted = True
                    yield self.state
            elif step.kind == "move_to":
                start = self.state.q
                delta = np.asarray(step.q_target) - start
                duration = float(np.max(np.abs(delta))) / self.joint_speed
                ticks = max(1, int(np.ceil(duration * rate_hz)))
                for k in range(1, ticks + 1):
                    if self._stop_requested:
                        break
                    q = start + delta * (k / ticks)
                    self.state = self._advance_object(
                        replace(self.state, q=q, t=self.state.t + dt))
                    emitted = True
                    yield self.state
            else:
                raise PlanningError(f"unknown step kind {step.kind!r}")
        if not emitted:
            self.state = replace(self.state, t=self.state.t + dt)
            yield self.state

    def run(self, plan: MotionPlan, rate_hz: float = 20.0) -> ArmState:
        """Execute to completion, returning the final state."""
        final = self.state
        for final in self.execute(plan, rate_hz):
            pass
        return final

    def snapshot(self) -> dict:
        """State-stream tick: {t, q, ee_position, ee_pitch, gripper,
        held_object, scene}."""
        pose = fk_space(self.model, self.state.q)
        _, pitch = decompose_pose(pose)
        return {
            "t": self.state.t,
            "q": self.state.q.tolist(),
            "ee_position": pose.position.tolist(),
            "ee_pitch": pitch,
            "gripper": self.state.gripper,
            "held_object": self.state.held_object,
            "scene": [{"id": d.object_id, "color": d.color,
                       "position_base": d.position_base.tolist()}
                      for d in sorted(self.objects.values(), key=lambda d: d.object_id)],
        }
