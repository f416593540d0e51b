// Wire types for the arm service HTTP API.

export interface SceneObjectState {
  id: string;
  color: string;
  position_base: number[];
}

export interface StateTick {
  t: number;
  q: number[];
  ee_position: number[];
  ee_pitch: number;
  gripper: string;
  held_object: string | null;
  scene: SceneObjectState[];
}

export interface ArmLengths {
  L1: number;
  L2: number;
  Lm: number;
  L3: number;
  L4: number;
}

export interface SceneDocument {
  objects: {
    id: string;
    color: string;
    size_m: number;
    position_cam: number[];
  }[];
  extrinsics: {
    rotation: number[][];
    translation: number[];
  };
  model: {
    lengths: ArmLengths;
    joint_limits: number[][];
  };
}

export interface PlanSummary {
  description: string;
  steps: string[];
}

export interface CommandResponse {
  accepted: boolean;
  intent: Record<string, unknown> | null;
  plan_summary: PlanSummary | null;
  queue_position: number | null;
  error: string | null;
}
