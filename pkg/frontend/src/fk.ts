// Client-side forward kinematics for drawing the four-link arm.
//
// Joint 1 yaws the whole chain about the base z axis; joints 2 to 4 pitch
// about the shoulder, elbow, and wrist. The chain is computed in the vertical
// arm plane first, then rotated by the yaw, so the same intermediate points
// feed both the side and top projections.

import type { ArmLengths } from "./types.js";

export interface Vec3 {
  x: number;
  y: number;
  z: number;
}

/** Base, shoulder, elbow, wrist, and end-effector positions in base frame. */
export function jointPositions(lengths: ArmLengths, q: number[]): Vec3[] {
  if (q.length !== 4) {
    throw new Error(`expected 4 joint angles, got ${q.length}`);
  }
  const [yaw, q2, q3, q4] = q;
  const { L1: l1, L2: l2, Lm: lm, L3: l3, L4: l4 } = lengths;

  // Planar chain: r is the horizontal reach in the arm plane, z is height.
  // A positive pitch rotates the link tip forward and down (right-handed
  // rotation about +y applied to +x and +z components).
  const rot = (r: number, z: number, a: number): [number, number] => [
    r * Math.cos(a) + z * Math.sin(a),
    -r * Math.sin(a) + z * Math.cos(a),
  ];

  const planar: [number, number][] = [[0, 0], [0, l1]];
  let [r, z] = planar[1];
  let [dr, dz] = rot(lm, l2, q2);
  planar.push([r + dr, z + dz]);
  [r, z] = planar[2];
  [dr, dz] = rot(l3, 0, q2 + q3);
  planar.push([r + dr, z + dz]);
  [r, z] = planar[3];
  [dr, dz] = rot(l4, 0, q2 + q3 + q4);
  planar.push([r + dr, z + dz]);

  const c = Math.cos(yaw);
  const s = Math.sin(yaw);
  return planar.map(([pr, pz]) => ({ x: pr * c, y: pr * s, z: pz }));
}

/** End-effector position only. */
export function endEffector(lengths: ArmLengths, q: number[]): Vec3 {
  const points = jointPositions(lengths, q);
  return points[points.length - 1];
}

/**
 * Distance between the locally computed end effector and the position the
 * service streamed for the same joint vector. Both sides implement the same
 * kinematic model, so anything above numerical noise means the client's
 * drawing no longer matches the simulation.
 */
export function eeDrift(
  lengths: ArmLengths,
  q: number[],
  streamed: number[],
): number {
  const ee = endEffector(lengths, q);
  const dx = ee.x - streamed[0];
  const dy = ee.y - streamed[1];
  const dz = ee.z - streamed[2];
  return Math.sqrt(dx * dx + dy * dy + dz * dz);
}

export const DRIFT_WARN_M = 1e-6;
