import { describe, expect, it } from "vitest";

import { DRIFT_WARN_M, eeDrift, endEffector, jointPositions } from "../src/fk";
import type { ArmLengths } from "../src/types";

const LENGTHS: ArmLengths = {
  L1: 0.08945,
  L2: 0.1,
  Lm: 0.035,
  L3: 0.1,
  L4: 0.08605,
};

describe("jointPositions", () => {
  it("places the home end effector above the base at full reach", () => {
    const ee = endEffector(LENGTHS, [0, 0, 0, 0]);
    expect(ee.x).toBeCloseTo(0.22105, 10);
    expect(ee.y).toBeCloseTo(0, 10);
    expect(ee.z).toBeCloseTo(0.18945, 10);
  });

  it("returns five points from base to end effector", () => {
    const points = jointPositions(LENGTHS, [0, 0, 0, 0]);
    expect(points).toHaveLength(5);
    expect(points[0]).toEqual({ x: 0, y: 0, z: 0 });
    expect(points[1].z).toBeCloseTo(LENGTHS.L1, 10);
    expect(points[2].x).toBeCloseTo(LENGTHS.Lm, 10);
    expect(points[2].z).toBeCloseTo(LENGTHS.L1 + LENGTHS.L2, 10);
  });

  it("yaws the whole chain about the base z axis", () => {
    const straight = jointPositions(LENGTHS, [0, 0.3, -0.5, 0.2]);
    const yawed = jointPositions(LENGTHS, [Math.PI / 2, 0.3, -0.5, 0.2]);
    for (let i = 0; i < straight.length; i++) {
      expect(yawed[i].x).toBeCloseTo(-straight[i].y, 10);
      expect(yawed[i].y).toBeCloseTo(straight[i].x, 10);
      expect(yawed[i].z).toBeCloseTo(straight[i].z, 10);
    }
  });

  it("pitches the shoulder forward for positive q2", () => {
    const points = jointPositions(LENGTHS, [0, Math.PI / 2, 0, 0]);
    // At 90 degrees the upper link lies flat: the old +z extent becomes +x.
    expect(points[2].x).toBeCloseTo(LENGTHS.L2, 10);
    expect(points[2].z).toBeCloseTo(LENGTHS.L1 - LENGTHS.Lm, 10);
  });

  it("preserves every link length for arbitrary angles", () => {
    const expected = [
      LENGTHS.L1,
      Math.hypot(LENGTHS.Lm, LENGTHS.L2),
      LENGTHS.L3,
      LENGTHS.L4,
    ];
    const points = jointPositions(LENGTHS, [0.7, -0.4, 1.1, -0.9]);
    for (let i = 0; i < 4; i++) {
      const d = Math.hypot(
        points[i + 1].x - points[i].x,
        points[i + 1].y - points[i].y,
        points[i + 1].z - points[i].z,
      );
      expect(d).toBeCloseTo(expected[i], 10);
    }
  });

  it("rejects joint vectors of the wrong arity", () => {
    expect(() => jointPositions(LENGTHS, [0, 0, 0])).toThrow(/4 joint angles/);
  });
});

describe("eeDrift", () => {
  it("is below the warning threshold when the stream agrees", () => {
    const q = [0.3, -0.2, 0.5, -0.1];
    const ee = endEffector(LENGTHS, q);
    const drift = eeDrift(LENGTHS, q, [ee.x, ee.y, ee.z]);
    expect(drift).toBeLessThan(DRIFT_WARN_M);
  });

  it("reports the displacement when the stream disagrees", () => {
    const ee = endEffector(LENGTHS, [0, 0, 0, 0]);
    const drift = eeDrift(LENGTHS, [0, 0, 0, 0], [ee.x + 0.01, ee.y, ee.z]);
    expect(drift).toBeCloseTo(0.01, 10);
    expect(drift).toBeGreaterThan(DRIFT_WARN_M);
  });
});
