import { describe, expect, it } from "vitest";

import {
  STALE_AFTER_MS,
  describeEntry,
  initialState,
  isStale,
  recordCommand,
  recordTick,
  validateCommandText,
} from "../src/history";
import type { CommandResponse, StateTick } from "../src/types";

const ACCEPTED: CommandResponse = {
  accepted: true,
  intent: { action: "move", direction: "left" },
  plan_summary: { description: "move left 0.05 m", steps: ["move left"] },
  queue_position: 0,
  error: null,
};

const REJECTED: CommandResponse = {
  accepted: false,
  intent: null,
  plan_summary: null,
  queue_position: null,
  error: "target out of reach",
};

const TICK: StateTick = {
  t: 0.5,
  q: [0, 0, 0, 0],
  ee_position: [0.22105, 0, 0.18945],
  ee_pitch: 0,
  gripper: "open",
  held_object: null,
  scene: [],
};

describe("validateCommandText", () => {
  it("trims surrounding whitespace", () => {
    expect(validateCommandText("  move left  ")).toBe("move left");
  });

  it("rejects empty and whitespace-only text", () => {
    expect(validateCommandText("")).toBeNull();
    expect(validateCommandText("   \t ")).toBeNull();
  });
});

describe("recordCommand", () => {
  it("appends entries in order without mutating earlier state", () => {
    const s0 = initialState();
    const s1 = recordCommand(s0, "move left", ACCEPTED, null, 100);
    const s2 = recordCommand(s1, "move up", REJECTED, null, 200);
    expect(s0.history).toHaveLength(0);
    expect(s1.history).toHaveLength(1);
    expect(s2.history.map((e) => e.text)).toEqual(["move left", "move up"]);
    expect(s2.history[0]).toBe(s1.history[0]);
  });

  it("keeps transport failures as history entries", () => {
    const s = recordCommand(
      initialState(),
      "move left",
      null,
      "fetch failed",
      100,
    );
    expect(describeEntry(s.history[0])).toBe("error: fetch failed");
  });
});

describe("describeEntry", () => {
  it("summarizes accepted responses with their plan", () => {
    const s = recordCommand(initialState(), "move left", ACCEPTED, null, 0);
    expect(describeEntry(s.history[0])).toBe("accepted: move left 0.05 m");
  });

  it("summarizes rejections with the service error", () => {
    const s = recordCommand(initialState(), "move far", REJECTED, null, 0);
    expect(describeEntry(s.history[0])).toBe("rejected: target out of reach");
  });
});

describe("staleness", () => {
  it("is stale before any tick arrives", () => {
    expect(isStale(initialState(), 0)).toBe(true);
  });

  it("turns stale once ticks stop for the grace period", () => {
    const s = recordTick(initialState(), TICK, 1000);
    expect(isStale(s, 1000 + STALE_AFTER_MS)).toBe(false);
    expect(isStale(s, 1001 + STALE_AFTER_MS)).toBe(true);
  });

  it("recovers when a new tick lands", () => {
    let s = recordTick(initialState(), TICK, 1000);
    s = recordTick(s, { ...TICK, t: 9.0 }, 8000);
    expect(isStale(s, 8100)).toBe(false);
    expect(s.lastTick!.t).toBe(9.0);
  });
});
