import { describe, expect, it } from "vitest";

import { SseTickParser, parseTick } from "../src/sse";

const GOOD_TICK = {
  t: 1.5,
  q: [0, 0.1, -0.2, 0.3],
  ee_position: [0.2, 0.0, 0.19],
  ee_pitch: 0.0,
  gripper: "open",
  held_object: null,
  scene: [{ id: "red-1", color: "red", position_base: [0.15, 0.05, 0.015] }],
};

function event(payload: string): string {
  return `data: ${payload}\n\n`;
}

describe("parseTick", () => {
  it("accepts a well-formed tick", () => {
    const tick = parseTick(JSON.stringify(GOOD_TICK));
    expect(tick).not.toBeNull();
    expect(tick!.q).toHaveLength(4);
    expect(tick!.scene[0].id).toBe("red-1");
  });

  it("rejects invalid JSON", () => {
    expect(parseTick("{not json")).toBeNull();
  });

  it("rejects ticks with missing or malformed fields", () => {
    const noQ = { ...GOOD_TICK, q: undefined };
    const shortQ = { ...GOOD_TICK, q: [0, 1] };
    const nanQ = { ...GOOD_TICK, q: [0, 1, 2, Number.NaN] };
    const badEe = { ...GOOD_TICK, ee_position: [0.2, 0.0] };
    for (const bad of [noQ, shortQ, nanQ, badEe, 42, null, "tick"]) {
      expect(parseTick(JSON.stringify(bad))).toBeNull();
    }
  });
});

describe("SseTickParser", () => {
  it("parses consecutive events from one chunk", () => {
    const parser = new SseTickParser();
    const second = { ...GOOD_TICK, t: 2.0 };
    const ticks = parser.feed(
      event(JSON.stringify(GOOD_TICK)) + event(JSON.stringify(second)),
    );
    expect(ticks.map((t) => t.t)).toEqual([1.5, 2.0]);
  });

  it("buffers events split across chunks", () => {
    const parser = new SseTickParser();
    const raw = event(JSON.stringify(GOOD_TICK));
    const cut = Math.floor(raw.length / 2);
    expect(parser.feed(raw.slice(0, cut))).toHaveLength(0);
    const ticks = parser.feed(raw.slice(cut));
    expect(ticks).toHaveLength(1);
    expect(ticks[0].t).toBe(1.5);
  });

  it("drops a malformed tick and keeps parsing later ones", () => {
    const parser = new SseTickParser();
    const ticks = parser.feed(
      event(JSON.stringify(GOOD_TICK)) +
        event("{broken") +
        event(JSON.stringify({ ...GOOD_TICK, t: 3.0 })),
    );
    expect(ticks.map((t) => t.t)).toEqual([1.5, 3.0]);
    expect(parser.dropped).toBe(1);
  });

  it("ignores comment and retry lines", () => {
    const parser = new SseTickParser();
    const ticks = parser.feed(
      ": keepalive\n\nretry: 1000\n" + event(JSON.stringify(GOOD_TICK)),
    );
    expect(ticks).toHaveLength(1);
  });
});
