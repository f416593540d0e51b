// Incremental parser for the text/event-stream state feed.
//
// The service emits one simulation tick per event as `data: {json}` lines
// separated by blank lines. The parser is fed arbitrary chunks, buffers
// partial lines, and yields only ticks that pass a shape check; a malformed
// tick is dropped so the renderer keeps its last good frame.

import type { StateTick } from "./types.js";

export function isStateTick(value: unknown): value is StateTick {
  if (typeof value !== "object" || value === null) {
    return false;
  }
  const tick = value as Record<string, unknown>;
  return (
    typeof tick.t === "number" &&
    Array.isArray(tick.q) &&
    tick.q.length === 4 &&
    tick.q.every((v) => typeof v === "number" && Number.isFinite(v)) &&
    Array.isArray(tick.ee_position) &&
    tick.ee_position.length === 3 &&
    tick.ee_position.every((v) => typeof v === "number") &&
    typeof tick.gripper === "string" &&
    (tick.held_object === null || typeof tick.held_object === "string") &&
    Array.isArray(tick.scene)
  );
}

/** Parse one SSE data payload; null if malformed in any way. */
export function parseTick(payload: string): StateTick | null {
  let value: unknown;
  try {
    value = JSON.parse(payload);
  } catch {
    return null;
  }
  return isStateTick(value) ? value : null;
}

export class SseTickParser {
  private buffer = "";
  private dataLines: string[] = [];
  dropped = 0;

  /** Feed a raw chunk; returns the complete valid ticks it finished. */
  feed(chunk: string): StateTick[] {
    this.buffer += chunk;
    const ticks: StateTick[] = [];
    for (;;) {
      const nl = this.buffer.indexOf("\n");
      if (nl < 0) {
        break;
      }
      const line = this.buffer.slice(0, nl).replace(/\r$/, "");
      this.buffer = this.buffer.slice(nl + 1);
      if (line === "") {
        // Blank line ends the event.
        if (this.dataLines.length > 0) {
          const tick = parseTick(this.dataLines.join("\n"));
          this.dataLines = [];
          if (tick === null) {
            this.dropped += 1;
          } else {
            ticks.push(tick);
          }
        }
      } else if (line.startsWith("data:")) {
        this.dataLines.push(line.slice(5).replace(/^ /, ""));
      }
      // Comment and other field lines are ignored.
    }
    return ticks;
  }
}
