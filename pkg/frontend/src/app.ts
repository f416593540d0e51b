// Console wiring: DOM, state stream, and command form.
//
// The page holds one ConsoleState advanced only by the pure functions in
// history.ts. Ticks arrive over the server-sent event stream; a malformed
// tick is dropped and the last good frame stays on screen. If no tick lands
// for two seconds a disconnected banner covers the canvas.

import { fetchScene, resetScene, submitCommand } from "./api.js";
import { DRIFT_WARN_M, eeDrift } from "./fk.js";
import {
  ConsoleState,
  describeEntry,
  initialState,
  isStale,
  recordCommand,
  recordTick,
  validateCommandText,
} from "./history.js";
import { parseTick } from "./sse.js";
import { drawScene } from "./render.js";
import type { ArmLengths, CommandResponse, StateTick } from "./types.js";

// API origin; defaults to same-origin, overridable as ?api=http://host:port
// when the page is served by a separate static file server.
const BASE =
  new URLSearchParams(window.location.search).get("api")?.replace(/\/$/, "") ??
  "";

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (el === null) {
    throw new Error(`missing element #${id}`);
  }
  return el as T;
}

function renderHistory(state: ConsoleState, list: HTMLElement): void {
  list.replaceChildren(
    ...state.history.map((entry) => {
      const li = document.createElement("li");
      const text = document.createElement("span");
      text.className = "cmd";
      text.textContent = entry.text;
      const outcome = document.createElement("span");
      const ok =
        entry.transportError === null && entry.response?.accepted === true;
      outcome.className = ok ? "ok" : "err";
      outcome.textContent = ` ${describeEntry(entry)}`;
      li.append(text, outcome);
      return li;
    }),
  );
  list.scrollTop = list.scrollHeight;
}

function renderStatus(
  state: ConsoleState,
  lengths: ArmLengths,
  status: HTMLElement,
): void {
  const tick = state.lastTick;
  if (tick === null) {
    status.textContent = "waiting for first state tick";
    return;
  }
  const q = tick.q.map((v) => v.toFixed(3)).join(", ");
  const ee = tick.ee_position.map((v) => v.toFixed(4)).join(", ");
  let line =
    `t=${tick.t.toFixed(2)}s  q=[${q}]  ee=[${ee}]  ` +
    `gripper=${tick.gripper}` +
    (tick.held_object !== null ? `  holding ${tick.held_object}` : "");
  const drift = eeDrift(lengths, tick.q, tick.ee_position);
  if (drift > DRIFT_WARN_M) {
    line += `  [kinematics drift ${drift.toExponential(2)} m]`;
  }
  status.textContent = line;
}

export function startApp(): void {
  const canvas = byId<HTMLCanvasElement>("view");
  const banner = byId<HTMLElement>("banner");
  const status = byId<HTMLElement>("status");
  const historyList = byId<HTMLElement>("history");
  const form = byId<HTMLFormElement>("command-form");
  const input = byId<HTMLInputElement>("command-input");
  const resetButton = byId<HTMLButtonElement>("reset");

  let state = initialState();
  let lengths: ArmLengths | null = null;

  fetchScene(BASE)
    .then((doc) => {
      lengths = doc.model.lengths;
    })
    .catch((err) => {
      status.textContent = `failed to load scene: ${err}`;
    });

  const source = new EventSource(`${BASE}/api/state/stream`);
  source.onmessage = (event) => {
    const tick: StateTick | null = parseTick(event.data);
    if (tick === null) {
      return;
    }
    state = recordTick(state, tick, Date.now());
  };

  setInterval(() => {
    banner.hidden = !isStale(state, Date.now());
    if (state.lastTick !== null && lengths !== null) {
      drawScene(canvas, lengths, state.lastTick);
      renderStatus(state, lengths, status);
    }
  }, 100);

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const text = validateCommandText(input.value);
    if (text === null) {
      input.setCustomValidity("command text is empty");
      input.reportValidity();
      return;
    }
    input.setCustomValidity("");
    input.value = "";
    submitCommand(BASE, text)
      .then((response: CommandResponse) => {
        state = recordCommand(state, text, response, null, Date.now());
        renderHistory(state, historyList);
      })
      .catch((err) => {
        state = recordCommand(state, text, null, String(err), Date.now());
        renderHistory(state, historyList);
      });
  });

  resetButton.addEventListener("click", () => {
    resetScene(BASE).catch((err) => {
      status.textContent = `reset failed: ${err}`;
    });
  });
}

startApp();
