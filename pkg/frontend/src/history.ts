// Append-only command history and connection status.
//
// The console state is held in one immutable object advanced by pure
// functions, so the update rules are testable without a DOM.

import type { CommandResponse, StateTick } from "./types.js";

export interface HistoryEntry {
  text: string;
  response: CommandResponse | null;
  transportError: string | null;
  sentAt: number;
}

export interface ConsoleState {
  history: HistoryEntry[];
  lastTick: StateTick | null;
  lastTickAt: number | null;
}

export const STALE_AFTER_MS = 2000;

export function initialState(): ConsoleState {
  return { history: [], lastTick: null, lastTickAt: null };
}

/** Client-side gate: whitespace-only commands never reach the service. */
export function validateCommandText(text: string): string | null {
  const trimmed = text.trim();
  return trimmed === "" ? null : trimmed;
}

export function recordCommand(
  state: ConsoleState,
  text: string,
  response: CommandResponse | null,
  transportError: string | null,
  now: number,
): ConsoleState {
  const entry: HistoryEntry = { text, response, transportError, sentAt: now };
  return { ...state, history: [...state.history, entry] };
}

export function recordTick(
  state: ConsoleState,
  tick: StateTick,
  now: number,
): ConsoleState {
  return { ...state, lastTick: tick, lastTickAt: now };
}

/** True once no tick has arrived for STALE_AFTER_MS. */
export function isStale(state: ConsoleState, now: number): boolean {
  if (state.lastTickAt === null) {
    return true;
  }
  return now - state.lastTickAt > STALE_AFTER_MS;
}

export function describeEntry(entry: HistoryEntry): string {
  if (entry.transportError !== null) {
    return `error: ${entry.transportError}`;
  }
  const response = entry.response;
  if (response === null) {
    return "pending";
  }
  if (!response.accepted) {
    return `rejected: ${response.error ?? "unknown error"}`;
  }
  const plan = response.plan_summary;
  return plan !== null ? `accepted: ${plan.description}` : "accepted";
}
