// Thin fetch wrappers for the arm service.
//
// All state mutation goes through submitCommand and resetScene; everything
// else is read-only.

import type { CommandResponse, SceneDocument } from "./types.js";

export async function fetchScene(base: string): Promise<SceneDocument> {
  const resp = await fetch(`${base}/api/scene`);
  if (!resp.ok) {
    throw new Error(`GET /api/scene failed: ${resp.status}`);
  }
  return (await resp.json()) as SceneDocument;
}

export async function submitCommand(
  base: string,
  text: string,
): Promise<CommandResponse> {
  const resp = await fetch(`${base}/api/command`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({ text }),
  });
  if (!resp.ok) {
    throw new Error(`POST /api/command failed: ${resp.status}`);
  }
  return (await resp.json()) as CommandResponse;
}

export async function resetScene(base: string): Promise<void> {
  const resp = await fetch(`${base}/api/scene/reset`, { method: "POST" });
  if (!resp.ok) {
    throw new Error(`POST /api/scene/reset failed: ${resp.status}`);
  }
}
