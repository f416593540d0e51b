// Canvas drawing: side and top projections of the arm and scene.
//
// Both views share one world-to-pixel scale so the arm reads the same size
// in each. The side view projects onto the plane containing the arm (signed
// radial reach versus height); the top view is the plain x-y plane seen from
// above.

import type { ArmLengths } from "./types.js";
import type { StateTick } from "./types.js";
import { jointPositions } from "./fk.js";

const CUBE_SIZE_M = 0.03;
const VIEW_SPAN_M = 0.7;

interface ViewBox {
  x0: number;
  y0: number;
  w: number;
  h: number;
}

function scaleFor(box: ViewBox): number {
  return Math.min(box.w, box.h) / VIEW_SPAN_M;
}

function sidePoint(box: ViewBox, r: number, z: number): [number, number] {
  const s = scaleFor(box);
  return [box.x0 + box.w / 2 + r * s, box.y0 + box.h * 0.85 - z * s];
}

function topPoint(box: ViewBox, x: number, y: number): [number, number] {
  const s = scaleFor(box);
  // Base at the left edge, +x to the right, +y up on screen.
  return [box.x0 + box.w * 0.2 + x * s, box.y0 + box.h / 2 - y * s];
}

function drawPolyline(
  ctx: CanvasRenderingContext2D,
  points: [number, number][],
): void {
  ctx.beginPath();
  ctx.moveTo(points[0][0], points[0][1]);
  for (const [px, py] of points.slice(1)) {
    ctx.lineTo(px, py);
  }
  ctx.stroke();
  for (const [px, py] of points) {
    ctx.beginPath();
    ctx.arc(px, py, 3, 0, 2 * Math.PI);
    ctx.fill();
  }
}

function drawCube(
  ctx: CanvasRenderingContext2D,
  center: [number, number],
  halfPx: number,
  color: string,
): void {
  ctx.fillStyle = color;
  ctx.fillRect(center[0] - halfPx, center[1] - halfPx, 2 * halfPx, 2 * halfPx);
  ctx.strokeStyle = "#333";
  ctx.strokeRect(center[0] - halfPx, center[1] - halfPx, 2 * halfPx, 2 * halfPx);
}

export function drawScene(
  canvas: HTMLCanvasElement,
  lengths: ArmLengths,
  tick: StateTick,
): void {
  const ctx = canvas.getContext("2d");
  if (ctx === null) {
    return;
  }
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const half = canvas.width / 2;
  const side: ViewBox = { x0: 0, y0: 0, w: half, h: canvas.height };
  const top: ViewBox = { x0: half, y0: 0, w: half, h: canvas.height };

  ctx.strokeStyle = "#ccc";
  ctx.beginPath();
  ctx.moveTo(half, 0);
  ctx.lineTo(half, canvas.height);
  ctx.stroke();
  ctx.fillStyle = "#666";
  ctx.font = "12px sans-serif";
  ctx.fillText("side view", side.x0 + 8, 16);
  ctx.fillText("top view", top.x0 + 8, 16);

  const joints = jointPositions(lengths, tick.q);
  const yaw = tick.q[0];
  const cubeHalf = (CUBE_SIZE_M / 2) * scaleFor(side);

  // Side view: signed reach along the arm's own heading, so the chain stays
  // planar on screen whatever the yaw. Scene objects use their radial
  // distance along the same heading.
  const heading = { x: Math.cos(yaw), y: Math.sin(yaw) };
  const ground = sidePoint(side, 0, 0)[1];
  ctx.strokeStyle = "#999";
  ctx.beginPath();
  ctx.moveTo(side.x0, ground);
  ctx.lineTo(side.x0 + side.w, ground);
  ctx.stroke();

  for (const obj of tick.scene) {
    if (obj.id === tick.held_object) {
      continue;
    }
    const [ox, oy, oz] = obj.position_base;
    const r = ox * heading.x + oy * heading.y;
    drawCube(ctx, sidePoint(side, r, oz), cubeHalf, obj.color);
    drawCube(ctx, topPoint(top, ox, oy), cubeHalf, obj.color);
  }

  ctx.strokeStyle = "#1a6";
  ctx.fillStyle = "#1a6";
  ctx.lineWidth = 3;
  drawPolyline(
    ctx,
    joints.map((p) => sidePoint(side, p.x * heading.x + p.y * heading.y, p.z)),
  );
  drawPolyline(
    ctx,
    joints.map((p) => topPoint(top, p.x, p.y)),
  );
  ctx.lineWidth = 1;

  // Held object rides at the gripper in both views.
  if (tick.held_object !== null) {
    const held = tick.scene.find((o) => o.id === tick.held_object);
    const color = held !== undefined ? held.color : "#888";
    const ee = joints[joints.length - 1];
    const r = ee.x * heading.x + ee.y * heading.y;
    drawCube(ctx, sidePoint(side, r, ee.z), cubeHalf, color);
    drawCube(ctx, topPoint(top, ee.x, ee.y), cubeHalf, color);
  }
}
