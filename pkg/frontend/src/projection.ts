/**
 * Scene projection for the demo view and its inverse for pointer-as-gaze.
 *
 * The virtual head sits at a fixed pose looking down +z (y up). Objects are
 * drawn on an azimuth/elevation panel: viewport x spans azimuth -180..180
 * degrees, viewport y spans elevation -90..90. The mapping is exactly
 * invertible, so a pointer position converts back to a unit eye ray.
 */

import type { SceneObjectData, Vec3 } from "./protocol.js";

export const HEAD_POSITION: Vec3 = [0, 1.2, 0];
export const HEAD_FORWARD: Vec3 = [0, 0, 1];

export interface Viewport {
  width: number;
  height: number;
}

export interface ObjectRect {
  id: string;
  x: number;
  y: number;
  width: number;
  height: number;
  fill: string;
}

const DEG = 180 / Math.PI;

export function directionToViewport(dir: Vec3, viewport: Viewport): { x: number; y: number } {
  const azimuth = Math.atan2(dir[0], dir[2]) * DEG; // -180..180
  const norm = Math.hypot(dir[0], dir[1], dir[2]);
  const elevation = Math.asin(dir[1] / norm) * DEG; // -90..90
  return {
    x: ((azimuth + 180) / 360) * viewport.width,
    y: ((90 - elevation) / 180) * viewport.height,
  };
}

export function viewportToDirection(x: number, y: number, viewport: Viewport): Vec3 {
  const azimuth = ((x / viewport.width) * 360 - 180) / DEG;
  const elevation = (90 - (y / viewport.height) * 180) / DEG;
  const cosEl = Math.cos(elevation);
  return [cosEl * Math.sin(azimuth), Math.sin(elevation), cosEl * Math.cos(azimuth)];
}

function objectDirection(obj: SceneObjectData): { dir: Vec3; distance: number } {
  const d: Vec3 = [
    obj.position[0] - HEAD_POSITION[0],
    obj.position[1] - HEAD_POSITION[1],
    obj.position[2] - HEAD_POSITION[2],
  ];
  const distance = Math.hypot(d[0], d[1], d[2]);
  return { dir: [d[0] / distance, d[1] / distance, d[2] / distance], distance };
}

export function projectObject(obj: SceneObjectData, viewport: Viewport): ObjectRect {
  const { dir, distance } = objectDirection(obj);
  const center = directionToViewport(dir, viewport);
  const [w, h] = [...obj.bbox.extents].sort((a, b) => b - a);
  const angularW = 2 * Math.atan(w / 2 / distance) * DEG;
  const angularH = 2 * Math.atan(h / 2 / distance) * DEG;
  const pxW = Math.max((angularW / 360) * viewport.width, 6);
  const pxH = Math.max((angularH / 180) * viewport.height, 6);
  const rgb = obj.color.rgb ?? [128, 128, 128];
  return {
    id: obj.id,
    x: center.x - pxW / 2,
    y: center.y - pxH / 2,
    width: pxW,
    height: pxH,
    fill: `rgb(${rgb[0]}, ${rgb[1]}, ${rgb[2]})`,
  };
}

/** Gaze message payload for a pointer position; ray from the fixed head pose. */
export function pointerToGaze(x: number, y: number, viewport: Viewport, t: number) {
  const dir = viewportToDirection(x, y, viewport);
  return {
    type: "gaze" as const,
    t,
    origin: HEAD_POSITION,
    dir,
    head_forward: HEAD_FORWARD,
    head_pos: HEAD_POSITION,
  };
}
