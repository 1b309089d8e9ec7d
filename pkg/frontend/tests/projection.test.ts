import { describe, expect, it } from "vitest";

import {
  HEAD_POSITION,
  directionToViewport,
  pointerToGaze,
  projectObject,
  viewportToDirection,
} from "../src/projection.js";
import type { SceneObjectData, Vec3 } from "../src/protocol.js";

const VIEWPORT = { width: 1280, height: 640 };

function norm(v: Vec3): number {
  return Math.hypot(v[0], v[1], v[2]);
}

function obj(id: string, position: Vec3, extents: Vec3 = [0.4, 0.4, 0.4]): SceneObjectData {
  return {
    id,
    name: id,
    position,
    bbox: { center: position, extents },
    material: "plastic",
    color: { rgb: [100, 120, 140] },
    hidden: false,
  };
}

describe("viewport <-> direction", () => {
  it("round-trips directions through the panel", () => {
    const dirs: Vec3[] = [
      [0, 0, 1],
      [0.5, 0.2, 0.8],
      [-0.7, -0.3, 0.2],
      [0.1, 0.9, -0.4],
    ];
    for (const raw of dirs) {
      const n = norm(raw);
      const dir: Vec3 = [raw[0] / n, raw[1] / n, raw[2] / n];
      const point = directionToViewport(dir, VIEWPORT);
      const back = viewportToDirection(point.x, point.y, VIEWPORT);
      for (let axis = 0; axis < 3; axis++) {
        expect(back[axis]).toBeCloseTo(dir[axis], 9);
      }
    }
  });

  it("maps dead-ahead to the viewport center", () => {
    const point = directionToViewport([0, 0, 1], VIEWPORT);
    expect(point.x).toBeCloseTo(VIEWPORT.width / 2);
    expect(point.y).toBeCloseTo(VIEWPORT.height / 2);
  });
});

describe("pointer-as-gaze", () => {
  it("pointer over an object's rectangle center produces a ray at that object", () => {
    const target = obj("box", [1.5, 1.4, 3.0]);
    const rect = projectObject(target, VIEWPORT);
    const gaze = pointerToGaze(rect.x + rect.width / 2, rect.y + rect.height / 2, VIEWPORT, 0.5);

    expect(gaze.origin).toEqual(HEAD_POSITION);
    expect(norm(gaze.dir)).toBeCloseTo(1, 9);
    const want: Vec3 = [
      target.position[0] - HEAD_POSITION[0],
      target.position[1] - HEAD_POSITION[1],
      target.position[2] - HEAD_POSITION[2],
    ];
    const n = norm(want);
    for (let axis = 0; axis < 3; axis++) {
      expect(gaze.dir[axis]).toBeCloseTo(want[axis] / n, 6);
    }
  });

  it("scales rectangles with angular size", () => {
    const near = projectObject(obj("near", [0, 1.2, 2]), VIEWPORT);
    const far = projectObject(obj("far", [0, 1.2, 8]), VIEWPORT);
    expect(near.width).toBeGreaterThan(far.width);
    expect(near.height).toBeGreaterThan(far.height);
  });

  it("uses the object base color as fill", () => {
    const rect = projectObject(obj("c", [0, 1.2, 3]), VIEWPORT);
    expect(rect.fill).toBe("rgb(100, 120, 140)");
  });
});
