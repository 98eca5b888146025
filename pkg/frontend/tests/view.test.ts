import { describe, expect, it } from "vitest";

import type { PreviewFeature } from "../src/api.js";
import {
  UNIT_SQUARE,
  emptyBounds,
  featureBounds,
  fitTransform,
  includePoint,
  isEmptyBounds,
  projectX,
  projectY,
  unionBounds,
} from "../src/view.js";

function point(x: number, y: number): PreviewFeature {
  return {
    type: "Feature",
    properties: { id: 1 },
    geometry: { type: "Point", coordinates: [x, y] },
  };
}

function box(xmin: number, ymin: number, xmax: number, ymax: number): PreviewFeature {
  return {
    type: "Feature",
    properties: { id: 1 },
    geometry: {
      type: "Polygon",
      coordinates: [
        [
          [xmin, ymin],
          [xmax, ymin],
          [xmax, ymax],
          [xmin, ymax],
          [xmin, ymin],
        ],
      ],
    },
  };
}

describe("bounds", () => {
  it("covers points and polygon rings", () => {
    const b = featureBounds([point(0.2, 0.9), box(-0.5, 0.1, 0.3, 0.4)]);
    expect(b).toEqual({ minX: -0.5, minY: 0.1, maxX: 0.3, maxY: 0.9 });
  });

  it("starts empty and fills point by point", () => {
    const b = emptyBounds();
    expect(isEmptyBounds(b)).toBe(true);
    includePoint(b, 1, 2);
    expect(isEmptyBounds(b)).toBe(false);
    expect(b).toEqual({ minX: 1, minY: 2, maxX: 1, maxY: 2 });
  });

  it("unions, treating empty as identity", () => {
    const a = { minX: 0, minY: 0, maxX: 1, maxY: 1 };
    const c = { minX: -1, minY: 0.5, maxX: 0.5, maxY: 2 };
    expect(unionBounds(a, c)).toEqual({ minX: -1, minY: 0, maxX: 1, maxY: 2 });
    expect(unionBounds(emptyBounds(), a)).toEqual(a);
    expect(unionBounds(a, emptyBounds())).toEqual(a);
  });

  it("bounds of no features is empty", () => {
    expect(isEmptyBounds(featureBounds([]))).toBe(true);
  });
});

describe("fitTransform", () => {
  it("fits the unit square into the padded viewport, y flipped", () => {
    const t = fitTransform(UNIT_SQUARE, 640, 480, 16);
    // limiting axis is height: 480 - 32 = 448 px per unit
    expect(t.scale).toBe(448);
    expect(projectX(t, 0)).toBe(96);
    expect(projectX(t, 1)).toBe(544);
    expect(projectY(t, 0)).toBe(464);
    expect(projectY(t, 1)).toBe(16);
    // y axis points up in data space, down on canvas
    expect(projectY(t, 1)).toBeLessThan(projectY(t, 0));
  });

  it("preserves aspect ratio for wide data", () => {
    const t = fitTransform({ minX: 0, minY: 0, maxX: 4, maxY: 1 }, 400, 400, 0);
    expect(t.scale).toBe(100);
    expect(projectX(t, 0)).toBe(0);
    expect(projectX(t, 4)).toBe(400);
    // the short axis is centered
    expect(projectY(t, 0.5)).toBe(200);
  });

  it("keeps a translated dataset shifted by half the square's width", () => {
    const t = fitTransform(UNIT_SQUARE, 640, 480, 16);
    const dx = projectX(t, 0.7 + 0.5) - projectX(t, 0.7);
    expect(dx).toBeCloseTo(0.5 * t.scale, 12);
    expect(dx).toBeCloseTo(224, 12);
  });

  it("handles a single point without degenerating", () => {
    const t = fitTransform({ minX: 0.5, minY: 0.5, maxX: 0.5, maxY: 0.5 }, 200, 200, 10);
    expect(Number.isFinite(t.scale)).toBe(true);
    expect(t.scale).toBeGreaterThan(0);
    expect(projectX(t, 0.5)).toBe(100);
    expect(projectY(t, 0.5)).toBe(100);
  });

  it("handles a horizontal line by inflating the flat axis", () => {
    const t = fitTransform({ minX: 0, minY: 0.5, maxX: 2, maxY: 0.5 }, 300, 300, 0);
    expect(Number.isFinite(t.scale)).toBe(true);
    expect(projectX(t, 0)).toBeGreaterThanOrEqual(0);
    expect(projectX(t, 2)).toBeLessThanOrEqual(300);
    expect(projectY(t, 0.5)).toBe(150);
  });

  it("falls back to the unit square for empty bounds", () => {
    const t = fitTransform(emptyBounds(), 640, 480, 16);
    expect(t).toEqual(fitTransform(UNIT_SQUARE, 640, 480, 16));
  });
});
