/**
 * Viewport math: data-space bounds and the aspect-preserving transform
 * that maps them onto a canvas.  The view always covers the unit
 * square, growing to fit whatever affine-transformed data lies beyond
 * it, so the reference space stays visible as an anchor.
 */

import type { PreviewFeature } from "./api.js";

export interface Bounds {
  minX: number;
  minY: number;
  maxX: number;
  maxY: number;
}

export const UNIT_SQUARE: Bounds = { minX: 0, minY: 0, maxX: 1, maxY: 1 };

export function emptyBounds(): Bounds {
  return { minX: Infinity, minY: Infinity, maxX: -Infinity, maxY: -Infinity };
}

export function isEmptyBounds(b: Bounds): boolean {
  return b.minX > b.maxX || b.minY > b.maxY;
}

export function includePoint(b: Bounds, x: number, y: number): void {
  if (x < b.minX) b.minX = x;
  if (x > b.maxX) b.maxX = x;
  if (y < b.minY) b.minY = y;
  if (y > b.maxY) b.maxY = y;
}

export function unionBounds(a: Bounds, b: Bounds): Bounds {
  if (isEmptyBounds(a)) return { ...b };
  if (isEmptyBounds(b)) return { ...a };
  return {
    minX: Math.min(a.minX, b.minX),
    minY: Math.min(a.minY, b.minY),
    maxX: Math.max(a.maxX, b.maxX),
    maxY: Math.max(a.maxY, b.maxY),
  };
}

export function featureBounds(features: readonly PreviewFeature[]): Bounds {
  const b = emptyBounds();
  for (const f of features) {
    if (f.geometry.type === "Point") {
      const [x, y] = f.geometry.coordinates;
      includePoint(b, x, y);
    } else {
      for (const ring of f.geometry.coordinates) {
        for (const [x, y] of ring) includePoint(b, x, y);
      }
    }
  }
  return b;
}

/**
 * Uniform-scale mapping from data space to canvas pixels.  Canvas y
 * grows downward, so projection flips the y axis.
 */
export interface ViewTransform {
  scale: number;
  offsetX: number;
  offsetY: number;
}

export function fitTransform(
  bounds: Bounds,
  width: number,
  height: number,
  padding = 16,
): ViewTransform {
  let b = isEmptyBounds(bounds) ? UNIT_SQUARE : bounds;
  let w = b.maxX - b.minX;
  let h = b.maxY - b.minY;
  // degenerate extents still need a finite window
  const inflate = Math.max(w, h, 1e-9) / 2;
  if (w === 0) {
    b = { ...b, minX: b.minX - inflate, maxX: b.maxX + inflate };
    w = 2 * inflate;
  }
  if (h === 0) {
    b = { ...b, minY: b.minY - inflate, maxY: b.maxY + inflate };
    h = 2 * inflate;
  }
  const innerW = Math.max(width - 2 * padding, 1);
  const innerH = Math.max(height - 2 * padding, 1);
  const scale = Math.min(innerW / w, innerH / h);
  const cx = (b.minX + b.maxX) / 2;
  const cy = (b.minY + b.maxY) / 2;
  return {
    scale,
    offsetX: width / 2 - cx * scale,
    offsetY: height / 2 + cy * scale,
  };
}

export function projectX(t: ViewTransform, x: number): number {
  return t.offsetX + x * t.scale;
}

export function projectY(t: ViewTransform, y: number): number {
  return t.offsetY - y * t.scale;
}
