/**
 * Canvas drawing.  Everything here is deliberately dumb: geometry comes
 * straight from service previews, the transform from view.ts, and this
 * module just strokes what it is given.
 */

import type { PreviewFeature } from "./api.js";
import { projectX, projectY, type ViewTransform } from "./view.js";

export interface RenderLayer {
  features: readonly PreviewFeature[];
  color: string;
  label: string;
}

const POINT_RADIUS = 2;

function drawFeature(
  ctx: CanvasRenderingContext2D,
  t: ViewTransform,
  f: PreviewFeature,
): void {
  if (f.geometry.type === "Point") {
    const [x, y] = f.geometry.coordinates;
    ctx.beginPath();
    ctx.arc(projectX(t, x), projectY(t, y), POINT_RADIUS, 0, 2 * Math.PI);
    ctx.fill();
    return;
  }
  for (const ring of f.geometry.coordinates) {
    if (ring.length === 0) continue;
    ctx.beginPath();
    ctx.moveTo(projectX(t, ring[0]![0]), projectY(t, ring[0]![1]));
    for (let i = 1; i < ring.length; i++) {
      ctx.lineTo(projectX(t, ring[i]![0]), projectY(t, ring[i]![1]));
    }
    ctx.stroke();
  }
}

function drawUnitSquare(ctx: CanvasRenderingContext2D, t: ViewTransform): void {
  ctx.save();
  ctx.strokeStyle = "#999";
  ctx.setLineDash([5, 4]);
  ctx.lineWidth = 1;
  ctx.strokeRect(
    projectX(t, 0),
    projectY(t, 1),
    t.scale,
    t.scale,
  );
  ctx.restore();
}

function drawLegend(ctx: CanvasRenderingContext2D, layers: readonly RenderLayer[]): void {
  ctx.save();
  ctx.font = "12px system-ui, sans-serif";
  ctx.textBaseline = "middle";
  layers.forEach((layer, i) => {
    const y = 14 + i * 18;
    ctx.fillStyle = layer.color;
    ctx.fillRect(8, y - 5, 10, 10);
    ctx.fillStyle = "#333";
    ctx.fillText(layer.label, 24, y);
  });
  ctx.restore();
}

export function drawScene(
  ctx: CanvasRenderingContext2D,
  width: number,
  height: number,
  layers: readonly RenderLayer[],
  t: ViewTransform,
): void {
  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = "#fff";
  ctx.fillRect(0, 0, width, height);
  drawUnitSquare(ctx, t);
  for (const layer of layers) {
    ctx.fillStyle = layer.color;
    ctx.strokeStyle = layer.color;
    ctx.lineWidth = 1;
    for (const f of layer.features) drawFeature(ctx, t, f);
  }
  drawLegend(ctx, layers);
}
