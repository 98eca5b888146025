/** Panel color assignment: a fixed distinguishable palette, cycled. */

export const PALETTE: readonly string[] = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#17becf",
  "#e377c2",
  "#8c564b",
  "#bcbd22",
  "#7f7f7f",
];

export function colorAt(index: number): string {
  return PALETTE[((index % PALETTE.length) + PALETTE.length) % PALETTE.length]!;
}

/** First palette color not in use, falling back to cycling by count. */
export function nextColor(used: readonly string[]): string {
  for (const c of PALETTE) {
    if (!used.includes(c)) return c;
  }
  return colorAt(used.length);
}
