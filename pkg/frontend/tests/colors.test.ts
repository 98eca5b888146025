import { describe, expect, it } from "vitest";

import { PALETTE, colorAt, nextColor } from "../src/colors.js";

describe("palette", () => {
  it("has no duplicate colors", () => {
    expect(new Set(PALETTE).size).toBe(PALETTE.length);
  });

  it("cycles indices past the end", () => {
    expect(colorAt(0)).toBe(PALETTE[0]);
    expect(colorAt(PALETTE.length)).toBe(PALETTE[0]);
    expect(colorAt(PALETTE.length + 3)).toBe(PALETTE[3]);
  });

  it("hands out unused colors first", () => {
    expect(nextColor([])).toBe(PALETTE[0]);
    expect(nextColor([PALETTE[0]!])).toBe(PALETTE[1]);
    expect(nextColor([PALETTE[0]!, PALETTE[2]!])).toBe(PALETTE[1]);
  });

  it("keeps cycling once every color is taken", () => {
    const used = [...PALETTE];
    expect(nextColor(used)).toBe(colorAt(PALETTE.length));
    const three = [PALETTE[0]!, PALETTE[1]!, PALETTE[2]!];
    const assigned = [nextColor(three)];
    expect(new Set([...three, ...assigned]).size).toBe(4);
  });
});
