import { describe, expect, it } from "vitest";

import {
  DISTRIBUTIONS,
  DescriptorParseError,
  SP_FIELDS,
  checkSeedText,
  defaultSpValues,
  descriptorToPanel,
  fieldAtPosition,
  fieldPositions,
  formatNumber,
  formatParsed,
  makePanel,
  panelToDescriptor,
  parseDescriptor,
  validatePanel,
  type PanelState,
} from "../src/descriptor.js";

// canonical identifiers of the six standard datasets; the service's own
// formatter produces exactly these strings, so they double as a
// cross-language compatibility oracle
const STANDARD_ROWS = [
  "uniform,1000,2,0.02,0.02,1,0,0,0,1,0",
  "diagonal,1000,2,0.01,0.01,0.2,0.1,1,0,0,0,1,0",
  "gaussian,2000,2,0.1,0.1,1,0,0,0,1,0",
  "sierpinski,1000,2,0.01,0.01,1,0,0,0,1,0",
  "bit,5000,2,0.01,0.01,0.3,10,1,0,0,0,1,0",
  "parcel,1000,2,0.2,0.2,1,0,0,0,1,0",
];

function panel(overrides: Partial<PanelState>): PanelState {
  return { ...makePanel("uniform", "#1f77b4"), ...overrides };
}

describe("formatNumber", () => {
  // goldens frozen from the service formatter's output
  it.each<[number, string]>([
    [0, "0"],
    [-0, "0"],
    [1, "1"],
    [-1, "-1"],
    [10, "10"],
    [0.5, "0.5"],
    [0.02, "0.02"],
    [-0.25, "-0.25"],
    [0.0001, "0.0001"],
    [0.00001, "1e-05"],
    [1e-7, "1e-07"],
    [1e16, "1e+16"],
    [1.5e16, "1.5e+16"],
    [-1e16, "-1e+16"],
    [1e21, "1e+21"],
    [1e100, "1e+100"],
    [1e-100, "1e-100"],
    [9999999999999998, "9999999999999998"],
    [2 ** 53, "9007199254740992"],
    [1e15 + 0.5, "1000000000000000.5"],
    [0.1 + 0.2, "0.30000000000000004"],
    [1 / 3, "0.3333333333333333"],
    [123456.789, "123456.789"],
  ])("formats %d as %s", (value, want) => {
    expect(formatNumber(value)).toBe(want);
  });

  it("round-trips through Number for random values", () => {
    let s = 0x2545f491;
    const rnd = () => {
      s = (s * 1103515245 + 12345) & 0x7fffffff;
      return s / 0x80000000;
    };
    for (let i = 0; i < 5000; i++) {
      const v = (rnd() * 2 - 1) * Math.pow(10, Math.floor(rnd() * 40) - 20);
      expect(Number(formatNumber(v))).toBe(v);
    }
  });
});

describe("seed text", () => {
  it("accepts the full 64-bit range", () => {
    expect(checkSeedText("0")).toBe("0");
    expect(checkSeedText("18446744073709551615")).toBe("18446744073709551615");
    expect(checkSeedText(" 7 ")).toBe("7");
  });

  it("rejects out-of-range and non-integer text", () => {
    expect(checkSeedText("18446744073709551616")).toBeNull();
    expect(checkSeedText("-1")).toBeNull();
    expect(checkSeedText("1.5")).toBeNull();
    expect(checkSeedText("0x10")).toBeNull();
    expect(checkSeedText("")).toBeNull();
  });
});

describe("panel validation", () => {
  it("accepts the default panel of every distribution", () => {
    for (const name of DISTRIBUTIONS) {
      expect(validatePanel(makePanel(name, "#000"))).toEqual({});
    }
  });

  it("flags perc out of range without touching other fields", () => {
    const p = panel({
      distribution: "diagonal",
      sp: ["0.01", "0.01", "1.5", "0.1"],
    });
    const errors = validatePanel(p);
    expect(Object.keys(errors)).toEqual(["perc"]);
    expect(errors["perc"]).toMatch(/\[0, 1\]/);
  });

  it.each<[string, Partial<PanelState>]>([
    ["card", { card: "0" }],
    ["card", { card: "12.5" }],
    ["card", { card: "many" }],
    ["card", { card: "" }],
    ["maxW", { sp: ["1.01", "0"] }],
    ["maxH", { sp: ["0", "-0.1"] }],
    ["a3", { affine: ["1", "0", "x", "0", "1", "0"] }],
    ["seed", { seed: "18446744073709551616" }],
    ["seed", { seed: "nope" }],
  ])("reports %s for a bad uniform panel", (key, overrides) => {
    expect(validatePanel(panel(overrides))).toHaveProperty([key]);
  });

  it("checks integer-only and parcel-specific ranges", () => {
    const bit = panel({ distribution: "bit", sp: ["0", "0", "0.3", "2.5"] });
    expect(Object.keys(validatePanel(bit))).toEqual(["digits"]);
    const parcel = panel({ distribution: "parcel", sp: ["0.6", "0"] });
    expect(Object.keys(validatePanel(parcel))).toEqual(["r"]);
  });
});

describe("panelToDescriptor", () => {
  it("serializes the six standard datasets byte-for-byte", () => {
    const panels: PanelState[] = [
      panel({ card: "1000", sp: ["0.02", "0.02"] }),
      panel({
        distribution: "diagonal",
        card: "1000",
        sp: ["0.01", "0.01", "0.2", "0.1"],
      }),
      panel({ distribution: "gaussian", card: "2000", sp: ["0.1", "0.1"] }),
      panel({ distribution: "sierpinski", card: "1000", sp: ["0.01", "0.01"] }),
      panel({
        distribution: "bit",
        card: "5000",
        sp: ["0.01", "0.01", "0.3", "10"],
      }),
      panel({ distribution: "parcel", card: "1000", sp: ["0.2", "0.2"] }),
    ];
    expect(panels.map(panelToDescriptor)).toEqual(STANDARD_ROWS);
  });

  it("normalizes non-canonical spellings", () => {
    const p = panel({
      card: "0050",
      sp: ["0.50", "1e-1"],
      affine: ["1.0", "0e0", ".5", "0", "1", "0"],
    });
    expect(panelToDescriptor(p)).toBe("uniform,50,2,0.5,0.1,1,0,0.5,0,1,0");
  });

  it("keeps 64-bit pinned seeds verbatim", () => {
    const p = panel({ seed: "18446744073709551615" });
    expect(panelToDescriptor(p)).toBe(
      "uniform,1000,2,0,0,1,0,0,0,1,0,seed=18446744073709551615",
    );
  });

  it("refuses invalid panels", () => {
    expect(() => panelToDescriptor(panel({ card: "0" }))).toThrow(/card/);
  });
});

describe("parseDescriptor", () => {
  it("round-trips the standard rows through panel state", () => {
    for (const row of STANDARD_ROWS) {
      const p = descriptorToPanel(row, "#123456");
      expect(panelToDescriptor(p)).toBe(row);
      expect(p.color).toBe("#123456");
      expect(p.visible).toBe(true);
      expect(p.seed).toBe("");
    }
  });

  it("accepts numeric ids, mixed case and spacing", () => {
    const a = parseDescriptor(" 5 ,10,2,0,0,0.3,10,1,0,0,0,1,0 ");
    const b = parseDescriptor("BIT,10,2,0,0,0.3,10,1,0,0,0,1,0");
    expect(a).toEqual(b);
    expect(a.distribution).toBe("bit");
  });

  it("keeps a trailing pinned seed", () => {
    const d = parseDescriptor("uniform,10,2,0,0,1,0,0,0,1,0,seed=99");
    expect(d.seed).toBe("99");
    expect(formatParsed(d)).toBe("uniform,10,2,0,0,1,0,0,0,1,0,seed=99");
  });

  it.each<[string, number | null]>([
    ["", 1],
    ["voronoi,10,2,0,0,1,0,0,0,1,0", 1],
    ["7,10,2,0,0,1,0,0,0,1,0", 1],
    ["uniform,0,2,0,0,1,0,0,0,1,0", 2],
    ["uniform,x,2,0,0,1,0,0,0,1,0", 2],
    ["uniform,10,3,0,0,1,0,0,0,1,0", 3],
    ["uniform,10,2,nan,0,1,0,0,0,1,0", 4],
    ["diagonal,10,2,0,0,1.5,0.1,1,0,0,0,1,0", 6],
    ["bit,10,2,0,0,0.3,2.5,1,0,0,0,1,0", 7],
    ["uniform,10,2,0,0,1,0,0,0,1,oops", 11],
    ["uniform,10,2,0,0,1,0,0,0,1,0,seed=-1", 12],
    ["uniform,10,2,0,0,1,0,0,0,1", 11],
    ["uniform,10,2,0,0,0,0,1,0,0,0,1,0", 12],
  ])("rejects %j at position %d", (text, position) => {
    let caught: unknown = null;
    try {
      parseDescriptor(text);
    } catch (e) {
      caught = e;
    }
    expect(caught).toBeInstanceOf(DescriptorParseError);
    expect((caught as DescriptorParseError).position).toBe(position);
  });

  it("rejects infinities even though Number() accepts them", () => {
    expect(() => parseDescriptor("uniform,10,2,0,0,Infinity,0,0,0,1,0")).toThrow(
      DescriptorParseError,
    );
    expect(() => parseDescriptor("uniform,10,2,0,0,1e999,0,0,0,1,0")).toThrow(
      DescriptorParseError,
    );
  });
});

describe("field positions", () => {
  it("lays out name, card, dim, sp block, affine block, seed", () => {
    expect(fieldPositions("parcel")).toEqual({
      name: 1,
      card: 2,
      dim: 3,
      r: 4,
      dither: 5,
      a1: 6,
      a2: 7,
      a3: 8,
      a4: 9,
      a5: 10,
      a6: 11,
      seed: 12,
    });
  });

  it("inverts through fieldAtPosition for every distribution", () => {
    for (const name of DISTRIBUTIONS) {
      for (const [key, pos] of Object.entries(fieldPositions(name))) {
        expect(fieldAtPosition(name, pos)).toBe(key);
      }
      expect(fieldAtPosition(name, 99)).toBeNull();
    }
  });

  it("maps the service's perc position back to the form field", () => {
    expect(fieldAtPosition("diagonal", 6)).toBe("perc");
    expect(fieldAtPosition("bit", 7)).toBe("digits");
  });
});

describe("randomized round trips", () => {
  // deterministic LCG so failures reproduce
  let s = 20260814;
  const rnd = () => {
    s = (s * 1103515245 + 12345) & 0x7fffffff;
    return s / 0x80000000;
  };

  function randomPanel(): PanelState {
    const name = DISTRIBUTIONS[Math.floor(rnd() * DISTRIBUTIONS.length)]!;
    const sp = SP_FIELDS[name].map((f) => {
      if (f.integer) return String(1 + Math.floor(rnd() * (f.max - f.min)));
      const v = f.min + rnd() * (f.max - f.min);
      return formatNumber(v);
    });
    const affine = Array.from({ length: 6 }, () => formatNumber(rnd() * 4 - 2));
    const seed = rnd() < 0.3 ? String(Math.floor(rnd() * 1e9)) : "";
    return {
      distribution: name,
      card: String(1 + Math.floor(rnd() * 10000)),
      sp,
      affine,
      seed,
      visible: true,
      color: "#000",
    };
  }

  it("format(parse(format(panel))) is a fixed point", () => {
    for (let i = 0; i < 1000; i++) {
      const p = randomPanel();
      expect(validatePanel(p)).toEqual({});
      const text = panelToDescriptor(p);
      const restored = descriptorToPanel(text, p.color);
      expect(panelToDescriptor(restored)).toBe(text);
      expect(restored.distribution).toBe(p.distribution);
      expect(restored.card).toBe(p.card);
      expect(restored.sp).toEqual(p.sp);
      expect(restored.affine).toEqual(p.affine);
      expect(restored.seed).toBe(p.seed);
      expect(formatParsed(parseDescriptor(text))).toBe(text);
    }
  });
});

describe("defaults", () => {
  it("produces a valid panel with matching sp arity per distribution", () => {
    for (const name of DISTRIBUTIONS) {
      expect(defaultSpValues(name)).toHaveLength(SP_FIELDS[name].length);
      expect(() => panelToDescriptor(makePanel(name, "#fff"))).not.toThrow();
    }
  });
});
