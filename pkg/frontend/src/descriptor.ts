/**
 * Descriptor form model: the bridge between panel form state and the
 * one-line descriptor strings the service consumes.
 *
 * Grammar: name,card,dim,sp1..spN,a1..a6[,seed=K] with a distribution
 * specific block:
 *
 *   uniform/gaussian/sierpinski   maxW,maxH
 *   diagonal                      maxW,maxH,perc,buf
 *   bit                           maxW,maxH,p,digits
 *   parcel                        r,dither
 *
 * Serialization is canonical (shortest round-trip numbers, integral
 * values without a decimal point) and must stay byte-compatible with
 * the service's own formatter, so permalink tokens built from either
 * side are interchangeable.
 *
 * Panel fields are kept as raw strings so restoring a permalink puts
 * back exactly what the token stored; numbers only exist transiently
 * during validation and serialization.
 */

export type DistributionName =
  | "uniform"
  | "diagonal"
  | "gaussian"
  | "sierpinski"
  | "bit"
  | "parcel";

/** Names in descriptor id order; index + 1 is the numeric alias. */
export const DISTRIBUTIONS: readonly DistributionName[] = [
  "uniform",
  "diagonal",
  "gaussian",
  "sierpinski",
  "bit",
  "parcel",
];

export interface SpField {
  /** Grammar key, also the field label the service reports errors on. */
  key: string;
  /** Human label for the form. */
  label: string;
  min: number;
  max: number;
  integer: boolean;
}

const extentFields: SpField[] = [
  { key: "maxW", label: "max width", min: 0, max: 1, integer: false },
  { key: "maxH", label: "max height", min: 0, max: 1, integer: false },
];

export const SP_FIELDS: Readonly<Record<DistributionName, readonly SpField[]>> = {
  uniform: extentFields,
  gaussian: extentFields,
  sierpinski: extentFields,
  diagonal: [
    ...extentFields,
    { key: "perc", label: "on-diagonal fraction", min: 0, max: 1, integer: false },
    { key: "buf", label: "diagonal buffer", min: 0, max: 1, integer: false },
  ],
  bit: [
    ...extentFields,
    { key: "p", label: "bit probability", min: 0, max: 1, integer: false },
    { key: "digits", label: "binary digits", min: 1, max: 52, integer: true },
  ],
  parcel: [
    { key: "r", label: "split range", min: 0, max: 0.5, integer: false },
    { key: "dither", label: "dither", min: 0, max: 1, integer: false },
  ],
};

export const MAX_SEED = 18446744073709551615n; // 2^64 - 1

/** Everything the form tracks for one dataset panel. */
export interface PanelState {
  distribution: DistributionName;
  card: string;
  sp: string[];
  affine: string[];
  /** Pinned stream seed digits, or "" to follow the dataset seed. */
  seed: string;
  visible: boolean;
  color: string;
}

export function defaultSpValues(distribution: DistributionName): string[] {
  if (distribution === "parcel") return ["0.2", "0.2"];
  if (distribution === "diagonal") return ["0.01", "0.01", "0.2", "0.1"];
  if (distribution === "bit") return ["0.01", "0.01", "0.3", "10"];
  return ["0", "0"];
}

export function makePanel(
  distribution: DistributionName,
  color: string,
): PanelState {
  return {
    distribution,
    card: "1000",
    sp: defaultSpValues(distribution),
    affine: ["1", "0", "0", "0", "1", "0"],
    seed: "",
    visible: true,
    color,
  };
}

// --- numbers -------------------------------------------------------------

const REAL_RE = /^[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?$/;
const INT_RE = /^[+-]?\d+$/;
const UINT_RE = /^\d+$/;

/**
 * Canonical text for a finite number, matching the service formatter:
 * integral values below 1e16 print as plain integers, everything else
 * as the shortest round-trip decimal with Python-style exponent
 * spelling (lowercase e, signed, at least two exponent digits).
 */
export function formatNumber(value: number): string {
  if (Number.isInteger(value) && Math.abs(value) < 1e16) {
    return value === 0 ? "0" : String(value);
  }
  // toExponential() with no argument already yields shortest digits
  const m = /^(-?)(\d)(?:\.(\d+))?e([+-])(\d+)$/.exec(value.toExponential());
  if (!m) throw new Error(`cannot format ${value}`);
  const sign = m[1]!;
  const digits = m[2]! + (m[3] ?? "");
  const exp = (m[4] === "-" ? -1 : 1) * Number(m[5]);
  // point position: value = 0.<digits> * 10^point
  const point = exp + 1;
  if (point > 16 || point < -3) {
    const mantissa = digits.length > 1 ? digits[0] + "." + digits.slice(1) : digits;
    const expDigits = String(Math.abs(exp)).padStart(2, "0");
    return `${sign}${mantissa}e${exp < 0 ? "-" : "+"}${expDigits}`;
  }
  if (point <= 0) return `${sign}0.${"0".repeat(-point)}${digits}`;
  if (digits.length <= point) return `${sign}${digits.padEnd(point, "0")}.0`;
  return `${sign}${digits.slice(0, point)}.${digits.slice(point)}`;
}

export function parseReal(text: string): number | null {
  const t = text.trim();
  if (!REAL_RE.test(t)) return null;
  const v = Number(t);
  return Number.isFinite(v) ? v : null;
}

export function parseCardinal(text: string): number | null {
  const t = text.trim();
  if (!INT_RE.test(t)) return null;
  const v = Number(t);
  return Number.isSafeInteger(v) ? v : null;
}

/** Validate seed digits; returns the canonical digits or null. */
export function checkSeedText(text: string): string | null {
  const t = text.trim();
  if (!UINT_RE.test(t)) return null;
  const v = BigInt(t);
  if (v > MAX_SEED) return null;
  return v.toString();
}

// --- validation ----------------------------------------------------------

/** Field key -> message; empty object means the panel is valid. */
export type FieldErrors = Record<string, string>;

export function validatePanel(panel: PanelState): FieldErrors {
  const errors: FieldErrors = {};
  const card = parseCardinal(panel.card);
  if (card === null || card < 1) {
    errors["card"] = "card must be a positive integer";
  }
  const fields = SP_FIELDS[panel.distribution];
  fields.forEach((f, i) => {
    const raw = panel.sp[i] ?? "";
    const v = parseReal(raw);
    if (v === null) {
      errors[f.key] = `${f.label} must be a number`;
    } else if (f.integer && !Number.isInteger(v)) {
      errors[f.key] = `${f.label} must be an integer`;
    } else if (v < f.min || v > f.max) {
      errors[f.key] = `${f.label} must be in [${f.min}, ${f.max}]`;
    }
  });
  for (let k = 0; k < 6; k++) {
    if (parseReal(panel.affine[k] ?? "") === null) {
      errors[`a${k + 1}`] = `a${k + 1} must be a number`;
    }
  }
  if (panel.seed.trim() !== "" && checkSeedText(panel.seed) === null) {
    errors["seed"] = "seed must be an integer in [0, 2^64 - 1]";
  }
  return errors;
}

/**
 * Canonical descriptor line for a panel.  The panel must already pass
 * validatePanel; anything else throws.
 */
export function panelToDescriptor(panel: PanelState): string {
  const errors = validatePanel(panel);
  const bad = Object.keys(errors);
  if (bad.length > 0) {
    throw new Error(`invalid panel (${bad.join(", ")})`);
  }
  const parts = [panel.distribution, String(parseCardinal(panel.card)), "2"];
  for (let i = 0; i < SP_FIELDS[panel.distribution].length; i++) {
    parts.push(formatNumber(parseReal(panel.sp[i]!)!));
  }
  for (let k = 0; k < 6; k++) {
    parts.push(formatNumber(parseReal(panel.affine[k]!)!));
  }
  if (panel.seed.trim() !== "") {
    parts.push(`seed=${checkSeedText(panel.seed)}`);
  }
  return parts.join(",");
}

// --- parsing -------------------------------------------------------------

export class DescriptorParseError extends Error {
  /** 1-based field index, when the problem is tied to one field. */
  position: number | null;

  constructor(message: string, position: number | null = null) {
    super(message);
    this.name = "DescriptorParseError";
    this.position = position;
  }
}

/** 1-based positions of every field label for one distribution. */
export function fieldPositions(
  distribution: DistributionName,
): Record<string, number> {
  const pos: Record<string, number> = { name: 1, card: 2, dim: 3 };
  const fields = SP_FIELDS[distribution];
  fields.forEach((f, k) => {
    pos[f.key] = 4 + k;
  });
  const firstAffine = 4 + fields.length;
  for (let k = 0; k < 6; k++) pos[`a${k + 1}`] = firstAffine + k;
  pos["seed"] = firstAffine + 6;
  return pos;
}

/** Field key at a 1-based position, for mapping service errors to inputs. */
export function fieldAtPosition(
  distribution: DistributionName,
  position: number,
): string | null {
  for (const [key, p] of Object.entries(fieldPositions(distribution))) {
    if (p === position) return key;
  }
  return null;
}

export interface ParsedDescriptor {
  distribution: DistributionName;
  card: number;
  sp: number[];
  affine: number[];
  /** Pinned seed digits (kept textual to preserve 64-bit values). */
  seed: string | null;
}

function parseFieldReal(token: string, position: number, label: string): number {
  const v = parseReal(token);
  if (v === null) {
    throw new DescriptorParseError(
      `field ${position} (${label}): malformed number "${token}"`,
      position,
    );
  }
  return v;
}

export function parseDescriptor(text: string): ParsedDescriptor {
  const tokens = text.split(",").map((t) => t.trim());
  if (tokens.length === 1 && tokens[0] === "") {
    throw new DescriptorParseError("empty descriptor", 1);
  }
  const name = tokens[0]!.toLowerCase();
  let distribution: DistributionName | undefined;
  if ((DISTRIBUTIONS as readonly string[]).includes(name)) {
    distribution = name as DistributionName;
  } else if (/^[1-6]$/.test(name)) {
    distribution = DISTRIBUTIONS[Number(name) - 1];
  } else {
    throw new DescriptorParseError(
      `unknown distribution "${tokens[0]}" (expected one of: ${DISTRIBUTIONS.join(", ")}, or 1-6)`,
      1,
    );
  }
  const positions = fieldPositions(distribution!);
  let body = tokens.slice(1);

  let seed: string | null = null;
  if (body.length > 0 && body[body.length - 1]!.startsWith("seed=")) {
    const seedText = body[body.length - 1]!.slice("seed=".length);
    seed = checkSeedText(seedText);
    if (seed === null) {
      throw new DescriptorParseError(
        `field ${tokens.length} (seed): expected an integer in [0, 2^64 - 1], got "${seedText}"`,
        tokens.length,
      );
    }
    body = body.slice(0, -1);
  }

  const fields = SP_FIELDS[distribution!];
  const expected = 2 + fields.length + 6;
  if (body.length !== expected) {
    const bad = body.length < expected ? body.length + 2 : expected + 2;
    throw new DescriptorParseError(
      `${distribution} needs ${expected + 1} base fields, got ${body.length + 1}`,
      Math.min(bad, tokens.length + 1),
    );
  }

  const card = parseCardinal(body[0]!);
  if (card === null || card < 1) {
    throw new DescriptorParseError(
      `field 2 (card): expected a positive integer, got "${body[0]}"`,
      2,
    );
  }
  const dim = parseCardinal(body[1]!);
  if (dim !== 2) {
    throw new DescriptorParseError(`field 3 (dim): dim must be 2, got "${body[1]}"`, 3);
  }
  const sp = fields.map((f, k) => {
    const v = parseFieldReal(body[2 + k]!, positions[f.key]!, f.key);
    if ((f.integer && !Number.isInteger(v)) || v < f.min || v > f.max) {
      throw new DescriptorParseError(
        `field ${positions[f.key]} (${f.key}): out of range`,
        positions[f.key]!,
      );
    }
    return v;
  });
  const firstAffine = 2 + fields.length;
  const affine: number[] = [];
  for (let k = 0; k < 6; k++) {
    affine.push(parseFieldReal(body[firstAffine + k]!, positions[`a${k + 1}`]!, `a${k + 1}`));
  }
  return { distribution: distribution!, card, sp, affine, seed };
}

/** Rebuild a panel from a descriptor line in canonical spelling. */
export function descriptorToPanel(
  text: string,
  color: string,
  visible = true,
): PanelState {
  const d = parseDescriptor(text);
  return {
    distribution: d.distribution,
    card: String(d.card),
    sp: d.sp.map(formatNumber),
    affine: d.affine.map(formatNumber),
    seed: d.seed ?? "",
    visible,
    color,
  };
}

export function formatParsed(d: ParsedDescriptor): string {
  const parts = [d.distribution, String(d.card), "2"];
  parts.push(...d.sp.map(formatNumber));
  parts.push(...d.affine.map(formatNumber));
  if (d.seed !== null) parts.push(`seed=${d.seed}`);
  return parts.join(",");
}
