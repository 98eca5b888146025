/**
 * Thin typed client for the dataset service.  All state lives in the
 * request parameters; the only wrinkle is that seeds may exceed
 * Number.MAX_SAFE_INTEGER, so they travel as digit strings and the
 * permalink JSON is assembled by hand instead of JSON.stringify.
 */

export interface PreviewMetadata {
  total: number;
  returned: number;
  limit: number;
  clamped: boolean;
}

export interface PreviewFeature {
  type: "Feature";
  properties: { id: number };
  geometry:
    | { type: "Point"; coordinates: [number, number] }
    | { type: "Polygon"; coordinates: [number, number][][] };
}

export interface PreviewResponse {
  type: "FeatureCollection";
  metadata: PreviewMetadata;
  features: PreviewFeature[];
}

export class ApiRequestError extends Error {
  status: number;
  code: string;
  position: number | null;

  constructor(status: number, code: string, message: string, position: number | null) {
    super(message);
    this.name = "ApiRequestError";
    this.status = status;
    this.code = code;
    this.position = position;
  }
}

function descriptorQuery(descriptors: string[], seed: string): string {
  const parts = descriptors.map((d) => `descriptor=${encodeURIComponent(d)}`);
  parts.push(`seed=${encodeURIComponent(seed)}`);
  return parts.join("&");
}

export function buildPreviewUrl(
  base: string,
  descriptors: string[],
  seed: string,
  limit: number,
): string {
  return `${base}/api/preview?${descriptorQuery(descriptors, seed)}&limit=${limit}`;
}

export function buildGenerateUrl(
  base: string,
  descriptors: string[],
  seed: string,
  format: string,
): string {
  return `${base}/api/generate?${descriptorQuery(descriptors, seed)}&format=${format}`;
}

async function raiseForStatus(res: Response): Promise<void> {
  if (res.ok) return;
  let code = "error";
  let message = `request failed with status ${res.status}`;
  let position: number | null = null;
  try {
    const body = await res.json();
    if (typeof body.code === "string") code = body.code;
    if (typeof body.message === "string") message = body.message;
    if (typeof body.position === "number") position = body.position;
  } catch {
    // non-JSON error body; keep the generic message
  }
  throw new ApiRequestError(res.status, code, message, position);
}

export async function fetchPreview(
  base: string,
  descriptors: string[],
  seed: string,
  limit: number,
  fetchImpl: typeof fetch = fetch,
): Promise<PreviewResponse> {
  const res = await fetchImpl(buildPreviewUrl(base, descriptors, seed, limit));
  await raiseForStatus(res);
  return (await res.json()) as PreviewResponse;
}

/** Compact permalink request body; seed digits are inlined verbatim. */
export function permalinkBody(descriptors: string[], seed: string): string {
  return `{"descriptors":${JSON.stringify(descriptors)},"seed":${seed}}`;
}

export async function createPermalink(
  base: string,
  descriptors: string[],
  seed: string,
  fetchImpl: typeof fetch = fetch,
): Promise<string> {
  const res = await fetchImpl(`${base}/api/permalink`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: permalinkBody(descriptors, seed),
  });
  await raiseForStatus(res);
  const body = await res.json();
  if (typeof body.token !== "string") {
    throw new ApiRequestError(res.status, "bad-response", "no token in response", null);
  }
  return body.token;
}

/** Pull the seed digits straight out of the JSON text; JSON.parse would
 *  round anything past 2^53. */
export function extractSeedDigits(jsonText: string): string | null {
  const m = /"seed"\s*:\s*(\d+)\s*}\s*$/.exec(jsonText.trim());
  return m ? m[1]! : null;
}

export interface PermalinkPayload {
  descriptors: string[];
  seed: string;
}

export async function resolvePermalink(
  base: string,
  token: string,
  fetchImpl: typeof fetch = fetch,
): Promise<PermalinkPayload> {
  const res = await fetchImpl(`${base}/api/permalink/${encodeURIComponent(token)}`);
  await raiseForStatus(res);
  const text = await res.text();
  const body = JSON.parse(text);
  const seed = extractSeedDigits(text);
  if (
    !Array.isArray(body.descriptors) ||
    !body.descriptors.every((d: unknown) => typeof d === "string") ||
    seed === null
  ) {
    throw new ApiRequestError(res.status, "bad-response", "malformed permalink payload", null);
  }
  return { descriptors: body.descriptors as string[], seed };
}

/**
 * Monotonic ticket counter for discarding stale in-flight responses:
 * take a ticket before each request, apply the response only if the
 * ticket is still the newest one.
 */
export class LatestGate {
  private current = 0;

  take(): number {
    this.current += 1;
    return this.current;
  }

  isCurrent(ticket: number): boolean {
    return ticket === this.current;
  }
}
