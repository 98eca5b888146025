/**
 * Session state in the URL hash.  The whole restorable state is one
 * permalink token minted by the service, stored as "#t=<token>"; these
 * helpers are pure string functions so the hash wiring stays trivial.
 */

const TOKEN_KEY = "t=";

export function readToken(hash: string): string | null {
  const h = hash.startsWith("#") ? hash.slice(1) : hash;
  if (!h.startsWith(TOKEN_KEY)) return null;
  const token = h.slice(TOKEN_KEY.length);
  return token === "" ? null : decodeURIComponent(token);
}

export function writeToken(token: string): string {
  return `#${TOKEN_KEY}${encodeURIComponent(token)}`;
}
