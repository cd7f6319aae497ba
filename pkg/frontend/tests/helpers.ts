import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";

export const SERVICE_PORT = 8977;
export const SERVICE_URL = `http://127.0.0.1:${SERVICE_PORT}`;

/** Read a fixture shipped with the engine package. */
export function fixtureSource(name: string): string {
  const path = fileURLToPath(
    new URL(`../../src/phax/fixtures/${name}`, import.meta.url),
  );
  return readFileSync(path, "utf-8");
}
