/**
 * Spawns the phax HTTP service for the contract tests and tears it down
 * afterwards. The port is shared with tests through tests/helpers.ts.
 */

import { spawn, type ChildProcess } from "node:child_process";
import { SERVICE_PORT, SERVICE_URL } from "../helpers.js";

let child: ChildProcess | null = null;

export default async function setup(): Promise<() => void> {
  child = spawn(
    "python3",
    ["-m", "phax.cli", "serve", "--host", "127.0.0.1", "--port", String(SERVICE_PORT)],
    { stdio: "ignore" },
  );
  const deadline = Date.now() + 45_000;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${SERVICE_URL}/api/schemes`);
      if (response.ok) {
        return teardown;
      }
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
  teardown();
  throw new Error(`phax service did not come up on ${SERVICE_URL}`);
}

function teardown(): void {
  if (child && !child.killed) {
    child.kill("SIGTERM");
  }
  child = null;
}
