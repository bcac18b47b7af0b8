import { readFileSync } from "node:fs";
import path from "node:path";

// Paths resolve from the package root (vitest runs with cwd there); a
// file URL via import.meta would break under the jsdom environment.
export function packageFile(...parts: string[]): string {
  return readFileSync(path.resolve(...parts), "utf-8");
}

/** Raw bytes of a recorded fixture (HTTP body or file-format document). */
export function fixture(name: string): string {
  return packageFile("tests", "fixtures", name);
}

export function fixtureJson<T>(name: string): T {
  return JSON.parse(fixture(name)) as T;
}

/** Resolve after `turns` microtask rounds, letting pending awaits settle. */
export async function settle(turns = 8): Promise<void> {
  for (let i = 0; i < turns; i++) await Promise.resolve();
}
