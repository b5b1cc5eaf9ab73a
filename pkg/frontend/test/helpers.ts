import { createHash } from "node:crypto";
import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import type { NetworkHandle } from "../src/bindings.js";

/** Deterministic 32-bit PRNG so fixtures are stable across runs. */
export function mulberry32(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function tempDir(prefix: string): string {
  return mkdtempSync(join(tmpdir(), prefix));
}

/**
 * Write a random directed network as edges.csv + opinions.csv.
 *
 * Every node label 0..n-1 is registered even when it draws no edges: the
 * loader keeps nodes whose only line was a dropped self-loop, and the
 * opinion file must cover the node set exactly.
 */
export function writeRandomNetwork(
  dir: string,
  n: number,
  edgeProbability: number,
  rng: () => number,
): NetworkHandle {
  const lines: string[] = [];
  const mentioned = new Set<number>();
  for (let u = 0; u < n; u++) {
    for (let v = 0; v < n; v++) {
      if (u !== v && rng() < edgeProbability) {
        lines.push(`${u},${v}`);
        mentioned.add(u);
        mentioned.add(v);
      }
    }
  }
  for (let u = 0; u < n; u++) {
    if (!mentioned.has(u)) {
      lines.push(`${u},${u}`); // dropped as a self-loop, but the label sticks
    }
  }
  const edgesPath = join(dir, "edges.csv");
  const opinionsPath = join(dir, "opinions.csv");
  writeFileSync(edgesPath, lines.join("\n") + "\n");
  writeFileSync(
    opinionsPath,
    Array.from({ length: n }, (_, u) => `${u},${rng()}`).join("\n") + "\n",
  );
  return { edgesPath, opinionsPath };
}

export function sha256(path: string): string {
  return createHash("sha256").update(readFileSync(path)).digest("hex");
}
