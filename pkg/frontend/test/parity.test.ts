import { writeFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { bindPropagate } from "../src/bindings.js";
import { runEngagesim } from "../src/cli.js";
import { readPlacementNode, readSweepCsv } from "../src/csv.js";
import { mulberry32, sha256, tempDir, writeRandomNetwork } from "./helpers.js";

const NETWORKS = 10;
const SENTIMENTS_PER_NETWORK = 10;
const EPSILONS = [0.1, 0.2, 0.2, 0.3, 0.5];

/**
 * 100 fixtures: ten random networks x ten sentiments. The reference counts
 * come from `engagesim sweep` (grid route, own placement); the binding goes
 * through `engagesim compare` (per-text scoring route). The two must agree
 * exactly, and the binding must leave the network files untouched.
 */
describe("binding parity against the primary CLI", () => {
  it("matches sweep counts on all 100 fixtures", () => {
    const rng = mulberry32(0xc0ffee);
    let checked = 0;
    for (let net = 0; net < NETWORKS; net++) {
      const dir = tempDir(`engagesim-parity-${net}-`);
      const n = 12 + Math.floor(rng() * 28);
      const handle = writeRandomNetwork(dir, n, 0.04 + rng() * 0.12, rng);
      const epsilon = EPSILONS[net % EPSILONS.length]!;
      const sentiments = Array.from({ length: SENTIMENTS_PER_NETWORK }, () => rng());

      const edgesBefore = sha256(handle.edgesPath);
      const opinionsBefore = sha256(handle.opinionsPath);

      const configPath = join(dir, "sweep.cfg");
      writeFileSync(
        configPath,
        [
          "network.source = load",
          `network.edges = ${handle.edgesPath}`,
          `network.opinions = ${handle.opinionsPath}`,
          `cascade.epsilon = ${epsilon}`,
          `sweep.grid = ${sentiments.join(",")}`,
        ].join("\n") + "\n",
      );
      const sweepOut = join(dir, "out");
      runEngagesim(["sweep", "--config", configPath, "--out", sweepOut]);

      const source = readPlacementNode(join(sweepOut, "placement.txt"));
      const rows = readSweepCsv(join(sweepOut, "sweep.csv"));
      expect(rows).toHaveLength(SENTIMENTS_PER_NETWORK);

      const env = { network: handle, source, epsilon };
      rows.forEach((row, i) => {
        expect(row.sentiment).toBe(sentiments[i]!); // grid round-trips exactly
        expect(bindPropagate(env, sentiments[i]!)).toBe(row.count);
        checked += 1;
      });

      expect(sha256(handle.edgesPath)).toBe(edgesBefore);
      expect(sha256(handle.opinionsPath)).toBe(opinionsBefore);
    }
    expect(checked).toBe(NETWORKS * SENTIMENTS_PER_NETWORK);
  });
});
