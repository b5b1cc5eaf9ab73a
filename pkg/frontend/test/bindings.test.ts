import { writeFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import {
  bindPropagate,
  makeRewardCallback,
  simulateBatch,
} from "../src/bindings.js";
import type { SimEnvironment } from "../src/bindings.js";
import { EngagesimCliError } from "../src/cli.js";
import { combineReward } from "../src/reward.js";
import { tempDir } from "./helpers.js";

/** 0 -> 1 -> 2 with the far end outside a 0.2 window around 0.5. */
function chainEnvironment(): SimEnvironment {
  const dir = tempDir("engagesim-chain-");
  const edgesPath = join(dir, "edges.csv");
  const opinionsPath = join(dir, "opinions.csv");
  writeFileSync(edgesPath, "0,1\n1,2\n");
  writeFileSync(opinionsPath, "0,0.5\n1,0.55\n2,0.9\n");
  return { network: { edgesPath, opinionsPath }, source: 0, epsilon: 0.2 };
}

describe("bindPropagate", () => {
  it("counts the chain fixture's two engaged users", () => {
    expect(bindPropagate(chainEnvironment(), 0.5)).toBe(2);
  });

  it("counts an isolated source as one", () => {
    const dir = tempDir("engagesim-isolated-");
    const edgesPath = join(dir, "edges.csv");
    const opinionsPath = join(dir, "opinions.csv");
    const communitiesPath = join(dir, "communities.csv");
    writeFileSync(edgesPath, "7,7\n"); // dropped self-loop still registers node 7
    writeFileSync(opinionsPath, "7,0.4\n");
    // an edgeless graph can't be auto-partitioned; hand it the trivial split
    writeFileSync(communitiesPath, "7,0\n");
    const env: SimEnvironment = {
      network: { edgesPath, opinionsPath, communitiesPath },
      source: 7,
      epsilon: 0.2,
    };
    expect(bindPropagate(env, 0.4)).toBe(1);
  });

  it("translates out-of-range sentiment into a host exception, message intact", () => {
    expect(() => bindPropagate(chainEnvironment(), 1.4)).toThrowError(
      EngagesimCliError,
    );
    try {
      bindPropagate(chainEnvironment(), 1.4);
      expect.unreachable();
    } catch (error) {
      expect((error as EngagesimCliError).stderr).toMatch(/outside \[0, 1\]/);
      expect((error as EngagesimCliError).exitCode).toBe(4);
    }
  });

  it("rejects unknown source labels with the loader's message", () => {
    const env = { ...chainEnvironment(), source: 99 };
    try {
      bindPropagate(env, 0.5);
      expect.unreachable();
    } catch (error) {
      expect((error as EngagesimCliError).stderr).toMatch(/unknown source node/);
      expect((error as EngagesimCliError).exitCode).toBe(3);
    }
  });
});

describe("simulateBatch", () => {
  it("keeps input order and honors per-text scores", () => {
    const env = chainEnvironment();
    const records = simulateBatch(
      env,
      ["same probe post", "same probe post", "same probe post"],
      [0.5, 0.9, 0.05],
    );
    expect(records.map((r) => r.sentiment)).toEqual([0.5, 0.9, 0.05]);
    // only 0.5 sits within the follower's window; the rest reach the source alone
    expect(records.map((r) => r.engagement)).toEqual([2, 1, 1]);
    // identical wording scores identical fluency
    expect(records[0]!.fluency).toBe(records[1]!.fluency);
  });

  it("validates batch shape and text hygiene", () => {
    const env = chainEnvironment();
    expect(() => simulateBatch(env, ["a b"], [0.1, 0.2])).toThrow(/1 texts but 2 scores/);
    expect(() => simulateBatch(env, ["tab\there"], [0.1])).toThrow(/tab-free/);
    expect(simulateBatch(env, [], [])).toEqual([]);
  });
});

describe("makeRewardCallback", () => {
  it("recombines fluency and engagement exactly", () => {
    const env = chainEnvironment();
    const callback = makeRewardCallback(env);
    const texts = ["the cat sat on the mat", "cats cats cats and more cats"];
    const scores = [0.5, 0.62];
    const rewards = callback(texts, scores);
    const records = simulateBatch(env, texts, scores);
    expect(rewards).toEqual(
      records.map((r) => combineReward(r.fluency, r.engagement)),
    );
    expect(rewards.every((r) => Number.isFinite(r) && r >= 0)).toBe(true);
  });
});
