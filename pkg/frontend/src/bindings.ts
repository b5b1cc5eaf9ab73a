import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { runEngagesim } from "./cli.js";
import { readCompareCsv } from "./csv.js";
import { combineReward } from "./reward.js";

/** File-backed handle to a network; the binding never writes these paths. */
export interface NetworkHandle {
  edgesPath: string;
  opinionsPath: string;
  communitiesPath?: string;
}

/** Everything a cascade needs besides the content itself. */
export interface SimEnvironment {
  network: NetworkHandle;
  /** node label as it appears in the edge file */
  source: string | number;
  epsilon: number;
  maxRounds?: number;
}

/** Batch reward signature for RLHF-style hosts: texts plus the host's own
 * sentiment scores in, one scalar reward per text out. */
export type RewardCallback = (
  texts: readonly string[],
  sentimentScores: readonly number[],
) => number[];

// the scorer subprocess: replies to each "SCORE\t<text>" line with the next
// entry of a score table (repeating the last entry once exhausted)
const TABLE_SCORER = `const fs = require("fs");
const table = JSON.parse(fs.readFileSync(process.argv[2], "utf8"));
let served = 0;
let pending = "";
process.stdin.on("data", (chunk) => {
  pending += chunk;
  let cut;
  while ((cut = pending.indexOf("\\n")) >= 0) {
    pending = pending.slice(cut + 1);
    const score = table[Math.min(served, table.length - 1)];
    served += 1;
    process.stdout.write(score + "\\n");
  }
});
process.stdin.on("end", () => process.exit(0));
`;

function networkConfigLines(env: SimEnvironment): string[] {
  const lines = [
    "network.source = load",
    `network.edges = ${env.network.edgesPath}`,
    `network.opinions = ${env.network.opinionsPath}`,
    `cascade.epsilon = ${env.epsilon}`,
  ];
  if (env.network.communitiesPath) {
    lines.splice(3, 0, `network.communities = ${env.network.communitiesPath}`);
  }
  if (env.maxRounds !== undefined) {
    lines.push(`cascade.max_rounds = ${env.maxRounds}`);
  }
  return lines;
}

function assertCleanText(text: string): void {
  if (/[\t\r\n]/.test(text)) {
    throw new RangeError("texts must be single-line and tab-free");
  }
}

/**
 * Simulate one batch of texts at host-provided sentiment scores.
 *
 * Runs `engagesim compare` with a scorer subprocess that serves the given
 * scores, so sentiment scoring stays on the host side while every cascade
 * runs in the primary tool. Returns one record per text, in order.
 */
export function simulateBatch(
  env: SimEnvironment,
  texts: readonly string[],
  sentimentScores: readonly number[],
): { sentiment: number; fluency: number; engagement: number }[] {
  if (texts.length !== sentimentScores.length) {
    throw new RangeError(
      `got ${texts.length} texts but ${sentimentScores.length} scores`,
    );
  }
  if (texts.length === 0) {
    return [];
  }
  texts.forEach(assertCleanText);

  const work = mkdtempSync(join(tmpdir(), "engagesim-bind-"));
  try {
    const scorer = join(work, "scorer.cjs");
    const scoreTable = join(work, "scores.json");
    const textsPath = join(work, "texts.tsv");
    const configPath = join(work, "run.cfg");
    writeFileSync(scorer, TABLE_SCORER);
    writeFileSync(scoreTable, JSON.stringify([...sentimentScores]));
    writeFileSync(
      textsPath,
      texts.map((t) => `${t}\t${env.source}\t0`).join("\n") + "\n",
    );
    writeFileSync(
      configPath,
      [
        ...networkConfigLines(env),
        `compare.texts = ${textsPath}`,
        `compare.scorer_command = ${process.execPath} ${scorer} ${scoreTable}`,
      ].join("\n") + "\n",
    );
    runEngagesim(["compare", "--config", configPath, "--out", work]);
    const rows = readCompareCsv(join(work, "compare.csv"));
    return [...rows]
      .sort((a, b) => a.index - b.index)
      .map((row) => ({
        sentiment: row.sentiment,
        fluency: row.fluency,
        engagement: row.simulated,
      }));
  } finally {
    rmSync(work, { recursive: true, force: true });
  }
}

/**
 * Count how many users a post at `sentiment` engages, source included.
 *
 * Pass-through to the primary simulator; errors surface as
 * EngagesimCliError with the primary's message preserved.
 */
export function bindPropagate(env: SimEnvironment, sentiment: number): number {
  const [record] = simulateBatch(env, ["propagation probe"], [sentiment]);
  return record!.engagement;
}

/**
 * Build the reward hook an RLHF pipeline plugs in: rewards equal the
 * simulator's reward(fluency, engagement) on identical inputs, to full
 * precision.
 */
export function makeRewardCallback(env: SimEnvironment): RewardCallback {
  return (texts, sentimentScores) =>
    simulateBatch(env, texts, sentimentScores).map((r) =>
      combineReward(r.fluency, r.engagement),
    );
}
