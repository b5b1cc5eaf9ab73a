import { readFileSync } from "node:fs";

/** A CSV whose header does not match the expected engagesim schema. */
export class SchemaError extends Error {
  constructor(path: string, detail: string) {
    super(`${path}: ${detail}`);
    this.name = "SchemaError";
  }
}

export interface SweepRow {
  sentiment: number;
  count: number;
}

export interface StepRow {
  step: number;
  reward: number;
  engagement: number;
  sentiment: number;
  fluency: number;
  kl: number;
  entropy: number;
}

export interface CompareRow {
  index: number;
  source: string;
  sentiment: number;
  fluency: number;
  simulated: number;
  observed: number;
}

const SWEEP_HEADER = "sentiment,count";
const STEPLOG_HEADER = "step,reward,engagement,sentiment,fluency,kl,entropy";
const COMPARE_HEADER = "index,source,sentiment,fluency,simulated,observed";

function dataLines(path: string, header: string): string[] {
  const lines = readFileSync(path, "utf8")
    .split("\n")
    .filter((line) => line.trim() !== "");
  if (lines.length === 0) {
    throw new SchemaError(path, "file is empty");
  }
  if (lines[0] !== header) {
    throw new SchemaError(path, `expected header ${JSON.stringify(header)}, got ${JSON.stringify(lines[0])}`);
  }
  return lines.slice(1);
}

function toNumber(path: string, token: string): number {
  const value = Number(token);
  if (token.trim() === "" || Number.isNaN(value)) {
    throw new SchemaError(path, `bad number ${JSON.stringify(token)}`);
  }
  return value;
}

/** Read a sweep.csv written by `engagesim sweep`. */
export function readSweepCsv(path: string): SweepRow[] {
  const rows = dataLines(path, SWEEP_HEADER).map((line) => {
    const parts = line.split(",");
    if (parts.length !== 2) {
      throw new SchemaError(path, `expected 2 fields, got ${parts.length}`);
    }
    return {
      sentiment: toNumber(path, parts[0]!),
      count: toNumber(path, parts[1]!),
    };
  });
  if (rows.length === 0) {
    throw new SchemaError(path, "no data rows");
  }
  return rows;
}

/** Read a steplog.csv written by `engagesim train`. */
export function readSteplogCsv(path: string): StepRow[] {
  const rows = dataLines(path, STEPLOG_HEADER).map((line) => {
    const parts = line.split(",");
    if (parts.length !== 7) {
      throw new SchemaError(path, `expected 7 fields, got ${parts.length}`);
    }
    return {
      step: toNumber(path, parts[0]!),
      reward: toNumber(path, parts[1]!),
      engagement: toNumber(path, parts[2]!),
      sentiment: toNumber(path, parts[3]!),
      fluency: toNumber(path, parts[4]!),
      kl: toNumber(path, parts[5]!),
      entropy: toNumber(path, parts[6]!),
    };
  });
  if (rows.length === 0) {
    throw new SchemaError(path, "no data rows");
  }
  return rows;
}

/** Read a compare.csv written by `engagesim compare`. */
export function readCompareCsv(path: string): CompareRow[] {
  return dataLines(path, COMPARE_HEADER).map((line) => {
    const parts = line.split(",");
    if (parts.length !== 6) {
      throw new SchemaError(path, `expected 6 fields, got ${parts.length}`);
    }
    return {
      index: toNumber(path, parts[0]!),
      source: parts[1]!,
      sentiment: toNumber(path, parts[2]!),
      fluency: toNumber(path, parts[3]!),
      simulated: toNumber(path, parts[4]!),
      observed: toNumber(path, parts[5]!),
    };
  });
}

/** Parse upper_bound.txt into its two values. */
export function readUpperBound(path: string): {
  bestSentiment: number;
  maxCount: number;
} {
  const text = readFileSync(path, "utf8");
  const best = /best_sentiment = (\S+)/.exec(text);
  const max = /max_count = (\S+)/.exec(text);
  if (!best || !max) {
    throw new SchemaError(path, "missing best_sentiment/max_count lines");
  }
  return {
    bestSentiment: toNumber(path, best[1]!),
    maxCount: toNumber(path, max[1]!),
  };
}

/** Parse the node the placement stage chose out of placement.txt. */
export function readPlacementNode(path: string): string {
  const match = /placement\.node = (\S+)/.exec(readFileSync(path, "utf8"));
  if (!match) {
    throw new SchemaError(path, "missing placement.node line");
  }
  return match[1]!;
}

/**
 * Trailing moving average with a warm-up prefix: entry i averages the last
 * `window` values ending at i (fewer while the window is filling). Matches
 * the smoothing the training loop reports.
 */
export function movingAverage(values: readonly number[], window: number): number[] {
  if (window < 1) {
    throw new RangeError(`window must be >= 1, got ${window}`);
  }
  const out: number[] = [];
  let sum = 0;
  for (let i = 0; i < values.length; i++) {
    sum += values[i]!;
    if (i >= window) {
      sum -= values[i - window]!;
    }
    out.push(sum / Math.min(i + 1, window));
  }
  return out;
}
