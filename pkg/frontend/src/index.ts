export { EngagesimCliError, engagesimBinary, runEngagesim } from "./cli.js";
export type { CliResult } from "./cli.js";
export {
  SchemaError,
  movingAverage,
  readCompareCsv,
  readPlacementNode,
  readSteplogCsv,
  readSweepCsv,
  readUpperBound,
} from "./csv.js";
export type { CompareRow, StepRow, SweepRow } from "./csv.js";
export { combineReward } from "./reward.js";
export {
  bindPropagate,
  makeRewardCallback,
  simulateBatch,
} from "./bindings.js";
export type { NetworkHandle, RewardCallback, SimEnvironment } from "./bindings.js";
export { plotConvergence, plotSweep } from "./plot.js";
export type { ConvergenceOptions, SweepOptions } from "./plot.js";
