import { spawnSync } from "node:child_process";

/**
 * A failed `engagesim` invocation, with the tool's own diagnostic preserved.
 *
 * Exit codes mirror the CLI: 2 config error, 3 data error, 4 runtime failure.
 */
export class EngagesimCliError extends Error {
  constructor(
    readonly exitCode: number,
    readonly stderr: string,
    readonly command: readonly string[],
  ) {
    super(
      `engagesim ${command[0]} exited with code ${exitCode}: ${stderr.trim()}`,
    );
    this.name = "EngagesimCliError";
  }
}

/** Resolve the CLI binary; override with ENGAGESIM_BIN for odd installs. */
export function engagesimBinary(): string {
  return process.env.ENGAGESIM_BIN ?? "engagesim";
}

export interface CliResult {
  stdout: string;
  stderr: string;
}

/**
 * Run one engagesim subcommand to completion.
 *
 * Throws EngagesimCliError on any non-zero exit; the stderr text is the
 * primary tool's message (e.g. "config error: ..."), untouched.
 */
export function runEngagesim(args: readonly string[]): CliResult {
  const proc = spawnSync(engagesimBinary(), args as string[], {
    encoding: "utf8",
    maxBuffer: 64 * 1024 * 1024,
  });
  if (proc.error) {
    throw new Error(`failed to launch ${engagesimBinary()}: ${proc.error.message}`);
  }
  if (proc.status !== 0) {
    throw new EngagesimCliError(proc.status ?? -1, proc.stderr, args);
  }
  return { stdout: proc.stdout, stderr: proc.stderr };
}
