import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["test/**/*.test.ts"],
    // parity and plot suites shell out to the engagesim CLI many times
    testTimeout: 300_000,
    hookTimeout: 300_000,
  },
});
