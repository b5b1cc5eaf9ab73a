/**
 * Recombine a fluency grade and an engagement count into the scalar reward
 * the trainer optimizes: sqrt(max(fluency, 0) * engagement).
 *
 * Multiplication and square root are correctly rounded IEEE-754 operations
 * in both runtimes, so given the same double inputs this reproduces the
 * simulator's reward bit for bit — the parity fixtures check `===`, not
 * approximate equality.
 */
export function combineReward(fluency: number, engagement: number): number {
  if (!Number.isFinite(fluency)) {
    throw new RangeError(`fluency must be finite, got ${fluency}`);
  }
  if (!Number.isInteger(engagement) || engagement < 0) {
    throw new RangeError(`engagement count cannot be negative, got ${engagement}`);
  }
  return Math.sqrt(Math.max(fluency, 0) * engagement);
}
