"""Policy training against simulated cascade feedback.

Each step samples a batch of generations, scores them (sentiment, fluency),
runs one cascade per sample, and rewards sqrt(max(fluency, 0) * engagement).
Updates are clipped-ratio policy gradients with a KL penalty against the
frozen step-0 reference; training stops at max_steps or when the exact KL
from the reference crosses kl_threshold.

Advantages are per-sample rewards minus an EMA baseline (decay 0.9). The
EMA is seeded with the first batch's mean, and advantages at step j use the
EMA of batches before j.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .cascade import CascadeConfig, propagate
from .errors import TrainingError
from .graph import OpinionVector, SocialNetwork
from .policy import (PolicySnapshot, SentimentPolicy, TemplateRealizer,
                     _log_softmax, _softmax, kl_reference, sample)
from .scoring import SentimentScorer, fk_grade, reward, score_sentiment

CHECKPOINT_INTERVAL = 10


@dataclass
class TrainConfig:
    max_steps: int = 80
    batch_size: int = 8
    learning_rate: float = 0.05
    clip_ratio: float = 0.2
    inner_epochs: int = 4
    beta_kl: float = 0.05
    kl_threshold: float = 5.0
    baseline_decay: float = 0.9
    seed: int = 0

    def validate(self) -> None:
        problems = []
        if self.max_steps < 1:
            problems.append("max_steps must be >= 1")
        if self.batch_size < 1:
            problems.append("batch_size must be >= 1")
        if not self.learning_rate > 0:
            problems.append("learning_rate must be positive")
        if not 0.0 < self.clip_ratio < 1.0:
            problems.append("clip_ratio must lie in (0, 1)")
        if self.inner_epochs < 1:
            problems.append("inner_epochs must be >= 1")
        if self.beta_kl < 0:
            problems.append("beta_kl cannot be negative")
        if self.kl_threshold < 0:
            problems.append("kl_threshold cannot be negative")
        if not 0.0 <= self.baseline_decay < 1.0:
            problems.append("baseline_decay must lie in [0, 1)")
        if problems:
            raise ValueError("; ".join(problems))


@dataclass(frozen=True)
class SampleRecord:
    """One rollout: what was said, how it scored, and how far it spread."""

    bin_index: int
    sentiment: float
    text: str
    fluency: float
    engagement: int
    reward: float
    log_prob: float
    ref_log_prob: float


@dataclass(frozen=True)
class StepLog:
    """Per-step batch means plus the policy's KL-from-reference and entropy."""

    step: int
    reward: float
    engagement: float
    sentiment: float
    fluency: float
    kl: float
    entropy: float
    samples: tuple[SampleRecord, ...] = field(repr=False, default=())

    CSV_HEADER = "step,reward,engagement,sentiment,fluency,kl,entropy"

    def csv_row(self) -> str:
        return ",".join([str(self.step), repr(self.reward), repr(self.engagement),
                         repr(self.sentiment), repr(self.fluency), repr(self.kl),
                         repr(self.entropy)])


@dataclass
class Environment:
    """Everything a rollout needs: where content lands and how it is judged."""

    network: SocialNetwork
    opinions: OpinionVector
    source: int
    cascade: CascadeConfig
    scorer: SentimentScorer
    realizer: TemplateRealizer
    query: str = ""

    def validate(self) -> None:
        if len(self.opinions) != self.network.node_count:
            raise ValueError("opinions do not match network size")
        if not 0 <= self.source < self.network.node_count:
            raise ValueError(f"source {self.source} out of range")
        self.cascade.validate()


@dataclass(frozen=True)
class TrainResult:
    policy: SentimentPolicy
    reference: PolicySnapshot
    logs: tuple[StepLog, ...]
    stop_reason: str  # "max-steps" | "kl-threshold"


def _rollout(env: Environment, policy: SentimentPolicy, reference: PolicySnapshot,
             rng: np.random.Generator) -> SampleRecord:
    gs = sample(policy, env.realizer, rng, reference=reference, query=env.query)
    sentiment = score_sentiment(env.scorer, gs.text)
    fluency = fk_grade(gs.text).grade
    try:
        result = propagate(env.network, env.opinions, env.source, sentiment, env.cascade)
    except Exception as exc:
        raise TrainingError(f"cascade failed for sample {gs.text!r} "
                            f"(sentiment {sentiment!r}): {exc}") from exc
    rew = reward(fluency, result.size)
    return SampleRecord(bin_index=gs.bin_index, sentiment=sentiment, text=gs.text,
                        fluency=fluency, engagement=result.size, reward=rew.value,
                        log_prob=gs.log_prob, ref_log_prob=gs.ref_log_prob)


def ppo_clip_update(policy: SentimentPolicy, old_snapshot: PolicySnapshot,
                    batch: Sequence[tuple[int, float]], config: TrainConfig,
                    reference: PolicySnapshot | None = None) -> SentimentPolicy:
    """Clipped-ratio policy-gradient ascent on one batch.

    `batch` holds (bin_index, advantage) pairs. For inner_epochs passes the
    logits climb the gradient of

        (1/B) sum_i min(rho_i * A_i, clip(rho_i, 1-c, 1+c) * A_i)
            - beta_kl * KL(policy || reference)

    with rho_i = p_new(bin_i) / p_old(bin_i) against the fixed old_snapshot.
    A sample contributes no gradient once its ratio is clipped out. With
    beta_kl = 0, an unbounded clip_ratio, and one inner epoch this is exactly
    the plain score-function update. When `reference` is omitted the KL
    penalty falls back to old_snapshot.
    """
    if reference is None:
        reference = old_snapshot
    bins = np.array([int(b) for b, _ in batch], dtype=np.int64)
    adv = np.array([float(a) for _, a in batch], dtype=float)
    if bins.size == 0:
        raise ValueError("batch is empty")
    if bins.min() < 0 or bins.max() >= policy.bins:
        raise ValueError("bin index out of range")
    z = policy.logits
    k = policy.bins
    p_old = old_snapshot.probs()[bins]
    log_q = reference.log_probs()
    lo, hi = 1.0 - config.clip_ratio, 1.0 + config.clip_ratio
    b = bins.size
    for _ in range(config.inner_epochs):
        p = _softmax(z)
        rho = p[bins] / p_old
        clipped_out = ((adv >= 0) & (rho > hi)) | ((adv < 0) & (rho < lo))
        coef = np.where(clipped_out, 0.0, adv * rho)
        grad = (np.bincount(bins, weights=coef, minlength=k) - coef.sum() * p) / b
        if config.beta_kl > 0:
            log_p = _log_softmax(z)
            log_ratio = log_p - log_q
            kl = float(np.dot(p, log_ratio))
            grad -= config.beta_kl * p * (log_ratio - kl)
        z = z + config.learning_rate * grad
        if not np.isfinite(z).all():
            raise TrainingError(f"logits became non-finite during update: {z!r}")
    return SentimentPolicy(z)


def _make_log(step: int, batch: Sequence[SampleRecord], kl: float,
              entropy: float) -> StepLog:
    n = len(batch)
    return StepLog(
        step=step,
        reward=math.fsum(s.reward for s in batch) / n,
        engagement=math.fsum(s.engagement for s in batch) / n,
        sentiment=math.fsum(s.sentiment for s in batch) / n,
        fluency=math.fsum(s.fluency for s in batch) / n,
        kl=kl,
        entropy=entropy,
        samples=tuple(batch),
    )


def train(env: Environment, policy: SentimentPolicy, config: TrainConfig,
          checkpoint_hook: Callable[[int, SentimentPolicy], None] | None = None
          ) -> TrainResult:
    """Run the training loop; deterministic for a fixed config seed.

    Returns the final policy, the frozen entry reference, per-step logs, and
    why the loop stopped. kl_threshold = 0 is the documented boundary: one
    batch is evaluated and logged, nothing is updated, and the run reports
    "kl-threshold". The checkpoint hook fires every CHECKPOINT_INTERVAL steps.
    """
    config.validate()
    env.validate()
    rng = np.random.default_rng(config.seed)
    reference = PolicySnapshot.of(policy)
    current = policy.copy()
    if config.kl_threshold == 0.0:
        batch = [_rollout(env, current, reference, rng) for _ in range(config.batch_size)]
        log = _make_log(0, batch, kl_reference(current, reference), current.entropy())
        return TrainResult(current, reference, (log,), "kl-threshold")
    logs: list[StepLog] = []
    baseline: float | None = None
    stop_reason = "max-steps"
    for step in range(config.max_steps):
        old = PolicySnapshot.of(current)
        batch = [_rollout(env, current, reference, rng) for _ in range(config.batch_size)]
        batch_mean = math.fsum(s.reward for s in batch) / len(batch)
        if baseline is None:
            baseline = batch_mean
        pairs = [(s.bin_index, s.reward - baseline) for s in batch]
        current = ppo_clip_update(current, old, pairs, config, reference=reference)
        baseline = config.baseline_decay * baseline + (1.0 - config.baseline_decay) * batch_mean
        kl = kl_reference(current, reference)
        logs.append(_make_log(step, batch, kl, current.entropy()))
        if checkpoint_hook is not None and (step + 1) % CHECKPOINT_INTERVAL == 0:
            checkpoint_hook(step, current)
        if kl >= config.kl_threshold:
            stop_reason = "kl-threshold"
            break
    return TrainResult(current, reference, tuple(logs), stop_reason)


def moving_average(series: Sequence[float], window: int) -> np.ndarray:
    """Trailing mean with a warm-up prefix: element i averages series[max(0, i-w+1)..i]."""
    if window < 1:
        raise ValueError("window must be >= 1")
    arr = np.asarray(series, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("series must be non-empty and 1-d")
    out = np.empty_like(arr)
    csum = np.concatenate([[0.0], np.cumsum(arr)])
    for i in range(arr.size):
        lo = max(0, i - window + 1)
        out[i] = (csum[i + 1] - csum[lo]) / (i + 1 - lo)
    return out
