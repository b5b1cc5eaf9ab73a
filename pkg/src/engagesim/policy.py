"""Categorical sentiment policy over evenly spaced bins, plus template realization.

The policy is a softmax over K logits whose bins are the sentiments
0, 1/(K-1), ..., 1. Text comes from a per-bin template bank, so the only
thing the policy chooses is the sentiment bin; everything downstream
(scoring, cascades, rewards) sees ordinary text.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import DataError

BIN_COUNT = 21


def bin_centers(bins: int = BIN_COUNT) -> np.ndarray:
    if bins < 2:
        raise ValueError("need at least two bins")
    return np.linspace(0.0, 1.0, bins)


def _softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max()
    exp = np.exp(shifted)
    return exp / exp.sum()


def _log_softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max()
    return shifted - np.log(np.exp(shifted).sum())


class SentimentPolicy:
    """Mutable categorical policy; snapshots freeze it for ratios and KL."""

    __slots__ = ("_logits",)

    def __init__(self, logits):
        arr = np.array(logits, dtype=float)
        if arr.ndim != 1 or arr.size < 2:
            raise ValueError("logits must be a 1-d vector with at least two bins")
        if not np.isfinite(arr).all():
            raise ValueError("logits must be finite")
        self._logits = arr

    @classmethod
    def reference_init(cls, bins: int = BIN_COUNT) -> "SentimentPolicy":
        """Positively skewed start: a linear logit ramp, +2 at bin 1.0 over bin 0.0."""
        return cls(2.0 * np.arange(bins) / (bins - 1))

    @property
    def bins(self) -> int:
        return self._logits.size

    @property
    def logits(self) -> np.ndarray:
        return self._logits.copy()

    @property
    def centers(self) -> np.ndarray:
        return bin_centers(self.bins)

    def probs(self) -> np.ndarray:
        return _softmax(self._logits)

    def log_probs(self) -> np.ndarray:
        return _log_softmax(self._logits)

    def entropy(self) -> float:
        logp = self.log_probs()
        return float(-np.dot(np.exp(logp), logp))

    def copy(self) -> "SentimentPolicy":
        return SentimentPolicy(self._logits)

    def save(self, path) -> None:
        """One logit per line, full float precision."""
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            for value in self._logits:
                handle.write(repr(float(value)) + "\n")

    @classmethod
    def load(cls, path) -> "SentimentPolicy":
        with open(path, "r", encoding="utf-8") as handle:
            values = [float(line) for line in handle if line.strip()]
        return cls(values)

    def __repr__(self):
        return f"SentimentPolicy(bins={self.bins})"


class PolicySnapshot:
    """Frozen copy of a policy with cached probabilities."""

    __slots__ = ("_logits", "_probs", "_log_probs")

    def __init__(self, logits):
        arr = np.array(logits, dtype=float)
        arr.flags.writeable = False
        self._logits = arr
        p = _softmax(arr)
        lp = _log_softmax(arr)
        p.flags.writeable = False
        lp.flags.writeable = False
        self._probs = p
        self._log_probs = lp

    @classmethod
    def of(cls, policy: SentimentPolicy) -> "PolicySnapshot":
        return cls(policy.logits)

    @property
    def bins(self) -> int:
        return self._logits.size

    @property
    def logits(self) -> np.ndarray:
        return self._logits

    def probs(self) -> np.ndarray:
        return self._probs

    def log_probs(self) -> np.ndarray:
        return self._log_probs


def kl_reference(policy, reference) -> float:
    """Exact KL(policy || reference) for categorical distributions, in nats."""
    if policy.bins != reference.bins:
        raise ValueError("policies have different bin counts")
    p = policy.probs()
    return float(np.dot(p, policy.log_probs() - reference.log_probs()))


def expected_reward(policy, reward_per_bin: Sequence[float]) -> float:
    r = np.asarray(reward_per_bin, dtype=float)
    if r.shape != (policy.bins,):
        raise ValueError(f"need one reward per bin ({policy.bins}), got shape {r.shape}")
    return float(np.dot(policy.probs(), r))


def analytic_objective_gradient(policy, reference, reward_per_bin: Sequence[float],
                                beta_kl: float) -> np.ndarray:
    """Exact gradient of sum_k p_k * (r_k - beta * log(p_k / q_k)) w.r.t. the logits.

    grad_k = p_k * [(r_k - E_p r) - beta * (log(p_k / q_k) - KL(p || q))].
    Components sum to zero (adding a constant to all logits changes nothing).
    """
    if policy.bins != reference.bins:
        raise ValueError("policies have different bin counts")
    r = np.asarray(reward_per_bin, dtype=float)
    if r.shape != (policy.bins,):
        raise ValueError(f"need one reward per bin ({policy.bins}), got shape {r.shape}")
    p = policy.probs()
    log_ratio = policy.log_probs() - reference.log_probs()
    kl = float(np.dot(p, log_ratio))
    return p * ((r - np.dot(p, r)) - beta_kl * (log_ratio - kl))


class TemplateRealizer:
    """Per-bin banks of completion templates; realize() draws one uniformly."""

    def __init__(self, templates: Mapping[int, Sequence[str]], bins: int = BIN_COUNT):
        banks: list[tuple[str, ...]] = []
        for b in range(bins):
            bank = tuple(t for t in templates.get(b, ()) if t and t.strip())
            if not bank:
                raise ValueError(f"bin {b} has no templates; every bin needs at least one")
            banks.append(bank)
        extra = set(templates) - set(range(bins))
        if extra:
            raise ValueError(f"template bins {sorted(extra)} outside 0..{bins - 1}")
        self._banks = tuple(banks)

    @property
    def bins(self) -> int:
        return len(self._banks)

    def bank(self, bin_index: int) -> tuple[str, ...]:
        return self._banks[bin_index]

    def realize(self, bin_index: int, rng: np.random.Generator) -> str:
        bank = self._banks[bin_index]
        return bank[int(rng.integers(len(bank)))]

    @classmethod
    def from_file(cls, path, bins: int = BIN_COUNT) -> "TemplateRealizer":
        """Load `bin_index<TAB>template_text` records."""
        templates: dict[int, list[str]] = {}
        with open(path, "r", encoding="utf-8") as handle:
            for lineno, line in enumerate(handle, 1):
                text = line.rstrip("\n")
                if not text.strip() or text.startswith("#"):
                    continue
                parts = text.split("\t", 1)
                if len(parts) != 2 or not parts[1].strip():
                    raise DataError(f"template line {lineno}: expected 'bin<TAB>text', got {text!r}")
                try:
                    b = int(parts[0])
                except ValueError:
                    raise DataError(f"template line {lineno}: bad bin index {parts[0]!r}") from None
                templates.setdefault(b, []).append(parts[1].strip())
        if not templates:
            raise DataError("template file has no records")
        return cls(templates, bins=bins)

    def to_file(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            for b, bank in enumerate(self._banks):
                for template in bank:
                    handle.write(f"{b}\t{template}\n")

    @classmethod
    def bundled(cls) -> "TemplateRealizer":
        """The packaged template corpus."""
        ref = importlib.resources.files("engagesim.data").joinpath("templates.tsv")
        with importlib.resources.as_file(ref) as path:
            return cls.from_file(path)


@dataclass(frozen=True)
class GenerationSample:
    """One draw: the chosen bin, its center, the realized text, and log-probs."""

    bin_index: int
    sentiment: float
    text: str
    log_prob: float
    ref_log_prob: float | None


def sample(policy: SentimentPolicy, realizer: TemplateRealizer, rng: np.random.Generator,
           reference: PolicySnapshot | None = None, query: str = "") -> GenerationSample:
    """Draw bin ~ softmax(logits), then a uniform template from that bin."""
    if realizer.bins != policy.bins:
        raise ValueError("realizer does not cover the policy's bins")
    p = policy.probs()
    bin_index = int(rng.choice(policy.bins, p=p))
    completion = realizer.realize(bin_index, rng)
    text = f"{query.strip()} {completion}".strip() if query and query.strip() else completion
    centers = bin_centers(policy.bins)
    return GenerationSample(
        bin_index=bin_index,
        sentiment=float(centers[bin_index]),
        text=text,
        log_prob=float(np.log(p[bin_index])),
        ref_log_prob=float(reference.log_probs()[bin_index]) if reference is not None else None,
    )
