"""Text scoring: readability grade, lexicon sentiment, and the engagement reward.

The readability grade is the classic grade-level formula
0.39 * (words / sentences) + 11.8 * (syllables / words) - 15.59 over a
deliberately simple tokenizer, so scores are reproducible to the last bit.
"""

from __future__ import annotations

import importlib.resources
import math
import re
import select
import string
import subprocess
import threading
from dataclasses import dataclass
from typing import Callable, Mapping, Protocol, Sequence

from .errors import DataError, ScoringError

_VOWEL_RUN = re.compile(r"[aeiouy]+")
_WORD_RUN = re.compile(r"[a-z]+")
_TERMINAL_RUN = re.compile(r"[.!?]+")


def count_syllables(word: str) -> int:
    """Maximal vowel runs (a,e,i,o,u,y), minus a terminal silent 'e'; at least 1.

    The silent-e deduction applies only when the word ends in a lone 'e'
    (previous character not a vowel) and another vowel run exists, so
    "because" -> 2 but "value" keeps both runs. Tokens without any vowel run
    ("rhythm" has one; "42" has none) count as one syllable.
    """
    w = word.lower()
    runs = _VOWEL_RUN.findall(w)
    if not runs:
        return 1
    count = len(runs)
    if count > 1 and w.endswith("e") and w[-2] not in "aeiouy":
        count -= 1
    return max(count, 1)


@dataclass(frozen=True)
class FluencyReport:
    words: int
    sentences: int
    syllables: int
    grade: float


def fk_grade(text: str) -> FluencyReport:
    """Grade-level readability of `text`.

    Sentences are runs of '.', '!' or '?' (minimum one); words are whitespace
    tokens stripped of surrounding punctuation; syllables come from
    count_syllables. Raises ValueError on empty or word-free text.
    """
    if not text or not text.strip():
        raise ValueError("cannot grade empty text")
    words = [t for t in (tok.strip(string.punctuation) for tok in text.split()) if t]
    if not words:
        raise ValueError("text has no words")
    sentences = max(len(_TERMINAL_RUN.findall(text)), 1)
    syllables = sum(count_syllables(w) for w in words)
    grade = 0.39 * (len(words) / sentences) + 11.8 * (syllables / len(words)) - 15.59
    return FluencyReport(words=len(words), sentences=sentences,
                         syllables=syllables, grade=grade)


class SentimentScorer(Protocol):
    def score(self, text: str) -> float: ...


class LexiconScorer:
    """Mean valence of the text's known words; 0.5 when nothing matches."""

    def __init__(self, table: Mapping[str, float]):
        if not table:
            raise ValueError("lexicon is empty")
        clean = {}
        for word, valence in table.items():
            v = float(valence)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"valence for {word!r} is {v!r}, outside [0, 1]")
            clean[word.lower()] = v
        self._table = clean

    @classmethod
    def from_file(cls, path) -> "LexiconScorer":
        """Load a `word,valence` text asset ('#' comments allowed)."""
        table: dict[str, float] = {}
        with open(path, "r", encoding="utf-8") as handle:
            for lineno, line in enumerate(handle, 1):
                text = line.strip()
                if not text or text.startswith("#"):
                    continue
                parts = text.split(",")
                if len(parts) != 2:
                    raise DataError(f"lexicon line {lineno}: expected 'word,valence', got {text!r}")
                word = parts[0].strip().lower()
                try:
                    valence = float(parts[1])
                except ValueError:
                    raise DataError(f"lexicon line {lineno}: bad valence {parts[1]!r}") from None
                if not 0.0 <= valence <= 1.0:
                    raise DataError(f"lexicon line {lineno}: valence {valence!r} outside [0, 1]")
                if word in table:
                    raise DataError(f"lexicon line {lineno}: duplicate word {word!r}")
                table[word] = valence
        if not table:
            raise DataError("lexicon file has no entries")
        return cls(table)

    @classmethod
    def bundled(cls) -> "LexiconScorer":
        """The packaged valence table."""
        ref = importlib.resources.files("engagesim.data").joinpath("lexicon.csv")
        with importlib.resources.as_file(ref) as path:
            return cls.from_file(path)

    def __contains__(self, word: str) -> bool:
        return word.lower() in self._table

    def __len__(self) -> int:
        return len(self._table)

    def valence(self, word: str) -> float:
        return self._table[word.lower()]

    def score(self, text: str) -> float:
        matched = [self._table[t] for t in _WORD_RUN.findall(text.lower()) if t in self._table]
        if not matched:
            return 0.5
        return math.fsum(matched) / len(matched)


class CallbackScorer:
    """Adapter for an in-process scoring function."""

    def __init__(self, fn: Callable[[str], float]):
        self._fn = fn

    def score(self, text: str) -> float:
        return float(self._fn(text))


class ExternalScorer:
    """Adapter for a scorer subprocess speaking a one-line protocol.

    Request: "SCORE\\t<text>" (newlines in the text are flattened to spaces).
    Response: one decimal in [0, 1] per line. Access is serialized; protocol
    violations and timeouts raise ScoringError.
    """

    def __init__(self, command: Sequence[str], timeout: float = 10.0):
        self._proc = subprocess.Popen(
            list(command), stdin=subprocess.PIPE, stdout=subprocess.PIPE,
            text=True, bufsize=1)
        self._timeout = timeout
        self._lock = threading.Lock()

    def score(self, text: str) -> float:
        flat = re.sub(r"[\r\n\t]+", " ", text)
        with self._lock:
            if self._proc.poll() is not None:
                raise ScoringError("external scorer process has exited")
            try:
                self._proc.stdin.write(f"SCORE\t{flat}\n")
                self._proc.stdin.flush()
            except (BrokenPipeError, OSError) as exc:
                raise ScoringError(f"external scorer pipe failed: {exc}") from exc
            ready, _, _ = select.select([self._proc.stdout], [], [], self._timeout)
            if not ready:
                raise ScoringError(f"external scorer timed out after {self._timeout}s")
            line = self._proc.stdout.readline()
        if not line:
            raise ScoringError("external scorer closed its output")
        try:
            value = float(line.strip())
        except ValueError:
            raise ScoringError(f"external scorer sent a non-numeric reply {line!r}") from None
        return value

    def close(self) -> None:
        if self._proc.poll() is None:
            self._proc.terminate()
            try:
                self._proc.wait(timeout=2.0)
            except subprocess.TimeoutExpired:
                self._proc.kill()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def score_sentiment(scorer: SentimentScorer, text: str) -> float:
    """Score `text` with bounds checking; scorers must return values in [0, 1]."""
    if not text or not text.strip():
        raise ValueError("cannot score empty text")
    value = float(scorer.score(text))
    if not 0.0 <= value <= 1.0 or not math.isfinite(value):
        raise ScoringError(f"scorer returned {value!r}, outside [0, 1]")
    return value


@dataclass(frozen=True)
class Reward:
    """Geometric coupling of fluency and reach: value = sqrt(max(fluency, 0) * engagement)."""

    value: float
    fluency_component: float
    engagement_component: int


def reward(fluency: float, engagement: int) -> Reward:
    if engagement < 0:
        raise ValueError(f"engagement count cannot be negative, got {engagement}")
    value = math.sqrt(max(fluency, 0.0) * engagement)
    return Reward(value=value, fluency_component=float(fluency),
                  engagement_component=int(engagement))
