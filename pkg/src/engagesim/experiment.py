"""Run orchestration: flat key-value configs, artifact files, reproducible replays.

A run is fully determined by its config mapping plus one master seed; the
component seeds (generator, community detection, training, robust fit) are
derived from the master seed, and every artifact is written with repr()
floats and LF newlines, so replaying a manifest is byte-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, TextIO

import numpy as np

from .cascade import (CascadeConfig, default_sentiment_grid, engagement_upper_bound,
                      propagate, sentiment_sweep)
from .errors import ConfigError, DataError
from .graph import (CommunityPartition, OpinionVector, PlacementStrategy, SocialNetwork,
                    load_communities, load_edge_list, load_opinions, louvain,
                    select_injection)
from .netgen import GeneratedNetwork, GeneratorConfig, generate, opinion_profile
from .policy import SentimentPolicy, TemplateRealizer
from .ransac import RansacFit, ransac_fit
from .scoring import ExternalScorer, LexiconScorer, SentimentScorer, fk_grade, score_sentiment
from .trainer import CHECKPOINT_INTERVAL, Environment, StepLog, TrainConfig, TrainResult, train

DEFAULT_QUERY = "Cats are the most"


def parse_config_text(text: str) -> dict[str, str]:
    """Parse `key = value` lines; '#' comments and blank lines are skipped."""
    mapping: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise ConfigError(f"config line {lineno}: expected 'key = value', got {raw!r}")
        if not value:
            raise ConfigError(f"config line {lineno}: key {key!r} has no value")
        if key in mapping:
            raise ConfigError(f"config line {lineno}: duplicate key {key!r}")
        mapping[key] = value
    return mapping


_KNOWN_KEYS = (
    "seed",
    "network.source", "network.edges", "network.opinions", "network.communities",
    "generator.n", "generator.profile", "generator.alpha", "generator.beta",
    "generator.homophily", "generator.mixing", "generator.avg_degree",
    "generator.degree_exponent", "generator.community_exponent", "generator.max_degree",
    "placement.strategy",
    "cascade.epsilon", "cascade.max_rounds",
    "sweep.points", "sweep.grid",
    "train.max_steps", "train.batch_size", "train.learning_rate", "train.clip_ratio",
    "train.inner_epochs", "train.beta_kl", "train.kl_threshold", "train.baseline_decay",
    "query.text",
    "compare.texts", "compare.scorer_command",
    "ransac.points", "ransac.iterations", "ransac.threshold", "ransac.min_inliers",
)


@dataclass(frozen=True)
class ExperimentConfig:
    """A fully resolved run description (see _KNOWN_KEYS for the file syntax)."""

    seed: int = 0
    source: str = "generate"
    edges_path: str | None = None
    opinions_path: str | None = None
    communities_path: str | None = None
    generator: GeneratorConfig = GeneratorConfig()
    placement: PlacementStrategy = PlacementStrategy.CENTRAL
    cascade: CascadeConfig = CascadeConfig()
    sweep_points: int = 101
    grid: tuple[float, ...] | None = None
    train: TrainConfig = TrainConfig()
    query: str = DEFAULT_QUERY
    compare_texts: str | None = None
    scorer_command: str | None = None
    ransac_points: str | None = None
    ransac_iterations: int = 1000
    ransac_threshold: float | None = None
    ransac_min_inliers: int | None = None

    def component_seeds(self) -> dict[str, int]:
        """Deterministic per-component seeds derived from the master seed."""
        state = np.random.SeedSequence(self.seed).generate_state(4)
        return {"generator": int(state[0]), "louvain": int(state[1]),
                "train": int(state[2]), "ransac": int(state[3])}

    def sentiment_grid(self) -> np.ndarray:
        if self.grid is not None:
            return np.asarray(self.grid, dtype=float)
        return default_sentiment_grid(self.sweep_points)

    @classmethod
    def from_mapping(cls, mapping: dict[str, str]) -> "ExperimentConfig":
        errors: list[str] = []
        unknown = sorted(set(mapping) - set(_KNOWN_KEYS))
        if unknown:
            errors.append(f"unknown key(s): {', '.join(unknown)}")

        def take(key: str, parser, default):
            if key not in mapping:
                return default
            try:
                return parser(mapping[key])
            except (ValueError, TypeError) as exc:
                errors.append(f"{key}: {exc}")
                return default

        def parse_grid(text: str) -> tuple[float, ...]:
            values = tuple(float(tok) for tok in text.split(",") if tok.strip())
            if not values:
                raise ValueError("empty grid")
            bad = [v for v in values if not 0.0 <= v <= 1.0]
            if bad:
                raise ValueError(f"grid values outside [0, 1]: {bad}")
            return values

        seed = take("seed", int, 0)
        source = take("network.source", str, "generate")
        if source not in ("generate", "load"):
            errors.append(f"network.source must be 'generate' or 'load', got {source!r}")
        edges = mapping.get("network.edges")
        opinions = mapping.get("network.opinions")
        communities = mapping.get("network.communities")
        if source == "generate":
            clash = [k for k in ("network.edges", "network.opinions", "network.communities")
                     if k in mapping]
            if clash:
                errors.append("exactly one network source allowed: network.source is "
                              f"'generate' but {', '.join(clash)} also given")
        elif source == "load":
            if not edges:
                errors.append("network.source = load requires network.edges")
            if not opinions:
                errors.append("network.source = load requires network.opinions")

        profile = mapping.get("generator.profile")
        alpha = take("generator.alpha", float, None)
        beta = take("generator.beta", float, None)
        if profile is not None and (alpha is not None or beta is not None):
            errors.append("generator.profile conflicts with explicit generator.alpha/beta")
        if profile is not None:
            try:
                alpha, beta = opinion_profile(profile)
            except ValueError as exc:
                errors.append(str(exc))
                alpha, beta = 1.0, 1.0
        gen = GeneratorConfig(
            n=take("generator.n", int, 300),
            homophily=take("generator.homophily", float, 0.75),
            mixing=take("generator.mixing", float, 0.05),
            alpha=alpha if alpha is not None else 1.0,
            beta=beta if beta is not None else 1.0,
            avg_degree=take("generator.avg_degree", float, 10.0),
            degree_exponent=take("generator.degree_exponent", float, 2.5),
            community_exponent=take("generator.community_exponent", float, 1.5),
            max_degree=take("generator.max_degree", int, None),
            seed=0,  # replaced by the derived component seed at run time
        )
        placement = take("placement.strategy", PlacementStrategy.parse,
                         PlacementStrategy.CENTRAL)
        cascade = CascadeConfig(epsilon=take("cascade.epsilon", float, 0.2),
                                max_rounds=take("cascade.max_rounds", int, None))
        train_cfg = TrainConfig(
            max_steps=take("train.max_steps", int, 80),
            batch_size=take("train.batch_size", int, 8),
            learning_rate=take("train.learning_rate", float, 0.05),
            clip_ratio=take("train.clip_ratio", float, 0.2),
            inner_epochs=take("train.inner_epochs", int, 4),
            beta_kl=take("train.beta_kl", float, 0.05),
            kl_threshold=take("train.kl_threshold", float, 5.0),
            baseline_decay=take("train.baseline_decay", float, 0.9),
            seed=0,  # replaced by the derived component seed at run time
        )
        config = cls(
            seed=seed,
            source=source,
            edges_path=edges,
            opinions_path=opinions,
            communities_path=communities,
            generator=gen,
            placement=placement,
            cascade=cascade,
            sweep_points=take("sweep.points", int, 101),
            grid=take("sweep.grid", parse_grid, None),
            train=train_cfg,
            query=mapping.get("query.text", DEFAULT_QUERY),
            compare_texts=mapping.get("compare.texts"),
            scorer_command=mapping.get("compare.scorer_command"),
            ransac_points=mapping.get("ransac.points"),
            ransac_iterations=take("ransac.iterations", int, 1000),
            ransac_threshold=take("ransac.threshold", float, None),
            ransac_min_inliers=take("ransac.min_inliers", int, None),
        )
        if source == "generate":
            try:
                gen.validate()
            except ValueError as exc:
                errors.append(f"generator: {exc}")
        try:
            train_cfg.validate()
        except ValueError as exc:
            errors.append(f"train: {exc}")
        try:
            cascade.validate()
        except ValueError as exc:
            errors.append(f"cascade: {exc}")
        if config.sweep_points < 1:
            errors.append("sweep.points must be >= 1")
        if config.ransac_iterations < 1:
            errors.append("ransac.iterations must be >= 1")
        if errors:
            raise ConfigError("; ".join(errors))
        return config

    def to_manifest(self) -> str:
        """Canonical, replayable form: resolved values, no machine specifics."""
        lines = [f"seed = {self.seed}", f"network.source = {self.source}"]
        if self.source == "load":
            lines.append(f"network.edges = {self.edges_path}")
            lines.append(f"network.opinions = {self.opinions_path}")
            if self.communities_path:
                lines.append(f"network.communities = {self.communities_path}")
        else:
            g = self.generator
            lines += [
                f"generator.n = {g.n}",
                f"generator.alpha = {g.alpha!r}",
                f"generator.beta = {g.beta!r}",
                f"generator.homophily = {g.homophily!r}",
                f"generator.mixing = {g.mixing!r}",
                f"generator.avg_degree = {g.avg_degree!r}",
                f"generator.degree_exponent = {g.degree_exponent!r}",
                f"generator.community_exponent = {g.community_exponent!r}",
                f"generator.max_degree = {g.resolved_max_degree()}",
            ]
        lines.append(f"placement.strategy = {self.placement}")
        lines.append(f"cascade.epsilon = {self.cascade.epsilon!r}")
        if self.cascade.max_rounds is not None:
            lines.append(f"cascade.max_rounds = {self.cascade.max_rounds}")
        if self.grid is not None:
            lines.append("sweep.grid = " + ",".join(repr(v) for v in self.grid))
        else:
            lines.append(f"sweep.points = {self.sweep_points}")
        t = self.train
        lines += [
            f"train.max_steps = {t.max_steps}",
            f"train.batch_size = {t.batch_size}",
            f"train.learning_rate = {t.learning_rate!r}",
            f"train.clip_ratio = {t.clip_ratio!r}",
            f"train.inner_epochs = {t.inner_epochs}",
            f"train.beta_kl = {t.beta_kl!r}",
            f"train.kl_threshold = {t.kl_threshold!r}",
            f"train.baseline_decay = {t.baseline_decay!r}",
            f"query.text = {self.query}",
        ]
        if self.compare_texts:
            lines.append(f"compare.texts = {self.compare_texts}")
        if self.scorer_command:
            lines.append(f"compare.scorer_command = {self.scorer_command}")
        if self.ransac_points:
            lines.append(f"ransac.points = {self.ransac_points}")
        lines.append(f"ransac.iterations = {self.ransac_iterations}")
        if self.ransac_threshold is not None:
            lines.append(f"ransac.threshold = {self.ransac_threshold!r}")
        if self.ransac_min_inliers is not None:
            lines.append(f"ransac.min_inliers = {self.ransac_min_inliers}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ResolvedNetwork:
    network: SocialNetwork
    opinions: OpinionVector
    communities: CommunityPartition
    generated: GeneratedNetwork | None


def resolve_network(config: ExperimentConfig) -> ResolvedNetwork:
    """Generate or load the (network, opinions, communities) triple."""
    seeds = config.component_seeds()
    if config.source == "generate":
        gen = generate(GeneratorConfig(
            **{**config.generator.__dict__, "seed": seeds["generator"]}))
        return ResolvedNetwork(gen.network, gen.opinions, gen.communities, gen)
    network, _dropped = load_edge_list(config.edges_path)
    opinions = load_opinions(config.opinions_path, network)
    if config.communities_path:
        communities = load_communities(config.communities_path, network)
    else:
        communities = louvain(network, seed=seeds["louvain"])
    return ResolvedNetwork(network, opinions, communities, None)


def _write(path: Path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)


def write_network_files(resolved: ResolvedNetwork, out_dir: Path) -> list[Path]:
    net = resolved.network
    edge_lines = [f"{net.label_of(u)},{net.label_of(v)}" for u, v in net.edges()]
    opinion_lines = [f"{net.label_of(v)},{resolved.opinions[v]!r}"
                     for v in range(net.node_count)]
    community_lines = [f"{net.label_of(v)},{resolved.communities.of(v)}"
                       for v in range(net.node_count)]
    paths = [out_dir / "edges.csv", out_dir / "opinions.csv", out_dir / "communities.csv"]
    _write(paths[0], "\n".join(edge_lines) + "\n")
    _write(paths[1], "\n".join(opinion_lines) + "\n")
    _write(paths[2], "\n".join(community_lines) + "\n")
    return paths


def write_steplog_csv(logs: Sequence[StepLog], path: Path) -> None:
    rows = [StepLog.CSV_HEADER] + [log.csv_row() for log in logs]
    _write(path, "\n".join(rows) + "\n")


def read_steplog_csv(source: TextIO | str) -> list[dict[str, float]]:
    """Parse a step-log CSV back into dict rows (floats except 'step')."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = Path(source).read_text(encoding="utf-8")
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != StepLog.CSV_HEADER:
        raise DataError(f"step log must start with header {StepLog.CSV_HEADER!r}")
    columns = StepLog.CSV_HEADER.split(",")
    rows = []
    for ln in lines[1:]:
        parts = ln.split(",")
        if len(parts) != len(columns):
            raise DataError(f"step log row has {len(parts)} fields, expected {len(columns)}")
        row = {col: float(val) for col, val in zip(columns, parts)}
        row["step"] = int(parts[0])
        rows.append(row)
    return rows


@dataclass(frozen=True)
class RunResult:
    config: ExperimentConfig
    out_dir: Path
    source_node: int
    best_sentiment: float
    max_count: int
    train_result: TrainResult | None


def _placement_text(config: ExperimentConfig, resolved: ResolvedNetwork, node: int) -> str:
    lines = [f"placement.strategy = {config.placement}",
             f"placement.node = {resolved.network.label_of(node)}"]
    if config.placement is not PlacementStrategy.CENTRAL:
        lines.append(f"placement.community = {resolved.communities.of(node)}")
    lines.append(f"network.nodes = {resolved.network.node_count}")
    lines.append(f"network.edges = {resolved.network.edge_count}")
    lines.append(f"network.communities = {resolved.communities.community_count}")
    return "\n".join(lines) + "\n"


def run_experiment(config: ExperimentConfig, out_dir, *, stages: str = "train") -> RunResult:
    """Execute a run and write its artifacts.

    stages: how far to go — "generate", "place", "sweep", or "train" (full).
    The manifest is always written, so any artifact can be reproduced from
    its own output directory.
    """
    order = ("generate", "place", "sweep", "train")
    if stages not in order:
        raise ValueError(f"stages must be one of {order}")
    depth = order.index(stages)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    resolved = resolve_network(config)
    if resolved.generated is not None:
        write_network_files(resolved, out_dir)
    source_node = -1
    best_sentiment, max_count = math.nan, -1
    train_result: TrainResult | None = None
    if depth >= 1:
        source_node = select_injection(resolved.network, resolved.opinions,
                                       resolved.communities, config.placement)
        _write(out_dir / "placement.txt", _placement_text(config, resolved, source_node))
    if depth >= 2:
        grid = config.sentiment_grid()
        sweep = sentiment_sweep(resolved.network, resolved.opinions, source_node,
                                grid, config.cascade)
        _write(out_dir / "sweep.csv",
               "sentiment,count\n" + "\n".join(f"{s!r},{c}" for s, c in sweep) + "\n")
        best_sentiment, max_count = engagement_upper_bound(
            resolved.network, resolved.opinions, source_node, grid, config.cascade)
        _write(out_dir / "upper_bound.txt",
               f"best_sentiment = {best_sentiment!r}\nmax_count = {max_count}\n")
    if depth >= 3:
        env = Environment(network=resolved.network, opinions=resolved.opinions,
                          source=source_node, cascade=config.cascade,
                          scorer=LexiconScorer.bundled(),
                          realizer=TemplateRealizer.bundled(),
                          query=config.query)
        policy = SentimentPolicy.reference_init()
        train_cfg = TrainConfig(**{**config.train.__dict__,
                                   "seed": config.component_seeds()["train"]})

        def save_checkpoint(step: int, snapshot_policy: SentimentPolicy) -> None:
            snapshot_policy.save(out_dir / f"checkpoint_{step + 1:05d}.txt")

        train_result = train(env, policy, train_cfg, checkpoint_hook=save_checkpoint)
        write_steplog_csv(train_result.logs, out_dir / "steplog.csv")
        train_result.policy.save(out_dir / "final_policy.txt")
        stop = train_result.stop_reason
        _write(out_dir / "train_summary.txt",
               f"stop_reason = {stop}\nsteps = {len(train_result.logs)}\n")
    _write(out_dir / "manifest.txt", config.to_manifest())
    return RunResult(config=config, out_dir=out_dir, source_node=source_node,
                     best_sentiment=best_sentiment, max_count=max_count,
                     train_result=train_result)


@dataclass(frozen=True)
class CompareRecord:
    index: int
    source: str
    sentiment: float
    fluency: float
    simulated: int
    observed: float


def read_compare_texts(source: TextIO | str) -> list[tuple[str, str, float]]:
    """Parse `text<TAB>source<TAB>observed` records ('#' comments allowed)."""
    if hasattr(source, "read"):
        lines = source.read().splitlines()
    else:
        lines = Path(source).read_text(encoding="utf-8").splitlines()
    rows: list[tuple[str, str, float]] = []
    for lineno, raw in enumerate(lines, 1):
        if not raw.strip() or raw.startswith("#"):
            continue
        parts = raw.split("\t")
        if len(parts) != 3:
            raise DataError(f"texts line {lineno}: expected 'text<TAB>source<TAB>observed', "
                            f"got {raw!r}")
        text, source_label, observed = parts[0].strip(), parts[1].strip(), parts[2].strip()
        if not text or not source_label:
            raise DataError(f"texts line {lineno}: empty text or source")
        try:
            obs = float(observed)
        except ValueError:
            raise DataError(f"texts line {lineno}: bad observed count {observed!r}") from None
        rows.append((text, source_label, obs))
    if not rows:
        raise DataError("texts file has no records")
    return rows


def compare_engagement(network: SocialNetwork, opinions: OpinionVector,
                       rows: Sequence[tuple[str, str, float]], scorer: SentimentScorer,
                       cascade: CascadeConfig) -> list[CompareRecord]:
    """Simulate each text's cascade from its claimed source and pair with observations."""
    records = []
    for index, (text, source_label, observed) in enumerate(rows):
        try:
            source = network.id_of(source_label)
        except (KeyError, ValueError):
            raise DataError(f"texts row {index}: unknown source node {source_label!r}") from None
        sentiment = score_sentiment(scorer, text)
        fluency = fk_grade(text).grade
        simulated = propagate(network, opinions, source, sentiment, cascade).size
        records.append(CompareRecord(index=index, source=source_label, sentiment=sentiment,
                                     fluency=fluency, simulated=simulated, observed=observed))
    return records


COMPARE_HEADER = "index,source,sentiment,fluency,simulated,observed"


def write_compare_csv(records: Sequence[CompareRecord], path: Path) -> None:
    rows = [COMPARE_HEADER]
    rows += [f"{r.index},{r.source},{r.sentiment!r},{r.fluency!r},{r.simulated},{r.observed!r}"
             for r in records]
    _write(Path(path), "\n".join(rows) + "\n")


def run_compare(config: ExperimentConfig, out_dir) -> list[CompareRecord]:
    if not config.compare_texts:
        raise ConfigError("compare needs compare.texts in the config")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    resolved = resolve_network(config)
    rows = read_compare_texts(config.compare_texts)
    if config.scorer_command:
        with ExternalScorer(config.scorer_command.split()) as scorer:
            records = compare_engagement(resolved.network, resolved.opinions, rows,
                                         scorer, config.cascade)
    else:
        records = compare_engagement(resolved.network, resolved.opinions, rows,
                                     LexiconScorer.bundled(), config.cascade)
    write_compare_csv(records, out_dir / "compare.csv")
    _write(out_dir / "manifest.txt", config.to_manifest())
    return records


def read_points_csv(source: TextIO | str) -> np.ndarray:
    """Read (x, y) pairs: either a plain two-column file or a compare.csv."""
    if hasattr(source, "read"):
        lines = source.read().splitlines()
    else:
        lines = Path(source).read_text(encoding="utf-8").splitlines()
    lines = [ln for ln in lines if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise DataError("points file is empty")
    header = lines[0].split(",")
    if header == COMPARE_HEADER.split(","):
        sim, obs = header.index("simulated"), header.index("observed")
        pairs = []
        for ln in lines[1:]:
            parts = ln.split(",")
            pairs.append((float(parts[sim]), float(parts[obs])))
        return np.array(pairs)
    start = 1 if any(ch.isalpha() for ch in lines[0]) else 0
    pairs = []
    for lineno, ln in enumerate(lines[start:], start + 1):
        parts = [p for p in ln.replace(",", " ").split() if p]
        if len(parts) != 2:
            raise DataError(f"points line {lineno}: expected two columns, got {ln!r}")
        try:
            pairs.append((float(parts[0]), float(parts[1])))
        except ValueError:
            raise DataError(f"points line {lineno}: bad number in {ln!r}") from None
    if not pairs:
        raise DataError("points file has no data rows")
    return np.array(pairs)


def run_ransac(config: ExperimentConfig, out_dir) -> RansacFit:
    if not config.ransac_points:
        raise ConfigError("ransac needs ransac.points in the config")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    points = read_points_csv(config.ransac_points)
    fit = ransac_fit(points,
                     iterations=config.ransac_iterations,
                     residual_threshold=config.ransac_threshold,
                     min_inliers=config.ransac_min_inliers,
                     seed=config.component_seeds()["ransac"])
    _write(out_dir / "ransac.txt",
           f"slope = {fit.slope!r}\nintercept = {fit.intercept!r}\n"
           f"inliers = {fit.inlier_count}\npoints = {len(fit.inliers)}\n"
           f"iterations = {fit.iterations}\n")
    _write(out_dir / "manifest.txt", config.to_manifest())
    return fit
