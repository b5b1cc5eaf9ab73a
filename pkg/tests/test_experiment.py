"""Config parsing, artifact writing, stage ladder, replay, compare, robust fit."""

import io
import sys

import numpy as np
import pytest

from engagesim.cascade import CascadeConfig
from engagesim.errors import ConfigError, DataError
from engagesim.experiment import (
    COMPARE_HEADER,
    DEFAULT_QUERY,
    CompareRecord,
    ExperimentConfig,
    compare_engagement,
    parse_config_text,
    read_compare_texts,
    read_points_csv,
    read_steplog_csv,
    resolve_network,
    run_compare,
    run_experiment,
    run_ransac,
    write_compare_csv,
    write_network_files,
    write_steplog_csv,
)
from engagesim.graph import PlacementStrategy, SocialNetwork, OpinionVector, \
    load_communities, load_edge_list, load_opinions
from engagesim.scoring import CallbackScorer
from engagesim.trainer import StepLog


SMALL_RUN = {
    "seed": "3",
    "generator.n": "60",
    "generator.avg_degree": "4.0",
    "sweep.points": "21",
    "train.max_steps": "12",
    "train.batch_size": "4",
}


def small_config(**overrides):
    mapping = {**SMALL_RUN, **{k: str(v) for k, v in overrides.items()}}
    return ExperimentConfig.from_mapping(mapping)


def write_toy_network(tmp_path):
    edges = tmp_path / "edges.csv"
    opinions = tmp_path / "opinions.csv"
    edges.write_text("0,1\n1,2\n2,0\n1,3\n")
    opinions.write_text("0,0.5\n1,0.5\n2,0.4\n3,0.9\n")
    return str(edges), str(opinions)


class TestParseConfigText:
    def test_basic(self):
        text = "# run setup\nseed = 7\n\ncascade.epsilon=0.3\n"
        assert parse_config_text(text) == {"seed": "7", "cascade.epsilon": "0.3"}

    def test_values_may_contain_equals(self):
        assert parse_config_text("query.text = a = b")["query.text"] == "a = b"

    @pytest.mark.parametrize("text,msg", [
        ("seed\n", "expected 'key = value'"),
        ("= 5\n", "expected 'key = value'"),
        ("seed =\n", "has no value"),
        ("seed = 1\nseed = 2\n", "duplicate key"),
    ])
    def test_errors(self, text, msg):
        with pytest.raises(ConfigError, match=msg):
            parse_config_text(text)


class TestFromMapping:
    def test_empty_mapping_gives_defaults(self):
        cfg = ExperimentConfig.from_mapping({})
        assert cfg.seed == 0
        assert cfg.source == "generate"
        assert cfg.placement is PlacementStrategy.CENTRAL
        assert cfg.cascade == CascadeConfig()
        assert cfg.sweep_points == 101
        assert cfg.query == DEFAULT_QUERY
        assert cfg.train.max_steps == 80

    def test_unknown_keys_listed(self):
        with pytest.raises(ConfigError, match=r"unknown key\(s\): turbo, warp"):
            ExperimentConfig.from_mapping({"warp": "9", "turbo": "on"})

    def test_generate_conflicts_with_paths(self):
        with pytest.raises(ConfigError, match="exactly one network source"):
            ExperimentConfig.from_mapping({"network.edges": "e.csv"})

    def test_load_requires_both_files(self):
        with pytest.raises(ConfigError, match="requires network.edges"):
            ExperimentConfig.from_mapping({"network.source": "load",
                                           "network.opinions": "o.csv"})
        with pytest.raises(ConfigError, match="requires network.opinions"):
            ExperimentConfig.from_mapping({"network.source": "load",
                                           "network.edges": "e.csv"})

    def test_bad_source_value(self):
        with pytest.raises(ConfigError, match="'generate' or 'load'"):
            ExperimentConfig.from_mapping({"network.source": "download"})

    def test_profile_sets_beta_parameters(self):
        cfg = ExperimentConfig.from_mapping({"generator.profile": "negative"})
        assert (cfg.generator.alpha, cfg.generator.beta) == (2.0, 8.0)

    def test_profile_conflicts_with_explicit_alpha(self):
        with pytest.raises(ConfigError, match="conflicts"):
            ExperimentConfig.from_mapping({"generator.profile": "positive",
                                           "generator.alpha": "3.0"})

    def test_unknown_profile_reported(self):
        with pytest.raises(ConfigError, match="unknown opinion profile"):
            ExperimentConfig.from_mapping({"generator.profile": "sideways"})

    def test_grid_parsing(self):
        cfg = ExperimentConfig.from_mapping({"sweep.grid": "0.0, 0.5, 1.0"})
        assert cfg.grid == (0.0, 0.5, 1.0)
        assert cfg.sentiment_grid().tolist() == [0.0, 0.5, 1.0]

    @pytest.mark.parametrize("grid,msg", [
        (",", "empty grid"),
        ("0.2,1.5", "outside"),
        ("0.2,banana", "sweep.grid"),
    ])
    def test_grid_errors(self, grid, msg):
        with pytest.raises(ConfigError, match=msg):
            ExperimentConfig.from_mapping({"sweep.grid": grid})

    def test_numeric_parse_failure_names_the_key(self):
        with pytest.raises(ConfigError, match="seed"):
            ExperimentConfig.from_mapping({"seed": "seven"})

    def test_bad_placement(self):
        with pytest.raises(ConfigError, match="unknown placement"):
            ExperimentConfig.from_mapping({"placement.strategy": "viral"})

    def test_component_validation_is_prefixed(self):
        with pytest.raises(ConfigError, match="generator: n must be"):
            ExperimentConfig.from_mapping({"generator.n": "4"})
        with pytest.raises(ConfigError, match="train: batch_size"):
            ExperimentConfig.from_mapping({"train.batch_size": "0"})
        with pytest.raises(ConfigError, match="cascade: epsilon"):
            ExperimentConfig.from_mapping({"cascade.epsilon": "3.0"})

    def test_generator_not_validated_for_loaded_networks(self):
        cfg = ExperimentConfig.from_mapping({
            "network.source": "load", "network.edges": "e.csv",
            "network.opinions": "o.csv", "generator.n": "4"})
        assert cfg.generator.n == 4  # kept but unused

    def test_errors_are_aggregated(self):
        with pytest.raises(ConfigError, match="seed.*;.*sweep.points"):
            ExperimentConfig.from_mapping({"seed": "x", "sweep.points": "0"})

    def test_component_seeds_deterministic_and_derived(self):
        cfg = ExperimentConfig.from_mapping({"seed": "11"})
        seeds = cfg.component_seeds()
        state = np.random.SeedSequence(11).generate_state(4)
        assert seeds == {"generator": int(state[0]), "louvain": int(state[1]),
                         "train": int(state[2]), "ransac": int(state[3])}
        assert cfg.component_seeds() == seeds
        other = ExperimentConfig.from_mapping({"seed": "12"}).component_seeds()
        assert other != seeds


class TestManifest:
    def test_round_trip_is_a_fixed_point(self):
        cfg = small_config(**{
            "cascade.epsilon": "0.3",
            "cascade.max_rounds": "9",
            "placement.strategy": "echo-high",
            "train.kl_threshold": "0.5",
            "query.text": "Dogs are the most",
            "ransac.iterations": "500",
            "ransac.threshold": "0.15",
            "ransac.min_inliers": "30",
        })
        manifest = cfg.to_manifest()
        replayed = ExperimentConfig.from_mapping(parse_config_text(manifest))
        assert replayed.to_manifest() == manifest
        assert replayed.component_seeds() == cfg.component_seeds()
        assert replayed.placement is cfg.placement
        assert replayed.cascade == cfg.cascade
        assert replayed.train == cfg.train

    def test_grid_survives_round_trip(self):
        cfg = ExperimentConfig.from_mapping({"sweep.grid": "0.1,0.25,0.9"})
        replayed = ExperimentConfig.from_mapping(parse_config_text(cfg.to_manifest()))
        assert replayed.grid == cfg.grid

    def test_load_manifest_keeps_paths(self, tmp_path):
        edges, opinions = write_toy_network(tmp_path)
        cfg = ExperimentConfig.from_mapping({
            "network.source": "load",
            "network.edges": edges,
            "network.opinions": opinions,
        })
        manifest = cfg.to_manifest()
        assert f"network.edges = {edges}" in manifest
        replayed = ExperimentConfig.from_mapping(parse_config_text(manifest))
        assert replayed.to_manifest() == manifest

    def test_generate_manifest_resolves_profile_and_max_degree(self):
        cfg = ExperimentConfig.from_mapping({"generator.profile": "positive"})
        manifest = cfg.to_manifest()
        assert "generator.profile" not in manifest
        assert "generator.alpha = 8.0" in manifest
        assert "generator.max_degree = 30" in manifest


class TestResolveNetwork:
    def test_generate_uses_derived_seed(self):
        cfg = small_config()
        resolved = resolve_network(cfg)
        assert resolved.generated is not None
        assert resolved.network.node_count == 60
        again = resolve_network(cfg)
        assert list(resolved.network.edges()) == list(again.network.edges())
        assert resolved.opinions.values.tolist() == again.opinions.values.tolist()

    def test_master_seed_changes_everything(self):
        a = resolve_network(small_config(seed=1))
        b = resolve_network(small_config(seed=2))
        assert list(a.network.edges()) != list(b.network.edges())

    def test_load_with_communities_file(self, tmp_path):
        edges, opinions = write_toy_network(tmp_path)
        comm = tmp_path / "comm.csv"
        comm.write_text("0,0\n1,0\n2,0\n3,1\n")
        cfg = ExperimentConfig.from_mapping({
            "network.source": "load", "network.edges": edges,
            "network.opinions": opinions, "network.communities": str(comm)})
        resolved = resolve_network(cfg)
        assert resolved.generated is None
        assert resolved.communities.assignment.tolist() == [0, 0, 0, 1]

    def test_load_without_communities_detects_them(self, tmp_path):
        edges, opinions = write_toy_network(tmp_path)
        cfg = ExperimentConfig.from_mapping({
            "network.source": "load", "network.edges": edges,
            "network.opinions": opinions})
        resolved = resolve_network(cfg)
        assert resolved.communities.community_count >= 1
        assert len(resolved.communities) == 4


class TestArtifactFiles:
    def test_network_files_round_trip(self, tmp_path):
        resolved = resolve_network(small_config())
        write_network_files(resolved, tmp_path)
        net, dropped = load_edge_list(str(tmp_path / "edges.csv"))
        assert dropped == 0
        assert list(net.edges()) == list(resolved.network.edges())
        opinions = load_opinions(str(tmp_path / "opinions.csv"), net)
        assert opinions.values.tolist() == resolved.opinions.values.tolist()
        communities = load_communities(str(tmp_path / "communities.csv"), net)
        assert communities == resolved.communities

    def test_steplog_round_trip(self, tmp_path):
        logs = [StepLog(step=i, reward=i / 3.0, engagement=float(i * 2),
                        sentiment=0.1 * i, fluency=14.4445 + i, kl=i / 7.0,
                        entropy=3.0 - i / 5.0) for i in range(5)]
        path = tmp_path / "steplog.csv"
        write_steplog_csv(logs, path)
        rows = read_steplog_csv(str(path))
        assert len(rows) == 5
        for log, row in zip(logs, rows):
            assert row["step"] == log.step
            assert row["reward"] == log.reward  # repr round-trip is exact
            assert row["kl"] == log.kl

    def test_steplog_reader_accepts_streams(self):
        text = StepLog.CSV_HEADER + "\n0,1.0,2.0,0.5,14.0,0.0,3.0\n"
        rows = read_steplog_csv(io.StringIO(text))
        assert rows[0]["engagement"] == 2.0

    def test_steplog_reader_rejects_bad_files(self):
        with pytest.raises(DataError, match="header"):
            read_steplog_csv(io.StringIO("nope\n1,2\n"))
        with pytest.raises(DataError, match="fields"):
            read_steplog_csv(io.StringIO(StepLog.CSV_HEADER + "\n1,2\n"))


class TestRunExperimentStages:
    def artifact_names(self, out_dir):
        return {p.name for p in out_dir.iterdir()}

    def test_generate_stage(self, tmp_path):
        run_experiment(small_config(), tmp_path / "out", stages="generate")
        assert self.artifact_names(tmp_path / "out") == {
            "edges.csv", "opinions.csv", "communities.csv", "manifest.txt"}

    def test_place_stage(self, tmp_path):
        result = run_experiment(small_config(), tmp_path / "out", stages="place")
        names = self.artifact_names(tmp_path / "out")
        assert "placement.txt" in names
        assert "sweep.csv" not in names
        text = (tmp_path / "out" / "placement.txt").read_text()
        assert f"placement.node = {result.source_node}" in text
        assert "placement.community" not in text  # central placement

    def test_place_stage_community_strategy(self, tmp_path):
        cfg = small_config(**{"placement.strategy": "echo-low"})
        result = run_experiment(cfg, tmp_path / "out", stages="place")
        text = (tmp_path / "out" / "placement.txt").read_text()
        assert "placement.community =" in text
        assert result.source_node >= 0

    def test_sweep_stage(self, tmp_path):
        result = run_experiment(small_config(), tmp_path / "out", stages="sweep")
        out = tmp_path / "out"
        sweep_lines = (out / "sweep.csv").read_text().splitlines()
        assert sweep_lines[0] == "sentiment,count"
        assert len(sweep_lines) == 1 + 21
        ub_text = (out / "upper_bound.txt").read_text()
        assert f"best_sentiment = {result.best_sentiment!r}" in ub_text
        assert f"max_count = {result.max_count}" in ub_text
        counts = [int(ln.split(",")[1]) for ln in sweep_lines[1:]]
        assert result.max_count == max(counts)

    def test_train_stage_full_artifacts(self, tmp_path):
        result = run_experiment(small_config(), tmp_path / "out", stages="train")
        names = self.artifact_names(tmp_path / "out")
        assert {"steplog.csv", "final_policy.txt", "train_summary.txt",
                "checkpoint_00010.txt"} <= names
        assert "checkpoint_00020.txt" not in names  # only 12 steps ran
        rows = read_steplog_csv(str(tmp_path / "out" / "steplog.csv"))
        assert len(rows) == len(result.train_result.logs) == 12
        summary = (tmp_path / "out" / "train_summary.txt").read_text()
        assert "stop_reason = max-steps" in summary
        assert "steps = 12" in summary

    def test_invalid_stage_name(self, tmp_path):
        with pytest.raises(ValueError, match="stages"):
            run_experiment(small_config(), tmp_path / "out", stages="everything")

    def test_loaded_network_writes_no_network_files(self, tmp_path):
        edges, opinions = write_toy_network(tmp_path)
        cfg = ExperimentConfig.from_mapping({
            "network.source": "load", "network.edges": edges,
            "network.opinions": opinions, "sweep.points": "11",
            "train.max_steps": "3", "train.batch_size": "2"})
        run_experiment(cfg, tmp_path / "out", stages="train")
        names = self.artifact_names(tmp_path / "out")
        assert "edges.csv" not in names
        assert "steplog.csv" in names

    def test_train_seed_comes_from_master_seed(self, tmp_path):
        a = run_experiment(small_config(seed=5), tmp_path / "a", stages="train")
        b = run_experiment(small_config(seed=6), tmp_path / "b", stages="train")
        assert (a.train_result.policy.logits.tolist()
                != b.train_result.policy.logits.tolist())


class TestManifestReplay:
    def test_replay_is_byte_identical(self, tmp_path):
        first = tmp_path / "first"
        run_experiment(small_config(), first, stages="train")
        manifest = (first / "manifest.txt").read_text()
        replay_cfg = ExperimentConfig.from_mapping(parse_config_text(manifest))
        second = tmp_path / "second"
        run_experiment(replay_cfg, second, stages="train")
        first_names = {p.name for p in first.iterdir()}
        assert first_names == {p.name for p in second.iterdir()}
        for name in sorted(first_names):
            assert (first / name).read_bytes() == (second / name).read_bytes(), name


class TestComparePipeline:
    def test_read_compare_texts(self, tmp_path):
        p = tmp_path / "texts.tsv"
        p.write_text("# corpus\nA happy post\t0\t14\nA sad post\t1\t3.5\n")
        rows = read_compare_texts(str(p))
        assert rows == [("A happy post", "0", 14.0), ("A sad post", "1", 3.5)]

    @pytest.mark.parametrize("body,msg", [
        ("text only\n", "expected"),
        ("\t0\t4\n", "empty text"),
        ("text\t0\tmany\n", "bad observed"),
        ("# nothing\n", "no records"),
    ])
    def test_read_compare_texts_errors(self, body, msg, tmp_path):
        p = tmp_path / "texts.tsv"
        p.write_text(body)
        with pytest.raises(DataError, match=msg):
            read_compare_texts(str(p))

    def test_compare_engagement_simulates_each_row(self):
        net = SocialNetwork(3, [(0, 1), (1, 2)])
        opinions = OpinionVector([0.5, 0.5, 0.9])
        scorer = CallbackScorer(lambda text: 0.5 if "mild" in text else 0.9)
        rows = [("a mild post", "0", 2.0), ("a spicy post", "0", 3.0)]
        records = compare_engagement(net, opinions, rows, scorer, CascadeConfig(0.2))
        # 0.5 carries through node 1 but not node 2; 0.9 is blocked at node 1
        assert [r.simulated for r in records] == [2, 1]
        assert records[0].sentiment == 0.5
        assert records[1].sentiment == 0.9
        assert records[0].observed == 2.0
        assert all(isinstance(r, CompareRecord) for r in records)

    def test_compare_engagement_unknown_source(self):
        net = SocialNetwork(2, [(0, 1)])
        with pytest.raises(DataError, match="unknown source"):
            compare_engagement(net, OpinionVector([0.5, 0.5]),
                               [("post", "zebra", 1.0)],
                               CallbackScorer(lambda _: 0.5), CascadeConfig())

    def test_run_compare_writes_artifacts(self, tmp_path):
        edges, opinions = write_toy_network(tmp_path)
        texts = tmp_path / "texts.tsv"
        texts.write_text("Cats are the most wonderful\t0\t3\nmeh\t2\t1\n")
        cfg = ExperimentConfig.from_mapping({
            "network.source": "load", "network.edges": edges,
            "network.opinions": opinions, "compare.texts": str(texts)})
        records = run_compare(cfg, tmp_path / "out")
        assert len(records) == 2
        lines = (tmp_path / "out" / "compare.csv").read_text().splitlines()
        assert lines[0] == COMPARE_HEADER
        assert len(lines) == 3
        assert (tmp_path / "out" / "manifest.txt").exists()

    def test_run_compare_requires_texts(self, tmp_path):
        with pytest.raises(ConfigError, match="compare.texts"):
            run_compare(small_config(), tmp_path / "out")

    def test_run_compare_with_external_scorer(self, tmp_path):
        edges, opinions = write_toy_network(tmp_path)
        script = tmp_path / "scorer.py"
        script.write_text(
            "import sys\n"
            "for line in sys.stdin:\n"
            "    cmd, _, text = line.rstrip('\\n').partition('\\t')\n"
            "    print(0.9 if 'happy' in text else 0.4)\n"
            "    sys.stdout.flush()\n")
        texts = tmp_path / "texts.tsv"
        texts.write_text("a happy post\t0\t4\na plain post\t0\t2\n")
        cfg = ExperimentConfig.from_mapping({
            "network.source": "load", "network.edges": edges,
            "network.opinions": opinions, "compare.texts": str(texts),
            "compare.scorer_command": f"{sys.executable} -u {script}"})
        records = run_compare(cfg, tmp_path / "out")
        assert records[0].sentiment == 0.9
        assert records[1].sentiment == 0.4


class TestPointsAndRansacRun:
    def test_read_points_plain_two_column(self, tmp_path):
        p = tmp_path / "points.csv"
        p.write_text("x,y\n0.0,1.0\n1.0,3.0\n")
        assert read_points_csv(str(p)).tolist() == [[0.0, 1.0], [1.0, 3.0]]

    def test_read_points_whitespace_no_header(self):
        pts = read_points_csv(io.StringIO("0 1\n2 5\n"))
        assert pts.tolist() == [[0.0, 1.0], [2.0, 5.0]]

    def test_read_points_from_compare_csv(self, tmp_path):
        records = [CompareRecord(0, "0", 0.5, 14.0, 7, 6.5),
                   CompareRecord(1, "1", 0.6, 14.0, 3, 4.0)]
        path = tmp_path / "compare.csv"
        write_compare_csv(records, path)
        pts = read_points_csv(str(path))
        assert pts.tolist() == [[7.0, 6.5], [3.0, 4.0]]

    @pytest.mark.parametrize("body,msg", [
        ("", "empty"),
        ("x,y\n", "no data rows"),
        ("1,2,3\n", "two columns"),
        ("0,1\n1,apple\n", "bad number"),
    ])
    def test_read_points_errors(self, body, msg):
        with pytest.raises(DataError, match=msg):
            read_points_csv(io.StringIO(body))

    def test_run_ransac_artifacts(self, tmp_path):
        rng = np.random.default_rng(0)
        x = rng.uniform(0, 1, 100)
        y = 2.0 * x + 1.0 + rng.normal(0, 0.05, 100)
        pts = tmp_path / "points.csv"
        pts.write_text("\n".join(f"{float(a)!r},{float(b)!r}"
                                 for a, b in zip(x, y)) + "\n")
        cfg = ExperimentConfig.from_mapping({
            "seed": "4", "ransac.points": str(pts), "ransac.threshold": "0.15"})
        fit = run_ransac(cfg, tmp_path / "out")
        assert fit.slope == pytest.approx(2.0, abs=0.1)
        text = (tmp_path / "out" / "ransac.txt").read_text()
        assert f"slope = {fit.slope!r}" in text
        assert f"inliers = {fit.inlier_count}" in text
        assert "points = 100" in text
        assert (tmp_path / "out" / "manifest.txt").exists()

    def test_run_ransac_requires_points(self, tmp_path):
        with pytest.raises(ConfigError, match="ransac.points"):
            run_ransac(small_config(), tmp_path / "out")

    def test_run_ransac_deterministic_per_master_seed(self, tmp_path):
        pts = tmp_path / "points.csv"
        rng = np.random.default_rng(1)
        x = rng.uniform(0, 1, 50)
        y = 1.0 * x + rng.normal(0, 0.1, 50)
        pts.write_text("\n".join(f"{float(a)!r},{float(b)!r}"
                                 for a, b in zip(x, y)) + "\n")
        cfg = ExperimentConfig.from_mapping({"seed": "9", "ransac.points": str(pts)})
        a = run_ransac(cfg, tmp_path / "a")
        b = run_ransac(cfg, tmp_path / "b")
        assert (a.slope, a.intercept) == (b.slope, b.intercept)
