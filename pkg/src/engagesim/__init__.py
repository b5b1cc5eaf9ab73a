"""engagesim: sentiment-gated cascade simulation and policy training.

The package models content spreading through a directed follower network.
Each share carries a sentiment in [0, 1]; a follower passes it on only if
it lands within their confidence window.  On top of that simulator sits a
small policy-gradient trainer that learns which sentiment bin maximises a
combined fluency/engagement reward, plus utilities for generating synthetic
networks, scoring text, and validating the simulator against observations.
"""

from .cascade import (CascadeConfig, CascadeResult, default_sentiment_grid,
                      engagement_upper_bound, propagate, reachability_oracle,
                      sentiment_sweep)
from .errors import (ConfigError, DataError, EngageSimError, GenerationError,
                     RansacError, ScoringError, TrainingError)
from .experiment import (CompareRecord, ExperimentConfig, RunResult, compare_engagement,
                         parse_config_text, read_compare_texts, read_points_csv,
                         read_steplog_csv, run_compare, run_experiment, run_ransac)
from .graph import (CommunityPartition, OpinionVector, PlacementStrategy, SocialNetwork,
                    betweenness_centrality, load_communities, load_edge_list,
                    load_opinions, louvain, newman_modularity, select_injection)
from .netgen import (GeneratedNetwork, GeneratorConfig, generate, measure_homophily,
                     opinion_profile)
from .policy import (BIN_COUNT, GenerationSample, PolicySnapshot, SentimentPolicy,
                     TemplateRealizer, analytic_objective_gradient, bin_centers,
                     expected_reward, kl_reference, sample)
from .ransac import RansacFit, ransac_fit
from .scoring import (CallbackScorer, ExternalScorer, FluencyReport, LexiconScorer,
                      Reward, SentimentScorer, count_syllables, fk_grade, reward,
                      score_sentiment)
from .trainer import (Environment, SampleRecord, StepLog, TrainConfig, TrainResult,
                      moving_average, ppo_clip_update, train)

__version__ = "0.1.0"

__all__ = [
    "BIN_COUNT",
    "CallbackScorer",
    "CascadeConfig",
    "CascadeResult",
    "CommunityPartition",
    "CompareRecord",
    "ConfigError",
    "DataError",
    "EngageSimError",
    "Environment",
    "ExperimentConfig",
    "ExternalScorer",
    "FluencyReport",
    "GeneratedNetwork",
    "GenerationError",
    "GenerationSample",
    "GeneratorConfig",
    "LexiconScorer",
    "OpinionVector",
    "PlacementStrategy",
    "PolicySnapshot",
    "RansacError",
    "RansacFit",
    "Reward",
    "RunResult",
    "SampleRecord",
    "ScoringError",
    "SentimentPolicy",
    "SentimentScorer",
    "SocialNetwork",
    "StepLog",
    "TrainConfig",
    "TrainResult",
    "TrainingError",
    "analytic_objective_gradient",
    "betweenness_centrality",
    "bin_centers",
    "compare_engagement",
    "count_syllables",
    "default_sentiment_grid",
    "engagement_upper_bound",
    "expected_reward",
    "fk_grade",
    "generate",
    "kl_reference",
    "load_communities",
    "load_edge_list",
    "load_opinions",
    "louvain",
    "measure_homophily",
    "moving_average",
    "newman_modularity",
    "opinion_profile",
    "parse_config_text",
    "ppo_clip_update",
    "propagate",
    "ransac_fit",
    "reachability_oracle",
    "read_compare_texts",
    "read_points_csv",
    "read_steplog_csv",
    "reward",
    "run_compare",
    "run_experiment",
    "run_ransac",
    "sample",
    "score_sentiment",
    "select_injection",
    "sentiment_sweep",
    "train",
]
