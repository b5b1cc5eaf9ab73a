"""
Sweeping sentiment to find the engagement ceiling
=================================================

Before training anything, ask the simulator directly: over a grid of
sentiment values, how many users would each one reach? The maximum is the
ceiling any content policy can hope for on this network.
"""

import numpy as np

from engagesim import (
    CascadeConfig,
    GeneratorConfig,
    PlacementStrategy,
    default_sentiment_grid,
    engagement_upper_bound,
    generate,
    select_injection,
)
from engagesim.cascade import sentiment_sweep
from engagesim.netgen import opinion_profile

alpha, beta = opinion_profile("negative")
g = generate(GeneratorConfig(n=300, homophily=0.75, mixing=0.05,
                             alpha=alpha, beta=beta, seed=4))

# Post from the most central user (highest betweenness).
source = select_injection(g.network, g.opinions, None, PlacementStrategy.CENTRAL)
print(f"injecting at user {source} (central placement)")

grid = default_sentiment_grid(101)
curve = sentiment_sweep(g.network, g.opinions, source, grid, CascadeConfig(epsilon=0.2))
best_s, best_count = engagement_upper_bound(g.network, g.opinions, source, grid,
                                            CascadeConfig(epsilon=0.2))
print(f"upper bound: {best_count} engaged users at sentiment {best_s:.2f}")
print(f"(climate is negative: mean opinion {np.mean(g.opinions.values):.3f})")

# Text-mode plot of the sweep, one row per 0.05 of sentiment.
print("\nsentiment   engaged")
for s, count in curve[::5]:
    bar = "#" * round(40 * count / best_count)
    print(f"   {s:.2f}     {count:4d} {bar}")
