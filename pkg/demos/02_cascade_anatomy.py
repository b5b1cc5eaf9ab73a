"""A bounded-confidence cascade, step by step.

A post spreads from its source along follow edges, but a follower only

engages (and re-shares) when the post's sentiment lands within epsilon of
their own opinion. This walks a six-user network where you can trace every
hop by hand.
"""

from engagesim import CascadeConfig, OpinionVector, SocialNetwork, propagate
from engagesim.cascade import reachability_oracle

#       0 --> 1 --> 2
#       |           |
#       v           v
#       3 --> 4 --> 5
net = SocialNetwork(6, [(0, 1), (1, 2), (0, 3), (2, 5), (3, 4), (4, 5)])
opinions = OpinionVector([0.50, 0.55, 0.60, 0.90, 0.85, 0.80])

# Sentiment 0.55 with a +-0.2 window: the top row (opinions 0.50-0.60)
# engages, user 3 (opinion 0.90) blocks the bottom row, and 5 at 0.80 is
# 0.25 away - just outside the window - so the path through 2 stops there.
result = propagate(net, opinions, 0, 0.55, CascadeConfig(epsilon=0.2))
print("sentiment 0.55, epsilon 0.2")
print(f"  engaged: {sorted(result.active)}  ({result.size} users, {result.rounds} rounds)")

# Tighten the window and only the exact-match follower engages.
result = propagate(net, opinions, 0, 0.55, CascadeConfig(epsilon=0.04))
print("sentiment 0.55, epsilon 0.04")
print(f"  engaged: {sorted(result.active)}")

# Widening epsilon can only grow the engaged set, never shrink it.
sizes = []
for eps in (0.05, 0.1, 0.2, 0.3, 0.5):
    sizes.append(propagate(net, opinions, 0, 0.55, CascadeConfig(epsilon=eps)).size)
print(f"sizes over widening windows: {sizes} (monotone)")

# The round-based simulation agrees with a path-based reachability check:
# a user engages iff some follow path from the source consists entirely of
# users whose opinions sit within the window.
for s in (0.3, 0.55, 0.85):
    sim = propagate(net, opinions, 0, s, CascadeConfig(epsilon=0.2)).active
    oracle = reachability_oracle(net, opinions, 0, s, CascadeConfig(epsilon=0.2))
    assert sim == oracle
    print(f"sentiment {s:.2f}: simulation == path oracle == {sorted(sim)}")
