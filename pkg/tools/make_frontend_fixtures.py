"""Regenerate frontend/test/fixtures/rewards.json from the installed package.

The frontend recombines fluency and engagement into rewards host-side; this
freezes the package's own reward arithmetic as the comparison oracle, at full
double precision (shortest round-trip strings).
"""

import json
from pathlib import Path

import numpy as np

from engagesim.scoring import reward

OUT = Path(__file__).resolve().parent.parent / "frontend" / "test" / "fixtures"


def main() -> None:
    rng = np.random.default_rng(2024)
    cases = []
    # spread over the regimes the trainer actually visits: negative fluency
    # (clamped to zero), tiny counts, and full-network cascades
    for _ in range(94):
        fluency = float(rng.uniform(-4.0, 20.0))
        engagement = int(rng.integers(0, 300))
        cases.append((fluency, engagement))
    cases += [(0.0, 0), (0.0, 250), (-1.45, 100), (4.0, 9),
              (15.028888888888888, 282), (14.444545454545452, 1)]
    rows = [{"fluency": f, "engagement": e, "reward": reward(f, e).value}
            for f, e in cases]
    OUT.mkdir(parents=True, exist_ok=True)
    path = OUT / "rewards.json"
    path.write_text(json.dumps(rows, indent=1) + "\n")
    print(f"wrote {len(rows)} cases to {path}")


if __name__ == "__main__":
    main()
