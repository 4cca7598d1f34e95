"""Random tournament models and a small reproducible experiment sweep.

Run: python demos/06_models_and_experiments.py
"""

import numpy as np

from knockout import ModelSpec, gen_cr, gen_flexible, superkings
from knockout.experiments import run_experiment

spec = ModelSpec("condorcet_random", 1000, 0.3, seed=123)
t = gen_cr(spec)
upsets = np.tril(np.asarray(t.matrix), -1).sum() / (1000 * 999 / 2)
print(f"CR n=1000 p=0.3: upset fraction {upsets:.4f}")

spec = ModelSpec("flexible", 128, 0.3, seed=5, delta=0.25, adversary_policy="lower")
t, random_pairs = gen_flexible(spec)
print(f"flexible n=128 delta=0.25: {random_pairs.sum() // 2} random pairs, "
      f"{len(superkings(t))} superkings")

report = run_experiment("cr-sweep", {"n": [16], "p": [0.0, 0.1, 0.3, 0.49]}, trials=40, seed=0,
                        metrics=["se_winner_fraction", "superking_fraction"])
print()
print(report.summary_csv())
