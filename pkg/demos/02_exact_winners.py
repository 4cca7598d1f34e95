"""Who can win some bracket? Exact answer by subset DP, checked against brute force.

Run: python demos/02_exact_winners.py
"""

import time

import numpy as np

from knockout import brute_force_winners, champion, fix_for, random_tournament, se_winners

rng = np.random.default_rng(1)
t = random_tournament(8, rng)
print("n=8 scores:", t.scores)
print("se_winners (DP):     ", sorted(se_winners(t)))
print("brute force (315 brackets):", sorted(brute_force_winners(t)))

weakest = min(se_winners(t), key=lambda v: t.scores[v])
s = fix_for(t, weakest)
print(f"\nweakest winner {weakest} (out-degree {t.scores[weakest]}) wins with seeding {s.leaves}")
print("replayed champion:", champion(t, s))

t16 = random_tournament(16, rng)
start = time.perf_counter()
w = se_winners(t16)
print(f"\nn=16: {len(w)} of 16 players can win; DP took {1000 * (time.perf_counter() - start):.1f} ms")
