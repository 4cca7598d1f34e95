"""Tournaments, brackets and kings.

Run: python demos/01_brackets_and_kings.py
"""

import numpy as np

from knockout import Seeding, is_3king, is_king, is_superking, make_tournament, play_bracket, random_tournament

# a 3-cycle among 0, 1, 2 and a sink player 3 that everyone beats
t = make_tournament(4, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)])
print("out-degrees:", t.scores)

log = play_bracket(t, Seeding((1, 2, 0, 3)))
for r, matches in enumerate(log.rounds, 1):
    print(f"round {r}:", ", ".join(f"{w} beat {l}" for w, l in matches))
print("champion:", log.champion)

# swapping both players of every first-round match never changes the champion
print("swapped pairs champion:", play_bracket(t, Seeding((1, 2, 0, 3)).swapped_pairs()).champion)

# kings reach everyone in two steps, 3-kings in three
rng = np.random.default_rng(0)
t = random_tournament(16, rng)
kings = [v for v in range(16) if is_king(t, v)]
print("\nrandom n=16 tournament")
print("kings:", kings)
print("3-kings:", [v for v in range(16) if is_3king(t, v)])
print("superkings:", [v for v in range(16) if is_superking(t, v)])
