"""Classical tournament solutions next to the exact SE winners.

Run: python demos/04_tournament_solutions.py
"""

import numpy as np

from knockout import (
    bipartisan_set,
    copeland_set,
    iterated_matrix_set,
    markov_set,
    maximal_lottery,
    random_tournament,
    se_winners,
    slater_set,
    uncovered_set,
)
from knockout.models import build_bipartisan_example
from knockout.solutions import kpath_scores

rng = np.random.default_rng(4)
t = random_tournament(8, rng)
print("scores:", t.scores)
print("se_winners:", sorted(se_winners(t)))
for name, f in [("copeland", copeland_set), ("uncovered", uncovered_set), ("slater", slater_set),
                ("markov", markov_set)]:
    print(f"{name:>10}: {sorted(f(t))}")
print(f"{'itmat(2)':>10}: {sorted(iterated_matrix_set(t, 2))}")
print(f"{'kpaths(3)':>10}: {kpath_scores(t, 3).scores}")
print(f"{'lottery':>10}:", [str(q) for q in maximal_lottery(t)])

# the weakest player can sit in the bipartisan set without being able to win a bracket
t = build_bipartisan_example(8)
support, q = bipartisan_set(t)
print("\ntransitive n=8 with 7 beating 0")
print("bipartisan support:", sorted(support), "lottery:", np.round(q, 4))
print("se_winners:", sorted(se_winners(t)))
