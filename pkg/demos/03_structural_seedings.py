"""Winning seedings without search: king partitions, 3-kings and the two-half construction.

Run: python demos/03_structural_seedings.py
"""

import numpy as np

from knockout import (
    ModelSpec,
    certify,
    champion,
    find_king_partition,
    gen_cr,
    is_king,
    king_seeding,
    random_tournament,
    se_winners,
)
from knockout.constructors import cr_two_half_search

rng = np.random.default_rng(3)
t = random_tournament(16, rng)
king = next(v for v in range(16) if is_king(t, v) and find_king_partition(t, v) is not None)
p = find_king_partition(t, king)
print(f"king {king}: |A|={len(p.A)} |H|={len(p.H)} |I|={len(p.I)} |J|={len(p.J)}")

trace = []
s = king_seeding(t, p, trace)
for r in trace:
    print(f"  round with {r['players']:2d} players: |A| {r['A']} -> {r['A_after']}, "
          f"|H| {r['H']} -> {r['H_after']}, violations {r['violations']}")
print("seeding:", s.leaves, "champion:", champion(t, s))

# certify picks the cheapest certificate that applies
print("\ncertificates on this tournament (exact winners marked *):")
winners = se_winners(t)
for v in range(16):
    found = certify(t, v)
    mark = "*" if v in winners else " "
    print(f"  {v:2d}{mark} {found[0] if found else '-'}")

# Condorcet-random tournament: seed the bottom-ranked player through the weak half
for seed in range(200):
    t = gen_cr(ModelSpec("condorcet_random", 32, 0.3, seed))
    s = cr_two_half_search(t, 31, k=1)
    if s is not None:
        print(f"\nCR n=32 p=0.3 seed={seed}: player 31 wins with {s.leaves}")
        print("champion:", champion(t, s))
        break
