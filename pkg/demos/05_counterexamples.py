"""The hand-built families where solution concepts and SE winners come apart.

Run: python demos/05_counterexamples.py
"""

from knockout import iterated_matrix_set, se_winners, uncovered_set
from knockout.models import build_itmatrix_example, build_uncovered_ratio_example, roles

t = build_uncovered_ratio_example(k=3, b=11)
r = roles(t)
unc, se = uncovered_set(t), se_winners(t)
print("x, y, A, B =", r["x"], r["y"], r["a"], r["b"])
print("uncovered:", sorted(unc))
print("se_winners:", sorted(se))
print(f"share of uncovered that can win: {len(unc & se)}/{len(unc)}")
print(f"share of winners that are uncovered: {len(unc & se)}/{len(se)}")

t = build_itmatrix_example(r=0.55, n=41)
x = roles(t)["x"][0]
print(f"\nA^2 1 example on n={t.n}: argmax {sorted(iterated_matrix_set(t, 2))}, "
      f"out(x)={t.scores[x]} of {t.n - 1}")
