"""Seeded experiment suites with long-format CSV output.

Each trial's seed is a hash of ``(master seed, experiment, grid index,
trial index)``, so any row can be regenerated on its own and adding grid
points never disturbs existing trials.
"""

from __future__ import annotations

import csv
import hashlib
import io
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import constructors, exact, models, solutions
from .core import Tournament, covers, dominates, is_power_of_two, random_tournament, superkings

EXPERIMENTS = ("cr-sweep", "flexible-sweep", "solutions-containment", "counterexample-audit")
ROW_FIELDS = ("experiment", "grid_index", "trial", "seed", "n", "p", "delta", "adversary", "metric", "value")

DEFAULT_GRIDS = {
    "cr-sweep": {"n": [16], "p": [0.05, 0.1, 0.2, 0.3, 0.4, 0.49]},
    "flexible-sweep": {"n": [128], "p": [0.3], "delta": [0.1, 0.25, 0.5], "adversary": ["lower", "random"]},
    "solutions-containment": {"n": [8]},
    "counterexample-audit": {},
}


class ExperimentError(ValueError):
    pass


def trial_seed(master: int, name: str, grid_index: int, trial: int) -> int:
    digest = hashlib.blake2b(f"{master}:{name}:{grid_index}:{trial}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "little")


def half_width(values, binomial: bool = True) -> float:
    """95% half-width of the mean: binomial for rates, normal otherwise."""
    x = np.asarray(values, dtype=float)
    if len(x) == 0:
        return float("nan")
    if binomial:
        m = x.mean()
        return 1.96 * math.sqrt(max(m * (1 - m), 0.0) / len(x))
    return 1.96 * x.std(ddof=1) / math.sqrt(len(x)) if len(x) > 1 else 0.0


def is_rate(metric: str) -> bool:
    return metric.endswith(("_fraction", "_success")) or "." in metric


def fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


@dataclass
class ExperimentReport:
    name: str
    config: dict
    rows: list[dict] = field(default_factory=list)

    def summary(self) -> list[dict]:
        """Mean and 95% half-width per (grid point, metric), in first-seen order."""
        groups: dict[tuple, list] = {}
        for r in self.rows:
            key = (r["grid_index"], r["n"], r["p"], r["delta"], r["adversary"], r["metric"])
            groups.setdefault(key, []).append(r["value"])
        out = []
        for (gi, n, p, delta, adv, metric), vals in groups.items():
            out.append({
                "grid_index": gi, "n": n, "p": p, "delta": delta, "adversary": adv, "metric": metric,
                "trials": len(vals), "mean": float(np.mean(vals)), "half_width": half_width(vals, is_rate(metric)),
            })
        return out

    def stat(self, metric: str, **point) -> dict:
        """The summary entry for ``metric`` at the grid point matching ``point``."""
        for s in self.summary():
            if s["metric"] == metric and all(s[k] == v for k, v in point.items()):
                return s
        raise KeyError((metric, point))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(ROW_FIELDS)
        for r in self.rows:
            w.writerow([fmt(r[k]) for k in ROW_FIELDS])
        return buf.getvalue()

    def summary_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        cols = ("grid_index", "n", "p", "delta", "adversary", "metric", "trials", "mean", "half_width")
        w.writerow(cols)
        for s in self.summary():
            w.writerow([fmt(s[k]) for k in cols])
        return buf.getvalue()


# -- per-trial work -------------------------------------------------------------------


def _exact_ok(n: int) -> bool:
    return is_power_of_two(n) and n <= exact.MAX_N


def _certified_fraction(t: Tournament, cr: bool, k: float) -> float:
    return sum(constructors.certify(t, v, cr=cr, k=k) is not None for v in range(t.n)) / t.n


def _sweep_trial(kind: str, point: dict, seed: int, metrics, two_half_k: float) -> list[tuple[str, float]]:
    n, p = point["n"], point["p"]
    if kind == "cr-sweep":
        spec = models.ModelSpec("condorcet_random", n, p, seed)
        t = models.gen_cr(spec)
    else:
        spec = models.ModelSpec("flexible", n, p, seed, delta=point["delta"],
                                adversary_policy=point["adversary"])
        t, _ = models.gen_flexible(spec)
    out = []
    if "se_winner_fraction" in metrics and _exact_ok(n):
        out.append(("se_winner_fraction", len(exact.se_winners(t)) / n))
    if "superking_fraction" in metrics:
        out.append(("superking_fraction", len(superkings(t)) / n))
    if "certified_fraction" in metrics and is_power_of_two(n):
        out.append(("certified_fraction", _certified_fraction(t, kind == "cr-sweep", two_half_k)))
    if "two_half_success" in metrics and kind == "cr-sweep" and is_power_of_two(n):
        ok = constructors.cr_two_half_search(t, n - 1, two_half_k) is not None
        out.append(("two_half_success", float(ok)))
    return out


def _containment_trial(point: dict, seed: int) -> list[tuple[str, float]]:
    n = point["n"]
    t = random_tournament(n, np.random.default_rng(seed))
    winners = exact.se_winners(t)
    out = []
    for name, chosen in (
        ("copeland_violations", solutions.copeland_set(t)),
        ("slater_violations", solutions.slater_set(t)),
        ("markov_violations", solutions.markov_set(t)),
        ("bipartisan_max_copeland_violations", solutions.max_copeland_bipartisan(t)),
    ):
        out.append((name, float(len(chosen - winners))))
    floor_bad = 0
    for k in (1, 2, 3):
        if k + 1 > n:
            continue
        best = max(solutions.kpath_scores(t, k).scores)
        if best * n < math.comb(n, k + 1):
            floor_bad += 1
    out.append(("kpath_floor_violations", float(floor_bad)))
    _, residual = solutions.markov_stationary(t) if solutions.top_cycle(t) else (None, 0.0)
    out.append(("markov_residual", residual))
    return out


def audit_facts() -> list[tuple[str, float]]:
    """Re-check every asserted fact of the three hand-built constructions."""
    facts = []
    t = models.build_uncovered_ratio_example(3, 11)
    r = models.roles(t)
    x, y, A, B = r["x"][0], r["y"][0], set(r["a"]), set(r["b"])
    unc = solutions.uncovered_set(t)
    se = exact.se_winners(t)
    facts += [
        ("uncovered_ratio.x_beats_y_and_B", float(dominates(t, {x}, {y} | B))),
        ("uncovered_ratio.y_beats_B_and_A", float(dominates(t, {y}, B | A))),
        ("uncovered_ratio.B_beats_A", float(dominates(t, B, A))),
        ("uncovered_ratio.A_beats_x", float(dominates(t, A, {x}))),
        ("uncovered_ratio.uncovered_is_A_x_y", float(unc == A | {x, y})),
        ("uncovered_ratio.se_is_x_y_B", float(se == B | {x, y})),
        ("uncovered_ratio.A_below_log_n_wins", float(all(t.scores[a] < math.log2(t.n) for a in A))),
        ("uncovered_ratio.uncovered_share_in_se", len(unc & se) / len(unc)),
        ("uncovered_ratio.se_share_in_uncovered", len(unc & se) / len(se)),
        ("uncovered_ratio.copeland_is_y", float(solutions.copeland_set(t) == {y})),
    ]
    t = models.build_itmatrix_example(0.55, 41)
    x = models.roles(t)["x"][0]
    facts += [
        ("itmatrix.itmat2_is_x", float(solutions.iterated_matrix_set(t, 2) == {x})),
        ("itmatrix.out_x", float(t.scores[x])),
        ("itmatrix.x_beats_under_half", float(2 * t.scores[x] < t.n - 1)),
        ("itmatrix.x_uncovered", float(not any(covers(t, w, x) for w in range(t.n) if w != x))),
    ]
    t = models.build_bipartisan_example(8)
    support, _ = solutions.bipartisan_set(t)
    weakest = t.n - 1
    facts += [
        ("bipartisan.weakest_in_support", float(weakest in support)),
        ("bipartisan.weakest_out_degree", float(t.scores[weakest])),
        ("bipartisan.weakest_not_se_winner", float(weakest not in exact.se_winners(t))),
    ]
    return facts


def _run_one(job):
    name, gi, trial, seed, point, metrics, two_half_k = job
    if name in ("cr-sweep", "flexible-sweep"):
        return _sweep_trial(name, point, seed, metrics, two_half_k)
    if name == "solutions-containment":
        return _containment_trial(point, seed)
    return audit_facts()


def expand_grid(name: str, grid: dict | None) -> list[dict]:
    base = {"n": [8], "p": [math.nan], "delta": [math.nan], "adversary": [""]}
    merged = dict(base)
    merged.update(DEFAULT_GRIDS[name])
    if grid:
        merged.update({k: list(v) for k, v in grid.items() if v is not None})
    keys = ("n", "p", "delta", "adversary")
    return [dict(zip(keys, combo)) for combo in itertools.product(*(merged[k] for k in keys))]


SWEEP_METRICS = ("se_winner_fraction", "certified_fraction", "superking_fraction", "two_half_success")


def run_experiment(
    name: str,
    grid: dict | None = None,
    trials: int = 100,
    seed: int = 0,
    *,
    metrics=None,
    two_half_k: float = 1.0,
    workers: int = 1,
) -> ExperimentReport:
    """Run one named suite over the product of the grid's lists.

    Grid keys: ``n``, ``p``, ``delta``, ``adversary``; missing keys take the
    suite's defaults. ``metrics`` limits the sweep metrics computed.
    ``two_half_k`` sizes the swapped set in the two-half construction as
    ``ceil(k log2 n)``.
    """
    if name not in EXPERIMENTS:
        raise ExperimentError(f"unknown experiment {name!r}; expected one of {EXPERIMENTS}")
    if trials < 1:
        raise ExperimentError("trials must be positive")
    metrics = tuple(metrics) if metrics else SWEEP_METRICS
    bad = set(metrics) - set(SWEEP_METRICS)
    if bad:
        raise ExperimentError(f"unknown metrics {sorted(bad)}")
    points = expand_grid(name, grid)
    if name == "counterexample-audit":
        points, trials = points[:1], 1
    for pt in points:
        if name == "flexible-sweep" and pt["adversary"] not in models.ADVERSARY_POLICIES:
            raise ExperimentError(f"unknown adversary {pt['adversary']!r}")
        if name == "solutions-containment" and not _exact_ok(pt["n"]):
            raise ExperimentError(f"solutions-containment needs a power-of-two n <= {exact.MAX_N}")
    jobs = [
        (name, gi, k, trial_seed(seed, name, gi, k), pt, metrics, two_half_k)
        for gi, pt in enumerate(points)
        for k in range(trials)
    ]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_run_one, jobs, chunksize=16))
    else:
        results = [_run_one(j) for j in jobs]
    config = {"name": name, "grid": points, "trials": trials, "seed": seed,
              "metrics": metrics, "two_half_k": two_half_k}
    report = ExperimentReport(name, config)
    for (_, gi, k, s, pt, _, _), res in zip(jobs, results):
        for metric, value in res:
            report.rows.append({
                "experiment": name, "grid_index": gi, "trial": k, "seed": s,
                "n": pt["n"], "p": pt["p"], "delta": pt["delta"], "adversary": pt["adversary"],
                "metric": metric, "value": float(value),
            })
    return report
