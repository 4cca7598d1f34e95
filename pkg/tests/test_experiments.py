import csv
import io
import math

import pytest

from knockout.experiments import (
    ExperimentError,
    ExperimentReport,
    audit_facts,
    expand_grid,
    half_width,
    run_experiment,
    trial_seed,
)
from knockout.models import ModelSpec, gen_cr
from knockout import se_winners


def test_trial_seed_stable_and_distinct():
    assert trial_seed(0, "cr-sweep", 0, 0) == trial_seed(0, "cr-sweep", 0, 0)
    seeds = {trial_seed(0, "cr-sweep", g, k) for g in range(5) for k in range(50)}
    assert len(seeds) == 250
    assert all(0 <= s < 2**64 for s in seeds)


def test_half_width():
    assert half_width([1, 0, 1, 0]) == pytest.approx(1.96 * math.sqrt(0.25 / 4))
    assert half_width([1, 1, 1]) == 0
    assert half_width([1.0, 3.0], binomial=False) == pytest.approx(1.96 * math.sqrt(2) / math.sqrt(2))


def test_cr_sweep_p_zero_exact():
    r = run_experiment("cr-sweep", {"n": [16], "p": [0.0]}, trials=3, seed=1)
    assert r.stat("se_winner_fraction")["mean"] == 1 / 16
    assert r.stat("superking_fraction")["mean"] == 1 / 16
    assert r.stat("certified_fraction")["mean"] == 1 / 16


def test_rows_regenerable_from_seed():
    r = run_experiment("cr-sweep", {"n": [8], "p": [0.2, 0.4]}, trials=4, seed=9,
                       metrics=["se_winner_fraction"])
    for row in r.rows:
        t = gen_cr(ModelSpec("condorcet_random", row["n"], row["p"], row["seed"]))
        assert row["value"] == len(se_winners(t)) / row["n"]
        assert row["seed"] == trial_seed(9, "cr-sweep", row["grid_index"], row["trial"])


def test_adding_grid_points_keeps_trials():
    a = run_experiment("cr-sweep", {"n": [8], "p": [0.2]}, trials=3, seed=2, metrics=["superking_fraction"])
    b = run_experiment("cr-sweep", {"n": [8], "p": [0.2, 0.3]}, trials=3, seed=2, metrics=["superking_fraction"])
    assert a.rows == b.rows[: len(a.rows)]


def test_csv_format():
    r = run_experiment("cr-sweep", {"n": [8], "p": [1 / 3]}, trials=2, seed=2**40)
    rows = list(csv.DictReader(io.StringIO(r.to_csv())))
    assert rows[0]["p"] == "0.333333"
    assert all(int(x["seed"]) >= 0 for x in rows)
    summary = list(csv.DictReader(io.StringIO(r.summary_csv())))
    assert {s["metric"] for s in summary} == {x["metric"] for x in rows}


def test_summary_recomputable():
    r = run_experiment("cr-sweep", {"n": [8], "p": [0.3]}, trials=6, seed=5)
    rebuilt = ExperimentReport(r.name, r.config, list(r.rows))
    assert rebuilt.summary() == r.summary()


def test_workers_match_serial():
    kw = dict(grid={"n": [8], "p": [0.25]}, trials=8, seed=4)
    assert run_experiment("cr-sweep", **kw).to_csv() == run_experiment("cr-sweep", workers=2, **kw).to_csv()


def test_flexible_sweep_small():
    r = run_experiment("flexible-sweep", {"n": [16], "p": [0.3], "delta": [0.5], "adversary": ["lower"]},
                       trials=3, seed=1)
    assert {row["metric"] for row in r.rows} == {"se_winner_fraction", "superking_fraction", "certified_fraction"}


def test_containment_small():
    r = run_experiment("solutions-containment", trials=20, seed=3)
    for s in r.summary():
        if s["metric"].endswith("violations"):
            assert s["mean"] == 0
        else:
            assert s["mean"] <= 1e-12


def test_audit_all_pass():
    facts = dict(audit_facts())
    assert facts["uncovered_ratio.uncovered_share_in_se"] == pytest.approx(2 / 5)
    assert facts["uncovered_ratio.se_share_in_uncovered"] == pytest.approx(2 / 13)
    assert facts["itmatrix.out_x"] == 18
    assert facts["bipartisan.weakest_out_degree"] == 1
    flags = [v for k, v in facts.items() if k not in (
        "uncovered_ratio.uncovered_share_in_se", "uncovered_ratio.se_share_in_uncovered",
        "itmatrix.out_x", "bipartisan.weakest_out_degree")]
    assert all(v == 1.0 for v in flags)
    assert len(run_experiment("counterexample-audit", trials=50).rows) == len(facts)


def test_errors():
    with pytest.raises(ExperimentError):
        run_experiment("nope")
    with pytest.raises(ExperimentError):
        run_experiment("cr-sweep", trials=0)
    with pytest.raises(ExperimentError):
        run_experiment("solutions-containment", {"n": [12]}, trials=1)


def test_expand_grid_defaults():
    pts = expand_grid("flexible-sweep", None)
    assert len(pts) == 6 and all(p["n"] == 128 for p in pts)
