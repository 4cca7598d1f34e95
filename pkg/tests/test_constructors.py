import itertools
import math

import numpy as np
import pytest

from knockout import (
    InvariantError,
    KingPartition,
    PreconditionError,
    champion,
    certify,
    cr_two_half_seeding,
    find_king_partition,
    find_threeking_decomposition,
    is_king,
    is_superking,
    king_seeding,
    make_tournament,
    random_tournament,
    se_winners,
    threeking_seeding,
    transitive,
)
from knockout.constructors import (
    CERTIFICATES,
    cr_two_half_search,
    find_cr_hints,
    swap_size,
    threeking_decomposition,
)
from knockout.core import Tournament, all_tournaments
from knockout.models import ModelSpec, build_uncovered_ratio_example, gen_cr

from conftest import planted_superking, planted_threeking


def n4_king_example():
    # K=0 beats a1=1, a2=2; j=3 beats K and nothing else
    return make_tournament(4, [(0, 1), (0, 2), (3, 0), (1, 3), (2, 3), (1, 2)])


# -- find_king_partition ----------------------------------------------------------


def test_condorcet_partition_empty():
    p = find_king_partition(transitive(8), 0)
    assert p.H == p.I == p.J == frozenset()
    assert p.A == frozenset(range(1, 8))


def test_superking_partition(rng):
    t = planted_superking(8, rng)
    plain = KingPartition(0, t.out_neighbors(0), frozenset(), frozenset({6, 7}), frozenset())
    assert not plain.violations(t)
    p = find_king_partition(t, 0)
    assert p.H == frozenset() and p.I | p.J == {6, 7}
    assert not p.violations(t)


def test_n4_partition():
    t = n4_king_example()
    p = find_king_partition(t, 0)
    assert p.J == {3} and p.H == p.I == frozenset()


def test_not_a_king_rejected():
    with pytest.raises(PreconditionError):
        find_king_partition(transitive(4), 3)


def exists_partition(t, king):
    """Try every H/I/J labelling of the king's conquerors."""
    A = t.out_neighbors(king)
    B = sorted(t.in_neighbors(king))
    for labels in itertools.product("HIJ", repeat=len(B)):
        groups = {c: frozenset(b for b, l in zip(B, labels) if l == c) for c in "HIJ"}
        p = KingPartition(king, A, groups["H"], groups["I"], groups["J"])
        if not p.violations(t):
            return True
    return False


def test_partition_search_complete_n4(four_player):
    for t in four_player:
        for v in range(4):
            if is_king(t, v):
                assert (find_king_partition(t, v) is not None) == exists_partition(t, v)


def test_partition_search_complete_n8():
    rng = np.random.default_rng(3)
    checked = 0
    for _ in range(150):
        t = random_tournament(8, rng)
        for v in range(8):
            if is_king(t, v):
                found = find_king_partition(t, v)
                assert (found is not None) == exists_partition(t, v)
                if found is not None:
                    assert not found.violations(t)
                checked += 1
    assert checked > 300


# -- king_seeding --------------------------------------------------------------------


def test_two_players():
    t = transitive(2)
    assert king_seeding(t, find_king_partition(t, 0)).leaves == (0, 1)


def test_n4_seeding():
    t = n4_king_example()
    s = king_seeding(t, find_king_partition(t, 0))
    assert champion(t, s) == 0


def test_king_seeding_random_16():
    rng = np.random.default_rng(11)
    built = 0
    for _ in range(300):
        t = random_tournament(16, rng)
        for v in range(16):
            if not is_king(t, v):
                continue
            p = find_king_partition(t, v)
            if p is None:
                continue
            trace = []
            s = king_seeding(t, p, trace)
            assert champion(t, s) == v
            assert all(not r["violations"] for r in trace)
            assert len(trace) == 4
            built += 1
    assert built > 1000


def test_trace_contents(rng):
    t = planted_superking(16, rng)
    trace = []
    king_seeding(t, find_king_partition(t, 0), trace)
    assert [r["players"] for r in trace] == [16, 8, 4, 2]
    for r in trace:
        assert r["H_after"] <= r["H"] / 2 or r["H"] == 0


def test_invalid_partition_rejected():
    t = n4_king_example()
    bad = KingPartition(0, frozenset({1, 2}), frozenset(), frozenset(), frozenset())
    with pytest.raises(PreconditionError):
        king_seeding(t, bad)
    with pytest.raises(PreconditionError, match="power of two"):
        king_seeding(transitive(3), find_king_partition(transitive(3), 0))


def test_superking_specialisation():
    rng = np.random.default_rng(21)
    for _ in range(50):
        t = planted_superking(16, rng)
        p = KingPartition(0, t.out_neighbors(0), frozenset(), t.in_neighbors(0), frozenset())
        assert is_superking(t, 0) and not p.violations(t)
        assert champion(t, king_seeding(t, p)) == 0


# -- 3-kings -----------------------------------------------------------------------------


def test_threeking_condorcet():
    t = transitive(8)
    d = threeking_decomposition(t, 0)
    assert d.B == d.C == frozenset()
    assert champion(t, threeking_seeding(t, d)) == 0


def test_threeking_n8_example(rng):
    t = planted_threeking(8, rng)
    d = find_threeking_decomposition(t, 0)
    assert (len(d.A), len(d.B), len(d.C)) == (4, 2, 1)
    assert champion(t, threeking_seeding(t, d)) == 0


def test_threeking_planted_many():
    rng = np.random.default_rng(5)
    for n in (4, 8, 16, 32):
        for _ in range(40):
            t = planted_threeking(n, rng)
            d = find_threeking_decomposition(t, 0)
            assert d is not None
            s = threeking_seeding(t, d)
            assert champion(t, s) == 0


def test_threeking_precondition_refused():
    # A no longer dominates B: flip one A-B edge
    rng = np.random.default_rng(8)
    t = planted_threeking(8, rng)
    m = np.asarray(t.matrix).copy()
    a, b = 1, 5
    m[a, b], m[b, a] = False, True
    t2 = Tournament.from_matrix(m)
    d = threeking_decomposition(t2, 0)
    assert d.violations(t2)
    assert find_threeking_decomposition(t2, 0) is None
    with pytest.raises(PreconditionError):
        threeking_seeding(t2, d)


# -- two-half composition ------------------------------------------------------------------


def test_swap_size():
    assert swap_size(64, 1) == 6
    assert swap_size(64) == 72


def test_two_half_transitive_top():
    t = transitive(16)
    v, S = 1, (2, 3, 4, 5)
    s = cr_two_half_seeding(t, 0, (v, S), k=1)
    assert s is not None and champion(t, s) == 0


def test_two_half_bad_hints():
    t = transitive(16)
    with pytest.raises(PreconditionError, match="not beaten"):
        cr_two_half_seeding(t, 5, (1, (6, 7, 8, 9)), k=1)
    with pytest.raises(PreconditionError, match="expected"):
        cr_two_half_seeding(t, 0, (1, (2, 3)), k=1)
    with pytest.raises(PreconditionError, match="top half"):
        cr_two_half_seeding(t, 0, (1, (2, 3, 4, 12)), k=1)
    with pytest.raises(PreconditionError, match="also in"):
        cr_two_half_seeding(t, 0, (1, (1, 2, 3, 4)), k=1)


def test_two_half_n64_bottom_player():
    t = gen_cr(ModelSpec("condorcet_random", 64, 0.35, seed=42))
    w = 63
    hints = find_cr_hints(t, w, k=1)
    results = [cr_two_half_seeding(t, w, h, k=1) for h in hints]
    for s in results:
        if s is not None:
            assert champion(t, s) == w


def test_two_half_sound_over_seeds():
    wins = 0
    for seed in range(60):
        t = gen_cr(ModelSpec("condorcet_random", 32, 0.3, seed=seed))
        for w in (31, 20, 16):
            s = cr_two_half_search(t, w, k=1)
            if s is not None:
                assert champion(t, s) == w
                wins += 1
    assert wins > 0


def test_default_factor_does_not_fit():
    t = gen_cr(ModelSpec("condorcet_random", 64, 0.35, seed=42))
    assert find_cr_hints(t, 63) == []


# -- certify ---------------------------------------------------------------------------------


def test_certify_order():
    assert certify(transitive(8), 0)[0] == "condorcet"
    assert certify(transitive(8), 7) is None
    assert certify(transitive(6), 0) is None
    assert set(CERTIFICATES) >= {"superking", "king-partition", "3-king", "cr-two-half"}


def test_certify_structural_implies_exact():
    rng = np.random.default_rng(17)
    for _ in range(80):
        t = random_tournament(16, rng)
        winners = se_winners(t)
        for v in range(16):
            found = certify(t, v)
            if found is not None:
                name, s = found
                assert name in CERTIFICATES
                assert champion(t, s) == v and v in winners


def test_uncovered_ratio_certificates():
    t = build_uncovered_ratio_example(3, 11)
    for v in range(t.n):
        found = certify(t, v)
        if found is not None:
            assert champion(t, found[1]) == v
