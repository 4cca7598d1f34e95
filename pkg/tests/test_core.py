import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knockout import (
    Seeding,
    Tournament,
    TournamentError,
    champion,
    covers,
    dominates,
    is_3king,
    is_king,
    is_superking,
    make_tournament,
    play_bracket,
    random_tournament,
    restrict,
    superkings,
    transitive,
)
from knockout.core import all_tournaments, members, reach_mask

from conftest import cycle3, cycle_plus_sink, planted_superking, tournaments


# -- construction ---------------------------------------------------------------


def test_singleton():
    t = make_tournament(1, [])
    assert t.n == 1 and t.out_degree(0) == 0


def test_three_cycle_degrees():
    t = cycle3()
    assert [t.out_degree(v) for v in range(3)] == [1, 1, 1]


def test_both_orientations_named():
    with pytest.raises(TournamentError, match=r"\(0, 1\)"):
        make_tournament(3, [(0, 1), (1, 0), (1, 2), (2, 0)])


def test_missing_pair_named():
    with pytest.raises(TournamentError, match=r"\(0, 2\)"):
        make_tournament(3, [(0, 1), (1, 2)])


def test_self_loop_rejected():
    with pytest.raises(TournamentError):
        make_tournament(2, [(0, 0), (0, 1)])
    m = np.array([[1, 1], [0, 0]], dtype=bool)
    with pytest.raises(TournamentError, match="beats itself"):
        Tournament.from_matrix(m)


def test_matrix_and_pairs_agree(rng):
    t = random_tournament(9, rng)
    u = make_tournament(9, np.asarray(t.matrix))
    assert t == u and hash(t) == hash(u)
    assert t.matrix.sum() == 9 * 8 // 2


@given(tournaments(sizes=(1, 2, 3, 5, 8)))
def test_accessors_consistent(t):
    n = t.n
    assert sum(t.scores) == n * (n - 1) // 2
    for v in range(n):
        assert t.out_degree(v) + t.in_degree(v) == n - 1
        assert set(t.out_neighbors(v)) == {u for u in range(n) if t.beats(v, u)}
        assert set(t.in_neighbors(v)) == {u for u in range(n) if t.beats(u, v)}
    S = set(range(0, n, 2))
    for v in range(n):
        assert t.out_degree(v, within=S) == sum(t.beats(v, u) for u in S)
        assert t.in_degree(v, within=S) == sum(t.beats(u, v) for u in S)


def test_matrix_read_only(rng):
    t = random_tournament(5, rng)
    with pytest.raises(ValueError):
        t.matrix[0, 1] = not t.matrix[0, 1]


# -- restrict ----------------------------------------------------------------------


def test_restrict_identity(rng):
    t = random_tournament(6, rng)
    assert restrict(t, range(6)) is t


def test_restrict_induced_edge():
    sub = restrict(cycle3(), {0, 1})
    assert sub.n == 2 and sub.beats(0, 1)
    assert sub.labels == (0, 1)


def test_restrict_transitive_hereditary():
    sub = restrict(transitive(8), [1, 3, 5, 7])
    assert sub.is_transitive() and sub == transitive(4)
    assert sub.labels == (1, 3, 5, 7)


def test_restrict_empty():
    with pytest.raises(TournamentError):
        restrict(cycle3(), [])


@given(tournaments(sizes=(8,)), st.randoms(use_true_random=False))
def test_restrict_then_play(t, rnd):
    support = rnd.sample(range(8), 4)
    sub = restrict(t, support)
    index = {v: k for k, v in enumerate(sorted(support))}
    local = [index[v] for v in support]
    assert sorted(support)[champion(sub, local)] == champion(t, support)


# -- brackets -------------------------------------------------------------------------


def test_single_player_bracket():
    log = play_bracket(make_tournament(1, []), [0])
    assert log.champion == 0 and log.matches == []


def test_transitive_always_top():
    t = transitive(4)
    for perm in itertools.permutations(range(4)):
        assert champion(t, perm) == 0


def test_cycle_plus_sink_rounds():
    log = play_bracket(cycle_plus_sink(), Seeding((1, 2, 0, 3)))
    assert [w for w, _ in log.rounds[0]] == [1, 0]
    assert log.champion == 0


def test_seeding_validation():
    with pytest.raises(TournamentError, match="power of two"):
        Seeding((0, 1, 2))
    with pytest.raises(TournamentError, match="twice"):
        Seeding((0, 1, 1, 2))
    with pytest.raises(TournamentError):
        play_bracket(cycle3(), (0, 5))


@given(tournaments(sizes=(1, 2, 4, 8, 16)), st.randoms(use_true_random=False))
def test_bracket_log_properties(t, rnd):
    leaves = list(range(t.n))
    rnd.shuffle(leaves)
    s = Seeding(tuple(leaves))
    log = play_bracket(t, s)
    assert len(log.matches) == t.n - 1
    for r, rnd_matches in enumerate(log.rounds):
        assert len(rnd_matches) == t.n >> (r + 1)
    for w, l in log.matches:
        assert t.beats(w, l)
    losers = [l for _, l in log.matches]
    assert log.champion not in losers and len(set(losers)) == t.n - 1
    # a loser never plays again
    for r, rnd_matches in enumerate(log.rounds):
        later = {x for m in log.rounds[r + 1:] for x in m}
        assert not later & {l for _, l in rnd_matches}
    if log.matches:
        assert log.rounds[-1][0][0] == log.champion
    assert champion(t, s.swapped_pairs()) == log.champion == champion(t, s)


# -- kings ------------------------------------------------------------------------------


def test_kings_small():
    t = cycle3()
    assert all(is_king(t, v) for v in range(3))
    tr = transitive(6)
    assert not is_king(tr, 5) and not is_3king(tr, 5)
    assert is_king(tr, 0)


def _king_by_cover(t, v):
    closed = t.rows[v] | (1 << v)
    return not any(t.rows[u] & closed == closed for u in range(t.n) if u != v)


def test_king_cover_equivalence(four_player):
    assert len(four_player) == 64
    for t in four_player:
        for v in range(4):
            assert is_king(t, v) == _king_by_cover(t, v)


def _bfs_distance(t, v):
    dist = {v: 0}
    frontier = [v]
    while frontier:
        nxt = []
        for u in frontier:
            for w in t.out_neighbors(u):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    nxt.append(w)
        frontier = nxt
    return dist


def test_king_implies_3king_and_bfs():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        t = random_tournament(16, rng)
        for v in range(16):
            k2, k3 = is_king(t, v), is_3king(t, v)
            assert not k2 or k3
            d = _bfs_distance(t, v)
            far = max(d.values()) if len(d) == 16 else math.inf
            assert k2 == (far <= 2) and k3 == (far <= 3)


def test_reach_mask_steps():
    t = transitive(4)
    assert members(reach_mask(t, 3, 5)) == [3]
    assert members(reach_mask(t, 0, 1)) == [0, 1, 2, 3]


# -- superkings -------------------------------------------------------------------------


def test_condorcet_is_superking():
    assert is_superking(transitive(8), 0)


def test_transitive_second_not_superking():
    assert not is_superking(transitive(8), 1)


def test_planted_superking(rng):
    t = planted_superking(8, rng)
    assert t.out_neighbors(0) == frozenset(range(1, 6))
    for b in (6, 7):
        assert t.in_degree(b, within=range(1, 6)) >= 3
    assert is_superking(t, 0)


def test_superkings_vectorized(rng):
    for n in (1, 2, 5, 8, 16, 32):
        for _ in range(20):
            t = random_tournament(n, rng)
            assert superkings(t) == {v for v in range(n) if is_superking(t, v)}


def test_superking_threshold_is_real_log():
    # n = 6: log2 6 ~ 2.58, so 2 victims is not enough but 3 is
    m = np.zeros((6, 6), dtype=bool)
    m[0, [1, 2, 3, 4]] = True
    m[5, 0] = True
    m[[1, 2], 5] = True
    m[5, [3, 4]] = True
    t = Tournament.from_matrix(m | np.triu(~(m | m.T), 1))
    assert t.in_degree(5, within=[1, 2, 3, 4]) == 2
    assert not is_superking(t, 0)


# -- domination and covering -------------------------------------------------------------


def test_dominates():
    tr = transitive(5)
    assert dominates(tr, {0}, {1, 2, 3, 4})
    assert not dominates(cycle3(), {0}, {2})
    with pytest.raises(TournamentError, match="overlap"):
        dominates(tr, {0, 1}, {1})


def test_covers():
    assert covers(transitive(5), 0, 1)
    t = cycle3()
    assert not any(covers(t, w, v) for w in range(3) for v in range(3) if w != v)
    with pytest.raises(TournamentError):
        covers(t, 1, 1)


def test_all_tournaments_count():
    assert sum(1 for _ in all_tournaments(3)) == 8
    assert len({t for t in all_tournaments(4)}) == 64
