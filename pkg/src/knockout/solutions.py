"""Classical tournament solutions and path-count scores.

All ``*_set`` functions return a ``frozenset`` of player indices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import simplex
from .core import Tournament, covers, is_king, members, popcount

SLATER_MAX_N = 18
MAX_PATH_K = 4
MARKOV_TOL = 1e-12
ARGMAX_TOL = 1e-9


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class ScoreVector:
    scores: tuple
    argmax: frozenset[int]

    @classmethod
    def exact(cls, scores: Sequence[int]) -> "ScoreVector":
        best = max(scores)
        return cls(tuple(scores), frozenset(i for i, s in enumerate(scores) if s == best))

    @classmethod
    def approx(cls, scores: Sequence[float], tol: float = ARGMAX_TOL) -> "ScoreVector":
        best = max(scores)
        return cls(tuple(scores), frozenset(i for i, s in enumerate(scores) if s >= best - tol))


def copeland_set(t: Tournament) -> frozenset[int]:
    return ScoreVector.exact(t.scores).argmax


def uncovered_set(t: Tournament) -> frozenset[int]:
    return frozenset(v for v in range(t.n) if is_king(t, v))


def top_cycle(t: Tournament) -> frozenset[int]:
    """Smallest set of players that beats everyone outside it."""
    order = sorted(range(t.n), key=lambda v: -t.scores[v])
    total = 0
    for k, v in enumerate(order, start=1):
        total += t.scores[v]
        if total == k * (k - 1) // 2 + k * (t.n - k):
            return frozenset(order[:k])
    raise AssertionError("score sequence is not a tournament's")


# -- Slater -------------------------------------------------------------------------


def slater_table(t: Tournament, cap: int = SLATER_MAX_N) -> np.ndarray:
    """``table[S]`` = fewest reversals making the sub-tournament on ``S`` transitive.

    Built one subset size at a time: ``opt(S) = min_v opt(S - v) + in_S(v)``,
    i.e. ``v`` heads the ranking of ``S``.
    """
    n = t.n
    if n > cap:
        raise ValueError(f"exact Slater ranking is capped at n <= {cap}, got n={n}")
    idx = np.arange(1 << n, dtype=np.int64)
    sizes = np.bitwise_count(idx)
    opt = np.zeros(1 << n, dtype=np.int32)
    for size in range(2, n + 1):
        level = idx[sizes == size]
        best = np.full(level.shape, np.iinfo(np.int32).max, dtype=np.int32)
        for v in range(n):
            bit = 1 << v
            has = (level & bit) != 0
            sub = level[has]
            cand = opt[sub ^ bit] + np.bitwise_count(sub & t.in_rows[v]).astype(np.int32)
            best[has] = np.minimum(best[has], cand)
        opt[level] = best
    return opt


def slater_distance(t: Tournament) -> int:
    return int(slater_table(t)[t.full_mask])


def slater_set(t: Tournament, cap: int = SLATER_MAX_N) -> frozenset[int]:
    """Players that head some closest transitive tournament."""
    opt = slater_table(t, cap)
    full = t.full_mask
    return frozenset(
        v for v in range(t.n) if t.in_degree(v) + opt[full ^ (1 << v)] == opt[full]
    )


# -- Markov --------------------------------------------------------------------------


def markov_matrix(t: Tournament) -> np.ndarray:
    """Column-stochastic winner-stays chain.

    From current winner ``j`` a uniformly random opponent ``i`` challenges;
    ``Q[i, j] = 1/(n-1)`` when ``i`` beats ``j`` and ``Q[j, j] = out(j)/(n-1)``.
    """
    n = t.n
    if n < 2:
        raise ValueError("the Markov chain needs at least two players")
    m = t.matrix.astype(float)
    q = m / (n - 1)
    q += np.diag(m.sum(axis=1) / (n - 1))
    return q


def markov_stationary(t: Tournament, tol: float = MARKOV_TOL, max_iter: int = 1_000_000):
    """Stationary distribution by power iteration and its residual ``max|Qp - p|``.

    Mass starts uniform on the top cycle, the chain's only closed class, so
    everything outside it stays at zero.
    """
    q = markov_matrix(t)
    p = np.zeros(t.n)
    top = sorted(top_cycle(t))
    p[top] = 1.0 / len(top)
    for _ in range(max_iter):
        nxt = q @ p
        nxt /= nxt.sum()
        residual = float(np.abs(q @ nxt - nxt).max())
        p = nxt
        if residual <= tol:
            return p, residual
    raise ConvergenceError(f"power iteration did not reach residual {tol} in {max_iter} steps")


def markov_set(t: Tournament) -> frozenset[int]:
    if t.n == 1:
        return frozenset({0})
    p, _ = markov_stationary(t)
    return ScoreVector.approx(p.tolist()).argmax


# -- bipartisan ---------------------------------------------------------------------------


def game_matrix(t: Tournament) -> np.ndarray:
    """Skew-symmetric payoff: +1 when the row player wins, -1 when it loses."""
    m = t.matrix.astype(int)
    return m - m.T


def _solve_lottery(t: Tournament, weights: Sequence[Fraction]) -> list[Fraction]:
    g = game_matrix(t)
    shifted = (g + 2).tolist()  # all entries positive, so the LP is bounded with a feasible origin
    _, z = simplex.maximize(weights, shifted, [1] * t.n)
    total = sum(z)
    return [zi / total for zi in z]


def maximal_lottery(t: Tournament, check_unique: bool = True) -> list[Fraction]:
    """Optimal mixed strategy of the tournament game, in exact rationals."""
    n = t.n
    q = _solve_lottery(t, [Fraction(1)] * n)
    g = game_matrix(t)
    for i in range(n):
        if sum(int(g[i, j]) * q[j] for j in range(n)) > 0:
            raise RuntimeError(f"lottery fails the equilibrium test against player {i}")
    if check_unique:
        eps = Fraction(1, 10**6 * n)
        for sign in (1, -1):
            alt = _solve_lottery(t, [1 + sign * eps * (i + 1) for i in range(n)])
            if alt != q:
                raise RuntimeError("maximal lottery is not unique under objective perturbation")
    return q


def bipartisan_set(t: Tournament) -> tuple[frozenset[int], np.ndarray]:
    """Support of the maximal lottery, and the lottery as floats."""
    q = maximal_lottery(t)
    return frozenset(i for i, x in enumerate(q) if x > 0), np.array([float(x) for x in q])


def lottery_payoffs(t: Tournament, lottery) -> np.ndarray:
    """Expected payoff of ``lottery`` against each pure strategy."""
    return np.asarray(lottery, dtype=float) @ game_matrix(t)


# -- walk and path scores ---------------------------------------------------------------


def iterated_matrix_scores(t: Tournament, k: int) -> ScoreVector:
    """``A^k 1`` in exact integers (walks with ``k`` steps from each player)."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    victims = [members(r) for r in t.rows]
    score = [1] * t.n
    for _ in range(k):
        score = [sum(score[j] for j in vs) for vs in victims]
    return ScoreVector.exact(score)


def iterated_matrix_set(t: Tournament, k: int) -> frozenset[int]:
    return iterated_matrix_scores(t, k).argmax


def count_k_paths(t: Tournament, v: int, k: int, cap: int = MAX_PATH_K) -> int:
    """Directed simple paths with ``k`` edges starting at ``v``."""
    v = t.check_player(v)
    if k < 1:
        raise ValueError("k must be a positive integer")
    if k > cap:
        raise ValueError(f"path length is capped at k <= {cap}, got k={k}")
    rows = t.rows

    def walk(u: int, seen: int, left: int) -> int:
        nxt = rows[u] & ~seen
        if left == 1:
            return popcount(nxt)
        total = 0
        while nxt:
            low = nxt & -nxt
            total += walk(low.bit_length() - 1, seen | low, left - 1)
            nxt ^= low
        return total

    return walk(v, 1 << v, k)


def kpath_scores(t: Tournament, k: int, cap: int = MAX_PATH_K) -> ScoreVector:
    return ScoreVector.exact([count_k_paths(t, v, k, cap) for v in range(t.n)])


def max_kpath_players(t: Tournament, k: int, cap: int = MAX_PATH_K) -> frozenset[int]:
    return kpath_scores(t, k, cap).argmax


def covered_players(t: Tournament) -> frozenset[int]:
    return frozenset(v for v in range(t.n) if any(covers(t, w, v) for w in range(t.n) if w != v))


def max_copeland_bipartisan(t: Tournament) -> frozenset[int]:
    """Members of the bipartisan set with the highest Copeland score among them."""
    support, _ = bipartisan_set(t)
    best = max(t.scores[v] for v in support)
    return frozenset(v for v in support if t.scores[v] == best)


def min_total_kpaths(n: int, k: int) -> int:
    """Fewest ``k``-paths any ``n``-player tournament can have (attained by transitive ones)."""
    return math.comb(n, k + 1)
