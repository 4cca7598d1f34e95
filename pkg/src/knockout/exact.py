"""Exact SE-winner sets.

``se_winners`` runs a subset DP over bitmasks, one subset size at a time
(1, 2, 4, ...). A player wins a bracket on ``S`` iff ``S`` splits into equal
halves won by ``v`` and by someone ``v`` beats. Each level is evaluated with
numpy over every (subset, split) pair at once; the split layout depends only
on ``n`` and is cached.

``brute_force_winners`` enumerates seedings up to bracket symmetry and is
kept as an independent oracle for small ``n``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .core import Seeding, Tournament, champion, is_power_of_two, members

MAX_N = 16
BRUTE_FORCE_MAX_N = 8


class SizeCapError(ValueError):
    """The instance is larger than an exact method's configured cap."""


def _check_size(t: Tournament, cap: int, what: str) -> None:
    if not is_power_of_two(t.n):
        raise ValueError(f"{what} needs a power-of-two player count, got n={t.n}")
    if t.n > cap:
        raise SizeCapError(f"{what} is capped at n <= {cap}, got n={t.n}")


@lru_cache(maxsize=None)
def _split_plan(n: int, m: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Canonical equal splits of every ``m``-subset of ``range(n)``.

    Returns ``(parent, left, right)`` of shape ``(C(n, m), C(m-1, m/2-1))``;
    ``left`` always holds the subset's smallest element.
    """
    elems = np.array(list(itertools.combinations(range(n), m)), dtype=np.int64)
    bits = np.left_shift(np.int64(1), elems)
    parent = bits.sum(axis=1)
    combos = [(0, *c) for c in itertools.combinations(range(1, m), m // 2 - 1)]
    left = np.stack([bits[:, list(c)].sum(axis=1) for c in combos], axis=1)
    parent = np.broadcast_to(parent[:, None], left.shape)
    return parent, left, parent ^ left


def _beats_any_table(t: Tournament) -> np.ndarray:
    """``table[X]`` = mask of players beating at least one member of ``X``."""
    n = t.n
    idx = np.arange(1 << n, dtype=np.int64)
    table = np.zeros(1 << n, dtype=np.int64)
    for i, r in enumerate(t.in_rows):
        table |= np.where(idx >> i & 1, r, 0)
    return table


class WinnerTable:
    """Winner masks for every subset whose size is a power of two.

    ``winners(S)`` takes and returns bitmasks; ``entries(size)`` gives the
    whole level as a ``{subset_mask: winner_mask}`` dict.
    """

    def __init__(self, t: Tournament, cap: int = MAX_N):
        _check_size(t, cap, "the subset DP")
        self.tournament = t
        n = t.n
        win = np.zeros(1 << n, dtype=np.int64)
        singles = np.left_shift(np.int64(1), np.arange(n, dtype=np.int64))
        win[singles] = singles
        beats_any = _beats_any_table(t)
        m = 2
        while m <= n:
            parent, left, right = _split_plan(n, m)
            wl, wr = win[left], win[right]
            merged = (wl & beats_any[wr]) | (wr & beats_any[wl])
            win[parent[:, 0]] = np.bitwise_or.reduce(merged, axis=1)
            m *= 2
        self._win = win

    def winners(self, subset: int) -> int:
        if not is_power_of_two(bin(subset).count("1")):
            raise ValueError("subset size must be a power of two")
        return int(self._win[subset])

    def entries(self, size: int) -> dict[int, int]:
        n = self.tournament.n
        out = {}
        for combo in itertools.combinations(range(n), size):
            s = sum(1 << i for i in combo)
            out[s] = int(self._win[s])
        return out

    def witness(self, v: int, subset: int | None = None) -> Seeding | None:
        """A seeding of ``subset`` (default: everyone) that ``v`` wins, else None."""
        t = self.tournament
        if subset is None:
            subset = t.full_mask
        if not self.winners(subset) >> v & 1:
            return None
        return Seeding(tuple(self._build(subset, v)))

    def _build(self, subset: int, v: int) -> list[int]:
        elems = members(subset)
        if len(elems) == 1:
            return [v]
        rows = self.tournament.rows
        first, rest = elems[0], elems[1:]
        for combo in itertools.combinations(rest, len(elems) // 2 - 1):
            left = (1 << first) | sum(1 << i for i in combo)
            right = subset ^ left
            mine, other = (left, right) if left >> v & 1 else (right, left)
            if not self._win[mine] >> v & 1:
                continue
            beaten = int(self._win[other]) & rows[v]
            if beaten:
                u = (beaten & -beaten).bit_length() - 1
                return self._build(mine, v) + self._build(other, u)
        raise AssertionError("winner table inconsistent with its own back-pointers")


def winner_table(t: Tournament, cap: int = MAX_N) -> WinnerTable:
    return WinnerTable(t, cap)


def se_winners(t: Tournament, cap: int = MAX_N) -> frozenset[int]:
    """Players who win the bracket under at least one seeding."""
    table = WinnerTable(t, cap)
    return frozenset(members(table.winners(t.full_mask)))


def fix_for(t: Tournament, v: int, cap: int = MAX_N) -> Seeding | None:
    """A seeding under which ``v`` is champion, or None if ``v`` cannot win."""
    v = t.check_player(v)
    return WinnerTable(t, cap).witness(v)


def canonical_seedings(players: tuple[int, ...]):
    """Seedings of ``players`` up to swapping the two halves of any sub-bracket."""
    if len(players) <= 1:
        yield players
        return
    first, rest = players[0], players[1:]
    half = len(players) // 2
    for combo in itertools.combinations(rest, half - 1):
        left = (first, *combo)
        right = tuple(p for p in rest if p not in combo)
        for a in canonical_seedings(left):
            for b in canonical_seedings(right):
                yield a + b


def brute_force_winners(t: Tournament) -> frozenset[int]:
    _check_size(t, BRUTE_FORCE_MAX_N, "brute force")
    return frozenset(champion(t, s) for s in canonical_seedings(tuple(range(t.n))))
