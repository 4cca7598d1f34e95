"""Tournament graphs, balanced knockout brackets and reachability predicates.

Players are dense 0-based indices. Each tournament keeps one bit row per
player (bit ``j`` of ``rows[i]`` set iff ``i`` beats ``j``), so neighbourhood
counts restricted to a subset are a single ``&`` plus a popcount.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np


class TournamentError(ValueError):
    """Invalid tournament, seeding or player reference."""


def mask_of(players: Iterable[int]) -> int:
    m = 0
    for p in players:
        m |= 1 << p
    return m


def members(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


class Tournament:
    """A complete oriented graph on ``n`` players.

    Build one with :func:`make_tournament`, :meth:`from_matrix` or
    :meth:`from_rows`; instances are immutable.
    """

    __slots__ = ("_rows", "_labels", "__dict__")

    def __init__(self, rows: Sequence[int], labels: Sequence | None = None, *, _checked=False):
        rows = tuple(int(r) for r in rows)
        if not rows:
            raise TournamentError("a tournament needs at least one player")
        if not _checked:
            _check_rows(rows)
        self._rows = rows
        if labels is None:
            labels = range(len(rows))
        labels = tuple(labels)
        if len(labels) != len(rows):
            raise TournamentError("labels must have one entry per player")
        self._labels = labels

    @classmethod
    def from_rows(cls, rows: Sequence[int], labels=None) -> "Tournament":
        return cls(rows, labels)

    @classmethod
    def from_matrix(cls, matrix, labels=None) -> "Tournament":
        """From an ``n x n`` 0/1 (or boolean) array with ``matrix[i][j]`` = i beats j."""
        m = np.asarray(matrix, dtype=bool)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise TournamentError(f"expected a non-empty square matrix, got shape {m.shape}")
        if m.diagonal().any():
            i = int(np.flatnonzero(m.diagonal())[0])
            raise TournamentError(f"player {i} beats itself")
        both = np.triu(m & m.T, 1)
        neither = np.triu(~(m | m.T), 1)
        for bad, what in ((both, "is oriented both ways"), (neither, "has no result")):
            if bad.any():
                i, j = (int(x) for x in np.argwhere(bad)[0])
                raise TournamentError(f"pair ({i}, {j}) {what}")
        packed = np.packbits(m, axis=1, bitorder="little")
        rows = [int.from_bytes(r.tobytes(), "little") for r in packed]
        return cls(rows, labels, _checked=True)

    # -- basic accessors ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._rows)

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> tuple[int, ...]:
        return self._rows

    @property
    def labels(self) -> tuple:
        return self._labels

    @cached_property
    def in_rows(self) -> tuple[int, ...]:
        full = (1 << self.n) - 1
        return tuple(full ^ r ^ (1 << i) for i, r in enumerate(self._rows))

    @cached_property
    def matrix(self) -> np.ndarray:
        n = self.n
        width = (n + 7) // 8
        buf = b"".join(r.to_bytes(width, "little") for r in self._rows)
        bits = np.unpackbits(np.frombuffer(buf, np.uint8).reshape(n, width), axis=1, bitorder="little")
        m = bits[:, :n].astype(bool)
        m.flags.writeable = False
        return m

    @cached_property
    def scores(self) -> tuple[int, ...]:
        return tuple(popcount(r) for r in self._rows)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def check_player(self, v: int) -> int:
        if not isinstance(v, (int, np.integer)) or not 0 <= v < self.n:
            raise TournamentError(f"unknown player {v!r} (tournament has {self.n})")
        return int(v)

    def beats(self, i: int, j: int) -> bool:
        return bool(self._rows[i] >> j & 1)

    def out_mask(self, v: int) -> int:
        return self._rows[v]

    def in_mask(self, v: int) -> int:
        return self.in_rows[v]

    def out_neighbors(self, v: int) -> frozenset[int]:
        return frozenset(members(self._rows[v]))

    def in_neighbors(self, v: int) -> frozenset[int]:
        return frozenset(members(self.in_rows[v]))

    def out_degree(self, v: int, within: Iterable[int] | int | None = None) -> int:
        """``out(v)``, or ``out_S(v)`` when ``within`` (a set or bitmask) is given."""
        if within is None:
            return self.scores[v]
        return popcount(self._rows[v] & _as_mask(within))

    def in_degree(self, v: int, within: Iterable[int] | int | None = None) -> int:
        if within is None:
            return self.n - 1 - self.scores[v]
        return popcount(self.in_rows[v] & _as_mask(within))

    def is_transitive(self) -> bool:
        return sorted(self.scores) == list(range(self.n))

    def condorcet_winner(self) -> int | None:
        for v, s in enumerate(self.scores):
            if s == self.n - 1:
                return v
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tournament):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"Tournament(n={self.n}, scores={list(self.scores)})"


def _check_rows(rows: tuple[int, ...]) -> None:
    n = len(rows)
    full = (1 << n) - 1
    for i, r in enumerate(rows):
        if r & ~full:
            raise TournamentError(f"row {i} references players outside 0..{n - 1}")
        if r >> i & 1:
            raise TournamentError(f"player {i} beats itself")
    for i in range(n):
        for j in range(i + 1, n):
            a = rows[i] >> j & 1
            b = rows[j] >> i & 1
            if a and b:
                raise TournamentError(f"pair ({i}, {j}) is oriented both ways")
            if not a and not b:
                raise TournamentError(f"pair ({i}, {j}) has no result")


def _as_mask(s) -> int:
    if isinstance(s, (int, np.integer)):
        return int(s)
    return mask_of(s)


def make_tournament(n: int, beats) -> Tournament:
    """Validate a head-to-head relation and wrap it as a :class:`Tournament`.

    ``beats`` is either an iterable of ``(winner, loser)`` pairs or an
    ``n x n`` numpy boolean matrix. Errors name the first offending pair.
    """
    if n < 1:
        raise TournamentError("n must be positive")
    if isinstance(beats, np.ndarray):
        m = beats.astype(bool)
        if m.shape != (n, n):
            raise TournamentError(f"matrix shape {m.shape} does not match n={n}")
        pairs = list(zip(*np.nonzero(m)))
    else:
        pairs = list(beats)
    rows = [0] * n
    for pair in pairs:
        i, j = (int(x) for x in pair)
        if not (0 <= i < n and 0 <= j < n):
            raise TournamentError(f"pair ({i}, {j}) references a player outside 0..{n - 1}")
        if i == j:
            raise TournamentError(f"pair ({i}, {j}): a player cannot beat itself")
        rows[i] |= 1 << j
    return Tournament(rows)


def transitive(n: int) -> Tournament:
    """Player ``i`` beats every ``j > i``."""
    full = (1 << n) - 1
    return Tournament([full & ~((1 << (i + 1)) - 1) for i in range(n)], _checked=True)


def restrict(t: Tournament, players: Iterable[int] | int) -> Tournament:
    """Induced sub-tournament on ``players``.

    Sub-tournament index ``k`` is the ``k``-th smallest chosen player; its
    label is the parent's label for that player.
    """
    chosen = members(players) if isinstance(players, int) else sorted(set(players))
    if not chosen:
        raise TournamentError("cannot restrict to an empty set of players")
    for v in chosen:
        t.check_player(v)
    if len(chosen) == t.n:
        return t
    rows = []
    for v in chosen:
        r = t.rows[v]
        rows.append(sum(1 << k for k, u in enumerate(chosen) if r >> u & 1))
    return Tournament(rows, [t.labels[v] for v in chosen], _checked=True)


def all_tournaments(n: int):
    """Every labelled tournament on ``n`` players (``2**C(n,2)`` of them)."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for code in range(1 << len(pairs)):
        rows = [0] * n
        for e, (i, j) in enumerate(pairs):
            if code >> e & 1:
                rows[j] |= 1 << i
            else:
                rows[i] |= 1 << j
        yield Tournament(rows, _checked=True)


def random_tournament(n: int, rng: np.random.Generator, p: float = 0.5) -> Tournament:
    """Uniformly oriented pairs: ``j > i`` beats ``i`` with probability ``p``."""
    upset = np.triu(rng.random((n, n)) < p, 1)
    forward = np.triu(~upset, 1)
    return Tournament.from_matrix(forward | upset.T)


# -- brackets ---------------------------------------------------------------


@dataclass(frozen=True)
class Seeding:
    """Players in bracket-leaf order; leaves ``2i`` and ``2i+1`` meet in round one."""

    leaves: tuple[int, ...]

    def __post_init__(self):
        leaves = tuple(int(x) for x in self.leaves)
        object.__setattr__(self, "leaves", leaves)
        if not is_power_of_two(len(leaves)):
            raise TournamentError(f"seeding length {len(leaves)} is not a power of two")
        if len(set(leaves)) != len(leaves):
            dup = next(x for x in leaves if leaves.count(x) > 1)
            raise TournamentError(f"player {dup} appears twice in the seeding")

    def __len__(self) -> int:
        return len(self.leaves)

    def __iter__(self):
        return iter(self.leaves)

    def swapped_pairs(self) -> "Seeding":
        """Swap each first-round pair; the champion never changes."""
        if len(self.leaves) == 1:
            return self
        out = list(self.leaves)
        out[0::2], out[1::2] = self.leaves[1::2], self.leaves[0::2]
        return Seeding(tuple(out))


@dataclass(frozen=True)
class MatchLog:
    rounds: tuple[tuple[tuple[int, int], ...], ...]
    champion: int

    @property
    def matches(self) -> list[tuple[int, int]]:
        return [m for rnd in self.rounds for m in rnd]


def play_bracket(t: Tournament, seeding: Seeding | Sequence[int]) -> MatchLog:
    """Run the bracket; each round pairs positions ``(2i, 2i+1)`` of the survivors."""
    if not isinstance(seeding, Seeding):
        seeding = Seeding(tuple(seeding))
    for v in seeding.leaves:
        t.check_player(v)
    alive = list(seeding.leaves)
    rounds = []
    rows = t.rows
    while len(alive) > 1:
        rnd = []
        nxt = []
        for a, b in zip(alive[0::2], alive[1::2]):
            w, l = (a, b) if rows[a] >> b & 1 else (b, a)
            rnd.append((w, l))
            nxt.append(w)
        rounds.append(tuple(rnd))
        alive = nxt
    return MatchLog(tuple(rounds), alive[0])


def champion(t: Tournament, seeding: Seeding | Sequence[int]) -> int:
    rows = t.rows
    alive = list(seeding.leaves if isinstance(seeding, Seeding) else seeding)
    while len(alive) > 1:
        alive = [a if rows[a] >> b & 1 else b for a, b in zip(alive[0::2], alive[1::2])]
    return alive[0]


# -- predicates -------------------------------------------------------------


def reach_mask(t: Tournament, v: int, steps: int) -> int:
    """Players reachable from ``v`` in at most ``steps`` directed steps (``v`` included)."""
    seen = 1 << v
    frontier = seen
    rows = t.rows
    for _ in range(steps):
        nxt = 0
        for u in members(frontier):
            nxt |= rows[u]
        frontier = nxt & ~seen
        if not frontier:
            break
        seen |= frontier
    return seen


def is_king(t: Tournament, v: int) -> bool:
    v = t.check_player(v)
    return reach_mask(t, v, 2) == t.full_mask


def is_3king(t: Tournament, v: int) -> bool:
    v = t.check_player(v)
    return reach_mask(t, v, 3) == t.full_mask


def is_superking(t: Tournament, v: int) -> bool:
    """Every player beating ``v`` loses to at least ``log2 n`` of ``v``'s victims."""
    v = t.check_player(v)
    threshold = math.log2(t.n)
    victims = t.rows[v]
    return all(popcount(t.in_rows[u] & victims) >= threshold for u in members(t.in_rows[v]))


def dominates(t: Tournament, a: Iterable[int], b: Iterable[int]) -> bool:
    """``A > B``: every member of ``a`` beats every member of ``b``."""
    ma, mb = _as_mask(a), _as_mask(b)
    if ma & mb:
        raise TournamentError(f"sets overlap on players {members(ma & mb)}")
    return all(t.rows[x] & mb == mb for x in members(ma))


def covers(t: Tournament, w: int, v: int) -> bool:
    """``w`` beats ``v`` and everyone ``v`` beats."""
    w, v = t.check_player(w), t.check_player(v)
    if w == v:
        raise TournamentError("a player cannot cover itself")
    need = t.rows[v] | (1 << v)
    return t.rows[w] & need == need


def superkings(t: Tournament) -> frozenset[int]:
    """All superkings at once via ``M @ M`` (victims of ``v`` that beat ``u``)."""
    m = t.matrix.astype(np.int32)
    two_step = m @ m
    threshold = math.log2(t.n)
    weak = (two_step < threshold) & t.matrix.T
    return frozenset(np.flatnonzero(~weak.any(axis=1)).tolist())
