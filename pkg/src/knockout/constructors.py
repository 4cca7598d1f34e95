"""Polynomial-time winning seedings from structural certificates.

Three constructions are provided:

* :func:`king_seeding` for a king whose losses split into groups H, I, J
  (few H players; I players each lose to at least log2 n of the king's
  victims; J players win at most as many matches as the king).
* :func:`threeking_seeding` for a 3-king that beats at least half the field,
  whose victims dominate the second neighbourhood.
* :func:`cr_two_half_seeding`, which composes a king-seeding over one half
  with a superking-seeding over the other.

Every construction plays one round at a time, recording the round's pairs,
and recurses on the survivors. Arbitrary choices go to the lowest index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .core import (
    Seeding,
    Tournament,
    TournamentError,
    champion,
    is_3king,
    is_king,
    is_power_of_two,
    is_superking,
    mask_of,
    members,
    popcount,
    restrict,
)

DEFAULT_SWAP_FACTOR = 12


class PreconditionError(ValueError):
    """The certificate handed to a constructor does not hold."""


class InvariantError(AssertionError):
    """A per-round invariant failed during construction (a bug, not bad input)."""


def _low(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _greedy_matching(t: Tournament, sources: int, targets: int) -> list[tuple[int, int]]:
    """Maximal matching: each source (ascending) takes the first target it beats."""
    pairs = []
    rows = t.rows
    for a in members(sources):
        hit = rows[a] & targets
        if hit:
            b = _low(hit)
            pairs.append((a, b))
            targets &= ~(1 << b)
    return pairs


def _pair_off(mask: int) -> tuple[list[tuple[int, int]], int]:
    """Pair members in ascending order; returns the pairs and any leftover mask."""
    elems = members(mask)
    pairs = list(zip(elems[0::2], elems[1::2]))
    left = 1 << elems[-1] if len(elems) % 2 else 0
    return pairs, left


def _expand(next_round: list[int], pairs: list[tuple[int, int]], t: Tournament) -> list[int]:
    """Leaf order for one extra round given the survivors' leaf order."""
    loser_of = {}
    for a, b in pairs:
        w, l = (a, b) if t.beats(a, b) else (b, a)
        loser_of[w] = l
    out = []
    for w in next_round:
        out.extend((w, loser_of[w]))
    return out


def _check_pairs(pairs: list[tuple[int, int]], alive: int) -> None:
    seen = 0
    for a, b in pairs:
        for x in (a, b):
            if seen >> x & 1:
                raise InvariantError(f"player {x} scheduled twice in one round")
            seen |= 1 << x
    if seen != alive:
        raise InvariantError(f"round leaves players {members(alive & ~seen)} unscheduled")


def _survivors(t: Tournament, pairs: list[tuple[int, int]]) -> int:
    return mask_of(a if t.beats(a, b) else b for a, b in pairs)


# -- generalized kings ---------------------------------------------------------


@dataclass(frozen=True)
class KingPartition:
    """A king, its victims ``A`` and a split of the players beating it."""

    king: int
    A: frozenset[int]
    H: frozenset[int]
    I: frozenset[int]
    J: frozenset[int]

    def violations(self, t: Tournament, alive: int | None = None) -> list[str]:
        """Unmet conditions, measured inside the sub-tournament ``alive``."""
        if alive is None:
            alive = t.full_mask
        n_alive = popcount(alive)
        k = self.king
        a, h, i, j = (mask_of(s) & alive for s in (self.A, self.H, self.I, self.J))
        problems = []
        if a != t.rows[k] & alive:
            problems.append("A is not the king's set of victims")
        if h & i or h & j or i & j:
            problems.append("H, I, J overlap")
        if (h | i | j) != t.in_rows[k] & alive:
            problems.append("H, I, J do not cover the players beating the king")
        if (h or i or j) and not popcount(h) < popcount(a):
            problems.append(f"|H|={popcount(h)} is not below |A|={popcount(a)}")
        threshold = math.log2(n_alive)
        for x in members(i):
            if popcount(t.in_rows[x] & a) < threshold:
                problems.append(f"I-player {x} loses to fewer than log2 {n_alive} of A")
        for x in members(j):
            if popcount(t.rows[x] & alive) > popcount(a):
                problems.append(f"J-player {x} wins more than |A| matches")
        return problems


def find_king_partition(t: Tournament, king: int) -> KingPartition | None:
    """Split the king's conquerors into H, I, J with ``H`` as small as possible.

    J and I membership are per-player tests, so taking every player that
    qualifies for J, then I, leaves the smallest possible H.
    """
    king = t.check_player(king)
    if not is_king(t, king):
        raise PreconditionError(f"player {king} is not a king")
    a = t.rows[king]
    size_a = popcount(a)
    threshold = math.log2(t.n)
    J, I, H = [], [], []
    for b in members(t.in_rows[king]):
        if t.scores[b] <= size_a:
            J.append(b)
        elif popcount(t.in_rows[b] & a) >= threshold:
            I.append(b)
        else:
            H.append(b)
    if H and len(H) >= size_a:
        return None
    return KingPartition(king, frozenset(members(a)), frozenset(H), frozenset(I), frozenset(J))


def _king_round(t: Tournament, alive: int, king: int, a: int, h: int, ij: int):
    """One round of the generalized-king construction; returns the round's pairs."""
    m1 = _greedy_matching(t, a, h)
    used_a = mask_of(x for x, _ in m1)
    m2 = _greedy_matching(t, a & ~used_a, ij)
    used_a |= mask_of(x for x, _ in m2)
    free_a = a & ~used_a
    if free_a:
        partner = _low(free_a)
        free_a &= ~(1 << partner)
    elif m2:
        partner, _ = m2.pop(0)
    else:
        raise InvariantError("A is exhausted by M1 alone, contradicting |H| < |A|")
    pairs = [(king, partner)] + m1 + m2
    scheduled = mask_of(x for p in pairs for x in p)
    leftovers = []
    for group in (a, h, ij):
        internal, rest = _pair_off(group & alive & ~scheduled)
        pairs += internal
        if rest:
            leftovers.append(_low(rest))
    if len(leftovers) not in (0, 2):
        raise InvariantError(f"{len(leftovers)} leftover players after internal pairing")
    if leftovers:
        pairs.append(tuple(leftovers))
    return pairs


def king_seeding(t: Tournament, partition: KingPartition, trace: list | None = None) -> Seeding:
    """Winning seeding for ``partition.king``.

    Each round: maximal matching from A onto H, then from the rest of A onto
    I and J; the king meets an unused A player (or takes one back from the
    second matching); everyone else pairs within A, H and I+J, and the two
    possible leftovers meet. After every round the survivors' partition is
    re-checked. When ``trace`` is a list, one dict per round is appended.
    """
    if not is_power_of_two(t.n):
        raise PreconditionError(f"n={t.n} is not a power of two")
    problems = partition.violations(t)
    if problems or not is_king(t, partition.king):
        raise PreconditionError("; ".join(problems) or f"player {partition.king} is not a king")
    king = partition.king
    alive = t.full_mask
    a = mask_of(partition.A)
    h, i, j = mask_of(partition.H), mask_of(partition.I), mask_of(partition.J)
    rounds = []
    while popcount(alive) > 1:
        pairs = _king_round(t, alive, king, a & alive, h & alive, (i | j) & alive)
        _check_pairs(pairs, alive)
        nxt = _survivors(t, pairs)
        if not nxt >> king & 1:
            raise InvariantError("the king lost a match")
        record = _king_round_invariants(t, partition, alive, nxt)
        if trace is not None:
            trace.append(record)
        if record["violations"]:
            raise InvariantError(f"round with {popcount(alive)} players: " + "; ".join(record["violations"]))
        rounds.append(pairs)
        alive = nxt
    order = [king]
    for pairs in reversed(rounds):
        order = _expand(order, pairs, t)
    seeding = Seeding(tuple(order))
    if champion(t, seeding) != king:
        raise InvariantError("constructed seeding does not crown the king")
    return seeding


def _king_round_invariants(t: Tournament, p: KingPartition, before: int, after: int) -> dict:
    n_after = popcount(after)
    a_before = mask_of(p.A) & before
    h_before, h_after = mask_of(p.H) & before, mask_of(p.H) & after
    a_after = mask_of(p.A) & after
    problems = []
    if h_before and popcount(h_after) > popcount(h_before) / 2:
        problems.append(f"|H'|={popcount(h_after)} exceeds |H|/2={popcount(h_before) / 2}")
    if n_after > 1:
        threshold = math.log2(n_after)
        for x in members(mask_of(p.I) & after):
            if popcount(t.in_rows[x] & a_after) < threshold:
                problems.append(f"I-player {x} loses to fewer than log2 {n_after} survivors of A")
        for x in members(mask_of(p.J) & after):
            if popcount(t.rows[x] & after) > popcount(a_after):
                problems.append(f"J-player {x} beats more survivors than |A'|")
        if (h_after or mask_of(p.I | p.J) & after) and popcount(h_after) >= popcount(a_after):
            problems.append(f"|H'|={popcount(h_after)} is not below |A'|={popcount(a_after)}")
        sub = restrict(t, after)
        if not is_king(sub, members(after).index(p.king)):
            problems.append("the king is no longer a king among the survivors")
    return {
        "players": popcount(before),
        "A": popcount(a_before),
        "H": popcount(h_before),
        "H_after": popcount(h_after),
        "A_after": popcount(a_after),
        "violations": problems,
    }


# -- 3-kings --------------------------------------------------------------------


@dataclass(frozen=True)
class ThreeKingDecomposition:
    king: int
    A: frozenset[int]
    B: frozenset[int]
    C: frozenset[int]

    def violations(self, t: Tournament, alive: int | None = None) -> list[str]:
        if alive is None:
            alive = t.full_mask
        a, b, c = (mask_of(s) & alive for s in (self.A, self.B, self.C))
        problems = []
        if a | b | c | (1 << self.king) != alive or a & b or a & c or b & c:
            problems.append("A, B, C and the king do not partition the players")
        if 2 * popcount(a) < popcount(alive):
            problems.append(f"|A|={popcount(a)} is below half of {popcount(alive)}")
        if any(t.rows[x] & b != b for x in members(a)):
            problems.append("A does not dominate B")
        if popcount(b) < popcount(c):
            problems.append(f"|B|={popcount(b)} is below |C|={popcount(c)}")
        for x in members(c):
            if not t.in_rows[x] & b:
                problems.append(f"C-player {x} is not beaten by anyone in B")
        return problems


def threeking_decomposition(t: Tournament, king: int) -> ThreeKingDecomposition:
    """The king's victims, their victims among its conquerors, and the rest."""
    king = t.check_player(king)
    a = t.rows[king]
    reach = 0
    for x in members(a):
        reach |= t.rows[x]
    b = reach & t.in_rows[king]
    c = t.in_rows[king] & ~b
    return ThreeKingDecomposition(king, frozenset(members(a)), frozenset(members(b)), frozenset(members(c)))


def find_threeking_decomposition(t: Tournament, king: int) -> ThreeKingDecomposition | None:
    """The decomposition when all three conditions hold, else None."""
    if not is_3king(t, king):
        return None
    d = threeking_decomposition(t, king)
    return None if d.violations(t) else d


def threeking_seeding(t: Tournament, d: ThreeKingDecomposition) -> Seeding:
    if not is_power_of_two(t.n):
        raise PreconditionError(f"n={t.n} is not a power of two")
    problems = d.violations(t)
    if problems:
        raise PreconditionError("; ".join(problems))
    king = d.king
    a, b, c = mask_of(d.A), mask_of(d.B), mask_of(d.C)
    alive = t.full_mask
    rounds = []
    while popcount(alive) > 1:
        ra, rb, rc = a & alive, b & alive, c & alive
        matching = _greedy_matching(t, rb, rc)
        used = mask_of(x for p in matching for x in p)
        partner = _low(ra)
        pairs = [(king, partner)] + matching
        internal, rest_a = _pair_off(ra & ~(1 << partner))
        pairs += internal
        if rest_a:
            spare_b = rb & ~used
            if not spare_b:
                raise InvariantError("no B player left to meet the odd A player")
            x = _low(spare_b)
            pairs.append((_low(rest_a), x))
            used |= 1 << x
        leftovers = []
        for group in (rb & ~used, rc & ~used):
            internal, rest = _pair_off(group)
            pairs += internal
            if rest:
                leftovers.append(_low(rest))
        if len(leftovers) not in (0, 2):
            raise InvariantError(f"{len(leftovers)} leftover players in the 3-king round")
        if leftovers:
            pairs.append(tuple(leftovers))
        _check_pairs(pairs, alive)
        nxt = _survivors(t, pairs)
        if not nxt >> king & 1:
            raise InvariantError("the 3-king lost a match")
        problems = d.violations(t, nxt) if popcount(nxt) > 1 else []
        if problems:
            raise InvariantError(f"round with {popcount(alive)} players: " + "; ".join(problems))
        rounds.append(pairs)
        alive = nxt
    order = [king]
    for pairs in reversed(rounds):
        order = _expand(order, pairs, t)
    seeding = Seeding(tuple(order))
    if champion(t, seeding) != king:
        raise InvariantError("constructed seeding does not crown the 3-king")
    return seeding


# -- two-half composition for Condorcet-random tournaments ---------------------------


def swap_size(n: int, k: float = DEFAULT_SWAP_FACTOR) -> int:
    return math.ceil(k * math.log2(n))


def _halves(t: Tournament, w: int, v: int, swapped: Iterable[int]) -> tuple[list[int], list[int]]:
    """First half: top-ranked indices minus ``w`` and ``swapped``, refilled from
    the strongest remaining players. Second half: everyone else."""
    n = t.n
    s = set(swapped)
    first = [x for x in range(n // 2) if x not in s and x != w]
    pool = [x for x in range(n // 2, n) if x not in s and x != w]
    first += pool[: n // 2 - len(first)]
    if v not in first:
        raise PreconditionError(f"hint player {v} does not land in the first half")
    chosen = set(first)
    return first, [x for x in range(n) if x not in chosen]


def cr_two_half_seeding(
    t: Tournament,
    w: int,
    hints: tuple[int, Iterable[int]],
    k: float = DEFAULT_SWAP_FACTOR,
) -> Seeding | None:
    """Seed ``w`` through the weaker half and meet a strong king ``v`` in the final.

    ``hints = (v, S)``: ``v`` is a victim of ``w`` among the top half of
    ranks, ``S`` a set of ``ceil(k log2 n)`` further victims of ``w`` from the
    top half. ``S`` moves into ``w``'s half; the remaining top half (refilled
    with the strongest other players) must have ``v`` as a king beating at
    least half of it, and ``w`` must be a superking over its own half.
    Returns None when either certificate fails.
    """
    n = t.n
    if not is_power_of_two(n) or n < 2:
        raise PreconditionError(f"n={n} is not a power of two >= 2")
    w = t.check_player(w)
    v, swapped = hints
    v = t.check_player(v)
    swapped = sorted(set(swapped))
    if not t.beats(w, v):
        raise PreconditionError(f"hint player {v} is not beaten by {w}")
    bad = [x for x in swapped if not t.beats(w, x)]
    if bad:
        raise PreconditionError(f"swap players {bad} are not beaten by {w}")
    if v in swapped:
        raise PreconditionError(f"hint player {v} is also in the swap set")
    outside = [x for x in swapped if x >= n // 2]
    if outside:
        raise PreconditionError(f"swap players {outside} are not in the top half")
    need = swap_size(n, k)
    if len(swapped) != need:
        raise PreconditionError(f"swap set has {len(swapped)} players, expected ceil(k log2 n) = {need}")
    first, second = _halves(t, w, v, swapped)

    top = restrict(t, first)
    v_local = first.index(v)
    if not is_king(top, v_local) or 2 * top.scores[v_local] < len(first):
        return None
    bottom = restrict(t, second)
    w_local = second.index(w)
    if not is_superking(bottom, w_local):
        return None

    top_seed = king_seeding(top, find_king_partition(top, v_local))
    others = frozenset(members(bottom.in_rows[w_local]))
    bottom_part = KingPartition(
        w_local, frozenset(members(bottom.rows[w_local])), frozenset(), others, frozenset()
    )
    bottom_seed = king_seeding(bottom, bottom_part)
    leaves = tuple(first[x] for x in top_seed.leaves) + tuple(second[x] for x in bottom_seed.leaves)
    seeding = Seeding(leaves)
    if champion(t, seeding) != w:
        raise InvariantError("two-half seeding does not crown the target")
    return seeding


def find_cr_hints(t: Tournament, w: int, k: float = DEFAULT_SWAP_FACTOR) -> list[tuple[int, tuple[int, ...]]]:
    """Candidate ``(v, S)`` hints, strongest ``v`` first.

    ``v`` ranges over ``w``'s victims in the top sixth of ranks; ``S`` takes
    the strongest ``ceil(k log2 n)`` other victims in the top half. Empty
    when ``w`` has too few such victims.
    """
    n = t.n
    need = swap_size(n, k)
    if n < 4 or need >= n // 2:
        return []
    victims = [x for x in range(n // 2) if x != w and t.beats(w, x)]
    hints = []
    for v in victims:
        if v >= math.ceil(n / 6):
            break
        rest = [x for x in victims if x != v]
        if len(rest) >= need:
            hints.append((v, tuple(rest[:need])))
    return hints


def cr_two_half_search(t: Tournament, w: int, k: float = DEFAULT_SWAP_FACTOR) -> Seeding | None:
    """Try every hint from :func:`find_cr_hints` until one certifies."""
    for hint in find_cr_hints(t, w, k):
        s = cr_two_half_seeding(t, w, hint, k)
        if s is not None:
            return s
    return None


# -- certificate dispatch -------------------------------------------------------


CERTIFICATES = ("condorcet", "superking", "king-partition", "3-king", "cr-two-half")


def certify(t: Tournament, v: int, *, cr: bool = False, k: float = DEFAULT_SWAP_FACTOR):
    """Cheapest structural certificate for ``v`` as ``(name, seeding)``, or None.

    Order: Condorcet winner, superking, king partition, 3-king, then the
    two-half composition when ``cr`` is set.
    """
    v = t.check_player(v)
    if not is_power_of_two(t.n):
        return None
    if t.scores[v] == t.n - 1:
        others = [x for x in range(t.n) if x != v]
        return "condorcet", Seeding((v, *others))
    if is_king(t, v):
        if is_superking(t, v):
            p = KingPartition(v, t.out_neighbors(v), frozenset(), t.in_neighbors(v), frozenset())
            return "superking", king_seeding(t, p)
        p = find_king_partition(t, v)
        if p is not None:
            return "king-partition", king_seeding(t, p)
    d = find_threeking_decomposition(t, v)
    if d is not None:
        return "3-king", threeking_seeding(t, d)
    if cr:
        s = cr_two_half_search(t, v, k)
        if s is not None:
            return "cr-two-half", s
    return None
