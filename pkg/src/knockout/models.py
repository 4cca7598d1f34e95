"""Random tournament models and hand-built counterexample families.

Every random draw comes from a counter-based hash of ``(seed, stream, i, j)``,
so one edge's outcome never depends on the order in which edges are
generated, on ``n``, or on any other edge.

Players of the random models are ranks: index 0 is the strongest.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields
from typing import Callable

import numpy as np

from .core import Tournament

KINDS = ("condorcet_random", "generalized_cr", "flexible")
PAIR_POLICIES = ("circulant", "complete")
PROB_POLICIES = ("constant", "uniform", "rank-biased", "generalized")
ADVERSARY_POLICIES = ("lower", "random")

_ORIENT, _PROB, _ADVERSARY = 1, 2, 3
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)


class ModelError(ValueError):
    pass


def _mix(x: np.ndarray) -> np.ndarray:
    # splitmix64 finalizer
    x = (x ^ (x >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    x = (x ^ (x >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return x ^ (x >> np.uint64(31))


def edge_uniforms(seed: int, stream: int, i, j) -> np.ndarray:
    """Uniform [0, 1) draws keyed by ``(seed, stream, i, j)``; vectorised over ``i, j``."""
    i = np.asarray(i, dtype=np.uint64)
    j = np.asarray(j, dtype=np.uint64)
    with np.errstate(over="ignore"):
        h = _mix(np.full(i.shape, seed & 0xFFFFFFFFFFFFFFFF, dtype=np.uint64) + np.uint64(stream) * _GOLDEN)
        h = _mix(h + (i + np.uint64(1)) * _GOLDEN)
        h = _mix(h ^ ((j + np.uint64(1)) * _GOLDEN))
    return (h >> np.uint64(11)).astype(np.float64) * 2.0**-53


@dataclass(frozen=True)
class ModelSpec:
    """Parameters and seed that pin down one generated tournament."""

    kind: str
    n: int
    p: float
    seed: int = 0
    delta: float = 0.5
    pair_policy: str = "circulant"
    prob_policy: str = "constant"
    adversary_policy: str = "lower"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ModelError(f"unknown model kind {self.kind!r}; expected one of {KINDS}")
        if self.n < 2:
            raise ModelError(f"n must be at least 2, got {self.n}")
        # p = 0 is a degenerate but useful CR endpoint (a transitive tournament)
        lo_ok = self.p >= 0 if self.kind == "condorcet_random" else self.p > 0
        if not (lo_ok and self.p < 0.5):
            raise ModelError(f"p must lie in (0, 1/2), got {self.p}")
        if not 0 < self.delta <= 0.5:
            raise ModelError(f"delta must lie in (0, 1/2], got {self.delta}")
        if self.pair_policy not in PAIR_POLICIES:
            raise ModelError(f"unknown pair policy {self.pair_policy!r}")
        if self.prob_policy not in PROB_POLICIES:
            raise ModelError(f"unknown probability policy {self.prob_policy!r}")
        if self.adversary_policy not in ADVERSARY_POLICIES:
            raise ModelError(f"unknown adversary policy {self.adversary_policy!r}")
        if not 0 <= self.seed < 2**64:
            raise ModelError("seed must be an unsigned 64-bit integer")

    def to_text(self) -> str:
        """Flat ``key=value`` form, one pair per line."""
        return "".join(f"{k}={v}\n" for k, v in asdict(self).items())

    @classmethod
    def from_text(cls, text: str) -> "ModelSpec":
        types = {f.name: f.type for f in fields(cls)}
        values = {}
        for line in text.replace(" ", "\n").splitlines():
            line = line.strip()
            if not line:
                continue
            key, sep, raw = line.partition("=")
            if not sep or key not in types:
                raise ModelError(f"bad model field {line!r}")
            conv = {"int": int, "float": float}.get(types[key], str)
            values[key] = conv(raw)
        return cls(**values)


def gen_cr(spec: ModelSpec) -> Tournament:
    """Condorcet random model: the lower rank of each pair is upset with probability ``p``."""
    if spec.kind != "condorcet_random":
        raise ModelError(f"gen_cr needs kind condorcet_random, got {spec.kind}")
    n = spec.n
    i, j = np.triu_indices(n, 1)
    upset = edge_uniforms(spec.seed, _ORIENT, i, j) < spec.p
    m = np.zeros((n, n), dtype=bool)
    m[i, j] = ~upset
    m[j, i] = upset
    return Tournament.from_matrix(m)


def min_participation(n: int, delta: float) -> int:
    """Randomly decided pairs each player needs, capped at ``n - 1``."""
    return min(n - 1, math.ceil((0.5 + delta) * n))


def random_pairs(spec: ModelSpec) -> np.ndarray:
    """Symmetric mask of pairs whose result is drawn at random."""
    n = spec.n
    need = min_participation(n, spec.delta)
    if spec.pair_policy == "complete":
        mask = ~np.eye(n, dtype=bool)
    else:
        radius = math.ceil(need / 2)
        d = np.abs(np.subtract.outer(np.arange(n), np.arange(n)))
        cyc = np.minimum(d, n - d)
        mask = (cyc >= 1) & (cyc <= radius)
    if mask.sum(axis=1).min() < need:
        raise ModelError(f"pair policy {spec.pair_policy!r} cannot give every player {need} random pairs")
    return mask


def win_probabilities(spec: ModelSpec) -> np.ndarray:
    """``P[i, j]`` (``i < j``) = chance that ``i`` beats ``j`` on a random pair."""
    n, p = spec.n, spec.p
    i, j = np.triu_indices(n, 1)
    prob = np.zeros((n, n))
    if spec.prob_policy == "constant":
        prob[i, j] = 1 - p
    elif spec.prob_policy == "uniform":
        prob[i, j] = p + (1 - 2 * p) * edge_uniforms(spec.seed, _PROB, i, j)
    elif spec.prob_policy == "generalized":
        prob[i, j] = 0.5 + (0.5 - p) * edge_uniforms(spec.seed, _PROB, i, j)
    else:  # rank-biased: wide rank gaps favour the stronger player more
        prob[i, j] = 0.5 + (0.5 - p) * (j - i) / max(n - 1, 1)
    return prob


def gen_flexible(
    spec: ModelSpec, adversary: Callable[[int, int], bool] | None = None
) -> tuple[Tournament, np.ndarray]:
    """Partly random tournament and its provenance mask (True = randomly decided).

    Pairs chosen by ``pair_policy`` are decided at random with per-pair
    probabilities from ``prob_policy``; every other pair goes to the
    adversary. ``adversary(i, j)`` (``i < j``) returns True when ``i`` should
    win; it sees only the indices, never the random outcomes.
    """
    if spec.kind not in ("flexible", "generalized_cr"):
        raise ModelError(f"gen_flexible needs kind flexible, got {spec.kind}")
    if spec.kind == "generalized_cr":
        spec = ModelSpec("flexible", spec.n, spec.p, spec.seed, 0.5, "complete", "generalized", "lower")
    n = spec.n
    rand = random_pairs(spec)
    prob = win_probabilities(spec)
    i, j = np.triu_indices(n, 1)
    forward = edge_uniforms(spec.seed, _ORIENT, i, j) >= 1 - prob[i, j]
    chosen = rand[i, j]
    if adversary is not None:
        adv = np.array([bool(adversary(int(a), int(b))) for a, b in zip(i, j)], dtype=bool)
    elif spec.adversary_policy == "lower":
        adv = np.ones(i.shape, dtype=bool)
    else:
        adv = edge_uniforms(spec.seed, _ADVERSARY, i, j) < 0.5
    win = np.where(chosen, forward, adv)
    m = np.zeros((n, n), dtype=bool)
    m[i, j] = win
    m[j, i] = ~win
    return Tournament.from_matrix(m), rand


def generate(spec: ModelSpec) -> Tournament:
    if spec.kind == "condorcet_random":
        return gen_cr(spec)
    return gen_flexible(spec)[0]


# -- constructions ----------------------------------------------------------------


def rotational(m: int) -> np.ndarray:
    """Near-regular tournament on ``m`` players.

    Player ``i`` beats the next ``(m-1)//2`` players cyclically; for even
    ``m`` the diametric pair goes to the lower index, so the first half has
    one extra win.
    """
    d = (np.arange(m)[None, :] - np.arange(m)[:, None]) % m
    beats = (d >= 1) & (d <= (m - 1) // 2)
    if m % 2 == 0:
        half = m // 2
        rows = np.arange(half)
        beats[rows, rows + half] = True
    return beats


def _assemble(blocks: dict[str, int], internal: dict[str, np.ndarray], dominations) -> Tournament:
    labels, start = [], {}
    for name, size in blocks.items():
        start[name] = len(labels)
        labels += [name] if size == 1 and name in ("x", "y") else [f"{name}{k}" for k in range(size)]
    n = len(labels)
    m = np.zeros((n, n), dtype=bool)

    def span(name):
        return slice(start[name], start[name] + blocks[name])

    for name, sub in internal.items():
        m[span(name), span(name)] = sub
    for winner, loser in dominations:
        m[span(winner), span(loser)] = True
    return Tournament.from_matrix(m, labels)


def roles(t: Tournament) -> dict[str, list[int]]:
    """Group a construction's players by label prefix, e.g. ``{'x': [0], 'a': [...]}``."""
    out: dict[str, list[int]] = {}
    for v, label in enumerate(t.labels):
        out.setdefault(str(label).rstrip("0123456789"), []).append(v)
    return out


def build_uncovered_ratio_example(k: int, b: int) -> Tournament:
    """Players x, y, A (size k), B (size b) with x > y, B; y > B, A; B > A; A > x.

    B is a rotational regular tournament; A is rotational too, which keeps
    every A player uncovered.
    """
    if k < 1:
        raise ModelError("A needs at least one player")
    if b < 1 or b % 2 == 0:
        raise ModelError(f"B must have odd size for a regular tournament, got {b}")
    return _assemble(
        {"x": 1, "y": 1, "a": k, "b": b},
        {"a": rotational(k), "b": rotational(b)},
        [("x", "y"), ("x", "b"), ("y", "b"), ("y", "a"), ("b", "a"), ("a", "x")],
    )


def build_itmatrix_example(r: float, n: int) -> Tournament:
    """Players x, A (``floor(r n)``), B (the rest) with A > x > B > A, A and B near-regular."""
    if not 0.5 < r < 1 / math.sqrt(3):
        raise ModelError(f"r must lie in (1/2, 1/sqrt(3)), got {r}")
    size_a = math.floor(r * n)
    size_b = n - 1 - size_a
    if size_a < 3 or size_b < 1:
        raise ModelError(f"n={n} too small for r={r}: |A|={size_a}, |B|={size_b}")
    return _assemble(
        {"x": 1, "a": size_a, "b": size_b},
        {"a": rotational(size_a), "b": rotational(size_b)},
        [("a", "x"), ("x", "b"), ("b", "a")],
    )


def build_bipartisan_example(n: int) -> Tournament:
    """Transitive order 0 > 1 > ... > n-1 except that n-1 beats 0."""
    if n < 3:
        raise ModelError("needs at least three players")
    m = np.triu(np.ones((n, n), dtype=bool), 1)
    m[0, n - 1] = False
    m[n - 1, 0] = True
    return Tournament.from_matrix(m)
