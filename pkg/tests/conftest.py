import itertools
import math

import numpy as np
import pytest
from hypothesis import strategies as st

from knockout import Tournament, make_tournament, random_tournament, transitive
from knockout.core import all_tournaments


def cycle3():
    return make_tournament(3, [(0, 1), (1, 2), (2, 0)])


def cycle_plus_sink():
    # 0 -> 1 -> 2 -> 0, everyone beats 3
    return make_tournament(4, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)])


def planted_superking(n, rng):
    """Player 0 beats A = 1..n-3; B = {n-2, n-1} beat 0; each b loses to >= log2 n of A."""
    m = np.asarray(random_tournament(n, rng).matrix).copy()
    A, B = list(range(1, n - 2)), [n - 2, n - 1]
    need = math.ceil(math.log2(n))
    m[0, A] = True
    m[A, 0] = False
    m[B, 0] = True
    m[0, B] = False
    for b in B:
        for a in A[:need]:
            m[a, b], m[b, a] = True, False
    return Tournament.from_matrix(m)


def planted_threeking(n, rng, size_b=None):
    """King 0 beats A (half the field), A > B, C > A, and each c is beaten by some b."""
    m = np.asarray(random_tournament(n, rng).matrix).copy()
    A = list(range(1, n // 2 + 1))
    rest = list(range(n // 2 + 1, n))
    size_b = size_b if size_b is not None else (len(rest) + 1) // 2
    B, C = rest[:size_b], rest[size_b:]

    def win(xs, ys):
        for x in xs:
            for y in ys:
                m[x, y], m[y, x] = True, False

    win([0], A)
    win(B + C, [0])
    win(A, B)
    win(C, A)
    for k, c in enumerate(C):
        b = B[k % len(B)]
        m[b, c], m[c, b] = True, False
    return Tournament.from_matrix(m)


def brute_slater(t):
    """All orderings: (fewest reversals, set of players heading an optimal ordering)."""
    best, heads = None, set()
    for order in itertools.permutations(range(t.n)):
        cost = sum(t.beats(order[j], order[i]) for i in range(t.n) for j in range(i + 1, t.n))
        if best is None or cost < best:
            best, heads = cost, {order[0]}
        elif cost == best:
            heads.add(order[0])
    return best, heads


def brute_paths(t, v, k):
    total = 0
    others = [u for u in range(t.n) if u != v]
    for rest in itertools.permutations(others, k):
        path = (v, *rest)
        total += all(t.beats(path[i], path[i + 1]) for i in range(k))
    return total


@st.composite
def tournaments(draw, sizes=(1, 2, 4, 8)):
    n = draw(st.sampled_from(sizes))
    bits = draw(st.lists(st.booleans(), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return make_tournament(n, [(i, j) if b else (j, i) for (i, j), b in zip(pairs, bits)])


@pytest.fixture(scope="session")
def four_player():
    return list(all_tournaments(4))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    acc = __import__("sys").modules.get("test_acceptance")
    if acc and acc.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(acc.RESULTS):
            terminalreporter.write_line(line)
