"""Built-in quiver families and random quivers."""

from __future__ import annotations

import random
from math import comb
from typing import Callable, Dict, List

from itq.quiver import Quiver, is_connected


def _from_pairs(n: int, pairs) -> Quiver:
    return Quiver.from_arrows(n, pairs)


def cycle(n: int) -> Quiver:
    """Z_n: 1 -> 2 -> ... -> n -> 1 (a single loop when n = 1)."""
    _need(n >= 1, "cycle needs n >= 1")
    return _from_pairs(n, [(i, (i + 1) % n) for i in range(n)])


def line(n: int) -> Quiver:
    """A_n: 1 -> 2 -> ... -> n."""
    _need(n >= 1, "line needs n >= 1")
    return _from_pairs(n, [(i, i + 1) for i in range(n - 1)])


def loopline(n: int) -> Quiver:
    """Loop at 1 followed by the line 1 -> 2 -> ... -> n."""
    _need(n >= 1, "loopline needs n >= 1")
    return _from_pairs(n, [(0, 0)] + [(i, i + 1) for i in range(n - 1)])


def lineloop(n: int) -> Quiver:
    """The line 1 -> ... -> n with a loop at the last vertex (no sink)."""
    _need(n >= 1, "lineloop needs n >= 1")
    return _from_pairs(n, [(i, i + 1) for i in range(n - 1)] + [(n - 1, n - 1)])


def phimax_coefficients(n: int, a1: int) -> List[int]:
    """a_1..a_n of the last column; a_j for 2 <= j <= n-1 from binomial sums, a_n = a_1 - (n-2)."""
    def c(k: int) -> int:
        return comb(n - 2, k) if 0 <= k <= n - 2 else 0

    a = [a1]
    for j in range(2, n):
        a.append(a1 * (c(j - 1) + c(j - 2)) - (c(j - 2) + c(j - 3)))
    a.append(a1 - (n - 2))
    return a


def phimax(n: int, a1: int) -> Quiver:
    """Memberless quiver with phidim = n.

    Rows: vertex 1 has a loop, vertex j > 1 has an arrow to j-1, vertices
    1..n-1 carry loops, and vertex j sends a_j arrows to n.
    """
    _need(n >= 2, "phimax needs n >= 2")
    _need(a1 > n - 2, "phimax needs a1 > n - 2 so every a_j is positive")
    a = phimax_coefficients(n, a1)
    m = [[0] * n for _ in range(n)]
    m[0][0] = 1
    for j in range(1, n):
        m[j][j - 1] = 1
        if j < n - 1:
            m[j][j] = 1
    for j in range(n):
        m[j][n - 1] += a[j]
    return Quiver(tuple(map(tuple, m)))


def midk(n: int, k: int) -> Quiver:
    """A quiver on n vertices with phidim exactly k, for 0 <= k <= n.

    k = 0 is Z_n and k = n is ``phimax(n, n - 1)`` (two loops on one vertex
    when n = 1).  For 0 < k < n: the path 1 -> ... -> k+1 with a loop at k+1,
    and every remaining vertex sending one arrow to k+1.
    """
    _need(n >= 1 and 0 <= k <= n, "midk needs n >= 1 and 0 <= k <= n")
    if k == 0:
        return cycle(n)
    if k == n:
        if n == 1:
            return Quiver(((2,),))
        return phimax(n, n - 1)
    top = k  # 0-indexed vertex k+1
    pairs = [(i, i + 1) for i in range(top)] + [(top, top)]
    pairs += [(v, top) for v in range(top + 1, n)]
    return _from_pairs(n, pairs)


FAMILIES: Dict[str, Callable[..., Quiver]] = {
    "cycle": cycle,
    "line": line,
    "loopline": loopline,
    "lineloop": lineloop,
    "phimax": phimax,
    "midk": midk,
}

FAMILY_PARAMS = {
    "cycle": ("n",),
    "line": ("n",),
    "loopline": ("n",),
    "lineloop": ("n",),
    "phimax": ("n", "a1"),
    "midk": ("n", "k"),
}


def generate(family: str, *params: int) -> Quiver:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    want = FAMILY_PARAMS[family]
    if len(params) != len(want):
        raise ValueError(f"{family} takes parameters {' '.join(want)}")
    return FAMILIES[family](*params)


def random_quiver(rng: random.Random, n: int, max_mult: int = 2, density: float | None = None) -> Quiver:
    """Random connected quiver; entries are 0 with probability 1 - density."""
    if density is None:
        density = rng.uniform(0.1, 0.6)
    while True:
        m = [
            [rng.randint(1, max_mult) if rng.random() < density else 0 for _ in range(n)]
            for _ in range(n)
        ]
        q = Quiver(tuple(map(tuple, m)))
        if is_connected(q):
            return q


def random_corpus(seed: int, count: int, max_n: int = 6, max_mult: int = 2) -> List[Quiver]:
    rng = random.Random(seed)
    return [random_quiver(rng, rng.randint(1, max_n), max_mult) for _ in range(count)]


def _need(ok: bool, message: str):
    if not ok:
        raise ValueError(message)
