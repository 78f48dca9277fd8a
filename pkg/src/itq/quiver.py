"""Finite quivers and their purely graph-theoretic structure.

A quiver is stored as its arrow-count matrix: ``arrows[i][j]`` is the number
of arrows ``i -> j``.  Vertices are 0-indexed internally; everything shown
to a user goes through :meth:`Quiver.label`, which is 1-based unless explicit
labels were supplied.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple


class ParseError(ValueError):
    """Malformed quiver text; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass(frozen=True)
class Quiver:
    arrows: Tuple[Tuple[int, ...], ...]
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.arrows)
        object.__setattr__(self, "arrows", rows)
        n = len(rows)
        if n < 1:
            raise ValueError("no vertices")
        if any(len(row) != n for row in rows):
            raise ValueError("arrow matrix must be square")
        if any(x < 0 for row in rows for x in row):
            raise ValueError("arrow counts must be nonnegative")
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != n or len(set(labels)) != n:
                raise ValueError("labels must be n distinct names")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_arrows(cls, n: int, pairs: Iterable[Tuple[int, int]], labels=None) -> "Quiver":
        """Build from 0-indexed ``(source, target)`` pairs; repeats add up."""
        m = [[0] * n for _ in range(n)]
        for i, j in pairs:
            m[i][j] += 1
        return cls(tuple(map(tuple, m)), labels)

    @property
    def n(self) -> int:
        return len(self.arrows)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v + 1)

    def labelset(self, vertices: Iterable[int]) -> List[str]:
        return [self.label(v) for v in sorted(vertices)]

    def matrix(self) -> List[List[int]]:
        return [list(row) for row in self.arrows]

    @cached_property
    def successors(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(j for j in range(self.n) if self.arrows[i][j]) for i in range(self.n))

    @cached_property
    def predecessors(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(i for i in range(self.n) if self.arrows[i][j]) for j in range(self.n))

    def out_degree(self, v: int) -> int:
        return sum(self.arrows[v])

    def in_degree(self, v: int) -> int:
        return sum(row[v] for row in self.arrows)

    def loops(self, v: int) -> int:
        return self.arrows[v][v]

    @property
    def loop_count(self) -> int:
        return sum(self.arrows[v][v] for v in range(self.n))

    @property
    def arrow_count(self) -> int:
        return sum(map(sum, self.arrows))


# -- text format -----------------------------------------------------------

_INT = re.compile(r"^\d+$")


def parse_quiver(text: str) -> Quiver:
    """Parse the line-oriented quiver format.

    Either ``vertices <n>`` followed by ``arrow <i> <j>`` lines (repeat a line
    for multiple arrows), or ``matrix <n>`` followed by n rows of n counts.
    An optional ``labels <name>...`` line renames the vertices; when present,
    arrow endpoints are given by label.  ``#`` starts a comment line.
    """
    lines = [(k, raw.split("#", 1)[0].strip()) for k, raw in enumerate(text.splitlines(), 1)]
    lines = [(k, s) for k, s in lines if s]
    if not lines:
        raise ParseError("no vertices")

    k, head = lines[0]
    words = head.split()
    if words[0] not in ("vertices", "matrix") or len(words) != 2 or not _INT.match(words[1]):
        raise ParseError(f"expected 'vertices <n>' or 'matrix <n>', got {head!r}", k)
    n = int(words[1])
    if n == 0:
        raise ParseError("no vertices", k)
    mode = words[0]

    labels = None
    rows: List[List[int]] = []
    m = [[0] * n for _ in range(n)]
    pending_arrows = []
    for k, line in lines[1:]:
        words = line.split()
        if words[0] == "labels":
            if labels is not None:
                raise ParseError("duplicate labels line", k)
            labels = words[1:]
            if len(labels) != n or len(set(labels)) != n:
                raise ParseError(f"labels line must name {n} distinct vertices", k)
        elif mode == "vertices":
            if words[0] != "arrow" or len(words) != 3:
                raise ParseError(f"expected 'arrow <i> <j>', got {line!r}", k)
            pending_arrows.append((k, words[1], words[2]))
        else:
            if len(words) != n or not all(_INT.match(w) for w in words):
                raise ParseError(f"matrix row must hold {n} nonnegative integers", k)
            if len(rows) == n:
                raise ParseError("too many matrix rows", k)
            rows.append([int(w) for w in words])

    if mode == "matrix":
        if len(rows) != n:
            raise ParseError(f"expected {n} matrix rows, found {len(rows)}")
        m = rows
    else:
        index = {name: i for i, name in enumerate(labels)} if labels else None
        for k, a, b in pending_arrows:
            m[_vertex(a, n, index, k)][_vertex(b, n, index, k)] += 1

    q = Quiver(tuple(map(tuple, m)), tuple(labels) if labels else None)
    if not is_connected(q):
        raise ParseError("disconnected quiver")
    return q


def _vertex(token: str, n: int, index, line: int) -> int:
    if index is not None:
        if token not in index:
            raise ParseError(f"unknown vertex label {token!r}", line)
        return index[token]
    if not _INT.match(token) or not 1 <= int(token) <= n:
        raise ParseError(f"vertex {token!r} out of range 1..{n}", line)
    return int(token) - 1


def format_quiver(q: Quiver, style: str = "matrix") -> str:
    out = []
    if style == "matrix":
        out.append(f"matrix {q.n}")
        if q.labels:
            out.append("labels " + " ".join(q.labels))
        out.extend(" ".join(str(x) for x in row) for row in q.arrows)
    elif style == "arrows":
        out.append(f"vertices {q.n}")
        if q.labels:
            out.append("labels " + " ".join(q.labels))
        for i in range(q.n):
            for j in range(q.n):
                out.extend([f"arrow {q.label(i)} {q.label(j)}"] * q.arrows[i][j])
    else:
        raise ValueError(f"unknown style {style!r}")
    return "\n".join(out) + "\n"


# -- connectivity and components ------------------------------------------

def is_connected(q: Quiver) -> bool:
    """Connectivity of the underlying undirected graph."""
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in q.successors[v] + q.predecessors[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == q.n


def strongly_connected_components(q: Quiver) -> List[Tuple[int, ...]]:
    """Tarjan's algorithm, iterative; components come out in reverse topological order."""
    index = {}
    low = {}
    on_stack = set()
    stack: List[int] = []
    comps: List[Tuple[int, ...]] = []
    counter = 0
    for root in range(q.n):
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            succ = q.successors[v]
            if i < len(succ):
                work.append((v, i + 1))
                w = succ[i]
                if w not in index:
                    work.append((w, 0))
                elif w in on_stack:
                    low[v] = min(low[v], index[w])
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(tuple(sorted(comp)))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return comps


def is_strongly_connected(q: Quiver) -> bool:
    return len(strongly_connected_components(q)) == 1


def _is_cyclic_component(q: Quiver, comp: Sequence[int]) -> bool:
    return len(comp) > 1 or q.arrows[comp[0]][comp[0]] > 0


def reachable_from(q: Quiver, starts: Iterable[int], reverse: bool = False) -> FrozenSet[int]:
    """Vertices reachable from ``starts`` by paths of length >= 0."""
    adj = q.predecessors if reverse else q.successors
    seen = set(starts)
    stack = list(seen)
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return frozenset(seen)


def is_cycle_quiver(q: Quiver) -> bool:
    """True iff ``q`` is the oriented cycle Z_n (one loop when n = 1)."""
    if not all(q.out_degree(v) == 1 and q.in_degree(v) == 1 for v in range(q.n)):
        return False
    return is_connected(q)


def full_subquiver(q: Quiver, vertices: Iterable[int]) -> Optional[Quiver]:
    vs = sorted(vertices)
    if not vs:
        return None
    arrows = tuple(tuple(q.arrows[i][j] for j in vs) for i in vs)
    return Quiver(arrows, tuple(q.label(v) for v in vs))


def opposite(q: Quiver) -> Quiver:
    return Quiver(tuple(zip(*q.arrows)), q.labels)


# -- simples ---------------------------------------------------------------

@dataclass(frozen=True)
class SimpleClassification:
    """S_v is projective iff v is a sink, injective iff v is a source."""

    projective: FrozenSet[int]
    injective: FrozenSet[int]
    sd: FrozenSet[int]

    @property
    def sp(self) -> FrozenSet[int]:
        return self.projective

    @property
    def si(self) -> FrozenSet[int]:
        return self.injective

    @property
    def k(self) -> int:
        return len(self.projective | self.injective)


def classify_simples(q: Quiver) -> SimpleClassification:
    sinks = frozenset(v for v in range(q.n) if q.out_degree(v) == 0)
    sources = frozenset(v for v in range(q.n) if q.in_degree(v) == 0)
    sd = frozenset(range(q.n)) - sinks - sources
    return SimpleClassification(sinks, sources, sd)


def sinks(q: Quiver) -> FrozenSet[int]:
    return frozenset(v for v in range(q.n) if q.out_degree(v) == 0)


def sources(q: Quiver) -> FrozenSet[int]:
    return frozenset(v for v in range(q.n) if q.in_degree(v) == 0)


# -- heart and member ------------------------------------------------------

@dataclass(frozen=True)
class HeartMember:
    heart: FrozenSet[int]
    member: FrozenSet[int]
    heart_quiver: Optional[Quiver] = field(compare=False)
    member_quiver: Optional[Quiver] = field(compare=False)


def cycle_vertices(q: Quiver) -> FrozenSet[int]:
    out = set()
    for comp in strongly_connected_components(q):
        if _is_cyclic_component(q, comp):
            out.update(comp)
    return frozenset(out)


def heart_by_cycles(q: Quiver) -> FrozenSet[int]:
    """Vertices that are reachable from a cycle and reach a cycle."""
    cyc = cycle_vertices(q)
    return reachable_from(q, cyc) & reachable_from(q, cyc, reverse=True)


def heart_by_support(q: Quiver) -> FrozenSet[int]:
    """Support of the n-th syzygy of A_0 intersected with that of its n-th cosyzygy."""
    from itq.syzygy import cosyzygy, syzygy

    down = up = (1,) * q.n
    for _ in range(q.n):
        down = syzygy(q, down)
        up = cosyzygy(q, up)
    return frozenset(v for v in range(q.n) if down[v] and up[v])


def heart_member(q: Quiver) -> HeartMember:
    heart = heart_by_cycles(q)
    member = frozenset(range(q.n)) - heart
    return HeartMember(heart, member, full_subquiver(q, heart), full_subquiver(q, member))


# -- subhearts -------------------------------------------------------------

@dataclass(frozen=True)
class SubheartList:
    final: Tuple[FrozenSet[int], ...]
    initial: Tuple[FrozenSet[int], ...]


def subhearts(q: Quiver) -> SubheartList:
    """Final subhearts are the terminal strong components, initial ones the source components."""
    comps = strongly_connected_components(q)
    where = {v: i for i, comp in enumerate(comps) for v in comp}
    has_out = [False] * len(comps)
    has_in = [False] * len(comps)
    for i in range(q.n):
        for j in q.successors[i]:
            if where[i] != where[j]:
                has_out[where[i]] = True
                has_in[where[j]] = True
    key = lambda s: min(s)
    final = sorted((frozenset(c) for k, c in enumerate(comps) if not has_out[k]), key=key)
    initial = sorted((frozenset(c) for k, c in enumerate(comps) if not has_in[k]), key=key)
    return SubheartList(tuple(final), tuple(initial))


# -- member order ----------------------------------------------------------

@dataclass(frozen=True)
class MemberOrder:
    is_total_order: bool
    longest_path_to_sink: Optional[int]
    chain: Tuple[int, ...] = ()


def member_order_stats(q: Quiver) -> MemberOrder:
    """Reachability order on the member, using paths that stay inside the member.

    ``longest_path_to_sink`` is the length of the longest member path ending
    at a sink of ``q`` (None when the member is empty or ``q`` has no sink).
    The member is acyclic, so longest paths come from a topological sweep.
    """
    member = heart_member(q).member
    if not member:
        return MemberOrder(True, None)
    order = _topological(q, member)
    # longest path ending at v, within the member
    ending = {v: 0 for v in member}
    for v in order:
        for w in q.successors[v]:
            if w in member:
                ending[w] = max(ending[w], ending[v] + 1)
    sink_set = sinks(q)
    ends = [ending[v] for v in member if v in sink_set]
    d = max(ends) if ends else None

    total = all(
        q.arrows[a][b] > 0 for a, b in zip(order, order[1:])
    )
    chain = tuple(order) if total else ()
    return MemberOrder(total, d, chain)


def _topological(q: Quiver, vertices: FrozenSet[int]) -> List[int]:
    indeg = {v: sum(1 for u in q.predecessors[v] if u in vertices) for v in vertices}
    ready = sorted(v for v in vertices if indeg[v] == 0)
    order = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        for w in q.successors[v]:
            if w in vertices:
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
        ready.sort()
    if len(order) != len(vertices):
        raise ValueError("member contains a cycle")
    return order


def reaches_within(q: Quiver, vertices: FrozenSet[int], a: int, b: int) -> bool:
    seen = {a}
    stack = [a]
    while stack:
        v = stack.pop()
        if v == b:
            return True
        for w in q.successors[v]:
            if w in vertices and w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def longest_path_from(q: Quiver, v: int) -> Optional[int]:
    """Longest path starting at ``v``; None if ``v`` reaches a cycle."""
    if reachable_from(q, [v]) & cycle_vertices(q):
        return None
    memo = {}

    def go(u):
        if u not in memo:
            memo[u] = max((go(w) + 1 for w in q.successors[u]), default=0)
        return memo[u]

    return go(v)
